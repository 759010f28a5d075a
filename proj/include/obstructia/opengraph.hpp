#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obstructia/order.hpp"
#include "obstructia/report.hpp"

namespace obstructia {

/// Directed graph with input legs X -> V and output legs Y -> V.
struct OpenGraph {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted, unique
    std::vector<std::size_t> in_leg;
    std::vector<std::size_t> out_leg;

    /// Checks names are distinct, legs total and edges in range (InvalidGraph).
    /// Sorts and deduplicates the edge list.
    void normalize();
    std::size_t vertex_index(std::string_view name) const;

    bool operator==(const OpenGraph&) const = default;
};

/// Relation between finite sets; pairs sorted and unique.
struct Relation {
    std::vector<std::string> dom;
    std::vector<std::string> cod;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    bool contains(std::size_t a, std::size_t b) const;
    bool subset_of(const Relation& other) const;
    std::vector<std::string> pair_names() const;  // "(a,b)"
    std::string to_string() const;                // "{(a,b),...}"

    bool operator==(const Relation&) const = default;
};

Relation compose_rel(const Relation& r, const Relation& s);
Relation identity_rel(const std::vector<std::string>& set);

/// Identity open graph on a boundary: one vertex per boundary point, no edges.
OpenGraph identity_graph(const std::vector<std::string>& boundary);

/// Glues outputs of g to inputs of h (BoundaryMismatch unless equal as
/// sets). Merged vertices are named "{u,v}"; names shared between the two
/// sides are qualified as L.name / R.name.
OpenGraph compose(const OpenGraph& g, const OpenGraph& h);

/// (x, y) with out_leg(y) reachable from in_leg(x), paths of length >= 0.
Relation reach(const OpenGraph& g);

/// Boundary-preserving isomorphism (legs and edges respected).
bool isomorphic(const OpenGraph& a, const OpenGraph& b);

/// Interface-preserving graph homomorphism.
struct GraphHom {
    OpenGraph source, target;
    std::vector<std::size_t> vertex_map;
};

/// InvalidHom when an edge or leg is not preserved, BoundaryMismatch when
/// the boundaries differ.
GraphHom make_graph_hom(OpenGraph source, OpenGraph target,
                        const std::map<std::string, std::string>& vertex_map);

/// The laxator component reach(g);reach(h) <= reach(g;h), checked.
struct Laxator {
    Relation parts;      // reach(g);reach(h)
    Relation composite;  // reach(g;h)
};

Laxator laxator(const OpenGraph& g, const OpenGraph& h);

/// pi_0 of the laxator component: the basepoint plus every Q inside the
/// composite relation not contained in the parts, ordered by inclusion.
ObstructionReport laxator_obstructions(const OpenGraph& g, const OpenGraph& h,
                                       std::size_t materialize_cap = 12);

/// pi_1 of the same component, computed on the thin category of relations
/// below the composite. Always trivial.
ObstructionReport pi1_laxator(const OpenGraph& g, const OpenGraph& h);

struct ActResult {
    OpenGraph acted;  // target of the homomorphism
    ObstructionReport before, after;
    PointedMap flow;
};

/// Pushes the laxator obstructions of (source, h) forward along hom.
ActResult act(const GraphHom& hom, const OpenGraph& h, std::size_t materialize_cap = 12);

/// Text format: `inputs a,b`, `outputs c`, `vertex v ...`, `edge u -> v`,
/// `in a = v`, `out c = v`.
OpenGraph parse_open_graph(std::string_view text);
std::string format_open_graph(const OpenGraph& g);
std::string open_graph_dot(const OpenGraph& g, const std::string& name = "open_graph");

/// Homomorphism text: `source <path>`, `target <path>`, `map u => v`.
struct HomSpec {
    std::string source_path, target_path;
    std::map<std::string, std::string> vertex_map;
};

HomSpec parse_hom_spec(std::string_view text);

}  // namespace obstructia
