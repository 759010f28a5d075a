#include "obstructia/opengraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "obstructia/error.hpp"
#include "obstructia/homotopy.hpp"
#include "obstructia/setcat.hpp"
#include "text_util.hpp"

namespace obstructia {

namespace {

std::map<std::string, std::size_t> name_index(const std::vector<std::string>& names,
                                              const std::string& what) {
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty() || !out.emplace(names[i], i).second) {
            throw Error("InvalidGraph", what + " name '" + names[i] + "' is empty or repeated",
                        {names[i]});
        }
    }
    return out;
}

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace

void OpenGraph::normalize() {
    name_index(inputs, "input");
    name_index(outputs, "output");
    name_index(vertices, "vertex");
    if (in_leg.size() != inputs.size() || out_leg.size() != outputs.size()) {
        throw Error("InvalidGraph", "every boundary point needs exactly one leg");
    }
    auto check = [&](std::size_t v) {
        if (v >= vertices.size()) throw Error("InvalidGraph", "leg or edge refers to a missing vertex");
    };
    for (std::size_t v : in_leg) check(v);
    for (std::size_t v : out_leg) check(v);
    for (auto [u, v] : edges) {
        check(u);
        check(v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::size_t OpenGraph::vertex_index(std::string_view name) const {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end()) {
        throw Error("UnknownVertex", "no vertex named '" + std::string(name) + "'",
                    {std::string(name)});
    }
    return static_cast<std::size_t>(it - vertices.begin());
}

// --- relations -------------------------------------------------------------

bool Relation::contains(std::size_t a, std::size_t b) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

bool Relation::subset_of(const Relation& other) const {
    return std::includes(other.pairs.begin(), other.pairs.end(), pairs.begin(), pairs.end());
}

std::vector<std::string> Relation::pair_names() const {
    std::vector<std::string> out;
    for (auto [a, b] : pairs) out.push_back("(" + dom[a] + "," + cod[b] + ")");
    return out;
}

std::string Relation::to_string() const {
    std::string s = "{";
    auto names = pair_names();
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
    return s + "}";
}

Relation compose_rel(const Relation& r, const Relation& s) {
    if (r.cod != s.dom) throw Error("TypeMismatch", "relations do not compose: middle sets differ");
    Relation out{r.dom, s.cod, {}};
    std::set<std::pair<std::size_t, std::size_t>> acc;
    for (auto [x, y] : r.pairs) {
        for (auto [y2, z] : s.pairs) {
            if (y == y2) acc.emplace(x, z);
        }
    }
    out.pairs.assign(acc.begin(), acc.end());
    return out;
}

Relation identity_rel(const std::vector<std::string>& set) {
    Relation r{set, set, {}};
    for (std::size_t i = 0; i < set.size(); ++i) r.pairs.emplace_back(i, i);
    return r;
}

// --- graphs ----------------------------------------------------------------

OpenGraph identity_graph(const std::vector<std::string>& boundary) {
    OpenGraph g;
    g.inputs = boundary;
    g.outputs = boundary;
    g.vertices = boundary;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        g.in_leg.push_back(i);
        g.out_leg.push_back(i);
    }
    g.normalize();
    return g;
}

OpenGraph compose(const OpenGraph& g, const OpenGraph& h) {
    if (!same_set(g.outputs, h.inputs)) {
        throw Error("BoundaryMismatch", "outputs of the first graph differ from inputs of the second");
    }
    const std::size_t ng = g.vertices.size();
    const std::size_t n = ng + h.vertices.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto h_inputs = name_index(h.inputs, "input");
    for (std::size_t y = 0; y < g.outputs.size(); ++y) {
        std::size_t a = find(g.out_leg[y]);
        std::size_t b = find(ng + h.in_leg[h_inputs.at(g.outputs[y])]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::set<std::string> g_names(g.vertices.begin(), g.vertices.end());
    std::set<std::string> h_names(h.vertices.begin(), h.vertices.end());
    auto qualified = [&](std::size_t v) {
        if (v < ng) {
            const auto& name = g.vertices[v];
            return h_names.count(name) ? "L." + name : name;
        }
        const auto& name = h.vertices[v - ng];
        return g_names.count(name) ? "R." + name : name;
    };

    std::map<std::size_t, std::vector<std::string>> members;
    for (std::size_t v = 0; v < n; ++v) members[find(v)].push_back(qualified(v));
    std::map<std::size_t, std::string> class_name;
    for (auto& [root, names] : members) {
        std::sort(names.begin(), names.end());
        if (names.size() == 1) {
            class_name[root] = names.front();
        } else {
            std::string s = "{";
            for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
            class_name[root] = s + "}";
        }
    }
    OpenGraph out;
    for (const auto& [root, name] : class_name) out.vertices.push_back(name);
    std::sort(out.vertices.begin(), out.vertices.end());
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < out.vertices.size(); ++i) position[out.vertices[i]] = i;
    auto image = [&](std::size_t v) { return position.at(class_name.at(find(v))); };

    for (auto [u, v] : g.edges) out.edges.emplace_back(image(u), image(v));
    for (auto [u, v] : h.edges) out.edges.emplace_back(image(ng + u), image(ng + v));
    out.inputs = g.inputs;
    for (std::size_t v : g.in_leg) out.in_leg.push_back(image(v));
    out.outputs = h.outputs;
    for (std::size_t v : h.out_leg) out.out_leg.push_back(image(ng + v));
    out.normalize();
    return out;
}

Relation reach(const OpenGraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.vertices.size());
    for (auto [u, v] : g.edges) adj[u].push_back(v);
    Relation r{g.inputs, g.outputs, {}};
    for (std::size_t x = 0; x < g.inputs.size(); ++x) {
        std::vector<bool> seen(g.vertices.size(), false);
        std::vector<std::size_t> stack{g.in_leg[x]};
        seen[g.in_leg[x]] = true;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        for (std::size_t y = 0; y < g.outputs.size(); ++y) {
            if (seen[g.out_leg[y]]) r.pairs.emplace_back(x, y);
        }
    }
    return r;
}

bool isomorphic(const OpenGraph& a, const OpenGraph& b) {
    const std::size_t n = a.vertices.size();
    if (n != b.vertices.size() || a.edges.size() != b.edges.size() ||
        !same_set(a.inputs, b.inputs) || !same_set(a.outputs, b.outputs)) {
        return false;
    }
    std::vector<std::size_t> map(n, n), inverse(n, n);
    auto pin = [&](std::size_t u, std::size_t v) {
        if (map[u] == n && inverse[v] == n) {
            map[u] = v;
            inverse[v] = u;
            return true;
        }
        return map[u] == v;
    };
    auto b_in = name_index(b.inputs, "input");
    auto b_out = name_index(b.outputs, "output");
    for (std::size_t x = 0; x < a.inputs.size(); ++x) {
        if (!pin(a.in_leg[x], b.in_leg[b_in.at(a.inputs[x])])) return false;
    }
    for (std::size_t y = 0; y < a.outputs.size(); ++y) {
        if (!pin(a.out_leg[y], b.out_leg[b_out.at(a.outputs[y])])) return false;
    }

    std::set<std::pair<std::size_t, std::size_t>> b_edges(b.edges.begin(), b.edges.end());
    std::vector<std::size_t> out_a(n, 0), in_a(n, 0), out_b(n, 0), in_b(n, 0);
    for (auto [u, v] : a.edges) ++out_a[u], ++in_a[v];
    for (auto [u, v] : b.edges) ++out_b[u], ++in_b[v];

    auto consistent = [&]() {
        for (auto [u, v] : a.edges) {
            if (map[u] != n && map[v] != n && !b_edges.count({map[u], map[v]})) return false;
        }
        return true;
    };
    for (std::size_t u = 0; u < n; ++u) {
        if (map[u] != n && (out_a[u] != out_b[map[u]] || in_a[u] != in_b[map[u]])) return false;
    }
    if (!consistent()) return false;

    std::function<bool(std::size_t)> search = [&](std::size_t u) {
        if (u == n) return consistent();
        if (map[u] != n) return search(u + 1);
        for (std::size_t v = 0; v < n; ++v) {
            if (inverse[v] != n || out_a[u] != out_b[v] || in_a[u] != in_b[v]) continue;
            map[u] = v;
            inverse[v] = u;
            if (consistent() && search(u + 1)) return true;
            map[u] = n;
            inverse[v] = n;
        }
        return false;
    };
    return search(0);
}

GraphHom make_graph_hom(OpenGraph source, OpenGraph target,
                        const std::map<std::string, std::string>& vertex_map) {
    if (source.inputs != target.inputs || source.outputs != target.outputs) {
        throw Error("BoundaryMismatch", "a homomorphism needs identical boundaries");
    }
    GraphHom hom{std::move(source), std::move(target), {}};
    hom.vertex_map.resize(hom.source.vertices.size());
    std::vector<bool> seen(hom.source.vertices.size(), false);
    for (const auto& [from, to] : vertex_map) {
        std::size_t u = hom.source.vertex_index(from);
        hom.vertex_map[u] = hom.target.vertex_index(to);
        seen[u] = true;
    }
    for (std::size_t u = 0; u < seen.size(); ++u) {
        if (!seen[u]) {
            throw Error("InvalidHom", "vertex '" + hom.source.vertices[u] + "' is not mapped",
                        {hom.source.vertices[u]});
        }
    }
    std::set<std::pair<std::size_t, std::size_t>> target_edges(hom.target.edges.begin(),
                                                                hom.target.edges.end());
    for (auto [u, v] : hom.source.edges) {
        if (!target_edges.count({hom.vertex_map[u], hom.vertex_map[v]})) {
            throw Error("InvalidHom", "edge " + hom.source.vertices[u] + " -> " +
                                          hom.source.vertices[v] + " is not preserved",
                        {hom.source.vertices[u], hom.source.vertices[v]});
        }
    }
    for (std::size_t x = 0; x < hom.source.inputs.size(); ++x) {
        if (hom.vertex_map[hom.source.in_leg[x]] != hom.target.in_leg[x]) {
            throw Error("InvalidHom", "input leg '" + hom.source.inputs[x] + "' is not preserved",
                        {hom.source.inputs[x]});
        }
    }
    for (std::size_t y = 0; y < hom.source.outputs.size(); ++y) {
        if (hom.vertex_map[hom.source.out_leg[y]] != hom.target.out_leg[y]) {
            throw Error("InvalidHom", "output leg '" + hom.source.outputs[y] + "' is not preserved",
                        {hom.source.outputs[y]});
        }
    }
    return hom;
}

// --- laxator ---------------------------------------------------------------

namespace {

// Re-indexes r so that its middle set follows `order` (for outputs/inputs
// listed in different orders on the two sides).
Relation with_cod_order(const Relation& r, const std::vector<std::string>& order) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    Relation out{r.dom, order, {}};
    for (auto [a, b] : r.pairs) out.pairs.emplace_back(a, pos.at(r.cod[b]));
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

std::string component_label(const Laxator& lax) {
    return "R(G);R(H) = " + lax.parts.to_string() + " <= R(G;H) = " + lax.composite.to_string();
}

std::vector<bool> parts_mask(const Laxator& lax) {
    std::vector<bool> base;
    for (auto [a, b] : lax.composite.pairs) base.push_back(lax.parts.contains(a, b));
    return base;
}

}  // namespace

Laxator laxator(const OpenGraph& g, const OpenGraph& h) {
    OpenGraph gh = compose(g, h);
    Laxator lax{compose_rel(with_cod_order(reach(g), h.inputs), reach(h)), reach(gh)};
    if (!lax.parts.subset_of(lax.composite)) {
        throw Error("LaxityViolation", "reach(G);reach(H) is not contained in reach(G;H)");
    }
    return lax;
}

ObstructionReport laxator_obstructions(const OpenGraph& g, const OpenGraph& h,
                                       std::size_t materialize_cap) {
    Laxator lax = laxator(g, h);
    return powerset_obstructions(lax.composite.pair_names(), parts_mask(lax),
                                 "pi0(Rel/R(G;H), " + component_label(lax) + ")", materialize_cap);
}

ObstructionReport pi1_laxator(const OpenGraph& g, const OpenGraph& h) {
    Laxator lax = laxator(g, h);
    // pi_1 only sees the objects below the point, so the thin category of
    // relations inside the parts suffices.
    auto names = lax.parts.pair_names();
    if (names.size() > 8) {
        throw Error("CapExceeded", "laxator component has more than 8 pairs");
    }
    const std::size_t count = std::size_t{1} << names.size();
    std::vector<std::string> elements;
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<std::size_t> members;
        for (std::size_t u = 0; u < names.size(); ++u) {
            if (s >> u & 1u) members.push_back(u);
        }
        elements.push_back(subset_name(names, members));
    }
    BitMatrix leq(count);
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            if ((a & ~b) == 0) leq.set(a, b);
        }
    }
    CategoryPtr thin = share(as_category(Poset::unchecked(std::move(elements), std::move(leq))));
    ObstructionReport r = pi1(thin, static_cast<Index>(count - 1));
    r.context = "pi1(Rel/R(G;H), " + component_label(lax) + ")";
    if (!r.trivial) throw Error("OracleMismatch", "pi_1 of a posetal slice is not trivial");
    return r;
}

ActResult act(const GraphHom& hom, const OpenGraph& h, std::size_t materialize_cap) {
    ObstructionReport before = laxator_obstructions(hom.source, h, materialize_cap);
    ObstructionReport after = laxator_obstructions(hom.target, h, materialize_cap);
    if (!before.invariant || !after.invariant) {
        throw Error("NotMaterialized", "obstruction posets are too large to map explicitly");
    }
    Laxator lax_after = laxator(hom.target, h);
    auto after_names = lax_after.composite.pair_names();
    std::map<std::string, std::size_t> after_pos;
    for (std::size_t i = 0; i < after_names.size(); ++i) after_pos[after_names[i]] = i;
    auto after_parts = parts_mask(lax_after);

    Laxator lax_before = laxator(hom.source, h);
    auto before_names = lax_before.composite.pair_names();

    auto masks = powerset_masks(parts_mask(lax_before));
    const PointedPoset& tgt = *after.invariant;
    std::vector<std::size_t> images(before.invariant->size(), tgt.basepoint);
    for (std::size_t k = 0; k < masks.size(); ++k) {
        std::vector<std::size_t> members;
        bool inside_parts = true;
        for (std::size_t u = 0; u < before_names.size(); ++u) {
            if (!(masks[k] >> u & 1u)) continue;
            std::size_t idx = after_pos.at(before_names[u]);
            members.push_back(idx);
            inside_parts = inside_parts && after_parts[idx];
        }
        if (inside_parts) continue;
        std::sort(members.begin(), members.end());
        images[k + 1] = tgt.poset.index_of(subset_name(after_names, members));
    }
    PointedMap flow(*before.invariant, tgt, std::move(images));
    return {hom.target, std::move(before), std::move(after), std::move(flow)};
}

// --- text formats ----------------------------------------------------------

OpenGraph parse_open_graph(std::string_view text) {
    OpenGraph g;
    std::vector<std::pair<std::string, std::string>> edges, ins, outs;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) -> Error {
        return Error("ParseError", "line " + std::to_string(line_no) + ": " + msg);
    };
    for (const auto& raw : detail::split_lines(text)) {
        ++line_no;
        auto tokens = detail::tokenize(detail::strip_comment(raw));
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0];
        std::string rest = detail::trim(detail::strip_comment(raw)).substr(kw.size());
        if (kw == "inputs" || kw == "outputs") {
            auto& target = kw == "inputs" ? g.inputs : g.outputs;
            for (auto& s : detail::split_list(rest, ',')) target.push_back(s);
        } else if (kw == "vertex") {
            for (std::size_t i = 1; i < tokens.size(); ++i) g.vertices.push_back(tokens[i]);
        } else if (kw == "edge") {
            if (tokens.size() != 4 || tokens[2] != "->") throw fail("expected `edge u -> v`");
            edges.emplace_back(tokens[1], tokens[3]);
        } else if (kw == "in" || kw == "out") {
            if (tokens.size() != 4 || tokens[2] != "=") throw fail("expected `" + kw + " x = v`");
            (kw == "in" ? ins : outs).emplace_back(tokens[1], tokens[3]);
        } else {
            throw fail("unknown keyword '" + kw + "'");
        }
    }
    auto vertex = [&](const std::string& name) {
        auto it = std::find(g.vertices.begin(), g.vertices.end(), name);
        if (it == g.vertices.end()) {
            throw Error("DanglingReference", "unknown vertex '" + name + "'", {name});
        }
        return static_cast<std::size_t>(it - g.vertices.begin());
    };
    for (const auto& [u, v] : edges) g.edges.emplace_back(vertex(u), vertex(v));
    auto legs = [&](const std::vector<std::string>& boundary,
                    const std::vector<std::pair<std::string, std::string>>& given,
                    std::vector<std::size_t>& out, const char* what) {
        std::map<std::string, std::size_t> assigned;
        for (const auto& [x, v] : given) {
            if (std::find(boundary.begin(), boundary.end(), x) == boundary.end()) {
                throw Error("DanglingReference", std::string("unknown ") + what + " '" + x + "'", {x});
            }
            if (!assigned.emplace(x, vertex(v)).second) {
                throw Error("DuplicateIdentifier", std::string(what) + " '" + x + "' has two legs", {x});
            }
        }
        for (const auto& x : boundary) {
            auto it = assigned.find(x);
            if (it == assigned.end()) {
                throw Error("InvalidGraph", std::string(what) + " '" + x + "' has no leg", {x});
            }
            out.push_back(it->second);
        }
    };
    legs(g.inputs, ins, g.in_leg, "input");
    legs(g.outputs, outs, g.out_leg, "output");
    g.normalize();
    return g;
}

std::string format_open_graph(const OpenGraph& g) {
    std::ostringstream out;
    auto list = [&](const char* kw, const std::vector<std::string>& names) {
        out << kw;
        for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : " ") << names[i];
        out << "\n";
    };
    list("inputs", g.inputs);
    list("outputs", g.outputs);
    out << "vertex";
    for (const auto& v : g.vertices) out << " " << v;
    out << "\n";
    for (auto [u, v] : g.edges) out << "edge " << g.vertices[u] << " -> " << g.vertices[v] << "\n";
    for (std::size_t x = 0; x < g.inputs.size(); ++x) {
        out << "in " << g.inputs[x] << " = " << g.vertices[g.in_leg[x]] << "\n";
    }
    for (std::size_t y = 0; y < g.outputs.size(); ++y) {
        out << "out " << g.outputs[y] << " = " << g.vertices[g.out_leg[y]] << "\n";
    }
    return out.str();
}

std::string open_graph_dot(const OpenGraph& g, const std::string& name) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream out;
    out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
    for (const auto& v : g.vertices) out << "  " << quote("v:" + v) << " [label=" << quote(v) << "];\n";
    for (const auto& x : g.inputs) {
        out << "  " << quote("in:" + x) << " [shape=plaintext, label=" << quote(x) << "];\n";
    }
    for (const auto& y : g.outputs) {
        out << "  " << quote("out:" + y) << " [shape=plaintext, label=" << quote(y) << "];\n";
    }
    for (auto [u, v] : g.edges) {
        out << "  " << quote("v:" + g.vertices[u]) << " -> " << quote("v:" + g.vertices[v]) << ";\n";
    }
    for (std::size_t x = 0; x < g.inputs.size(); ++x) {
        out << "  " << quote("in:" + g.inputs[x]) << " -> " << quote("v:" + g.vertices[g.in_leg[x]])
            << " [style=dashed, arrowhead=none];\n";
    }
    for (std::size_t y = 0; y < g.outputs.size(); ++y) {
        out << "  " << quote("v:" + g.vertices[g.out_leg[y]]) << " -> " << quote("out:" + g.outputs[y])
            << " [style=dashed, arrowhead=none];\n";
    }
    out << "}\n";
    return out.str();
}

HomSpec parse_hom_spec(std::string_view text) {
    HomSpec spec;
    std::size_t line_no = 0;
    for (const auto& raw : detail::split_lines(text)) {
        ++line_no;
        auto tokens = detail::tokenize(detail::strip_comment(raw));
        if (tokens.empty()) continue;
        auto fail = [&](const std::string& msg) {
            return Error("ParseError", "line " + std::to_string(line_no) + ": " + msg);
        };
        if ((tokens[0] == "source" || tokens[0] == "target") && tokens.size() == 2) {
            (tokens[0] == "source" ? spec.source_path : spec.target_path) = tokens[1];
        } else if (tokens[0] == "map" && tokens.size() == 4 && tokens[2] == "=>") {
            if (!spec.vertex_map.emplace(tokens[1], tokens[3]).second) {
                throw Error("DuplicateIdentifier", "vertex '" + tokens[1] + "' mapped twice", {tokens[1]});
            }
        } else {
            throw fail("expected `source <path>`, `target <path>` or `map u => v`");
        }
    }
    if (spec.source_path.empty() || spec.target_path.empty()) {
        throw Error("ParseError", "homomorphism needs both `source` and `target`");
    }
    return spec;
}

}  // namespace obstructia
