#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obstructia/report.hpp"
#include "obstructia/setcat.hpp"

namespace obstructia {

enum class ContextKind { Cartesian, GF2 };

/// An object of one of the two monoidal contexts: a finite set (cartesian
/// product) or a GF(2) vector space of a given dimension (tensor product).
struct StateObject {
    ContextKind kind = ContextKind::Cartesian;
    std::vector<std::string> elements;  // cartesian
    std::size_t dim = 0;                // gf2

    static StateObject cartesian(std::vector<std::string> elements);
    /// DimensionCap above max_gf2_dim.
    static StateObject gf2(std::size_t dim);
};

inline constexpr std::size_t max_gf2_dim = 6;
/// Tensor products are enumerated explicitly, so their dimension is capped too.
inline constexpr std::size_t max_gf2_tensor_dim = 12;

/// Vectors are bit masks, coordinate i at bit i, named "[c0c1...]".
std::string gf2_name(std::uint64_t v, std::size_t dim);

struct StateSet {
    StateObject object;
    std::vector<std::string> states;
};

StateSet states_of(const StateObject& a);

/// A (x) B. Cartesian elements are named "(a,b)"; GF(2) dimensions multiply.
StateObject tensor(const StateObject& a, const StateObject& b);

/// Row-major outer product: coordinate i*n + j is a_i b_j.
std::uint64_t gf2_tensor(std::uint64_t a, std::size_t m, std::uint64_t b, std::size_t n);
/// v in dims (m, n) is a tensor of two vectors iff its m x n matrix has rank <= 1.
bool gf2_separable(std::uint64_t v, std::size_t m, std::size_t n);

/// (psi_A, psi_B) |-> psi_A (x) psi_B, as a function states(A) x states(B) -> states(A (x) B).
FiniteFunction laxator(const StateObject& a, const StateObject& b);

struct StateObstructions {
    ObstructionReport pi0, pi1;
};

StateObstructions obstructions(const StateObject& a, const StateObject& b,
                               std::size_t materialize_cap = 10);

/// states(A x B) -> states(A) x states(B) by projections. WrongContext for GF(2).
FiniteFunction oplaxator_cartesian(const StateObject& a, const StateObject& b);

/// A morphism of a context: a function on elements, or a GF(2)-linear map
/// whose matrix is stored as cod.dim rows of dom.dim bits.
struct StateMorphism {
    StateObject dom, cod;
    std::vector<std::size_t> mapping;  // cartesian
    std::vector<std::uint64_t> rows;   // gf2

    static StateMorphism function(StateObject dom, StateObject cod, std::vector<std::size_t> mapping);
    /// Rows given as bit strings, e.g. {"10", "01"}.
    static StateMorphism matrix(const std::vector<std::string>& rows, std::size_t dom_dim);
    static StateMorphism identity(const StateObject& a);

    /// Image of the state with the given enumeration index.
    std::size_t apply(std::size_t state) const;
};

/// f (x) g acting on states of A (x) B, by enumeration index.
std::vector<std::size_t> tensor_action(const StateMorphism& f, const StateMorphism& g);

/// Induced map on pi_0 obstruction posets of the laxators. A subset S of
/// states goes to (f (x) g)(S), or to the basepoint when that image is
/// separable. `map` is present when both posets are materialized.
struct LocalAction {
    StateObstructions source, target;
    std::vector<std::size_t> state_image;       // A (x) B -> A' (x) B'
    std::vector<bool> source_separable, target_separable;
    bool preserves_separability = true;
    std::optional<PointedMap> map;

    /// Image of a subset of source states: nullopt for the basepoint.
    std::optional<std::vector<std::size_t>> image_of(const std::vector<std::size_t>& subset) const;
};

/// TypeMismatch when f, g are not in the same context or mis-sized.
LocalAction local_action(const StateMorphism& f, const StateMorphism& g,
                         std::size_t materialize_cap = 10);

}  // namespace obstructia
