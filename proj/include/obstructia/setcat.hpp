#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obstructia/fincat.hpp"
#include "obstructia/report.hpp"

namespace obstructia {

/// A total function between finite labelled sets.
struct FiniteFunction {
    std::string name = "f";
    std::vector<std::string> domain;
    std::vector<std::string> codomain;
    std::vector<std::size_t> mapping;  // domain index -> codomain index

    /// Checks labels are distinct and the mapping is total and well-typed
    /// (InvalidFunction).
    static FiniteFunction make(std::string name, std::vector<std::string> domain,
                               std::vector<std::string> codomain,
                               const std::map<std::string, std::string>& mapping);

    std::vector<bool> image() const;
    bool injective() const;
    bool surjective() const;

    bool operator==(const FiniteFunction&) const = default;
};

/// `fn <name> : {a,b} -> {c,d} ; a=>c, b=>c`
FiniteFunction parse_function(std::string_view text);
std::string format_function(const FiniteFunction& f);

/// Pairs (x0, x1) with f(x0) = f(x1), sorted lexicographically by index.
struct KernelPair {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    std::vector<std::size_t> first_projection() const;
    std::vector<std::size_t> second_projection() const;
};

KernelPair kernel_pair(const FiniteFunction& f);

/// Skeleton of finite sets: objects "0".."k" (one per cardinality) and every
/// function as a morphism, named f<m>to<n>_<values>. CapExceeded above `cap`.
FinCat finset_ambient(std::size_t k, std::size_t cap = 4);
/// The morphism of finset_ambient representing f (labels taken in order).
Index ambient_morphism(const FinCat& ambient, const FiniteFunction& f);

/// The powerset-shaped pointed poset {basepoint} + {S subset of U : S not inside B},
/// ordered by inclusion, with the basepoint (named "{}") below everything.
/// Materialized when |U| <= materialize_cap.
ObstructionReport powerset_obstructions(const std::vector<std::string>& universe,
                                        const std::vector<bool>& base, std::string context,
                                        std::size_t materialize_cap = 10);

/// Subset masks of the non-basepoint elements of a materialized
/// powerset_obstructions poset; mask k is element k + 1.
std::vector<std::uint64_t> powerset_masks(const std::vector<bool>& base);

/// Obstructions to surjectivity: U = codomain, B = image.
ObstructionReport pi0_function(const FiniteFunction& f, std::size_t materialize_cap = 10);
/// Obstructions to injectivity: U = kernel pair, B = diagonal.
ObstructionReport pi1_function(const FiniteFunction& f, std::size_t materialize_cap = 10);

/// "{a,b}" in universe order.
std::string subset_name(const std::vector<std::string>& universe, const std::vector<std::size_t>& members);

}  // namespace obstructia
