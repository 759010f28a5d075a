#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "obstructia/fincat.hpp"

namespace obstructia {

/// Square boolean matrix with packed rows.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

    std::size_t size() const noexcept { return n_; }
    bool test(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
    /// row(i) |= row(j); returns whether row(i) changed.
    bool merge_row(std::size_t i, std::size_t j);
    /// row(i) is a subset of row(j).
    bool row_subset(std::size_t i, std::size_t j) const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

using ElementSet = std::vector<std::size_t>;  // sorted element indices

class Poset {
public:
    Poset() = default;
    /// Checks reflexivity, transitivity and antisymmetry (NotAPartialOrder).
    Poset(std::vector<std::string> elements, BitMatrix leq);
    /// Builds the reflexive-transitive closure of `pairs`, then checks antisymmetry.
    static Poset from_pairs(std::vector<std::string> elements,
                            std::span<const std::pair<std::size_t, std::size_t>> pairs);
    /// Skips the law checks; for constructions that are orders by design.
    static Poset unchecked(std::vector<std::string> elements, BitMatrix leq);

    std::size_t size() const noexcept { return elements_.size(); }
    const std::string& name(std::size_t i) const { return elements_.at(i); }
    const std::vector<std::string>& elements() const noexcept { return elements_; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    bool leq(std::size_t a, std::size_t b) const { return leq_.test(a, b); }
    bool less(std::size_t a, std::size_t b) const { return a != b && leq_.test(a, b); }
    const BitMatrix& relation() const noexcept { return leq_; }

    /// All (a, b) with a <= b, reflexive pairs included.
    std::vector<std::pair<std::size_t, std::size_t>> leq_pairs() const;

    void check() const;

private:
    std::vector<std::string> elements_;
    BitMatrix leq_;
    std::unordered_map<std::string, std::size_t> lookup_;
};

struct PointedPoset {
    Poset poset;
    std::size_t basepoint = 0;

    const std::string& basepoint_name() const { return poset.name(basepoint); }
    std::size_t size() const { return poset.size(); }
};

/// Order-preserving map between posets (NotMonotone on construction failure).
class MonotoneMap {
public:
    MonotoneMap(const Poset& source, const Poset& target, std::vector<std::size_t> images);
    const std::vector<std::size_t>& images() const noexcept { return images_; }

private:
    std::vector<std::size_t> images_;
};

/// Basepoint-preserving monotone map. Construction verifies both properties
/// and throws IllDefinedMap on failure.
class PointedMap {
public:
    PointedMap(PointedPoset source, PointedPoset target, std::vector<std::size_t> images);

    static PointedMap identity(const PointedPoset& p);

    const PointedPoset& source() const noexcept { return source_; }
    const PointedPoset& target() const noexcept { return target_; }
    std::size_t operator()(std::size_t e) const { return images_.at(e); }
    const std::vector<std::size_t>& images() const noexcept { return images_; }

    /// this, then `next`.
    PointedMap then(const PointedMap& next) const;

    /// Element map keyed by names; two maps agree element-wise iff these agree.
    std::map<std::string, std::string> by_name() const;
    bool sends_everything_to_basepoint() const;

private:
    PointedPoset source_, target_;
    std::vector<std::size_t> images_;
};

bool same_elementwise(const PointedMap& a, const PointedMap& b);

/// Poset reflection of a category: classes of mutually reachable objects,
/// each named by its lexicographically least member.
struct Reflection {
    Poset poset;
    std::vector<std::size_t> class_of;  // object -> element
};

Reflection poset_reflection(const FinCat& c);

ElementSet lower_closure(const Poset& p, std::span<const std::size_t> seeds);

/// Identifies the down-closed set `lower` to a fresh basepoint named
/// `basepoint_name`. Survivors keep their names and relative order and come
/// after the basepoint (index 0).
PointedPoset collapse_lower(const Poset& p, std::span<const std::size_t> lower,
                            const std::string& basepoint_name);
/// Where each element of `p` lands in collapse_lower(p, lower, ...).
std::vector<std::size_t> collapse_image(const Poset& p, std::span<const std::size_t> lower);

bool is_trivial(const PointedPoset& pp);
ElementSet minimal_obstructions(const PointedPoset& pp);

/// Cover relation (transitive reduction), as (lower, upper) pairs.
std::vector<std::pair<std::size_t, std::size_t>> hasse(const Poset& p);

std::optional<PointedMap> iso_pointed(const PointedPoset& a, const PointedPoset& b);

/// Thin category with one morphism a -> b per a <= b.
FinCat as_category(const Poset& p);

/// Hasse diagram in DOT, elements in lexicographic order, basepoint double-circled.
std::string to_dot(const PointedPoset& pp, const std::string& graph_name = "hasse");

}  // namespace obstructia
