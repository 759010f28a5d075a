#pragma once

#include <memory>
#include <string>
#include <vector>

#include "obstructia/fincat.hpp"
#include "obstructia/order.hpp"
#include "obstructia/report.hpp"

namespace obstructia {

/// A zeroth homotopy poset together with the element each object of the
/// underlying category lands in (the basepoint for objects with a morphism
/// into the base object).
struct HomotopyPoset {
    PointedPoset pointed;
    std::vector<std::size_t> element_of;
};

/// pi_0(C, x) by poset reflection followed by collapsing the lower set of [x].
HomotopyPoset pi0_poset(const FinCat& c, Index x);

/// pi_0(C, x) read off directly from hom-sets: classes of objects with no
/// morphism into x, [x] below a class iff some span x <- z -> y exists.
/// Independent of pi0_poset; used as its cross-check.
PointedPoset pi0_explicit(const FinCat& c, Index x);

struct Pi1Poset {
    ParallelArrows arrows;
    HomotopyPoset pi;  // element_of is indexed by objects of arrows.category
};

/// pi_1(C, x) = pi_0 of the parallel arrows over x at (id_x, id_x), pointed at [x].
Pi1Poset pi1_poset(CategoryPtr c, Index x, const SizeCaps& caps = {});

/// pi_1(C, x) from pairs of distinct parallel arrows and equalizers, without
/// building the parallel-arrow category.
PointedPoset pi1_explicit(const FinCat& c, Index x);

ObstructionReport pi0(const FinCat& c, Index x, const std::string& label = "C");
ObstructionReport pi1(CategoryPtr c, Index x, const SizeCaps& caps = {},
                      const std::string& label = "C");

// Brute-force predicates over hom-sets.
bool is_weak_terminal(const FinCat& c, Index x);
bool is_subterminal(const FinCat& c, Index x);
bool is_terminal(const FinCat& c, Index x);
bool is_split_epi(const FinCat& c, Index f);
bool is_mono(const FinCat& c, Index f);

/// Memoized pi_0 and pi_1 posets of one category, built on first use, so
/// that many induced maps can share them. Not thread-safe.
class HomotopyCache {
public:
    explicit HomotopyCache(CategoryPtr c, const SizeCaps& caps = {});

    const CategoryPtr& category() const noexcept { return c_; }
    const HomotopyPoset& pi0(Index x);
    const Pi1Poset& pi1(Index x);

private:
    CategoryPtr c_;
    SizeCaps caps_;
    std::vector<std::unique_ptr<HomotopyPoset>> pi0_;
    std::vector<std::unique_ptr<Pi1Poset>> pi1_;
};

/// pi_i(C, x) -> pi_i(C, y) induced by f : x -> y.
PointedMap pi_object_action(CategoryPtr c, Index f, int i, const SizeCaps& caps = {});
PointedMap pi_object_action(HomotopyCache& cache, Index f, int i);

/// pi_i(C, x) -> pi_i(D, Fx) induced by F : C -> D.
PointedMap pi_functor_map(const FunctorData& f, Index x, int i, const SizeCaps& caps = {});
/// Same, with the posets of the source and target categories memoized.
PointedMap pi_functor_map(const FunctorData& f, Index x, int i, HomotopyCache& source,
                          HomotopyCache& target);

/// pi_i(D/Gx, alpha_x) -> pi_i(D/Gy, alpha_y) induced by f : x -> y, for
/// alpha : F => G. A slice object h : d -> Gx goes to h;Gf.
PointedMap covariance_map(const NatTransData& alpha, Index f, int i, const SizeCaps& caps = {});

/// Slices D/Gx and their homotopy posets, built once per object x.
class CovarianceCache {
public:
    explicit CovarianceCache(NatTransData alpha, const SizeCaps& caps = {});

    struct Entry {
        Slice over;
        Index at = 0;  // alpha_x as a slice object
        HomotopyCache posets;
    };
    const NatTransData& transformation() const noexcept { return alpha_; }
    Entry& at(Index x);

private:
    NatTransData alpha_;
    SizeCaps caps_;
    std::vector<std::unique_ptr<Entry>> entries_;
};

PointedMap covariance_map(CovarianceCache& cache, Index f, int i);

struct MorphismAnalysis {
    ObstructionReport pi0, pi1;
    bool split_epi = false;
    bool mono = false;
    bool iso = false;
};

/// Slice invariants of f : X -> Y at the slice object f over Y. Flags are
/// cross-checked against the brute-force predicates (OracleMismatch).
MorphismAnalysis analyze_morphism(CategoryPtr c, Index f, const SizeCaps& caps = {},
                                  const std::string& label = "C");

}  // namespace obstructia
