#include "obstructia/homotopy.hpp"

#include <algorithm>
#include <numeric>

#include "obstructia/error.hpp"

namespace obstructia {

namespace {

std::string base_label(const std::string& name) { return "[" + name + "]"; }

/// Groups items into classes of a symmetric relation given by `same`, names
/// each class by its least member name and returns (class per item, sorted names).
template <typename Same>
std::pair<std::vector<std::size_t>, std::vector<std::string>> classify(
    const std::vector<std::string>& names, Same same) {
    constexpr std::size_t kUnset = ~std::size_t{0};
    std::vector<std::size_t> cls(names.size(), kUnset);
    std::vector<std::string> class_names;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (cls[i] != kUnset) continue;
        cls[i] = class_names.size();
        std::string least = names[i];
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            if (cls[j] == kUnset && same(i, j)) {
                cls[j] = cls[i];
                least = std::min(least, names[j]);
            }
        }
        class_names.push_back(least);
    }
    std::vector<std::size_t> order(class_names.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return class_names[a] < class_names[b]; });
    std::vector<std::size_t> rank(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    std::vector<std::string> sorted;
    for (std::size_t k : order) sorted.push_back(class_names[k]);
    for (auto& c : cls) c = rank[c];
    return {cls, sorted};
}

/// Assembles a pointed poset: basepoint first, then `classes`; `base_below(k)`
/// and `below(k, l)` give the order.
template <typename BaseBelow, typename Below>
PointedPoset pointed_from(const std::string& basepoint, const std::vector<std::string>& classes,
                          BaseBelow base_below, Below below) {
    std::vector<std::string> names{basepoint};
    names.insert(names.end(), classes.begin(), classes.end());
    BitMatrix leq(names.size());
    leq.set(0, 0);
    for (std::size_t k = 0; k < classes.size(); ++k) {
        if (base_below(k)) leq.set(0, k + 1);
        for (std::size_t l = 0; l < classes.size(); ++l) {
            if (below(k, l)) leq.set(k + 1, l + 1);
        }
    }
    return PointedPoset{Poset(std::move(names), std::move(leq)), 0};
}

}  // namespace

HomotopyPoset pi0_poset(const FinCat& c, Index x) {
    if (x >= c.object_count()) throw Error("UnknownObject", "object index out of range");
    Reflection refl = poset_reflection(c);
    std::vector<std::size_t> seed{refl.class_of[x]};
    ElementSet lower = lower_closure(refl.poset, seed);
    std::vector<std::size_t> image = collapse_image(refl.poset, lower);
    HomotopyPoset out{collapse_lower(refl.poset, lower, base_label(c.object_name(x))), {}};
    out.element_of.reserve(c.object_count());
    for (Index z = 0; z < c.object_count(); ++z) out.element_of.push_back(image[refl.class_of[z]]);
    return out;
}

PointedPoset pi0_explicit(const FinCat& c, Index x) {
    if (x >= c.object_count()) throw Error("UnknownObject", "object index out of range");
    std::vector<Index> outside;
    std::vector<std::string> names;
    for (Index y = 0; y < c.object_count(); ++y) {
        if (!c.has_morphism(y, x)) {
            outside.push_back(y);
            names.push_back(c.object_name(y));
        }
    }
    auto [cls, classes] = classify(names, [&](std::size_t i, std::size_t j) {
        return c.has_morphism(outside[i], outside[j]) && c.has_morphism(outside[j], outside[i]);
    });
    std::vector<Index> rep(classes.size());
    for (std::size_t i = 0; i < outside.size(); ++i) rep[cls[i]] = outside[i];

    auto spanned = [&](std::size_t k) {
        for (Index z = 0; z < c.object_count(); ++z) {
            if (c.has_morphism(z, x) && c.has_morphism(z, rep[k])) return true;
        }
        return false;
    };
    auto below = [&](std::size_t k, std::size_t l) { return c.has_morphism(rep[k], rep[l]); };
    return pointed_from(base_label(c.object_name(x)), classes, spanned, below);
}

Pi1Poset pi1_poset(CategoryPtr c, Index x, const SizeCaps& caps) {
    if (x >= c->object_count()) throw Error("UnknownObject", "object index out of range");
    ParallelArrows arrows = parallel_arrows(c, x, caps);
    HomotopyPoset pi = pi0_poset(*arrows.category, arrows.diagonal());
    // pi_0 names its basepoint after the object (id_x,id_x); pi_1 is pointed at [x].
    std::vector<std::string> names = pi.pointed.poset.elements();
    names[pi.pointed.basepoint] = base_label(c->object_name(x));
    pi.pointed.poset = Poset::unchecked(std::move(names), pi.pointed.poset.relation());
    return Pi1Poset{std::move(arrows), std::move(pi)};
}

PointedPoset pi1_explicit(const FinCat& c, Index x) {
    if (x >= c.object_count()) throw Error("UnknownObject", "object index out of range");
    struct Pair {
        Index f, g;
    };
    std::vector<Pair> pairs;
    std::vector<std::string> names;
    for (Index y = 0; y < c.object_count(); ++y) {
        for (Index f : c.hom(y, x)) {
            for (Index g : c.hom(y, x)) {
                if (f == g) continue;
                pairs.push_back({f, g});
                names.push_back("(" + c.morphism_name(f) + "," + c.morphism_name(g) + ")");
            }
        }
    }
    auto factors = [&](const Pair& p, const Pair& q) {
        for (Index h : c.hom(c.dom(p.f), c.dom(q.f))) {
            if (c.compose(h, q.f) == p.f && c.compose(h, q.g) == p.g) return true;
        }
        return false;
    };
    auto [cls, classes] = classify(names, [&](std::size_t i, std::size_t j) {
        return factors(pairs[i], pairs[j]) && factors(pairs[j], pairs[i]);
    });
    std::vector<Pair> rep(classes.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) rep[cls[i]] = pairs[i];

    auto equalized = [&](std::size_t k) {
        for (Index h : c.incoming(c.dom(rep[k].f))) {
            if (c.compose(h, rep[k].f) == c.compose(h, rep[k].g)) return true;
        }
        return false;
    };
    auto below = [&](std::size_t k, std::size_t l) { return factors(rep[k], rep[l]); };
    return pointed_from(base_label(c.object_name(x)), classes, equalized, below);
}

namespace {

void require_object(const FinCat& c, Index x) {
    if (x >= c.object_count()) throw Error("UnknownObject", "object index out of range");
}

void require_morphism(const FinCat& c, Index f) {
    if (f >= c.morphism_count()) throw Error("UnknownMorphism", "morphism index out of range");
}

}  // namespace

ObstructionReport pi0(const FinCat& c, Index x, const std::string& label) {
    require_object(c, x);
    return make_report(pi0_poset(c, x).pointed, "pi0(" + label + ", " + c.object_name(x) + ")");
}

ObstructionReport pi1(CategoryPtr c, Index x, const SizeCaps& caps, const std::string& label) {
    require_object(*c, x);
    std::string context = "pi1(" + label + ", " + c->object_name(x) + ")";
    return make_report(pi1_poset(std::move(c), x, caps).pi.pointed, std::move(context));
}

bool is_weak_terminal(const FinCat& c, Index x) {
    require_object(c, x);
    for (Index y = 0; y < c.object_count(); ++y) {
        if (c.hom(y, x).empty()) return false;
    }
    return true;
}

bool is_subterminal(const FinCat& c, Index x) {
    require_object(c, x);
    for (Index y = 0; y < c.object_count(); ++y) {
        if (c.hom(y, x).size() > 1) return false;
    }
    return true;
}

bool is_terminal(const FinCat& c, Index x) {
    require_object(c, x);
    for (Index y = 0; y < c.object_count(); ++y) {
        if (c.hom(y, x).size() != 1) return false;
    }
    return true;
}

bool is_split_epi(const FinCat& c, Index f) {
    require_morphism(c, f);
    for (Index s : c.hom(c.cod(f), c.dom(f))) {
        if (c.is_identity(c.compose(s, f))) return true;
    }
    return false;
}

bool is_mono(const FinCat& c, Index f) {
    require_morphism(c, f);
    for (Index z = 0; z < c.object_count(); ++z) {
        auto arrows = c.hom(z, c.dom(f));
        for (Index g : arrows) {
            for (Index h : arrows) {
                if (g != h && c.compose(g, f) == c.compose(h, f)) return false;
            }
        }
    }
    return true;
}

namespace {

/// Records source element -> target element, rejecting a second, different
/// image for the same element.
class ImageBuilder {
public:
    explicit ImageBuilder(std::size_t n) : images_(n, kUnset) {}

    void assign(std::size_t from, std::size_t to, const PointedPoset& source) {
        if (images_[from] != kUnset && images_[from] != to) {
            throw Error("IllDefinedMap", "element '" + source.poset.name(from) +
                                             "' has representatives with different images");
        }
        images_[from] = to;
    }

    std::vector<std::size_t> finish(const PointedPoset& source) {
        for (std::size_t e = 0; e < images_.size(); ++e) {
            if (images_[e] == kUnset) {
                throw Error("IllDefinedMap", "element '" + source.poset.name(e) + "' has no image");
            }
        }
        return std::move(images_);
    }

private:
    static constexpr std::size_t kUnset = ~std::size_t{0};
    std::vector<std::size_t> images_;
};

void check_index(int i) {
    if (i != 0 && i != 1) throw Error("UnsupportedIndex", "only pi_0 and pi_1 are defined");
}

}  // namespace

HomotopyCache::HomotopyCache(CategoryPtr c, const SizeCaps& caps)
    : c_(std::move(c)), caps_(caps), pi0_(c_->object_count()), pi1_(c_->object_count()) {}

const HomotopyPoset& HomotopyCache::pi0(Index x) {
    require_object(*c_, x);
    if (!pi0_[x]) pi0_[x] = std::make_unique<HomotopyPoset>(pi0_poset(*c_, x));
    return *pi0_[x];
}

const Pi1Poset& HomotopyCache::pi1(Index x) {
    require_object(*c_, x);
    if (!pi1_[x]) pi1_[x] = std::make_unique<Pi1Poset>(pi1_poset(c_, x, caps_));
    return *pi1_[x];
}

PointedMap pi_object_action(CategoryPtr cp, Index f, int i, const SizeCaps& caps) {
    HomotopyCache cache(std::move(cp), caps);
    return pi_object_action(cache, f, i);
}

PointedMap pi_object_action(HomotopyCache& cache, Index f, int i) {
    check_index(i);
    const FinCat& c = *cache.category();
    require_morphism(c, f);
    Index x = c.dom(f);
    Index y = c.cod(f);
    if (i == 0) {
        const HomotopyPoset& src = cache.pi0(x);
        const HomotopyPoset& tgt = cache.pi0(y);
        ImageBuilder images(src.pointed.size());
        for (Index z = 0; z < c.object_count(); ++z) {
            images.assign(src.element_of[z], tgt.element_of[z], src.pointed);
        }
        return PointedMap(src.pointed, tgt.pointed, images.finish(src.pointed));
    }
    const Pi1Poset& src = cache.pi1(x);
    const Pi1Poset& tgt = cache.pi1(y);
    ImageBuilder images(src.pi.pointed.size());
    for (Index o = 0; o < src.arrows.object_pair.size(); ++o) {
        auto [g, h] = src.arrows.object_pair[o];
        Index to = tgt.arrows.object_of(c.compose(g, f), c.compose(h, f));
        images.assign(src.pi.element_of[o], tgt.pi.element_of[to], src.pi.pointed);
    }
    return PointedMap(src.pi.pointed, tgt.pi.pointed, images.finish(src.pi.pointed));
}

PointedMap pi_functor_map(const FunctorData& functor, Index x, int i, const SizeCaps& caps) {
    HomotopyCache source(functor.source, caps), target(functor.target, caps);
    return pi_functor_map(functor, x, i, source, target);
}

PointedMap pi_functor_map(const FunctorData& functor, Index x, int i, HomotopyCache& source,
                          HomotopyCache& target) {
    check_index(i);
    const FinCat& c = *functor.source;
    if (source.category() != functor.source || target.category() != functor.target) {
        throw Error("TypeMismatch", "caches do not belong to the functor's categories");
    }
    require_object(c, x);
    Index fx = functor.on_object(x);
    if (i == 0) {
        const HomotopyPoset& src = source.pi0(x);
        const HomotopyPoset& tgt = target.pi0(fx);
        ImageBuilder images(src.pointed.size());
        for (Index z = 0; z < c.object_count(); ++z) {
            images.assign(src.element_of[z], tgt.element_of[functor.on_object(z)], src.pointed);
        }
        return PointedMap(src.pointed, tgt.pointed, images.finish(src.pointed));
    }
    const Pi1Poset& src = source.pi1(x);
    const Pi1Poset& tgt = target.pi1(fx);
    ImageBuilder images(src.pi.pointed.size());
    for (Index o = 0; o < src.arrows.object_pair.size(); ++o) {
        auto [g, h] = src.arrows.object_pair[o];
        Index to = tgt.arrows.object_of(functor(g), functor(h));
        images.assign(src.pi.element_of[o], tgt.pi.element_of[to], src.pi.pointed);
    }
    return PointedMap(src.pi.pointed, tgt.pi.pointed, images.finish(src.pi.pointed));
}

CovarianceCache::CovarianceCache(NatTransData alpha, const SizeCaps& caps)
    : alpha_(std::move(alpha)), caps_(caps), entries_(alpha_.source.source->object_count()) {}

CovarianceCache::Entry& CovarianceCache::at(Index x) {
    require_object(*alpha_.source.source, x);
    if (!entries_[x]) {
        Slice over = slice(alpha_.source.target, alpha_.target.on_object(x), caps_);
        Index at = over.object_of(alpha_.components[x]);
        CategoryPtr cat = over.category;
        entries_[x] = std::make_unique<Entry>(Entry{std::move(over), at, HomotopyCache(cat, caps_)});
    }
    return *entries_[x];
}

PointedMap covariance_map(const NatTransData& alpha, Index f, int i, const SizeCaps& caps) {
    CovarianceCache cache(alpha, caps);
    return covariance_map(cache, f, i);
}

PointedMap covariance_map(CovarianceCache& cache, Index f, int i) {
    check_index(i);
    const NatTransData& alpha = cache.transformation();
    const FinCat& c = *alpha.source.source;
    const FinCat& d = *alpha.source.target;
    require_morphism(c, f);
    Index gf = alpha.target(f);
    Index ff = alpha.source(f);
    CovarianceCache::Entry& ex = cache.at(c.dom(f));
    CovarianceCache::Entry& ey = cache.at(c.cod(f));
    const Slice& over_x = ex.over;
    const Slice& over_y = ey.over;

    try {
        if (i == 0) {
            const HomotopyPoset& src = ex.posets.pi0(ex.at);
            const HomotopyPoset& tgt = ey.posets.pi0(ey.at);
            ImageBuilder images(src.pointed.size());
            for (Index o = 0; o < over_x.object_morphism.size(); ++o) {
                Index h = over_x.object_morphism[o];
                Index to = over_y.object_of(d.compose(h, gf));
                images.assign(src.element_of[o], tgt.element_of[to], src.pointed);
            }
            return PointedMap(src.pointed, tgt.pointed, images.finish(src.pointed));
        }
        const Pi1Poset& src = ex.posets.pi1(ex.at);
        const Pi1Poset& tgt = ey.posets.pi1(ey.at);
        ImageBuilder images(src.pi.pointed.size());
        for (Index o = 0; o < src.arrows.object_pair.size(); ++o) {
            auto [p, q] = src.arrows.object_pair[o];
            Index pu = over_x.morphism_underlying[p];
            Index qu = over_x.morphism_underlying[q];
            Index p2 = over_y.morphism_of(d.compose(pu, ff), ey.at);
            Index q2 = over_y.morphism_of(d.compose(qu, ff), ey.at);
            images.assign(src.pi.element_of[o], tgt.pi.element_of[tgt.arrows.object_of(p2, q2)],
                          src.pi.pointed);
        }
        return PointedMap(src.pi.pointed, tgt.pi.pointed, images.finish(src.pi.pointed));
    } catch (const Error& e) {
        if (e.kind() == "UnknownObject" || e.kind() == "UnknownMorphism") {
            throw Error("IllDefinedMap", std::string("covariance image missing: ") + e.what());
        }
        throw;
    }
}

MorphismAnalysis analyze_morphism(CategoryPtr cp, Index f, const SizeCaps& caps,
                                  const std::string& label) {
    const FinCat& c = *cp;
    if (f >= c.morphism_count()) throw Error("UnknownMorphism", "morphism index out of range");
    Slice s = slice(cp, c.cod(f), caps);
    Index at = s.object_of(f);
    std::string over = label + "/" + c.object_name(c.cod(f));

    MorphismAnalysis a;
    a.pi0 = pi0(*s.category, at, over);
    a.pi1 = pi1(s.category, at, caps, over);
    a.split_epi = a.pi0.trivial;
    a.mono = a.pi1.trivial;
    a.iso = a.split_epi && a.mono;

    if (a.split_epi != is_split_epi(c, f) || a.mono != is_mono(c, f)) {
        throw Error("OracleMismatch",
                    "slice invariants of '" + c.morphism_name(f) +
                        "' disagree with the direct split-epi/mono check",
                    {c.morphism_name(f)});
    }
    return a;
}

}  // namespace obstructia
