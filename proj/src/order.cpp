#include "obstructia/order.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "obstructia/error.hpp"

namespace obstructia {

bool BitMatrix::merge_row(std::size_t i, std::size_t j) {
    bool changed = false;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t before = bits_[i * words_ + w];
        std::uint64_t after = before | bits_[j * words_ + w];
        if (after != before) {
            bits_[i * words_ + w] = after;
            changed = true;
        }
    }
    return changed;
}

bool BitMatrix::row_subset(std::size_t i, std::size_t j) const {
    for (std::size_t w = 0; w < words_; ++w) {
        if (bits_[i * words_ + w] & ~bits_[j * words_ + w]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

Poset Poset::unchecked(std::vector<std::string> elements, BitMatrix leq) {
    Poset p;
    p.elements_ = std::move(elements);
    p.leq_ = std::move(leq);
    for (std::size_t i = 0; i < p.elements_.size(); ++i) {
        if (!p.lookup_.emplace(p.elements_[i], i).second) {
            throw Error("DuplicateIdentifier", "element '" + p.elements_[i] + "' appears twice",
                        {p.elements_[i]});
        }
    }
    return p;
}

Poset::Poset(std::vector<std::string> elements, BitMatrix leq) {
    *this = unchecked(std::move(elements), std::move(leq));
    check();
}

Poset Poset::from_pairs(std::vector<std::string> elements,
                        std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    const std::size_t n = elements.size();
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    for (auto [a, b] : pairs) {
        if (a >= n || b >= n) throw Error("DanglingReference", "order pair out of range");
        m.set(a, b);
    }
    // Warshall: if i <= k then up(i) |= up(k).
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (m.test(i, k)) m.merge_row(i, k);
        }
    }
    return Poset(std::move(elements), std::move(m));
}

void Poset::check() const {
    const std::size_t n = size();
    if (leq_.size() != n) throw Error("NotAPartialOrder", "relation has the wrong size");
    for (std::size_t a = 0; a < n; ++a) {
        if (!leq_.test(a, a)) {
            throw Error("NotAPartialOrder", "not reflexive at '" + elements_[a] + "'",
                        {elements_[a]});
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (leq_.test(a, b) && leq_.test(b, a)) {
                throw Error("NotAPartialOrder",
                            "'" + elements_[a] + "' and '" + elements_[b] + "' violate antisymmetry",
                            {elements_[a], elements_[b]});
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            // a <= b requires up(b) to be contained in up(a).
            if (leq_.test(a, b) && !leq_.row_subset(b, a)) {
                throw Error("NotAPartialOrder",
                            "not transitive through '" + elements_[a] + "' <= '" + elements_[b] + "'",
                            {elements_[a], elements_[b]});
            }
        }
    }
}

std::optional<std::size_t> Poset::find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t Poset::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error("UnknownElement", "no element named '" + std::string(name) + "'",
                {std::string(name)});
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::leq_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a) {
        for (std::size_t b = 0; b < size(); ++b) {
            if (leq_.test(a, b)) out.emplace_back(a, b);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

MonotoneMap::MonotoneMap(const Poset& source, const Poset& target,
                         std::vector<std::size_t> images)
    : images_(std::move(images)) {
    if (images_.size() != source.size()) throw Error("NotMonotone", "map is not total");
    for (std::size_t e : images_) {
        if (e >= target.size()) throw Error("NotMonotone", "image outside the target");
    }
    for (std::size_t a = 0; a < source.size(); ++a) {
        for (std::size_t b = 0; b < source.size(); ++b) {
            if (source.leq(a, b) && !target.leq(images_[a], images_[b])) {
                throw Error("NotMonotone",
                            "'" + source.name(a) + "' <= '" + source.name(b) + "' is not preserved",
                            {source.name(a), source.name(b)});
            }
        }
    }
}

PointedMap::PointedMap(PointedPoset source, PointedPoset target, std::vector<std::size_t> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    try {
        MonotoneMap check(source_.poset, target_.poset, images_);
    } catch (const Error& e) {
        throw Error("IllDefinedMap", e.what(), {e.witnesses().begin(), e.witnesses().end()});
    }
    if (images_[source_.basepoint] != target_.basepoint) {
        throw Error("IllDefinedMap", "basepoint '" + source_.basepoint_name() + "' is sent to '" +
                                         target_.poset.name(images_[source_.basepoint]) + "'");
    }
}

PointedMap PointedMap::identity(const PointedPoset& p) {
    std::vector<std::size_t> images(p.size());
    std::iota(images.begin(), images.end(), std::size_t{0});
    return PointedMap(p, p, std::move(images));
}

PointedMap PointedMap::then(const PointedMap& next) const {
    if (target_.poset.elements() != next.source_.poset.elements()) {
        throw Error("TypeMismatch", "pointed maps are not composable");
    }
    std::vector<std::size_t> images;
    images.reserve(images_.size());
    for (std::size_t e : images_) images.push_back(next.images_[e]);
    return PointedMap(source_, next.target_, std::move(images));
}

std::map<std::string, std::string> PointedMap::by_name() const {
    std::map<std::string, std::string> out;
    for (std::size_t e = 0; e < images_.size(); ++e) {
        out.emplace(source_.poset.name(e), target_.poset.name(images_[e]));
    }
    return out;
}

bool PointedMap::sends_everything_to_basepoint() const {
    return std::all_of(images_.begin(), images_.end(),
                       [&](std::size_t e) { return e == target_.basepoint; });
}

bool same_elementwise(const PointedMap& a, const PointedMap& b) {
    return a.source().basepoint_name() == b.source().basepoint_name() &&
           a.target().basepoint_name() == b.target().basepoint_name() &&
           a.by_name() == b.by_name();
}

// ---------------------------------------------------------------------------

Reflection poset_reflection(const FinCat& c) {
    const std::size_t n = c.object_count();
    constexpr std::size_t kUnset = ~std::size_t{0};
    std::vector<std::size_t> cls(n, kUnset);
    std::vector<std::vector<Index>> members;
    for (Index x = 0; x < n; ++x) {
        if (cls[x] != kUnset) continue;
        std::size_t k = members.size();
        members.push_back({x});
        cls[x] = k;
        // Composition is closed, so x -> y and y -> x are direct hom checks.
        for (Index f : c.outgoing(x)) {
            Index y = c.cod(f);
            if (cls[y] == kUnset && c.has_morphism(y, x)) {
                cls[y] = k;
                members[k].push_back(y);
            }
        }
    }

    std::vector<std::string> names;
    for (const auto& group : members) {
        std::string least = c.object_name(group.front());
        for (Index y : group) least = std::min(least, c.object_name(y));
        names.push_back(least);
    }
    std::vector<std::size_t> order(names.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    std::vector<std::size_t> rank(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    Reflection r;
    r.class_of.resize(n);
    for (Index x = 0; x < n; ++x) r.class_of[x] = rank[cls[x]];
    std::vector<std::string> sorted_names;
    for (std::size_t i : order) sorted_names.push_back(names[i]);

    BitMatrix leq(names.size());
    for (Index f = 0; f < c.morphism_count(); ++f) {
        leq.set(r.class_of[c.dom(f)], r.class_of[c.cod(f)]);
    }
    r.poset = Poset::unchecked(std::move(sorted_names), std::move(leq));
    return r;
}

ElementSet lower_closure(const Poset& p, std::span<const std::size_t> seeds) {
    std::vector<bool> in(p.size(), false);
    for (std::size_t s : seeds) {
        if (s >= p.size()) throw Error("UnknownElement", "seed outside the poset");
        for (std::size_t e = 0; e < p.size(); ++e) {
            if (p.leq(e, s)) in[e] = true;
        }
    }
    ElementSet out;
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (in[e]) out.push_back(e);
    }
    return out;
}

namespace {

std::vector<bool> validate_lower(const Poset& p, std::span<const std::size_t> lower) {
    if (lower.empty()) throw Error("EmptyCollapseSet", "cannot collapse the empty set");
    std::vector<bool> in(p.size(), false);
    for (std::size_t l : lower) {
        if (l >= p.size()) throw Error("UnknownElement", "collapse set leaves the poset");
        in[l] = true;
    }
    for (std::size_t l : lower) {
        for (std::size_t e = 0; e < p.size(); ++e) {
            if (p.leq(e, l) && !in[e]) {
                throw Error("NotDownClosed",
                            "'" + p.name(e) + "' lies below '" + p.name(l) + "' but is not collapsed",
                            {p.name(e), p.name(l)});
            }
        }
    }
    return in;
}

}  // namespace

std::vector<std::size_t> collapse_image(const Poset& p, std::span<const std::size_t> lower) {
    auto in = validate_lower(p, lower);
    std::vector<std::size_t> image(p.size(), 0);
    std::size_t next = 1;
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (!in[e]) image[e] = next++;
    }
    return image;
}

PointedPoset collapse_lower(const Poset& p, std::span<const std::size_t> lower,
                            const std::string& basepoint_name) {
    auto in = validate_lower(p, lower);
    std::vector<std::size_t> survivors;
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (!in[e]) survivors.push_back(e);
    }
    std::vector<std::string> names{basepoint_name};
    for (std::size_t e : survivors) names.push_back(p.name(e));

    BitMatrix leq(names.size());
    leq.set(0, 0);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        for (std::size_t j = 0; j < survivors.size(); ++j) {
            if (p.leq(survivors[i], survivors[j])) leq.set(i + 1, j + 1);
        }
        for (std::size_t l : lower) {
            if (p.leq(l, survivors[i])) {
                leq.set(0, i + 1);
                break;
            }
        }
    }
    return PointedPoset{Poset::unchecked(std::move(names), std::move(leq)), 0};
}

bool is_trivial(const PointedPoset& pp) { return pp.size() == 1; }

ElementSet minimal_obstructions(const PointedPoset& pp) {
    ElementSet out;
    const Poset& p = pp.poset;
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (e == pp.basepoint) continue;
        bool minimal = true;
        for (std::size_t d = 0; d < p.size() && minimal; ++d) {
            if (d != pp.basepoint && p.less(d, e)) minimal = false;
        }
        if (minimal) out.push_back(e);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse(const Poset& p) {
    const std::size_t n = p.size();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> up(n * words, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (p.less(a, b)) up[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    std::vector<std::uint64_t> row(words);
    for (std::size_t a = 0; a < n; ++a) {
        std::copy_n(up.begin() + static_cast<std::ptrdiff_t>(a * words), words, row.begin());
        for (std::size_t c = 0; c < n; ++c) {
            if (!p.less(a, c)) continue;
            const std::uint64_t* uc = up.data() + c * words;
            for (std::size_t w = 0; w < words; ++w) row[w] &= ~uc[w];
        }
        for (std::size_t b = 0; b < n; ++b) {
            if (row[b / 64] >> (b % 64) & 1u) covers.emplace_back(a, b);
        }
    }
    return covers;
}

std::optional<PointedMap> iso_pointed(const PointedPoset& a, const PointedPoset& b) {
    const std::size_t n = a.size();
    if (n != b.size()) return std::nullopt;
    const Poset& pa = a.poset;
    const Poset& pb = b.poset;

    struct Signature {
        std::size_t below, above, lower_covers, upper_covers;
        bool operator==(const Signature&) const = default;
    };
    auto signatures = [](const Poset& p) {
        std::vector<Signature> sig(p.size(), Signature{0, 0, 0, 0});
        for (std::size_t x = 0; x < p.size(); ++x) {
            for (std::size_t y = 0; y < p.size(); ++y) {
                if (p.less(y, x)) ++sig[x].below;
                if (p.less(x, y)) ++sig[x].above;
            }
        }
        for (auto [lo, hi] : hasse(p)) {
            ++sig[hi].lower_covers;
            ++sig[lo].upper_covers;
        }
        return sig;
    };
    auto sa = signatures(pa);
    auto sb = signatures(pb);
    if (!(sa[a.basepoint] == sb[b.basepoint])) return std::nullopt;

    // Assign elements with the fewest candidates first.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> candidates(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (sa[x] == sb[y]) ++candidates[x];
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if ((x == a.basepoint) != (y == a.basepoint)) return x == a.basepoint;
        return candidates[x] < candidates[y];
    });

    constexpr std::size_t kUnset = ~std::size_t{0};
    std::vector<std::size_t> image(n, kUnset);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
        if (k == n) return true;
        std::size_t x = order[k];
        for (std::size_t y = 0; y < n; ++y) {
            if (used[y] || !(sa[x] == sb[y])) continue;
            if ((x == a.basepoint) != (y == b.basepoint)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                std::size_t z = order[j];
                if (pa.leq(x, z) != pb.leq(y, image[z]) || pa.leq(z, x) != pb.leq(image[z], y)) {
                    ok = false;
                }
            }
            if (!ok) continue;
            image[x] = y;
            used[y] = true;
            if (extend(k + 1)) return true;
            used[y] = false;
            image[x] = kUnset;
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;
    return PointedMap(a, b, std::move(image));
}

FinCat as_category(const Poset& p) {
    std::vector<FinCat::Morphism> mors;
    std::unordered_map<std::uint64_t, Index> lookup;
    std::vector<Index> ids(p.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = 0; b < p.size(); ++b) {
            if (!p.leq(a, b)) continue;
            Index idx = static_cast<Index>(mors.size());
            mors.push_back({p.name(a) + "<=" + p.name(b), static_cast<Index>(a), static_cast<Index>(b)});
            lookup.emplace((std::uint64_t{static_cast<Index>(a)} << 32) | b, idx);
            if (a == b) ids[a] = idx;
        }
    }
    auto compose = [&](Index f, Index g) {
        return lookup.at((std::uint64_t{mors[f].dom} << 32) | mors[g].cod);
    };
    return FinCat::assemble(p.elements(), mors, std::move(ids), compose,
                            SizeCaps{~std::size_t{0}, ~std::size_t{0}});
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string to_dot(const PointedPoset& pp, const std::string& graph_name) {
    const Poset& p = pp.poset;
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p.name(a) < p.name(b); });
    auto covers = hasse(p);
    std::sort(covers.begin(), covers.end(), [&](const auto& x, const auto& y) {
        return std::tie(p.name(x.first), p.name(x.second)) <
               std::tie(p.name(y.first), p.name(y.second));
    });

    std::ostringstream out;
    out << "digraph " << dot_quote(graph_name) << " {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=ellipse];\n";
    out << "  edge [arrowhead=none];\n";
    for (std::size_t e : order) {
        out << "  " << dot_quote(p.name(e));
        if (e == pp.basepoint) out << " [shape=doublecircle]";
        out << ";\n";
    }
    for (auto [lo, hi] : covers) {
        out << "  " << dot_quote(p.name(lo)) << " -> " << dot_quote(p.name(hi)) << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace obstructia
