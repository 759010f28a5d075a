#include "obstructia/fincat.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "obstructia/error.hpp"

namespace obstructia {

namespace {

std::uint64_t pack(Index a, Index b) { return (std::uint64_t{a} << 32) | b; }

void check_objects_cap(std::size_t count, const SizeCaps& caps, const std::string& what) {
    if (count > caps.max_objects) {
        throw Error("SizeCapExceeded",
                    what + " would have " + std::to_string(count) +
                        " objects (cap " + std::to_string(caps.max_objects) + ")");
    }
}

}  // namespace

FinCat FinCat::assemble(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                        std::vector<Index> identities,
                        const std::function<Index(Index, Index)>& compose,
                        const SizeCaps& caps) {
    FinCat c;
    c.objects_ = std::move(objects);
    c.morphisms_ = std::move(morphisms);
    c.identities_ = std::move(identities);
    const std::size_t n = c.objects_.size();
    const std::size_t m = c.morphisms_.size();
    if (c.identities_.size() != n) {
        throw Error("MissingIdentity", "identity table does not cover every object");
    }

    for (Index x = 0; x < n; ++x) {
        if (!c.object_lookup_.emplace(c.objects_[x], x).second) {
            throw Error("DuplicateIdentifier", "object '" + c.objects_[x] + "' declared twice",
                        {c.objects_[x]});
        }
    }
    for (Index f = 0; f < m; ++f) {
        const auto& mor = c.morphisms_[f];
        if (mor.dom >= n || mor.cod >= n) {
            throw Error("DanglingReference", "morphism '" + mor.name + "' has unknown endpoints",
                        {mor.name});
        }
        if (!c.morphism_lookup_.emplace(mor.name, f).second) {
            throw Error("DuplicateIdentifier", "morphism '" + mor.name + "' declared twice",
                        {mor.name});
        }
    }

    std::vector<std::vector<Index>> out(n), in(n);
    for (Index f = 0; f < m; ++f) {
        out[c.morphisms_[f].dom].push_back(f);
        in[c.morphisms_[f].cod].push_back(f);
    }
    c.out_offset_.assign(n + 1, 0);
    c.in_offset_.assign(n + 1, 0);
    c.out_pos_.assign(m, 0);
    for (Index x = 0; x < n; ++x) {
        std::stable_sort(out[x].begin(), out[x].end(), [&](Index a, Index b) {
            return c.morphisms_[a].cod < c.morphisms_[b].cod;
        });
        std::stable_sort(in[x].begin(), in[x].end(), [&](Index a, Index b) {
            return c.morphisms_[a].dom < c.morphisms_[b].dom;
        });
        c.out_offset_[x + 1] = c.out_offset_[x] + out[x].size();
        c.in_offset_[x + 1] = c.in_offset_[x] + in[x].size();
        for (std::size_t i = 0; i < out[x].size(); ++i) {
            c.out_pos_[out[x][i]] = static_cast<Index>(i);
        }
        c.out_.insert(c.out_.end(), out[x].begin(), out[x].end());
        c.in_.insert(c.in_.end(), in[x].begin(), in[x].end());
    }

    for (Index x = 0; x < n; ++x) {
        Index id = c.identities_[x];
        if (id >= m || c.morphisms_[id].dom != x || c.morphisms_[id].cod != x) {
            throw Error("MissingIdentity",
                        "identity of '" + c.objects_[x] + "' is not an endomorphism of it",
                        {c.objects_[x]});
        }
    }

    c.comp_offset_.assign(m + 1, 0);
    for (Index f = 0; f < m; ++f) {
        Index y = c.morphisms_[f].cod;
        c.comp_offset_[f + 1] = c.comp_offset_[f] + (c.out_offset_[y + 1] - c.out_offset_[y]);
    }
    if (c.comp_offset_[m] > caps.max_composable_pairs) {
        throw Error("SizeCapExceeded", "composition table would have " +
                                           std::to_string(c.comp_offset_[m]) + " entries");
    }
    c.comp_.resize(c.comp_offset_[m]);
    for (Index f = 0; f < m; ++f) {
        auto after = c.outgoing(c.morphisms_[f].cod);
        for (std::size_t i = 0; i < after.size(); ++i) {
            Index g = after[i];
            Index h = compose(f, g);
            if (h >= m || c.morphisms_[h].dom != c.morphisms_[f].dom ||
                c.morphisms_[h].cod != c.morphisms_[g].cod) {
                std::string hn = h < m ? c.morphisms_[h].name : std::string("?");
                throw Error("BadCompositionTyping",
                            "composite of '" + c.morphisms_[f].name + "' and '" +
                                c.morphisms_[g].name + "' is mistyped ('" + hn + "')",
                            {c.morphisms_[f].name, c.morphisms_[g].name, hn});
            }
            c.comp_[c.comp_offset_[f] + i] = h;
        }
    }
    return c;
}

FinCat FinCat::validate(const RawCategory& raw) {
    std::unordered_map<std::string, Index> objects;
    for (const auto& o : raw.objects) {
        if (!objects.emplace(o, static_cast<Index>(objects.size())).second) {
            throw Error("DuplicateIdentifier", "object '" + o + "' declared twice", {o});
        }
    }
    auto object = [&](const std::string& name, const std::string& context) {
        auto it = objects.find(name);
        if (it == objects.end()) {
            throw Error("DanglingReference",
                        context + " refers to unknown object '" + name + "'", {name});
        }
        return it->second;
    };

    std::vector<Morphism> morphisms;
    std::unordered_map<std::string, Index> mor_index;
    for (const auto& mr : raw.morphisms) {
        Morphism mor{mr.id, object(mr.dom, "morphism '" + mr.id + "'"),
                     object(mr.cod, "morphism '" + mr.id + "'")};
        if (!mor_index.emplace(mr.id, static_cast<Index>(morphisms.size())).second) {
            throw Error("DuplicateIdentifier", "morphism '" + mr.id + "' declared twice",
                        {mr.id});
        }
        morphisms.push_back(std::move(mor));
    }
    auto morphism = [&](const std::string& name, const std::string& context) {
        auto it = mor_index.find(name);
        if (it == mor_index.end()) {
            throw Error("DanglingReference",
                        context + " refers to unknown morphism '" + name + "'", {name});
        }
        return it->second;
    };

    constexpr Index kNone = ~Index{0};
    std::vector<Index> identities(raw.objects.size(), kNone);
    for (const auto& [o, mname] : raw.identities) {
        Index x = object(o, "identity declaration");
        Index f = morphism(mname, "identity declaration");
        if (identities[x] != kNone && identities[x] != f) {
            throw Error("MissingIdentity", "object '" + o + "' has two identities", {o});
        }
        identities[x] = f;
    }
    for (std::size_t x = 0; x < identities.size(); ++x) {
        if (identities[x] == kNone) {
            throw Error("MissingIdentity", "object '" + raw.objects[x] + "' has no identity",
                        {raw.objects[x]});
        }
    }

    std::unordered_map<std::uint64_t, Index> table;
    for (const auto& cm : raw.compositions) {
        std::string ctx = "composite '" + cm.first + " ; " + cm.second + "'";
        Index f = morphism(cm.first, ctx);
        Index g = morphism(cm.second, ctx);
        Index h = morphism(cm.result, ctx);
        if (morphisms[f].cod != morphisms[g].dom || morphisms[h].dom != morphisms[f].dom ||
            morphisms[h].cod != morphisms[g].cod) {
            throw Error("BadCompositionTyping", ctx + " = '" + cm.result + "' is mistyped",
                        {cm.first, cm.second, cm.result});
        }
        auto [it, fresh] = table.emplace(pack(f, g), h);
        if (!fresh && it->second != h) {
            throw Error("BadCompositionTyping", ctx + " is given two different values",
                        {cm.first, cm.second});
        }
    }

    auto lookup = [&](Index f, Index g) -> Index {
        if (auto it = table.find(pack(f, g)); it != table.end()) return it->second;
        if (identities[morphisms[f].dom] == f) return g;
        if (identities[morphisms[g].cod] == g) return f;
        throw Error("BadCompositionTyping",
                    "no composite given for '" + morphisms[f].name + " ; " + morphisms[g].name +
                        "'",
                    {morphisms[f].name, morphisms[g].name});
    };

    SizeCaps unbounded{~std::size_t{0}, ~std::size_t{0}};
    // The lookup reads `morphisms` and `identities`, so pass copies.
    FinCat c = assemble(raw.objects, morphisms, identities, lookup, unbounded);
    c.check_laws();
    return c;
}

Index FinCat::compose(Index f, Index g) const {
    if (morphisms_[f].cod != morphisms_[g].dom) {
        throw Error("BadCompositionTyping", "'" + morphisms_[f].name + "' and '" +
                                                morphisms_[g].name + "' are not composable");
    }
    return comp_[comp_offset_[f] + out_pos_[g]];
}

std::span<const Index> FinCat::outgoing(Index x) const {
    return {out_.data() + out_offset_[x], out_offset_[x + 1] - out_offset_[x]};
}

std::span<const Index> FinCat::incoming(Index x) const {
    return {in_.data() + in_offset_[x], in_offset_[x + 1] - in_offset_[x]};
}

std::span<const Index> FinCat::hom(Index a, Index b) const {
    auto all = outgoing(a);
    auto lo = std::lower_bound(all.begin(), all.end(), b,
                               [&](Index f, Index target) { return morphisms_[f].cod < target; });
    auto hi = std::upper_bound(lo, all.end(), b,
                               [&](Index target, Index f) { return target < morphisms_[f].cod; });
    return {all.data() + (lo - all.begin()), static_cast<std::size_t>(hi - lo)};
}

std::optional<Index> FinCat::find_object(std::string_view name) const {
    auto it = object_lookup_.find(std::string(name));
    if (it == object_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<Index> FinCat::find_morphism(std::string_view name) const {
    auto it = morphism_lookup_.find(std::string(name));
    if (it == morphism_lookup_.end()) return std::nullopt;
    return it->second;
}

Index FinCat::object_index(std::string_view name) const {
    if (auto x = find_object(name)) return *x;
    throw Error("UnknownObject", "no object named '" + std::string(name) + "'",
                {std::string(name)});
}

Index FinCat::morphism_index(std::string_view name) const {
    if (auto f = find_morphism(name)) return *f;
    throw Error("UnknownMorphism", "no morphism named '" + std::string(name) + "'",
                {std::string(name)});
}

void FinCat::check_laws() const {
    const auto& mor = morphisms_;
    for (Index f = 0; f < mor.size(); ++f) {
        for (Index g : outgoing(mor[f].cod)) {
            Index fg = compose(f, g);
            if (mor[fg].dom != mor[f].dom || mor[fg].cod != mor[g].cod) {
                throw Error("BadCompositionTyping",
                            "composite of '" + mor[f].name + "' and '" + mor[g].name +
                                "' is mistyped",
                            {mor[f].name, mor[g].name, mor[fg].name});
            }
        }
    }
    for (Index f = 0; f < mor.size(); ++f) {
        if (compose(identities_[mor[f].dom], f) != f || compose(f, identities_[mor[f].cod]) != f) {
            throw Error("MissingIdentity", "identity law fails at '" + mor[f].name + "'",
                        {mor[f].name});
        }
    }
    for (Index f = 0; f < mor.size(); ++f) {
        for (Index g : outgoing(mor[f].cod)) {
            Index fg = compose(f, g);
            for (Index h : outgoing(mor[g].cod)) {
                if (compose(fg, h) != compose(f, compose(g, h))) {
                    throw Error("NonAssociative",
                                "(" + mor[f].name + ";" + mor[g].name + ");" + mor[h].name +
                                    " differs from " + mor[f].name + ";(" + mor[g].name + ";" +
                                    mor[h].name + ")",
                                {mor[f].name, mor[g].name, mor[h].name});
                }
            }
        }
    }
}

RawCategory FinCat::to_raw() const {
    RawCategory raw;
    raw.objects = objects_;
    for (const auto& m : morphisms_) {
        raw.morphisms.push_back({m.name, objects_[m.dom], objects_[m.cod]});
    }
    for (Index x = 0; x < objects_.size(); ++x) {
        raw.identities.emplace_back(objects_[x], morphisms_[identities_[x]].name);
    }
    for (Index f = 0; f < morphisms_.size(); ++f) {
        if (is_identity(f)) continue;
        for (Index g : outgoing(morphisms_[f].cod)) {
            if (is_identity(g)) continue;
            raw.compositions.push_back(
                {morphisms_[f].name, morphisms_[g].name, morphisms_[compose(f, g)].name});
        }
    }
    return raw;
}

bool FinCat::operator==(const FinCat& other) const {
    if (objects_ != other.objects_ || identities_ != other.identities_ ||
        morphisms_.size() != other.morphisms_.size()) {
        return false;
    }
    for (Index f = 0; f < morphisms_.size(); ++f) {
        const auto& a = morphisms_[f];
        const auto& b = other.morphisms_[f];
        if (a.name != b.name || a.dom != b.dom || a.cod != b.cod) return false;
    }
    for (Index f = 0; f < morphisms_.size(); ++f) {
        for (Index g : outgoing(morphisms_[f].cod)) {
            if (compose(f, g) != other.compose(f, g)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

FunctorData validate_functor(CategoryPtr source, CategoryPtr target,
                             std::vector<Index> object_map, std::vector<Index> morphism_map) {
    const FinCat& c = *source;
    const FinCat& d = *target;
    if (object_map.size() != c.object_count() || morphism_map.size() != c.morphism_count()) {
        throw Error("NotAFunctor", "object or morphism map is not total");
    }
    for (Index x = 0; x < c.object_count(); ++x) {
        if (object_map[x] >= d.object_count()) {
            throw Error("NotAFunctor", "object '" + c.object_name(x) + "' maps outside target",
                        {c.object_name(x)});
        }
    }
    for (Index f = 0; f < c.morphism_count(); ++f) {
        Index ff = morphism_map[f];
        if (ff >= d.morphism_count() || d.dom(ff) != object_map[c.dom(f)] ||
            d.cod(ff) != object_map[c.cod(f)]) {
            throw Error("NotAFunctor",
                        "image of '" + c.morphism_name(f) + "' has the wrong endpoints",
                        {c.morphism_name(f)});
        }
    }
    for (Index x = 0; x < c.object_count(); ++x) {
        if (morphism_map[c.identity(x)] != d.identity(object_map[x])) {
            throw Error("NotAFunctor", "identity of '" + c.object_name(x) + "' is not preserved",
                        {c.morphism_name(c.identity(x))});
        }
    }
    for (Index f = 0; f < c.morphism_count(); ++f) {
        for (Index g : c.outgoing(c.cod(f))) {
            if (morphism_map[c.compose(f, g)] != d.compose(morphism_map[f], morphism_map[g])) {
                throw Error("NotAFunctor",
                            "composite '" + c.morphism_name(f) + " ; " + c.morphism_name(g) +
                                "' is not preserved",
                            {c.morphism_name(f), c.morphism_name(g)});
            }
        }
    }
    return FunctorData{std::move(source), std::move(target), std::move(object_map),
                       std::move(morphism_map)};
}

FunctorData validate_functor(CategoryPtr source, CategoryPtr target,
                             const std::map<std::string, std::string>& object_map,
                             const std::map<std::string, std::string>& morphism_map) {
    std::vector<Index> objs(source->object_count());
    std::vector<Index> mors(source->morphism_count());
    for (Index x = 0; x < objs.size(); ++x) {
        auto it = object_map.find(source->object_name(x));
        if (it == object_map.end()) {
            throw Error("NotAFunctor", "object '" + source->object_name(x) + "' is not mapped",
                        {source->object_name(x)});
        }
        auto y = target->find_object(it->second);
        if (!y) throw Error("DanglingReference", "unknown object '" + it->second + "'", {it->second});
        objs[x] = *y;
    }
    for (Index f = 0; f < mors.size(); ++f) {
        auto it = morphism_map.find(source->morphism_name(f));
        if (it == morphism_map.end()) {
            throw Error("NotAFunctor",
                        "morphism '" + source->morphism_name(f) + "' is not mapped",
                        {source->morphism_name(f)});
        }
        auto g = target->find_morphism(it->second);
        if (!g) {
            throw Error("DanglingReference", "unknown morphism '" + it->second + "'",
                        {it->second});
        }
        mors[f] = *g;
    }
    return validate_functor(std::move(source), std::move(target), std::move(objs),
                            std::move(mors));
}

FunctorData identity_functor(CategoryPtr c) {
    std::vector<Index> objs(c->object_count());
    std::vector<Index> mors(c->morphism_count());
    std::iota(objs.begin(), objs.end(), Index{0});
    std::iota(mors.begin(), mors.end(), Index{0});
    return FunctorData{c, c, std::move(objs), std::move(mors)};
}

FunctorData compose_functors(const FunctorData& f, const FunctorData& g) {
    if (f.target.get() != g.source.get() && !(*f.target == *g.source)) {
        throw Error("TypeMismatch", "functors are not composable");
    }
    FunctorData h{f.source, g.target, {}, {}};
    for (Index x : f.object_map) h.object_map.push_back(g.object_map[x]);
    for (Index m : f.morphism_map) h.morphism_map.push_back(g.morphism_map[m]);
    return h;
}

NatTransData validate_nat_trans(FunctorData source, FunctorData target,
                                std::vector<Index> components) {
    const FinCat& c = *source.source;
    const FinCat& d = *source.target;
    if (!(*source.source == *target.source) || !(*source.target == *target.target)) {
        throw Error("TypeMismatch", "functors have different source or target categories");
    }
    if (components.size() != c.object_count()) {
        throw Error("NotNatural", "component family is not total");
    }
    for (Index x = 0; x < c.object_count(); ++x) {
        Index a = components[x];
        if (a >= d.morphism_count() || d.dom(a) != source.object_map[x] ||
            d.cod(a) != target.object_map[x]) {
            throw Error("NotNatural",
                        "component at '" + c.object_name(x) + "' has the wrong endpoints",
                        {c.object_name(x)});
        }
    }
    for (Index h = 0; h < c.morphism_count(); ++h) {
        Index left = d.compose(source.morphism_map[h], components[c.cod(h)]);
        Index right = d.compose(components[c.dom(h)], target.morphism_map[h]);
        if (left != right) {
            throw Error("NotNatural",
                        "naturality square at '" + c.morphism_name(h) + "' does not commute",
                        {c.morphism_name(h), d.morphism_name(components[c.dom(h)]),
                         d.morphism_name(components[c.cod(h)])});
        }
    }
    return NatTransData{std::move(source), std::move(target), std::move(components)};
}

NatTransData validate_nat_trans(FunctorData source, FunctorData target,
                                const std::map<std::string, std::string>& components) {
    const FinCat& c = *source.source;
    std::vector<Index> comps(c.object_count());
    for (Index x = 0; x < comps.size(); ++x) {
        auto it = components.find(c.object_name(x));
        if (it == components.end()) {
            throw Error("NotNatural", "no component at '" + c.object_name(x) + "'",
                        {c.object_name(x)});
        }
        auto f = source.target->find_morphism(it->second);
        if (!f) {
            throw Error("DanglingReference", "unknown morphism '" + it->second + "'",
                        {it->second});
        }
        comps[x] = *f;
    }
    return validate_nat_trans(std::move(source), std::move(target), std::move(comps));
}

// ---------------------------------------------------------------------------
// Derived categories

FinCat opposite(const FinCat& c) {
    std::vector<std::string> objects;
    for (Index x = 0; x < c.object_count(); ++x) objects.push_back(c.object_name(x));
    std::vector<FinCat::Morphism> mors;
    for (Index f = 0; f < c.morphism_count(); ++f) {
        mors.push_back({c.morphism_name(f), c.cod(f), c.dom(f)});
    }
    std::vector<Index> ids;
    for (Index x = 0; x < c.object_count(); ++x) ids.push_back(c.identity(x));
    SizeCaps unbounded{~std::size_t{0}, ~std::size_t{0}};
    return FinCat::assemble(std::move(objects), std::move(mors), std::move(ids),
                            [&](Index f, Index g) { return c.compose(g, f); }, unbounded);
}

Index Slice::object_of(Index f) const {
    auto it = object_lookup.find(f);
    if (it == object_lookup.end()) {
        throw Error("UnknownObject", "morphism is not an object of this slice");
    }
    return it->second;
}

Index Slice::morphism_of(Index h, Index to) const {
    auto it = morphism_lookup.find(pack(h, to));
    if (it == morphism_lookup.end()) {
        throw Error("UnknownMorphism", "no such slice morphism");
    }
    return it->second;
}

Slice slice(CategoryPtr cp, Index x, const SizeCaps& caps) {
    const FinCat& c = *cp;
    if (x >= c.object_count()) throw Error("UnknownObject", "object index out of range");
    Slice s;
    s.base = x;
    auto over = c.incoming(x);
    check_objects_cap(over.size(), caps, "slice over '" + c.object_name(x) + "'");

    std::vector<std::string> objects;
    for (Index f : over) {
        s.object_lookup.emplace(f, static_cast<Index>(s.object_morphism.size()));
        s.object_morphism.push_back(f);
        objects.push_back(c.morphism_name(f));
    }

    std::vector<FinCat::Morphism> mors;
    std::vector<Index> ids(objects.size());
    for (Index to = 0; to < s.object_morphism.size(); ++to) {
        Index g = s.object_morphism[to];
        for (Index h : c.incoming(c.dom(g))) {
            Index from = s.object_lookup.at(c.compose(h, g));
            Index idx = static_cast<Index>(mors.size());
            mors.push_back({"[" + c.morphism_name(h) + ":" + objects[from] + "->" + objects[to] +
                                "]",
                            from, to});
            s.morphism_underlying.push_back(h);
            s.morphism_lookup.emplace(pack(h, to), idx);
            if (h == c.identity(c.dom(g))) ids[to] = idx;
        }
    }

    std::vector<Index> mor_cod;  // the lambda outlives the moved-from `mors`
    for (const auto& m : mors) mor_cod.push_back(m.cod);
    auto compose = [&](Index a, Index b) {
        Index hk = c.compose(s.morphism_underlying[a], s.morphism_underlying[b]);
        return s.morphism_lookup.at(pack(hk, mor_cod[b]));
    };
    s.category = share(FinCat::assemble(std::move(objects), std::move(mors), std::move(ids),
                                        compose, caps));

    std::vector<Index> obj_map;
    for (Index f : s.object_morphism) obj_map.push_back(c.dom(f));
    s.projection = FunctorData{s.category, cp, std::move(obj_map), s.morphism_underlying};
    return s;
}

Index ParallelArrows::object_of(Index f0, Index f1) const {
    auto it = object_lookup.find(pack(f0, f1));
    if (it == object_lookup.end()) {
        throw Error("UnknownObject", "pair is not an object of this parallel-arrow category");
    }
    return it->second;
}

Index ParallelArrows::morphism_of(Index h, Index to) const {
    auto it = morphism_lookup.find(pack(h, to));
    if (it == morphism_lookup.end()) throw Error("UnknownMorphism", "no such morphism");
    return it->second;
}

Index ParallelArrows::diagonal() const {
    Index id = projection.target->identity(base);
    return object_of(id, id);
}

std::size_t parallel_arrows_size(const FinCat& c, Index x) {
    std::size_t total = 0;
    for (Index y = 0; y < c.object_count(); ++y) {
        std::size_t k = c.hom(y, x).size();
        total += k * k;
    }
    return total;
}

ParallelArrows parallel_arrows(CategoryPtr cp, Index x, const SizeCaps& caps) {
    const FinCat& c = *cp;
    if (x >= c.object_count()) throw Error("UnknownObject", "object index out of range");
    check_objects_cap(parallel_arrows_size(c, x), caps,
                      "parallel arrows over '" + c.object_name(x) + "'");
    ParallelArrows p;
    p.base = x;

    std::vector<std::string> objects;
    std::vector<Index> obj_dom;
    for (Index y = 0; y < c.object_count(); ++y) {
        auto arrows = c.hom(y, x);
        for (Index f0 : arrows) {
            for (Index f1 : arrows) {
                p.object_lookup.emplace(pack(f0, f1), static_cast<Index>(objects.size()));
                p.object_pair.emplace_back(f0, f1);
                obj_dom.push_back(y);
                objects.push_back("(" + c.morphism_name(f0) + "," + c.morphism_name(f1) + ")");
            }
        }
    }

    std::vector<FinCat::Morphism> mors;
    std::vector<Index> ids(objects.size());
    std::size_t projected = 0;
    for (Index to = 0; to < p.object_pair.size(); ++to) {
        projected += c.incoming(obj_dom[to]).size();
    }
    if (projected > caps.max_composable_pairs) {
        throw Error("SizeCapExceeded", "parallel-arrow category would have " +
                                           std::to_string(projected) + " morphisms");
    }
    for (Index to = 0; to < p.object_pair.size(); ++to) {
        auto [g0, g1] = p.object_pair[to];
        for (Index h : c.incoming(obj_dom[to])) {
            Index from = p.object_lookup.at(pack(c.compose(h, g0), c.compose(h, g1)));
            Index idx = static_cast<Index>(mors.size());
            mors.push_back({"[" + c.morphism_name(h) + ":" + objects[from] + "->" + objects[to] +
                                "]",
                            from, to});
            p.morphism_underlying.push_back(h);
            p.morphism_lookup.emplace(pack(h, to), idx);
            if (h == c.identity(obj_dom[to])) ids[to] = idx;
        }
    }

    std::vector<Index> mor_cod;  // the lambda outlives the moved-from `mors`
    for (const auto& m : mors) mor_cod.push_back(m.cod);
    auto compose = [&](Index a, Index b) {
        Index hk = c.compose(p.morphism_underlying[a], p.morphism_underlying[b]);
        return p.morphism_lookup.at(pack(hk, mor_cod[b]));
    };
    p.category = share(FinCat::assemble(std::move(objects), std::move(mors), std::move(ids),
                                        compose, caps));
    p.projection = FunctorData{p.category, cp, std::move(obj_dom), p.morphism_underlying};
    return p;
}

FinCat arrow_category(const FinCat& c, const SizeCaps& caps) {
    check_objects_cap(c.morphism_count(), caps, "arrow category");
    std::vector<std::string> objects;
    for (Index f = 0; f < c.morphism_count(); ++f) objects.push_back(c.morphism_name(f));

    struct Square {
        Index u, v;
    };
    std::vector<FinCat::Morphism> mors;
    std::vector<Square> squares;
    std::map<std::array<Index, 4>, Index> lookup;  // (from, to, u, v)
    std::vector<Index> ids(objects.size());
    for (Index f = 0; f < c.morphism_count(); ++f) {
        for (Index g = 0; g < c.morphism_count(); ++g) {
            for (Index u : c.hom(c.dom(f), c.dom(g))) {
                for (Index v : c.hom(c.cod(f), c.cod(g))) {
                    if (c.compose(f, v) != c.compose(u, g)) continue;
                    Index idx = static_cast<Index>(mors.size());
                    mors.push_back({"[" + c.morphism_name(u) + "," + c.morphism_name(v) + ":" +
                                        objects[f] + "->" + objects[g] + "]",
                                    f, g});
                    squares.push_back({u, v});
                    lookup.emplace(std::array<Index, 4>{f, g, u, v}, idx);
                    if (f == g && u == c.identity(c.dom(f)) && v == c.identity(c.cod(f))) {
                        ids[f] = idx;
                    }
                }
            }
        }
    }
    std::vector<Index> mor_dom, mor_cod;  // the lambda outlives the moved-from `mors`
    for (const auto& m : mors) {
        mor_dom.push_back(m.dom);
        mor_cod.push_back(m.cod);
    }
    auto compose = [&](Index a, Index b) {
        Index u = c.compose(squares[a].u, squares[b].u);
        Index v = c.compose(squares[a].v, squares[b].v);
        return lookup.at({mor_dom[a], mor_cod[b], u, v});
    };
    return FinCat::assemble(std::move(objects), std::move(mors), std::move(ids), compose, caps);
}

bool is_groupoid(const FinCat& c) {
    for (Index f = 0; f < c.morphism_count(); ++f) {
        bool invertible = false;
        for (Index g : c.hom(c.cod(f), c.dom(f))) {
            if (c.is_identity(c.compose(f, g)) && c.is_identity(c.compose(g, f))) {
                invertible = true;
                break;
            }
        }
        if (!invertible) return false;
    }
    return true;
}

}  // namespace obstructia
