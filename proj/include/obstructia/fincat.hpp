#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace obstructia {

using Index = std::uint32_t;

/// Unvalidated category tables, as read from the line-oriented text format.
struct RawCategory {
    struct Morphism {
        std::string id, dom, cod;
        bool operator==(const Morphism&) const = default;
    };
    struct Composite {
        std::string first, second, result;
        bool operator==(const Composite&) const = default;
    };

    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<std::pair<std::string, std::string>> identities;  // object, morphism
    std::vector<Composite> compositions;

    bool operator==(const RawCategory&) const = default;
};

/// Guards on derived-category constructions. Objects are the documented cap;
/// composable pairs bound the memory of the composition table.
struct SizeCaps {
    std::size_t max_objects = 20000;
    std::size_t max_composable_pairs = 20'000'000;
};

/// A finite category with a total composition table. Composition is written
/// in diagrammatic order: compose(f, g) is "f then g" and needs cod f = dom g.
///
/// Instances are immutable once built. Morphisms out of an object are kept
/// sorted by codomain so that hom(a, b) is a contiguous span.
class FinCat {
public:
    struct Morphism {
        std::string name;
        Index dom = 0;
        Index cod = 0;
    };

    /// Checks every law on raw tables. Identity composites may be omitted and
    /// are filled in; every other composable pair must be listed.
    static FinCat validate(const RawCategory& raw);

    /// Builds a category from trusted parts (derived constructions). Only the
    /// typing of the returned composites is checked; call check_laws() to
    /// re-verify the rest.
    static FinCat assemble(std::vector<std::string> objects,
                           std::vector<Morphism> morphisms,
                           std::vector<Index> identities,
                           const std::function<Index(Index, Index)>& compose,
                           const SizeCaps& caps = {});

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t morphism_count() const noexcept { return morphisms_.size(); }

    const std::string& object_name(Index x) const { return objects_.at(x); }
    const std::string& morphism_name(Index f) const { return morphisms_.at(f).name; }
    const Morphism& morphism(Index f) const { return morphisms_.at(f); }
    Index dom(Index f) const { return morphisms_[f].dom; }
    Index cod(Index f) const { return morphisms_[f].cod; }
    Index identity(Index x) const { return identities_[x]; }
    bool is_identity(Index f) const { return identities_[dom(f)] == f; }

    Index compose(Index f, Index g) const;

    std::span<const Index> outgoing(Index x) const;
    std::span<const Index> incoming(Index x) const;
    std::span<const Index> hom(Index a, Index b) const;
    bool has_morphism(Index a, Index b) const { return !hom(a, b).empty(); }

    std::optional<Index> find_object(std::string_view name) const;
    std::optional<Index> find_morphism(std::string_view name) const;
    /// Throws UnknownObject / UnknownMorphism.
    Index object_index(std::string_view name) const;
    Index morphism_index(std::string_view name) const;

    /// Re-checks typing, identity laws and associativity exhaustively.
    void check_laws() const;

    /// Tables with identity composites omitted (the canonical text form).
    RawCategory to_raw() const;

    bool operator==(const FinCat& other) const;

private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<Index> identities_;

    // CSR adjacency: out_[out_offset_[x] .. out_offset_[x+1]) sorted by (cod, index).
    std::vector<std::size_t> out_offset_, in_offset_;
    std::vector<Index> out_, in_;
    std::vector<Index> out_pos_;  // position of g inside outgoing(dom g)

    // comp_[comp_offset_[f] + out_pos_[g]] = f;g
    std::vector<std::size_t> comp_offset_;
    std::vector<Index> comp_;

    std::unordered_map<std::string, Index> object_lookup_, morphism_lookup_;
};

using CategoryPtr = std::shared_ptr<const FinCat>;

inline CategoryPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

struct FunctorData {
    CategoryPtr source, target;
    std::vector<Index> object_map;
    std::vector<Index> morphism_map;

    Index operator()(Index f) const { return morphism_map[f]; }
    Index on_object(Index x) const { return object_map[x]; }
};

/// Validates a functor given by index maps (NotAFunctor on any failed law).
FunctorData validate_functor(CategoryPtr source, CategoryPtr target,
                             std::vector<Index> object_map,
                             std::vector<Index> morphism_map);
/// Same, with maps keyed by identifier (DanglingReference on unknown names).
FunctorData validate_functor(CategoryPtr source, CategoryPtr target,
                             const std::map<std::string, std::string>& object_map,
                             const std::map<std::string, std::string>& morphism_map);

FunctorData identity_functor(CategoryPtr c);
/// F then G.
FunctorData compose_functors(const FunctorData& f, const FunctorData& g);

struct NatTransData {
    FunctorData source, target;
    std::vector<Index> components;  // per object of the domain category
};

NatTransData validate_nat_trans(FunctorData source, FunctorData target,
                                std::vector<Index> components);
NatTransData validate_nat_trans(FunctorData source, FunctorData target,
                                const std::map<std::string, std::string>& components);

FinCat opposite(const FinCat& c);

/// C/x: objects are morphisms into x (named by the morphism), morphisms are
/// factorizations h : f -> g with h;g = f.
struct Slice {
    CategoryPtr category;
    FunctorData projection;  // dom
    Index base = 0;
    std::vector<Index> object_morphism;      // slice object -> morphism of C
    std::vector<Index> morphism_underlying;  // slice morphism -> morphism of C

    /// Slice object for f : y -> base.
    Index object_of(Index f) const;
    /// Slice morphism with underlying h and codomain slice object `to`.
    Index morphism_of(Index h, Index to) const;

    std::unordered_map<Index, Index> object_lookup;
    std::unordered_map<std::uint64_t, Index> morphism_lookup;
};

Slice slice(CategoryPtr c, Index x, const SizeCaps& caps = {});

/// Parallel arrows over x: objects are pairs (f0, f1 : y -> x), morphisms
/// are h with f0 = h;g0 and f1 = h;g1.
struct ParallelArrows {
    CategoryPtr category;
    FunctorData projection;  // dom
    Index base = 0;
    std::vector<std::pair<Index, Index>> object_pair;
    std::vector<Index> morphism_underlying;

    Index object_of(Index f0, Index f1) const;
    Index morphism_of(Index h, Index to) const;
    /// The object (id_x, id_x).
    Index diagonal() const;

    std::unordered_map<std::uint64_t, Index> object_lookup;
    std::unordered_map<std::uint64_t, Index> morphism_lookup;
};

/// Object count of parallel_arrows(c, x), i.e. the sum of |hom(y, x)|^2.
std::size_t parallel_arrows_size(const FinCat& c, Index x);

ParallelArrows parallel_arrows(CategoryPtr c, Index x, const SizeCaps& caps = {});

/// Objects are morphisms of c; morphisms are commuting squares (u, v) with f;v = u;g.
FinCat arrow_category(const FinCat& c, const SizeCaps& caps = {});

bool is_groupoid(const FinCat& c);

/// Category text format: `obj`, `mor <id> : <dom> -> <cod>`, `id <obj> = <mor>`,
/// `comp <f> ; <g> = <h>`, `#` comments.
RawCategory parse_category_text(std::string_view text);
std::string format_category(const FinCat& c);
inline FinCat parse_category(std::string_view text) {
    return FinCat::validate(parse_category_text(text));
}

}  // namespace obstructia
