#include "obstructia/states.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "obstructia/error.hpp"

namespace obstructia {

StateObject StateObject::cartesian(std::vector<std::string> elements) {
    std::set<std::string> seen;
    for (const auto& e : elements) {
        if (e.empty() || !seen.insert(e).second) {
            throw Error("InvalidObject", "set elements must be distinct and non-empty", {e});
        }
    }
    return {ContextKind::Cartesian, std::move(elements), 0};
}

StateObject StateObject::gf2(std::size_t dim) {
    if (dim > max_gf2_dim) {
        throw Error("DimensionCap", "GF(2) dimension " + std::to_string(dim) + " exceeds " +
                                        std::to_string(max_gf2_dim));
    }
    return {ContextKind::GF2, {}, dim};
}

std::string gf2_name(std::uint64_t v, std::size_t dim) {
    std::string s = "[";
    for (std::size_t i = 0; i < dim; ++i) s += (v >> i & 1u) ? '1' : '0';
    return s + "]";
}

namespace {

void same_context(const StateObject& a, const StateObject& b) {
    if (a.kind != b.kind) throw Error("TypeMismatch", "objects belong to different contexts");
}

}  // namespace

StateSet states_of(const StateObject& a) {
    StateSet s{a, {}};
    if (a.kind == ContextKind::Cartesian) {
        s.states = a.elements;
    } else {
        if (a.dim > max_gf2_tensor_dim) {
            throw Error("DimensionCap", "cannot enumerate GF(2)^" + std::to_string(a.dim));
        }
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << a.dim); ++v) {
            s.states.push_back(gf2_name(v, a.dim));
        }
    }
    return s;
}

StateObject tensor(const StateObject& a, const StateObject& b) {
    same_context(a, b);
    if (a.kind == ContextKind::GF2) {
        if (a.dim * b.dim > max_gf2_tensor_dim) {
            throw Error("DimensionCap", "tensor dimension " + std::to_string(a.dim * b.dim) +
                                            " exceeds " + std::to_string(max_gf2_tensor_dim));
        }
        return {ContextKind::GF2, {}, a.dim * b.dim};
    }
    StateObject out{ContextKind::Cartesian, {}, 0};
    for (const auto& x : a.elements) {
        for (const auto& y : b.elements) out.elements.push_back("(" + x + "," + y + ")");
    }
    return out;
}

std::uint64_t gf2_tensor(std::uint64_t a, std::size_t m, std::uint64_t b, std::size_t n) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (a >> i & 1u) out |= b << (i * n);
    }
    return out;
}

bool gf2_separable(std::uint64_t v, std::size_t m, std::size_t n) {
    const std::uint64_t row_mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t row = (v >> (i * n)) & row_mask;
        if (row == 0) continue;
        if (seen != 0 && row != seen) return false;
        seen = row;
    }
    return true;
}

FiniteFunction laxator(const StateObject& a, const StateObject& b) {
    StateObject ab = tensor(a, b);
    auto sa = states_of(a).states;
    auto sb = states_of(b).states;
    FiniteFunction f;
    f.name = "laxator";
    f.codomain = states_of(ab).states;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        for (std::size_t j = 0; j < sb.size(); ++j) {
            f.domain.push_back("(" + sa[i] + "," + sb[j] + ")");
            f.mapping.push_back(a.kind == ContextKind::Cartesian
                                    ? i * sb.size() + j
                                    : static_cast<std::size_t>(gf2_tensor(i, a.dim, j, b.dim)));
        }
    }
    return f;
}

StateObstructions obstructions(const StateObject& a, const StateObject& b,
                               std::size_t materialize_cap) {
    FiniteFunction lax = laxator(a, b);
    return {pi0_function(lax, materialize_cap), pi1_function(lax, materialize_cap)};
}

FiniteFunction oplaxator_cartesian(const StateObject& a, const StateObject& b) {
    if (a.kind != ContextKind::Cartesian || b.kind != ContextKind::Cartesian) {
        throw Error("WrongContext", "the oplaxator needs a terminal monoidal unit (cartesian sets)");
    }
    FiniteFunction f;
    f.name = "oplaxator";
    f.domain = tensor(a, b).elements;
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        for (std::size_t j = 0; j < b.elements.size(); ++j) {
            f.codomain.push_back("(" + a.elements[i] + "," + b.elements[j] + ")");
            f.mapping.push_back(i * b.elements.size() + j);
        }
    }
    return f;
}

// --- morphisms ---------------------------------------------------------------

StateMorphism StateMorphism::function(StateObject dom, StateObject cod, std::vector<std::size_t> mapping) {
    if (dom.kind != ContextKind::Cartesian || cod.kind != ContextKind::Cartesian) {
        throw Error("TypeMismatch", "functions act on cartesian objects");
    }
    if (mapping.size() != dom.elements.size()) {
        throw Error("TypeMismatch", "function must assign every element of its domain");
    }
    for (std::size_t v : mapping) {
        if (v >= cod.elements.size()) throw Error("TypeMismatch", "function leaves its codomain");
    }
    return {std::move(dom), std::move(cod), std::move(mapping), {}};
}

StateMorphism StateMorphism::matrix(const std::vector<std::string>& rows, std::size_t dom_dim) {
    StateMorphism m{StateObject::gf2(dom_dim), StateObject::gf2(rows.size()), {}, {}};
    for (const auto& row : rows) {
        if (row.size() != dom_dim) {
            throw Error("TypeMismatch", "matrix row '" + row + "' should have " +
                                            std::to_string(dom_dim) + " entries", {row});
        }
        std::uint64_t bits = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] == '1') {
                bits |= std::uint64_t{1} << j;
            } else if (row[j] != '0') {
                throw Error("ParseError", "matrix entries must be 0 or 1", {row});
            }
        }
        m.rows.push_back(bits);
    }
    return m;
}

StateMorphism StateMorphism::identity(const StateObject& a) {
    StateMorphism m{a, a, {}, {}};
    if (a.kind == ContextKind::Cartesian) {
        for (std::size_t i = 0; i < a.elements.size(); ++i) m.mapping.push_back(i);
    } else {
        for (std::size_t i = 0; i < a.dim; ++i) m.rows.push_back(std::uint64_t{1} << i);
    }
    return m;
}

std::size_t StateMorphism::apply(std::size_t state) const {
    if (dom.kind == ContextKind::Cartesian) return mapping.at(state);
    std::size_t out = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (std::popcount(rows[r] & state) % 2 == 1) out |= std::size_t{1} << r;
    }
    return out;
}

std::vector<std::size_t> tensor_action(const StateMorphism& f, const StateMorphism& g) {
    same_context(f.dom, g.dom);
    std::vector<std::size_t> image;
    if (f.dom.kind == ContextKind::Cartesian) {
        const std::size_t nb = g.dom.elements.size();
        const std::size_t nb2 = g.cod.elements.size();
        for (std::size_t i = 0; i < f.dom.elements.size(); ++i) {
            for (std::size_t j = 0; j < nb; ++j) image.push_back(f.apply(i) * nb2 + g.apply(j));
        }
        return image;
    }
    const std::size_t m = f.dom.dim, n = g.dom.dim;
    const std::size_t m2 = f.cod.dim, n2 = g.cod.dim;
    tensor(f.cod, g.cod);  // dimension check
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << (m * n)); ++v) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (v >> (i * n + j) & 1u) {
                    out ^= gf2_tensor(f.apply(std::size_t{1} << i), m2, g.apply(std::size_t{1} << j), n2);
                }
            }
        }
        image.push_back(static_cast<std::size_t>(out));
    }
    return image;
}

std::optional<std::vector<std::size_t>> LocalAction::image_of(const std::vector<std::size_t>& subset) const {
    std::set<std::size_t> image;
    bool separable = true;
    for (std::size_t s : subset) {
        std::size_t t = state_image.at(s);
        image.insert(t);
        separable = separable && target_separable[t];
    }
    if (separable) return std::nullopt;
    return std::vector<std::size_t>(image.begin(), image.end());
}

LocalAction local_action(const StateMorphism& f, const StateMorphism& g, std::size_t materialize_cap) {
    LocalAction act;
    act.source = obstructions(f.dom, g.dom, materialize_cap);
    act.target = obstructions(f.cod, g.cod, materialize_cap);
    act.state_image = tensor_action(f, g);
    act.source_separable = laxator(f.dom, g.dom).image();
    act.target_separable = laxator(f.cod, g.cod).image();
    for (std::size_t v = 0; v < act.state_image.size(); ++v) {
        if (act.source_separable[v] && !act.target_separable[act.state_image[v]]) {
            act.preserves_separability = false;
        }
    }
    if (!act.preserves_separability) {
        throw Error("IllDefinedMap", "a separable state is sent to a non-separable one");
    }
    if (act.source.pi0.invariant && act.target.pi0.invariant) {
        const PointedPoset& src = *act.source.pi0.invariant;
        const PointedPoset& tgt = *act.target.pi0.invariant;
        auto target_states = states_of(tensor(f.cod, g.cod)).states;
        auto masks = powerset_masks(act.source_separable);
        std::vector<std::size_t> images(src.size(), tgt.basepoint);
        for (std::size_t k = 0; k < masks.size(); ++k) {
            std::vector<std::size_t> subset;
            for (std::size_t u = 0; u < act.source_separable.size(); ++u) {
                if (masks[k] >> u & 1u) subset.push_back(u);
            }
            if (auto image = act.image_of(subset)) {
                images[k + 1] = tgt.poset.index_of(subset_name(target_states, *image));
            }
        }
        act.map.emplace(src, tgt, std::move(images));
    }
    return act;
}

}  // namespace obstructia
