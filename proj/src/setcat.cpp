#include "obstructia/setcat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "obstructia/error.hpp"
#include "text_util.hpp"

namespace obstructia {

FiniteFunction FiniteFunction::make(std::string name, std::vector<std::string> domain,
                                    std::vector<std::string> codomain,
                                    const std::map<std::string, std::string>& mapping) {
    auto index = [](const std::vector<std::string>& labels, const char* which) {
        std::map<std::string, std::size_t> out;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i].empty() || !out.emplace(labels[i], i).second) {
                throw Error("InvalidFunction",
                            std::string(which) + " labels must be distinct and non-empty");
            }
        }
        return out;
    };
    auto dom = index(domain, "domain");
    auto cod = index(codomain, "codomain");
    FiniteFunction f{std::move(name), std::move(domain), std::move(codomain), {}};
    f.mapping.assign(f.domain.size(), 0);
    std::vector<bool> seen(f.domain.size(), false);
    for (const auto& [from, to] : mapping) {
        auto d = dom.find(from);
        auto c = cod.find(to);
        if (d == dom.end()) throw Error("InvalidFunction", "'" + from + "' is not in the domain", {from});
        if (c == cod.end()) throw Error("InvalidFunction", "'" + to + "' is not in the codomain", {to});
        f.mapping[d->second] = c->second;
        seen[d->second] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw Error("InvalidFunction", "'" + f.domain[i] + "' has no image", {f.domain[i]});
        }
    }
    return f;
}

std::vector<bool> FiniteFunction::image() const {
    std::vector<bool> hit(codomain.size(), false);
    for (std::size_t v : mapping) hit[v] = true;
    return hit;
}

bool FiniteFunction::injective() const {
    std::set<std::size_t> seen(mapping.begin(), mapping.end());
    return seen.size() == mapping.size();
}

bool FiniteFunction::surjective() const {
    auto hit = image();
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

namespace {

std::vector<std::string> parse_braced(std::string_view s, const std::string& what) {
    std::string t = detail::trim(s);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}') {
        throw Error("ParseError", what + " must be written as {a,b,...}");
    }
    return detail::split_list(std::string_view(t).substr(1, t.size() - 2), ',');
}

}  // namespace

FiniteFunction parse_function(std::string_view text) {
    std::string line;
    for (const auto& l : detail::split_lines(text)) {
        std::string t = detail::trim(detail::strip_comment(l));
        if (!t.empty()) {
            line = t;
            break;
        }
    }
    if (line.rfind("fn", 0) != 0) throw Error("ParseError", "expected `fn <name> : {..} -> {..} ; ..`");
    std::string rest = detail::trim(std::string_view(line).substr(2));
    auto colon = rest.find(':');
    auto arrow = rest.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
        throw Error("ParseError", "expected `fn <name> : {..} -> {..}`");
    }
    std::string name = detail::trim(std::string_view(rest).substr(0, colon));
    if (name.empty()) throw Error("ParseError", "function name is missing");
    auto semi = rest.find(';', arrow);
    auto domain = parse_braced(std::string_view(rest).substr(colon + 1, arrow - colon - 1), "domain");
    std::string cod_text = semi == std::string::npos ? rest.substr(arrow + 2)
                                                     : rest.substr(arrow + 2, semi - arrow - 2);
    auto codomain = parse_braced(cod_text, "codomain");

    std::map<std::string, std::string> mapping;
    if (semi != std::string::npos) {
        for (const auto& entry : detail::split_list(std::string_view(rest).substr(semi + 1), ',')) {
            auto to = entry.find("=>");
            if (to == std::string::npos) throw Error("ParseError", "mapping entry '" + entry + "' lacks =>");
            std::string a = detail::trim(std::string_view(entry).substr(0, to));
            std::string b = detail::trim(std::string_view(entry).substr(to + 2));
            if (!mapping.emplace(a, b).second && mapping[a] != b) {
                throw Error("InvalidFunction", "'" + a + "' is mapped twice", {a});
            }
        }
    }
    return FiniteFunction::make(std::move(name), std::move(domain), std::move(codomain), mapping);
}

std::string format_function(const FiniteFunction& f) {
    std::ostringstream out;
    auto braced = [&](const std::vector<std::string>& labels) {
        out << "{";
        for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
        out << "}";
    };
    out << "fn " << f.name << " : ";
    braced(f.domain);
    out << " -> ";
    braced(f.codomain);
    out << " ;";
    for (std::size_t i = 0; i < f.mapping.size(); ++i) {
        out << (i ? ", " : " ") << f.domain[i] << "=>" << f.codomain[f.mapping[i]];
    }
    out << "\n";
    return out.str();
}

KernelPair kernel_pair(const FiniteFunction& f) {
    KernelPair k;
    for (std::size_t a = 0; a < f.mapping.size(); ++a) {
        for (std::size_t b = 0; b < f.mapping.size(); ++b) {
            if (f.mapping[a] == f.mapping[b]) k.pairs.emplace_back(a, b);
        }
    }
    return k;
}

std::vector<std::size_t> KernelPair::first_projection() const {
    std::vector<std::size_t> out;
    for (auto [a, b] : pairs) out.push_back(a);
    return out;
}

std::vector<std::size_t> KernelPair::second_projection() const {
    std::vector<std::size_t> out;
    for (auto [a, b] : pairs) out.push_back(b);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::string ambient_name(std::size_t m, std::size_t n, const std::vector<std::size_t>& values) {
    std::string s = "f" + std::to_string(m) + "to" + std::to_string(n) + "_";
    for (std::size_t v : values) s += static_cast<char>('0' + v);
    return s;
}

struct AmbientLayout {
    std::size_t k;
    std::vector<std::size_t> offset;  // (m * (k+1) + n) -> first morphism index

    explicit AmbientLayout(std::size_t k_) : k(k_), offset((k_ + 1) * (k_ + 1) + 1, 0) {
        for (std::size_t m = 0; m <= k; ++m) {
            for (std::size_t n = 0; n <= k; ++n) {
                std::size_t i = m * (k + 1) + n;
                offset[i + 1] = offset[i] + power(n, m);
            }
        }
    }
    Index index(std::size_t m, std::size_t n, const std::vector<std::size_t>& values) const {
        std::size_t code = 0;
        for (std::size_t i = values.size(); i-- > 0;) code = code * n + values[i];
        return static_cast<Index>(offset[m * (k + 1) + n] + code);
    }
};

}  // namespace

FinCat finset_ambient(std::size_t k, std::size_t cap) {
    if (k > cap || k > 9) {
        throw Error("CapExceeded", "finite-set ambient with cardinalities up to " +
                                       std::to_string(k) + " exceeds the cap of " +
                                       std::to_string(std::min<std::size_t>(cap, 9)));
    }
    AmbientLayout layout(k);
    std::vector<std::string> objects;
    for (std::size_t n = 0; n <= k; ++n) objects.push_back(std::to_string(n));

    std::vector<FinCat::Morphism> mors;
    std::vector<std::vector<std::size_t>> values_of;
    for (std::size_t m = 0; m <= k; ++m) {
        for (std::size_t n = 0; n <= k; ++n) {
            std::size_t count = power(n, m);
            for (std::size_t code = 0; code < count; ++code) {
                std::vector<std::size_t> values(m);
                std::size_t rest = code;
                for (std::size_t i = 0; i < m; ++i) {
                    values[i] = rest % n;
                    rest /= n;
                }
                mors.push_back({ambient_name(m, n, values), static_cast<Index>(m), static_cast<Index>(n)});
                values_of.push_back(std::move(values));
            }
        }
    }
    std::vector<std::size_t> layout_cod;
    for (const auto& m : mors) layout_cod.push_back(m.cod);
    std::vector<Index> ids;
    for (std::size_t n = 0; n <= k; ++n) {
        std::vector<std::size_t> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = i;
        ids.push_back(layout.index(n, n, values));
    }
    auto compose = [&](Index f, Index g) {
        std::vector<std::size_t> values;
        for (std::size_t v : values_of[f]) values.push_back(values_of[g][v]);
        return layout.index(values_of[f].size(), layout_cod[g], values);
    };
    return FinCat::assemble(std::move(objects), std::move(mors), std::move(ids), compose,
                            SizeCaps{~std::size_t{0}, ~std::size_t{0}});
}

Index ambient_morphism(const FinCat& ambient, const FiniteFunction& f) {
    return ambient.morphism_index(ambient_name(f.domain.size(), f.codomain.size(), f.mapping));
}

// ---------------------------------------------------------------------------

std::string subset_name(const std::vector<std::string>& universe,
                        const std::vector<std::size_t>& members) {
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) s += ",";
        s += universe[members[i]];
    }
    return s + "}";
}

std::vector<std::uint64_t> powerset_masks(const std::vector<bool>& base) {
    const std::size_t n = base.size();
    if (n > 20) throw Error("CapExceeded", "powerset over more than 20 points");
    std::uint64_t base_mask = 0;
    for (std::size_t u = 0; u < n; ++u) {
        if (base[u]) base_mask |= std::uint64_t{1} << u;
    }
    std::vector<std::uint64_t> masks;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        if ((s & ~base_mask) != 0) masks.push_back(s);
    }
    return masks;
}

ObstructionReport powerset_obstructions(const std::vector<std::string>& universe,
                                        const std::vector<bool>& base, std::string context,
                                        std::size_t materialize_cap) {
    const std::size_t n = universe.size();
    std::size_t base_size = static_cast<std::size_t>(std::count(base.begin(), base.end(), true));

    if (n > materialize_cap || n > 20) {
        ObstructionReport r;
        r.context = std::move(context);
        r.basepoint = "{}";
        if (n < 64) {
            r.element_count = 1 + (std::uint64_t{1} << n) - (std::uint64_t{1} << base_size);
        } else {
            r.element_count.reset();
        }
        for (std::size_t u = 0; u < n; ++u) {
            if (!base[u]) r.minimal.push_back("{" + universe[u] + "}");
        }
        std::sort(r.minimal.begin(), r.minimal.end());
        r.trivial = base_size == n;
        return r;
    }

    std::vector<std::uint64_t> masks = powerset_masks(base);
    std::vector<std::string> names{"{}"};
    for (std::uint64_t s : masks) {
        std::vector<std::size_t> members;
        for (std::size_t u = 0; u < n; ++u) {
            if (s >> u & 1u) members.push_back(u);
        }
        names.push_back(subset_name(universe, members));
    }
    BitMatrix leq(names.size());
    for (std::size_t j = 0; j < names.size(); ++j) leq.set(0, j);
    for (std::size_t a = 0; a < masks.size(); ++a) {
        for (std::size_t b = 0; b < masks.size(); ++b) {
            if ((masks[a] & ~masks[b]) == 0) leq.set(a + 1, b + 1);
        }
    }
    PointedPoset pp{Poset::unchecked(std::move(names), std::move(leq)), 0};
    return make_report(std::move(pp), std::move(context));
}

ObstructionReport pi0_function(const FiniteFunction& f, std::size_t materialize_cap) {
    return powerset_obstructions(f.codomain, f.image(), "pi0(Set/Y, " + f.name + ")",
                                 materialize_cap);
}

ObstructionReport pi1_function(const FiniteFunction& f, std::size_t materialize_cap) {
    KernelPair k = kernel_pair(f);
    std::vector<std::string> universe;
    std::vector<bool> diagonal;
    for (auto [a, b] : k.pairs) {
        universe.push_back("(" + f.domain[a] + "," + f.domain[b] + ")");
        diagonal.push_back(a == b);
    }
    return powerset_obstructions(universe, diagonal, "pi1(Set/Y, " + f.name + ")",
                                 materialize_cap);
}

}  // namespace obstructia
