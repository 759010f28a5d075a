#include "obstructia/report.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "obstructia/error.hpp"

namespace obstructia {

ObstructionReport make_report(PointedPoset invariant, std::string context) {
    ObstructionReport r;
    r.context = std::move(context);
    r.element_count = invariant.size();
    r.basepoint = invariant.basepoint_name();
    for (std::size_t e : minimal_obstructions(invariant)) {
        r.minimal.push_back(invariant.poset.name(e));
    }
    std::sort(r.minimal.begin(), r.minimal.end());
    r.trivial = is_trivial(invariant);
    r.invariant = std::move(invariant);
    return r;
}

namespace {

std::vector<std::size_t> sorted_elements(const Poset& p) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p.name(a) < p.name(b); });
    return order;
}

std::vector<std::pair<std::string, std::string>> named_pairs(
    const Poset& p, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [a, b] : pairs) out.emplace_back(p.name(a), p.name(b));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string format_report_json(const ObstructionReport& r) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["context"] = r.context;
    j["basepoint"] = r.basepoint;
    if (r.element_count) {
        j["element_count"] = *r.element_count;
    } else {
        j["element_count"] = nullptr;
    }
    if (r.invariant) {
        const Poset& p = r.invariant->poset;
        auto elems = nlohmann::ordered_json::array();
        for (std::size_t e : sorted_elements(p)) elems.push_back(p.name(e));
        j["elements"] = elems;
        auto leq = nlohmann::ordered_json::array();
        for (const auto& [a, b] : named_pairs(p, p.leq_pairs())) {
            leq.push_back(nlohmann::ordered_json::array({a, b}));
        }
        j["leq"] = leq;
    } else {
        j["elements"] = nullptr;
        j["leq"] = nullptr;
    }
    j["minimal"] = r.minimal;
    j["trivial"] = r.trivial;
    return j.dump(2) + "\n";
}

std::string format_report_text(const ObstructionReport& r) {
    std::ostringstream out;
    out << (r.trivial ? "trivial" : "non-trivial") << "\n";
    out << "context: " << r.context << "\n";
    out << "basepoint: " << r.basepoint << "\n";
    if (r.invariant) {
        const Poset& p = r.invariant->poset;
        out << "elements (" << p.size() << "):";
        for (std::size_t e : sorted_elements(p)) out << " " << p.name(e);
        out << "\n";
        auto covers = named_pairs(p, hasse(p));
        out << "covers (" << covers.size() << "):";
        for (const auto& [a, b] : covers) out << " " << a << "<" << b;
        out << "\n";
    } else {
        out << "elements (" << (r.element_count ? std::to_string(*r.element_count) : "overflow")
            << "): not materialized\n";
    }
    out << "minimal obstructions (" << r.minimal.size() << "):";
    for (const auto& m : r.minimal) out << " " << m;
    out << "\n";
    return out.str();
}

std::string format_report_dot(const ObstructionReport& r) {
    if (!r.invariant) {
        throw Error("NotMaterialized",
                    "poset for '" + r.context + "' is too large and was not built");
    }
    return to_dot(*r.invariant);
}

}  // namespace obstructia
