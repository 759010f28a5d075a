#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obstructia/order.hpp"

namespace obstructia {

/// A homotopy poset together with its minimal obstructions.
///
/// `invariant` is absent only for powerset-shaped posets too large to
/// materialize; `minimal` and `trivial` are always exact. `element_count` is
/// absent when it does not fit in 64 bits.
struct ObstructionReport {
    std::string context;
    std::optional<PointedPoset> invariant;
    std::optional<std::uint64_t> element_count = 1;
    std::string basepoint;
    std::vector<std::string> minimal;  // lexicographic
    bool trivial = true;
};

ObstructionReport make_report(PointedPoset invariant, std::string context);

/// Structured interchange document (JSON, with a version field).
std::string format_report_json(const ObstructionReport& r);
std::string format_report_text(const ObstructionReport& r);
/// Throws NotMaterialized when the poset was not built.
std::string format_report_dot(const ObstructionReport& r);

}  // namespace obstructia
