#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace obstructia {

/// Domain error carrying a stable kind name (e.g. "NonAssociative") and the
/// identifiers that witness the failure. The CLI prints the kind verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message,
          std::vector<std::string> witnesses = {})
        : std::runtime_error(kind + ": " + message),
          kind_(std::move(kind)),
          witnesses_(std::move(witnesses)) {}

    const std::string& kind() const noexcept { return kind_; }
    std::span<const std::string> witnesses() const noexcept { return witnesses_; }

private:
    std::string kind_;
    std::vector<std::string> witnesses_;
};

}  // namespace obstructia
