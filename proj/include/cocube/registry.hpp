#pragma once

// Fixed registry of claim identifiers. Each claim names the module that owns
// its check and a one-line statement of what the check establishes.

#include <span>
#include <string_view>

namespace cocube {

struct ClaimInfo {
    std::string_view id;
    std::string_view module;
    std::string_view statement;
};

[[nodiscard]] std::span<const ClaimInfo> claim_registry() noexcept;
[[nodiscard]] const ClaimInfo* find_claim(std::string_view id) noexcept;

/// Module names that own at least one claim.
[[nodiscard]] std::span<const std::string_view> registry_modules() noexcept;

}  // namespace cocube
