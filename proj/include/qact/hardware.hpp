#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qact/card.hpp"

namespace qact {

struct HardwareProfile {
    std::string name;
    std::int64_t num_qubits = 1;
    std::int64_t log2_quantum_volume = 0;
    std::vector<std::string> native_gates;
    bool supports_mid_circuit_control = false;
    std::optional<double> cost_per_shot;

    bool operator==(const HardwareProfile&) const = default;
};

/// One requirement-vs-capability comparison. For the mid_circuit_control
/// check required/available hold 0 or 1.
struct Check {
    std::string name;
    std::int64_t required = 0;
    std::int64_t available = 0;
    bool passed = false;

    bool operator==(const Check&) const = default;
};

struct FitReport {
    std::string backend;
    bool fits = false;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::optional<double> estimated_cost;

    bool operator==(const FitReport&) const = default;
};

/// Parse a profile file: a JSON array of backend objects. Rejects unknown
/// keys and duplicate backend names.
std::vector<HardwareProfile> parse_profiles(std::string_view text);

/// Compare the card's usage_details requirements against one backend.
/// Boundary-inclusive on every axis; gate sets never fail a check.
FitReport match_card(const Card& card, const HardwareProfile& profile,
                     std::optional<std::int64_t> shots = std::nullopt);

/// One report per profile, sorted by fits (fitting first), then estimated
/// cost ascending (absent cost last), then backend name.
std::vector<FitReport> rank_backends(const Card& card,
                                     const std::vector<HardwareProfile>& profiles,
                                     std::optional<std::int64_t> shots = std::nullopt);

nlohmann::ordered_json fit_reports_to_json(const std::vector<FitReport>& reports);

}  // namespace qact
