#pragma once

#include <string>

#include "qact/card.hpp"
#include "qact/metrics.hpp"

namespace qact {

/// New card with the given algorithm name, version "0.1.0", placeholder
/// overview text and no optional sections.
Card scaffold_card(const std::string& name);

/// Copy of the card with usage_details derived fields taken from the
/// metrics and circuit_ref set to (circuit_path, circuit_sha256). Authored
/// inputs/outputs and every other section are left untouched. Refuses
/// metrics of an empty circuit (width 0).
Card attach_circuit(const Card& card, const CircuitMetrics& metrics,
                    const std::string& circuit_path, const std::string& circuit_sha256);

}  // namespace qact
