#include "qact/generator.hpp"

namespace qact {

Card scaffold_card(const std::string& name) {
    if (name.empty()) {
        throw DomainError("card name must be non-empty");
    }
    Card card;
    card.overview.name = name;
    card.overview.version = "0.1.0";
    card.overview.provider = "TODO";
    card.overview.maintainer = "TODO";
    card.overview.description = "TODO";
    card.overview.approach = "TODO";
    card.overview.complexity = "TODO";
    return card;
}

Card attach_circuit(const Card& card, const CircuitMetrics& metrics,
                    const std::string& circuit_path, const std::string& circuit_sha256) {
    if (metrics.width == 0) {
        throw DomainError("cannot attach an empty circuit: qubits_required must be at least 1");
    }
    Card out = card;
    if (!out.usage_details) {
        out.usage_details = UsageDetails{};
    }
    UsageDetails& details = *out.usage_details;
    details.qubits_required = metrics.width;
    details.circuit_depth = metrics.depth;
    details.log2_qv_required = metrics.log2_qv_required;
    details.uses_mid_circuit_control = metrics.uses_mid_circuit_control;
    details.circuit_ref = CircuitRef{circuit_path, circuit_sha256};
    return out;
}

}  // namespace qact
