#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "qact/circuit.hpp"

namespace qact {

// Resource metrics of a flattened circuit, the automatable half of a
// card's usage details.
struct CircuitMetrics {
    int width = 0;
    int num_qubits = 0;
    int num_clbits = 0;
    int depth = 0;
    std::map<std::string, int> gate_histogram;
    std::map<int, int> counts_by_arity;
    int two_qubit_gate_count = 0;
    int t_count = 0;
    int measure_count = 0;
    bool has_opaque = false;
    bool uses_mid_circuit_control = false;
    int log2_qv_required = 0;

    bool operator==(const CircuitMetrics&) const = default;
};

// ASAP layering depth: ops sharing a qubit or clbit cannot share a layer,
// barriers synchronize without occupying one.
int compute_depth(const FlatCircuit& circuit);

// log2 of the quantum volume needed under the square-circuit convention.
int qv_requirement(int width, int depth);

CircuitMetrics compute_metrics(const FlatCircuit& circuit);

nlohmann::ordered_json metrics_to_json(const CircuitMetrics& metrics);

}  // namespace qact
