#include <algorithm>
#include <vector>

#include "qact/metrics.hpp"

namespace qact {

int compute_depth(const FlatCircuit& circuit) {
    std::vector<int> qubit_layer(circuit.num_qubits, 0);
    std::vector<int> clbit_layer(circuit.num_clbits, 0);
    int depth = 0;
    for (const FlatOp& op : circuit.ops) {
        if (op.kind == OpKind::barrier) {
            int level = 0;
            for (int q : op.qubits) {
                level = std::max(level, qubit_layer[q]);
            }
            for (int q : op.qubits) {
                qubit_layer[q] = level;
            }
            continue;
        }
        int level = 0;
        for (int q : op.qubits) {
            level = std::max(level, qubit_layer[q]);
        }
        for (int c : op.clbits) {
            level = std::max(level, clbit_layer[c]);
        }
        for (int c : op.cond_clbits) {
            level = std::max(level, clbit_layer[c]);
        }
        ++level;
        for (int q : op.qubits) {
            qubit_layer[q] = level;
        }
        for (int c : op.clbits) {
            clbit_layer[c] = level;
        }
        for (int c : op.cond_clbits) {
            clbit_layer[c] = level;
        }
        depth = std::max(depth, level);
    }
    return depth;
}

int qv_requirement(int width, int depth) {
    return std::max(width, depth);
}

CircuitMetrics compute_metrics(const FlatCircuit& circuit) {
    CircuitMetrics m;
    m.num_qubits = circuit.num_qubits;
    m.num_clbits = circuit.num_clbits;
    m.depth = compute_depth(circuit);

    std::vector<bool> touched(circuit.num_qubits, false);
    std::vector<bool> measured(circuit.num_qubits, false);
    for (const FlatOp& op : circuit.ops) {
        if (op.kind == OpKind::barrier) {
            continue;
        }
        for (int q : op.qubits) {
            touched[q] = true;
        }
        if (op.conditional) {
            m.uses_mid_circuit_control = true;
        }
        switch (op.kind) {
            case OpKind::builtin_gate:
            case OpKind::opaque_gate:
                ++m.gate_histogram[op.name];
                ++m.counts_by_arity[static_cast<int>(op.qubits.size())];
                if (op.name == "t" || op.name == "tdg") {
                    ++m.t_count;
                }
                if (op.kind == OpKind::opaque_gate) {
                    m.has_opaque = true;
                }
                for (int q : op.qubits) {
                    if (measured[q]) {
                        m.uses_mid_circuit_control = true;
                    }
                }
                break;
            case OpKind::measure:
                ++m.measure_count;
                measured[op.qubits[0]] = true;
                break;
            case OpKind::reset:
                ++m.measure_count;
                break;
            case OpKind::barrier:
                break;
        }
    }
    m.width = static_cast<int>(std::count(touched.begin(), touched.end(), true));
    auto two = m.counts_by_arity.find(2);
    m.two_qubit_gate_count = two == m.counts_by_arity.end() ? 0 : two->second;
    m.log2_qv_required = qv_requirement(m.width, m.depth);
    return m;
}

nlohmann::ordered_json metrics_to_json(const CircuitMetrics& metrics) {
    nlohmann::ordered_json j;
    j["width"] = metrics.width;
    j["num_qubits"] = metrics.num_qubits;
    j["num_clbits"] = metrics.num_clbits;
    j["depth"] = metrics.depth;
    j["gate_histogram"] = nlohmann::ordered_json::object();
    for (const auto& [name, count] : metrics.gate_histogram) {
        j["gate_histogram"][name] = count;
    }
    j["counts_by_arity"] = nlohmann::ordered_json::object();
    for (const auto& [arity, count] : metrics.counts_by_arity) {
        j["counts_by_arity"][std::to_string(arity)] = count;
    }
    j["two_qubit_gate_count"] = metrics.two_qubit_gate_count;
    j["t_count"] = metrics.t_count;
    j["measure_count"] = metrics.measure_count;
    j["has_opaque"] = metrics.has_opaque;
    j["uses_mid_circuit_control"] = metrics.uses_mid_circuit_control;
    j["log2_qv_required"] = metrics.log2_qv_required;
    return j;
}

}  // namespace qact
