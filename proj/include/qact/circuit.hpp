#pragma once

#include <string>
#include <vector>

namespace qact {

enum class OpKind { builtin_gate, opaque_gate, measure, reset, barrier };

/// One fully resolved operation: register shorthand expanded, user-defined
/// gates inlined, parameters evaluated to doubles, operands as global
/// indices. Conditional ops keep the clbits of their condition register so
/// scheduling can order them against measurements.
struct FlatOp {
    OpKind kind = OpKind::builtin_gate;
    std::string name;
    std::vector<double> params;
    std::vector<int> qubits;
    std::vector<int> clbits;
    bool conditional = false;
    std::vector<int> cond_clbits;

    bool operator==(const FlatOp&) const = default;
};

struct FlatCircuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<FlatOp> ops;

    bool operator==(const FlatCircuit&) const = default;
};

}  // namespace qact
