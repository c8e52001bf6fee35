#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qact/circuit.hpp"
#include "qact/errors.hpp"

namespace qact::qasm {

/// Raised by ParamExpr::eval on unbound names, division by zero and
/// function domain errors.
class EvalError : public Error {
 public:
    using Error::Error;
};

/// Immutable parameter expression over real literals, pi, bound names,
/// + - * / ^, unary minus and the qelib function set.
class ParamExpr {
 public:
    enum class BinaryOp { add, sub, mul, div, pow };
    enum class Func { sin, cos, tan, exp, ln, sqrt };

    static ParamExpr number(double value);
    static ParamExpr pi();
    static ParamExpr name(std::string id);
    static ParamExpr negate(ParamExpr operand);
    static ParamExpr binary(BinaryOp op, ParamExpr lhs, ParamExpr rhs);
    static ParamExpr call(Func fn, ParamExpr arg);

    static std::optional<Func> func_from_name(std::string_view name);

    /// Evaluate with double-precision arithmetic; pi = 3.141592653589793.
    double eval(const std::map<std::string, double>& bindings = {}) const;

    /// Canonical, reparseable text (fully parenthesized).
    std::string to_string() const;

    bool operator==(const ParamExpr& other) const;

    struct Node;

 private:
    explicit ParamExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// A whole register ("q") or one element of it ("q[2]").
struct QubitArg {
    std::string reg;
    std::optional<std::int64_t> index;

    bool operator==(const QubitArg&) const = default;
};

struct GateApp {
    std::string name;
    std::vector<ParamExpr> params;
    std::vector<QubitArg> qubits;

    bool operator==(const GateApp&) const = default;
};

struct MeasureStmt {
    QubitArg qubit;
    QubitArg clbit;

    bool operator==(const MeasureStmt&) const = default;
};

struct ResetStmt {
    QubitArg target;

    bool operator==(const ResetStmt&) const = default;
};

struct BarrierStmt {
    std::vector<QubitArg> args;

    bool operator==(const BarrierStmt&) const = default;
};

using CondBody = std::variant<GateApp, MeasureStmt, ResetStmt>;

struct CondStmt {
    std::string creg;
    std::int64_t value = 0;
    CondBody body;

    bool operator==(const CondStmt&) const = default;
};

using Statement = std::variant<GateApp, MeasureStmt, ResetStmt, BarrierStmt, CondStmt>;

enum class RegKind { qreg, creg };

struct RegDecl {
    RegKind kind = RegKind::qreg;
    std::string name;
    std::int64_t size = 1;

    bool operator==(const RegDecl&) const = default;
};

/// User gate definition; a declaration without a body is an opaque gate.
struct GateDef {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> qubits;
    std::optional<std::vector<GateApp>> body;

    bool is_opaque() const { return !body.has_value(); }

    bool operator==(const GateDef&) const = default;
};

struct Program {
    std::string version{"2.0"};
    std::vector<std::string> includes;
    std::vector<RegDecl> declarations;
    std::vector<GateDef> gate_defs;
    std::vector<Statement> statements;

    bool operator==(const Program&) const = default;
};

struct BuiltinGate {
    std::string_view name;
    int num_params;
    int num_qubits;
};

/// The gate set enabled by `include "qelib1.inc";`.
std::span<const BuiltinGate> builtin_gates();
const BuiltinGate* find_builtin(std::string_view name);

/// Parse OpenQASM 2.0 text. Checks registers, index bounds, gate name
/// resolution and repeated qubit operands; errors carry 1-based line:column.
Program parse_program(std::string_view source);

/// Canonical printer; print_program output reparses to an equal Program.
std::string print_program(const Program& program);

}  // namespace qact::qasm

namespace qact {

/// Expand register shorthand, inline user-defined gates down to built-in
/// gates with numerically resolved parameters, and map operands to global
/// indices. Opaque applications stay atomic; conditionals become a flag on
/// each expanded op.
FlatCircuit flatten(const qasm::Program& program);

}  // namespace qact
