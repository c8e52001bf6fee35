#include <map>
#include <set>
#include <string>
#include <utility>

#include "qact/circuit.hpp"
#include "qact/qasm.hpp"

namespace qact {

namespace {

struct RegRange {
    int offset = 0;
    std::int64_t size = 0;
};

class Flattener {
 public:
    explicit Flattener(const qasm::Program& prog) : prog_(prog) {
        int qubit_offset = 0;
        int clbit_offset = 0;
        for (const qasm::RegDecl& decl : prog.declarations) {
            if (decl.kind == qasm::RegKind::qreg) {
                qregs_.emplace(decl.name, RegRange{qubit_offset, decl.size});
                qubit_offset += static_cast<int>(decl.size);
            } else {
                cregs_.emplace(decl.name, RegRange{clbit_offset, decl.size});
                clbit_offset += static_cast<int>(decl.size);
            }
        }
        circuit_.num_qubits = qubit_offset;
        circuit_.num_clbits = clbit_offset;
        for (const qasm::GateDef& def : prog.gate_defs) {
            defs_.emplace(def.name, &def);
        }
    }

    FlatCircuit run() {
        for (const qasm::Statement& stmt : prog_.statements) {
            flatten_statement(stmt, false, {});
        }
        return std::move(circuit_);
    }

 private:
    [[noreturn]] static void fail(const std::string& message) {
        throw QasmError(message, 0, 0);
    }

    const RegRange& lookup(const std::map<std::string, RegRange>& regs,
                           const std::string& name) const {
        auto it = regs.find(name);
        if (it == regs.end()) {
            fail("undeclared register \"" + name + "\"");
        }
        return it->second;
    }

    int bit_at(const std::map<std::string, RegRange>& regs, const qasm::QubitArg& arg,
               std::int64_t slot) const {
        const RegRange& range = lookup(regs, arg.reg);
        std::int64_t index = arg.index.value_or(slot);
        if (index < 0 || index >= range.size) {
            fail("index " + std::to_string(index) + " out of range for register \"" + arg.reg +
                 "\"");
        }
        return range.offset + static_cast<int>(index);
    }

    // All register-level operands in one statement must have the same size;
    // indexed operands are repeated across every slot.
    std::int64_t broadcast_width(const std::vector<qasm::QubitArg>& args) const {
        std::optional<std::int64_t> width;
        for (const qasm::QubitArg& arg : args) {
            if (arg.index) {
                continue;
            }
            std::int64_t size = lookup(qregs_, arg.reg).size;
            if (width && *width != size) {
                fail("cannot broadcast over registers of unequal sizes");
            }
            width = size;
        }
        return width.value_or(1);
    }

    void flatten_statement(const qasm::Statement& stmt, bool conditional,
                           const std::vector<int>& cond_clbits) {
        if (const auto* app = std::get_if<qasm::GateApp>(&stmt)) {
            flatten_gate_app(*app, conditional, cond_clbits);
        } else if (const auto* m = std::get_if<qasm::MeasureStmt>(&stmt)) {
            flatten_measure(*m, conditional, cond_clbits);
        } else if (const auto* r = std::get_if<qasm::ResetStmt>(&stmt)) {
            flatten_reset(*r, conditional, cond_clbits);
        } else if (const auto* b = std::get_if<qasm::BarrierStmt>(&stmt)) {
            flatten_barrier(*b);
        } else if (const auto* c = std::get_if<qasm::CondStmt>(&stmt)) {
            const RegRange& range = lookup(cregs_, c->creg);
            std::vector<int> clbits;
            clbits.reserve(static_cast<std::size_t>(range.size));
            for (std::int64_t i = 0; i < range.size; ++i) {
                clbits.push_back(range.offset + static_cast<int>(i));
            }
            std::visit([&](const auto& body) { flatten_statement(body, true, clbits); }, c->body);
        }
    }

    void flatten_gate_app(const qasm::GateApp& app, bool conditional,
                          const std::vector<int>& cond_clbits) {
        std::vector<double> params;
        params.reserve(app.params.size());
        for (const qasm::ParamExpr& expr : app.params) {
            params.push_back(expr.eval());
        }
        std::int64_t width = broadcast_width(app.qubits);
        for (std::int64_t slot = 0; slot < width; ++slot) {
            std::vector<int> qubits;
            qubits.reserve(app.qubits.size());
            for (const qasm::QubitArg& arg : app.qubits) {
                qubits.push_back(bit_at(qregs_, arg, slot));
            }
            std::vector<std::string> stack;
            emit_gate(app.name, params, qubits, conditional, cond_clbits, stack);
        }
    }

    void emit_gate(const std::string& name, const std::vector<double>& params,
                   const std::vector<int>& qubits, bool conditional,
                   const std::vector<int>& cond_clbits, std::vector<std::string>& stack) {
        if (name == "U") {
            check_arity(name, 3, 1, params, qubits);
            push_gate(OpKind::builtin_gate, "u3", params, qubits, conditional, cond_clbits);
            return;
        }
        if (name == "CX") {
            check_arity(name, 0, 2, params, qubits);
            push_gate(OpKind::builtin_gate, "cx", params, qubits, conditional, cond_clbits);
            return;
        }
        if (const qasm::BuiltinGate* builtin = qasm::find_builtin(name)) {
            check_arity(name, builtin->num_params, builtin->num_qubits, params, qubits);
            push_gate(OpKind::builtin_gate, name, params, qubits, conditional, cond_clbits);
            return;
        }
        auto it = defs_.find(name);
        if (it == defs_.end()) {
            fail("unknown gate \"" + name + "\"");
        }
        const qasm::GateDef& def = *it->second;
        check_arity(name, static_cast<int>(def.params.size()),
                    static_cast<int>(def.qubits.size()), params, qubits);
        if (def.is_opaque()) {
            push_gate(OpKind::opaque_gate, name, params, qubits, conditional, cond_clbits);
            return;
        }
        for (const std::string& active : stack) {
            if (active == name) {
                fail("recursive gate definition \"" + name + "\"");
            }
        }
        stack.push_back(name);

        std::map<std::string, double> bindings;
        for (std::size_t i = 0; i < def.params.size(); ++i) {
            bindings.emplace(def.params[i], params[i]);
        }
        std::map<std::string, int> qubit_map;
        for (std::size_t i = 0; i < def.qubits.size(); ++i) {
            qubit_map.emplace(def.qubits[i], qubits[i]);
        }
        for (const qasm::GateApp& body_app : *def.body) {
            std::vector<double> body_params;
            body_params.reserve(body_app.params.size());
            for (const qasm::ParamExpr& expr : body_app.params) {
                body_params.push_back(expr.eval(bindings));
            }
            std::vector<int> body_qubits;
            body_qubits.reserve(body_app.qubits.size());
            for (const qasm::QubitArg& arg : body_app.qubits) {
                auto formal = qubit_map.find(arg.reg);
                if (formal == qubit_map.end() || arg.index) {
                    fail("undeclared qubit formal \"" + arg.reg + "\" in gate \"" + name + "\"");
                }
                body_qubits.push_back(formal->second);
            }
            emit_gate(body_app.name, body_params, body_qubits, conditional, cond_clbits, stack);
        }
        stack.pop_back();
    }

    static void check_arity(const std::string& name, int num_params, int num_qubits,
                            const std::vector<double>& params, const std::vector<int>& qubits) {
        if (static_cast<int>(params.size()) != num_params) {
            fail("gate \"" + name + "\" expects " + std::to_string(num_params) +
                 " parameter(s), got " + std::to_string(params.size()));
        }
        if (static_cast<int>(qubits.size()) != num_qubits) {
            fail("gate \"" + name + "\" expects " + std::to_string(num_qubits) +
                 " qubit argument(s), got " + std::to_string(qubits.size()));
        }
    }

    void push_gate(OpKind kind, std::string name, std::vector<double> params,
                   std::vector<int> qubits, bool conditional, std::vector<int> cond_clbits) {
        std::set<int> distinct(qubits.begin(), qubits.end());
        if (distinct.size() != qubits.size()) {
            fail("repeated qubit operand in \"" + name + "\"");
        }
        FlatOp op;
        op.kind = kind;
        op.name = std::move(name);
        op.params = std::move(params);
        op.qubits = std::move(qubits);
        op.conditional = conditional;
        op.cond_clbits = std::move(cond_clbits);
        circuit_.ops.push_back(std::move(op));
    }

    void flatten_measure(const qasm::MeasureStmt& m, bool conditional,
                         const std::vector<int>& cond_clbits) {
        std::int64_t qubit_width = m.qubit.index ? 1 : lookup(qregs_, m.qubit.reg).size;
        std::int64_t clbit_width = m.clbit.index ? 1 : lookup(cregs_, m.clbit.reg).size;
        if (qubit_width != clbit_width) {
            fail("measure operands have unequal sizes (" + std::to_string(qubit_width) + " and " +
                 std::to_string(clbit_width) + ")");
        }
        for (std::int64_t slot = 0; slot < qubit_width; ++slot) {
            FlatOp op;
            op.kind = OpKind::measure;
            op.name = "measure";
            op.qubits = {bit_at(qregs_, m.qubit, slot)};
            op.clbits = {bit_at(cregs_, m.clbit, slot)};
            op.conditional = conditional;
            op.cond_clbits = cond_clbits;
            circuit_.ops.push_back(std::move(op));
        }
    }

    void flatten_reset(const qasm::ResetStmt& r, bool conditional,
                       const std::vector<int>& cond_clbits) {
        std::int64_t width = r.target.index ? 1 : lookup(qregs_, r.target.reg).size;
        for (std::int64_t slot = 0; slot < width; ++slot) {
            FlatOp op;
            op.kind = OpKind::reset;
            op.name = "reset";
            op.qubits = {bit_at(qregs_, r.target, slot)};
            op.conditional = conditional;
            op.cond_clbits = cond_clbits;
            circuit_.ops.push_back(std::move(op));
        }
    }

    void flatten_barrier(const qasm::BarrierStmt& b) {
        FlatOp op;
        op.kind = OpKind::barrier;
        op.name = "barrier";
        std::set<int> seen;
        for (const qasm::QubitArg& arg : b.args) {
            std::int64_t width = arg.index ? 1 : lookup(qregs_, arg.reg).size;
            for (std::int64_t slot = 0; slot < width; ++slot) {
                int qubit = bit_at(qregs_, arg, slot);
                if (seen.insert(qubit).second) {
                    op.qubits.push_back(qubit);
                }
            }
        }
        circuit_.ops.push_back(std::move(op));
    }

    const qasm::Program& prog_;
    FlatCircuit circuit_;
    std::map<std::string, RegRange> qregs_;
    std::map<std::string, RegRange> cregs_;
    std::map<std::string, const qasm::GateDef*> defs_;
};

}  // namespace

FlatCircuit flatten(const qasm::Program& prog) {
    return Flattener(prog).run();
}

}  // namespace qact
