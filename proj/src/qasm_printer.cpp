#include <string>

#include "qact/qasm.hpp"

namespace qact::qasm {

namespace {

void print_argument(std::string& out, const QubitArg& arg) {
    out += arg.reg;
    if (arg.index) {
        out += '[';
        out += std::to_string(*arg.index);
        out += ']';
    }
}

void print_arguments(std::string& out, const std::vector<QubitArg>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        print_argument(out, args[i]);
    }
}

void print_gate_app(std::string& out, const GateApp& app) {
    out += app.name;
    if (!app.params.empty()) {
        out += '(';
        for (std::size_t i = 0; i < app.params.size(); ++i) {
            if (i != 0) {
                out += ", ";
            }
            out += app.params[i].to_string();
        }
        out += ')';
    }
    out += ' ';
    print_arguments(out, app.qubits);
    out += ';';
}

void print_measure(std::string& out, const MeasureStmt& m) {
    out += "measure ";
    print_argument(out, m.qubit);
    out += " -> ";
    print_argument(out, m.clbit);
    out += ';';
}

void print_reset(std::string& out, const ResetStmt& r) {
    out += "reset ";
    print_argument(out, r.target);
    out += ';';
}

void print_statement(std::string& out, const Statement& stmt) {
    if (const auto* app = std::get_if<GateApp>(&stmt)) {
        print_gate_app(out, *app);
    } else if (const auto* m = std::get_if<MeasureStmt>(&stmt)) {
        print_measure(out, *m);
    } else if (const auto* r = std::get_if<ResetStmt>(&stmt)) {
        print_reset(out, *r);
    } else if (const auto* b = std::get_if<BarrierStmt>(&stmt)) {
        out += "barrier ";
        print_arguments(out, b->args);
        out += ';';
    } else if (const auto* c = std::get_if<CondStmt>(&stmt)) {
        out += "if (";
        out += c->creg;
        out += " == ";
        out += std::to_string(c->value);
        out += ") ";
        if (const auto* app = std::get_if<GateApp>(&c->body)) {
            print_gate_app(out, *app);
        } else if (const auto* m = std::get_if<MeasureStmt>(&c->body)) {
            print_measure(out, *m);
        } else {
            print_reset(out, std::get<ResetStmt>(c->body));
        }
    }
}

void print_formals(std::string& out, const GateDef& def) {
    out += def.name;
    if (!def.params.empty()) {
        out += '(';
        for (std::size_t i = 0; i < def.params.size(); ++i) {
            if (i != 0) {
                out += ", ";
            }
            out += def.params[i];
        }
        out += ')';
    }
    out += ' ';
    for (std::size_t i = 0; i < def.qubits.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += def.qubits[i];
    }
}

}  // namespace

std::string print_program(const Program& prog) {
    std::string out = "OPENQASM " + prog.version + ";\n";
    for (const std::string& inc : prog.includes) {
        out += "include \"" + inc + "\";\n";
    }
    for (const RegDecl& decl : prog.declarations) {
        out += decl.kind == RegKind::qreg ? "qreg " : "creg ";
        out += decl.name;
        out += '[';
        out += std::to_string(decl.size);
        out += "];\n";
    }
    for (const GateDef& def : prog.gate_defs) {
        if (def.is_opaque()) {
            out += "opaque ";
            print_formals(out, def);
            out += ";\n";
        } else {
            out += "gate ";
            print_formals(out, def);
            out += " {\n";
            for (const GateApp& app : *def.body) {
                out += "  ";
                print_gate_app(out, app);
                out += '\n';
            }
            out += "}\n";
        }
    }
    for (const Statement& stmt : prog.statements) {
        print_statement(out, stmt);
        out += '\n';
    }
    return out;
}

}  // namespace qact::qasm
