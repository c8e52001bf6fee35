#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "qact/circuit.hpp"
#include "qact/errors.hpp"
#include "qact/qasm.hpp"
#include "support/data.hpp"
#include "support/generators.hpp"

using namespace qact;
using namespace qact::qasm;

namespace {

constexpr double kPi = 3.141592653589793;

Program parse_data(const std::string& relative) {
    return parse_program(testing::read_data(relative));
}

std::vector<std::string> qasm_corpus() {
    std::vector<std::string> files;
    for (const auto& entry :
         std::filesystem::directory_iterator(testing::data_path("qasm"))) {
        files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::string one_gate(const std::string& stmt) {
    return "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n" + stmt + "\n";
}

}  // namespace

TEST_CASE("bell program parses into two declarations and three statements") {
    const Program p = parse_data("qasm/bell.qasm");
    CHECK(p.version == "2.0");
    CHECK(p.includes == std::vector<std::string>{"qelib1.inc"});
    REQUIRE(p.declarations.size() == 2);
    CHECK(p.declarations[0] == RegDecl{RegKind::qreg, "q", 2});
    CHECK(p.declarations[1] == RegDecl{RegKind::creg, "c", 2});
    CHECK(p.gate_defs.empty());
    REQUIRE(p.statements.size() == 3);
    CHECK(std::get<GateApp>(p.statements[0]).name == "h");
    CHECK(std::get<GateApp>(p.statements[1]).name == "cx");
    const auto& m = std::get<MeasureStmt>(p.statements[2]);
    CHECK(m.qubit == QubitArg{"q", std::nullopt});
    CHECK(m.clbit == QubitArg{"c", std::nullopt});
}

TEST_CASE("comments and loose whitespace are ignored") {
    const Program p = parse_data("qasm/comments.qasm");
    CHECK_FALSE(p.statements.empty());
    const std::string compact = print_program(p);
    CHECK(parse_program(compact) == p);
}

TEST_CASE("parse errors carry one-based source positions") {
    try {
        parse_program("OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n");
        FAIL("expected a QasmError");
    } catch (const QasmError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
        CHECK(std::string(e.what()) == "3:1: unknown gate \"foo\"");
    }
}

TEST_CASE("header errors") {
    CHECK_THROWS_WITH_AS(parse_program("qreg q[1];"), doctest::Contains("OPENQASM"),
                         QasmError);
    CHECK_THROWS_WITH_AS(parse_program("OPENQASM 3.0;\nqreg q[1];\n"),
                         doctest::Contains("unsupported OpenQASM version"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program("OPENQASM 2.0;\ninclude \"stdgates.inc\";\n"),
                         doctest::Contains("qelib1.inc"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program("OPENQASM 2.0;\ninclude \"qelib1.inc\n"),
                         doctest::Contains("unterminated string literal"), QasmError);
}

TEST_CASE("register declaration errors") {
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\nqreg q[2];\ncreg q[2];\n"),
        doctest::Contains("duplicate register \"q\""), QasmError);
    CHECK_THROWS_WITH_AS(parse_program("OPENQASM 2.0;\nqreg q[0];\n"),
                         doctest::Contains("register size must be at least 1"), QasmError);
}

TEST_CASE("operand checking at parse time") {
    CHECK_THROWS_WITH_AS(parse_program(one_gate("cx q[0], q[0];")),
                         doctest::Contains("repeated qubit operand \"q\""), QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("cx q, q[1];")),
                         doctest::Contains("repeated qubit operand"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("h q[2];")),
                         doctest::Contains("index 2 out of range for register \"q\" of size 2"),
                         QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("h r[0];")),
                         doctest::Contains("undeclared register \"r\""), QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("h c[0];")),
                         doctest::Contains("is classical"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("measure q[0] -> q[1];")),
                         doctest::Contains("is quantum"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("measure c[0] -> c[1];")),
                         doctest::Contains("is classical"), QasmError);
}

TEST_CASE("gate name resolution") {
    CHECK_THROWS_WITH_AS(parse_program(one_gate("waltz q[0];")),
                         doctest::Contains("unknown gate \"waltz\""), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n"),
        doctest::Contains("gate \"h\" requires include \"qelib1.inc\""), QasmError);
    const Program p = parse_data("qasm/noinclude.qasm");
    CHECK(p.includes.empty());
    REQUIRE(p.statements.size() >= 2);
    CHECK(std::get<GateApp>(p.statements[0]).name == "U");
    CHECK(std::get<GateApp>(p.statements[1]).name == "CX");
}

TEST_CASE("gate definition checks") {
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\ninclude \"qelib1.inc\";\ngate h a { }\n"),
        doctest::Contains("cannot redefine built-in gate \"h\""), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\ngate g a { g a; }\n"),
        doctest::Contains("recursive gate definition \"g\""), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\nqreg q[1];\ngate g a { measure a -> a; }\n"),
        doctest::Contains("only gate applications are allowed in a gate body"), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\ngate g a { barrier a; }\n"),
        doctest::Contains("only gate applications are allowed in a gate body"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program("OPENQASM 2.0;\ngate g(pi) a { U(pi, 0, 0) a; }\n"),
                         doctest::Contains("reserved name \"pi\""), QasmError);
    CHECK_THROWS_WITH_AS(parse_program("OPENQASM 2.0;\ngate g a, a { }\n"),
                         doctest::Contains("duplicate gate formal \"a\""), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\ngate g(t) t { }\n"),
        doctest::Contains("\"t\" used as both parameter and qubit"), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\ngate g a { U(0, 0, 0) b; }\n"),
        doctest::Contains("undeclared qubit formal \"b\""), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\ngate g(x) a { U(y, 0, 0) a; }\n"),
        doctest::Contains("undefined parameter \"y\""), QasmError);
    CHECK_THROWS_WITH_AS(
        parse_program("OPENQASM 2.0;\ngate g a { }\nopaque g q;\n"),
        doctest::Contains("gate \"g\" already defined"), QasmError);
}

TEST_CASE("top-level expressions may only reference pi") {
    CHECK_THROWS_WITH_AS(parse_program(one_gate("rz(theta) q[0];")),
                         doctest::Contains("undefined parameter \"theta\""), QasmError);
    CHECK_NOTHROW(parse_program(one_gate("rz(-pi/4 + 2^-2 * sin(0.5)) q[0];")));
}

TEST_CASE("conditional statements") {
    const Program p = parse_program(one_gate("if (c == 3) x q[0];"));
    const auto& cond = std::get<CondStmt>(p.statements.back());
    CHECK(cond.creg == "c");
    CHECK(cond.value == 3);
    CHECK(std::get<GateApp>(cond.body).name == "x");

    CHECK_THROWS_WITH_AS(parse_program(one_gate("if (q == 1) x q[0];")),
                         doctest::Contains("condition must name a declared classical register"),
                         QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("if (c == -1) x q[0];")),
                         doctest::Contains("a nonnegative integer"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("if (c == 1) barrier q;")),
                         doctest::Contains("\"barrier\" cannot be conditional"), QasmError);
    CHECK_THROWS_WITH_AS(parse_program(one_gate("if (c == 1) if (c == 2) x q[0];")),
                         doctest::Contains("\"if\" cannot be conditional"), QasmError);
}

TEST_CASE("expression evaluation through flattening") {
    const std::string src = one_gate(
        "rz(pi/2) q[0];\nrz(2^-2) q[0];\nrz(-pi + 1) q[0];\nrz(sqrt(2)*ln(exp(1))) q[0];");
    const FlatCircuit c = flatten(parse_program(src));
    REQUIRE(c.ops.size() == 4);
    CHECK(c.ops[0].params[0] == 1.5707963267948966);
    CHECK(c.ops[1].params[0] == 0.25);
    CHECK(c.ops[2].params[0] == -kPi + 1.0);
    CHECK(c.ops[3].params[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("caret is right-associative and binds tighter than product") {
    const FlatCircuit c =
        flatten(parse_program(one_gate("rz(2^3^2) q[0];\nrz(2*3^2) q[0];")));
    CHECK(c.ops[0].params[0] == 512.0);
    CHECK(c.ops[1].params[0] == 18.0);
}

TEST_CASE("evaluation failures surface as EvalError") {
    CHECK_THROWS_WITH_AS(flatten(parse_program(one_gate("rz(1/0) q[0];"))),
                         doctest::Contains("division by zero"), EvalError);
    CHECK_THROWS_WITH_AS(flatten(parse_program(one_gate("rz(ln(0)) q[0];"))),
                         doctest::Contains("ln of a non-positive value"), EvalError);
    CHECK_THROWS_WITH_AS(flatten(parse_program(one_gate("rz(sqrt(-1)) q[0];"))),
                         doctest::Contains("sqrt of a negative value"), EvalError);
    CHECK_THROWS_WITH_AS(ParamExpr::name("omega").eval(),
                         doctest::Contains("unbound parameter \"omega\""), EvalError);
}

TEST_CASE("ParamExpr factories evaluate and fold") {
    CHECK(ParamExpr::pi().eval() == kPi);
    CHECK(ParamExpr::negate(ParamExpr::number(2.0)) == ParamExpr::number(-2.0));
    CHECK(ParamExpr::negate(ParamExpr::pi()).to_string() == "(-pi)");
    const auto half = ParamExpr::binary(ParamExpr::BinaryOp::div, ParamExpr::pi(),
                                        ParamExpr::number(2.0));
    CHECK(half.eval() == kPi / 2.0);
    CHECK(half.to_string() == "(pi/2)");
    CHECK(ParamExpr::name("theta").eval({{"theta", 0.25}}) == 0.25);
}

TEST_CASE("flattening the bell program yields four global-index ops") {
    const FlatCircuit c = flatten(parse_data("qasm/bell.qasm"));
    CHECK(c.num_qubits == 2);
    CHECK(c.num_clbits == 2);
    REQUIRE(c.ops.size() == 4);
    CHECK(c.ops[0] == FlatOp{OpKind::builtin_gate, "h", {}, {0}, {}, false, {}});
    CHECK(c.ops[1] == FlatOp{OpKind::builtin_gate, "cx", {}, {0, 1}, {}, false, {}});
    CHECK(c.ops[2] == FlatOp{OpKind::measure, "measure", {}, {0}, {0}, false, {}});
    CHECK(c.ops[3] == FlatOp{OpKind::measure, "measure", {}, {1}, {1}, false, {}});
}

TEST_CASE("register shorthand broadcasts in index order") {
    const FlatCircuit c = flatten(
        parse_program("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\nh q;\n"));
    REQUIRE(c.ops.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(c.ops[i].qubits == std::vector<int>{i});
    }

    const FlatCircuit b = flatten(parse_data("qasm/broadcast.qasm"));
    CHECK(b.num_qubits == 6);
    REQUIRE(b.ops.size() == 15);
    std::vector<std::vector<int>> pairs;
    for (std::size_t i = 3; i < 12; ++i) {
        pairs.push_back(b.ops[i].qubits);
    }
    CHECK(pairs == std::vector<std::vector<int>>{{0, 3},
                                                 {0, 4},
                                                 {0, 5},
                                                 {0, 3},
                                                 {1, 4},
                                                 {2, 5},
                                                 {0, 3},
                                                 {1, 4},
                                                 {2, 5}});
    CHECK(b.ops[14] == FlatOp{OpKind::measure, "measure", {}, {5}, {2}, false, {}});
}

TEST_CASE("broadcast over unequal register sizes fails") {
    const std::string src =
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg a[2];\nqreg b[3];\ncx a, b;\n";
    CHECK_THROWS_WITH_AS(flatten(parse_program(src)),
                         doctest::Contains("cannot broadcast over registers of unequal sizes"),
                         QasmError);
    const std::string m =
        "OPENQASM 2.0;\nqreg a[2];\ncreg c[3];\nmeasure a -> c;\n";
    CHECK_THROWS_WITH_AS(flatten(parse_program(m)),
                         doctest::Contains("measure operands have unequal sizes (2 and 3)"),
                         QasmError);
}

TEST_CASE("arity checking happens at flatten time") {
    CHECK_THROWS_WITH_AS(flatten(parse_program(one_gate("h q[0], q[1];"))),
                         doctest::Contains("gate \"h\" expects 1 qubit argument(s), got 2"),
                         QasmError);
    CHECK_THROWS_WITH_AS(flatten(parse_program(one_gate("rx q[0];"))),
                         doctest::Contains("gate \"rx\" expects 1 parameter(s), got 0"),
                         QasmError);
    CHECK_THROWS_WITH_AS(flatten(parse_program(one_gate("h(0.5) q[0];"))),
                         doctest::Contains("gate \"h\" expects 0 parameter(s), got 1"),
                         QasmError);
}

TEST_CASE("primitive U and CX normalize to their qelib names") {
    const FlatCircuit c = flatten(parse_data("qasm/noinclude.qasm"));
    REQUIRE(c.ops.size() == 2);
    CHECK(c.ops[0].name == "u3");
    CHECK(c.ops[0].kind == OpKind::builtin_gate);
    CHECK(c.ops[0].params == std::vector<double>{kPi / 2.0, 0.0, kPi});
    CHECK(c.ops[1].name == "cx");
    CHECK(c.ops[1].qubits == std::vector<int>{0, 1});
}

TEST_CASE("user gates inline down to builtins with bound parameters") {
    const std::string src =
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
        "gate mygate a, b { h a; cx a, b; }\n"
        "qreg q[2];\nmygate q[0], q[1];\n";
    const FlatCircuit c = flatten(parse_program(src));
    REQUIRE(c.ops.size() == 2);
    CHECK(c.ops[0].name == "h");
    CHECK(c.ops[0].qubits == std::vector<int>{0});
    CHECK(c.ops[1].name == "cx");
    CHECK(c.ops[1].qubits == std::vector<int>{0, 1});
}

TEST_CASE("nested definitions resolve parameters numerically") {
    const FlatCircuit c = flatten(parse_data("qasm/deep_inline.qasm"));
    const double theta = kPi / 5.0;
    const double t2 = std::pow(theta, 2.0);
    REQUIRE(c.ops.size() == 10);
    for (const auto& op : c.ops) {
        CHECK(op.kind == OpKind::builtin_gate);
    }
    CHECK(c.ops[0].name == "rz");
    CHECK(c.ops[0].params[0] == (theta + 2.0 * theta) / 2.0);
    CHECK(c.ops[1].name == "rx");
    CHECK(c.ops[1].params[0] == (theta + 2.0 * theta) * (theta + 2.0 * theta));
    CHECK(c.ops[2].params[0] == (2.0 * theta - theta) / 2.0);
    CHECK(c.ops[4].name == "cx");
    CHECK(c.ops[4].qubits == std::vector<int>{0, 1});
    CHECK(c.ops[5].params[0] == (-theta + t2) / 2.0);
    CHECK(c.ops[5].qubits == std::vector<int>{1});
    CHECK(c.ops[7].params[0] == (t2 - -theta) / 2.0);
    CHECK(c.ops[7].qubits == std::vector<int>{0});
    CHECK(c.ops[9].name == "cx");
    CHECK(c.ops[9].qubits == std::vector<int>{1, 0});
}

TEST_CASE("opaque gates stay atomic") {
    const FlatCircuit c = flatten(parse_data("qasm/opaque.qasm"));
    const auto echo = std::find_if(c.ops.begin(), c.ops.end(), [](const FlatOp& op) {
        return op.name == "vendor_echo";
    });
    REQUIRE(echo != c.ops.end());
    CHECK(echo->kind == OpKind::opaque_gate);
    REQUIRE(echo->params.size() == 1);
    const auto msr = std::find_if(c.ops.begin(), c.ops.end(), [](const FlatOp& op) {
        return op.name == "vendor_msr";
    });
    REQUIRE(msr != c.ops.end());
    CHECK(msr->qubits.size() == 2);
}

TEST_CASE("conditionals flatten to flagged ops over the whole register") {
    const FlatCircuit c = flatten(parse_program(one_gate("if (c == 1) x q;")));
    REQUIRE(c.ops.size() == 2);
    for (const auto& op : c.ops) {
        CHECK(op.conditional);
        CHECK(op.cond_clbits == std::vector<int>{0, 1});
    }
    const FlatCircuit plain = flatten(parse_program(one_gate("x q[0];")));
    CHECK_FALSE(plain.ops[0].conditional);
    CHECK(plain.ops[0].cond_clbits.empty());
}

TEST_CASE("barriers flatten to a single deduplicated op") {
    const std::string src = one_gate("barrier q[1], q;");
    const FlatCircuit c = flatten(parse_program(src));
    REQUIRE(c.ops.size() == 1);
    CHECK(c.ops[0].kind == OpKind::barrier);
    CHECK(c.ops[0].qubits == std::vector<int>{1, 0});
}

TEST_CASE("qasm corpus survives print and reparse") {
    const auto files = qasm_corpus();
    REQUIRE(files.size() >= 20);
    for (const auto& file : files) {
        CAPTURE(file);
        const Program original = parse_program(testing::slurp(file));
        const std::string printed = print_program(original);
        CHECK(parse_program(printed) == original);
        CHECK(print_program(parse_program(printed)) == printed);
        if (file.find("empty") == std::string::npos) {
            CHECK_FALSE(flatten(original).ops.empty());
        }
    }
}

namespace {

struct NamedGate {
    const char* name;
    int params;
    int qubits;
};

constexpr NamedGate kFuzzGates[] = {{"h", 0, 1},  {"x", 0, 1},    {"t", 0, 1},
                                    {"rx", 1, 1}, {"u2", 2, 1},   {"u3", 3, 1},
                                    {"cx", 0, 2}, {"swap", 0, 2}, {"cu1", 1, 2},
                                    {"ccx", 0, 3}};

ParamExpr random_param(testing::Rng& rng) {
    static const double kValues[] = {0.0, 0.5, 1.25, 2.0, 0.001953125};
    switch (testing::pick_int(rng, 0, 4)) {
        case 0:
            return ParamExpr::pi();
        case 1:
            return ParamExpr::negate(ParamExpr::pi());
        case 2:
            return ParamExpr::number(-kValues[testing::pick_int(rng, 0, 4)]);
        case 3:
            return ParamExpr::binary(ParamExpr::BinaryOp::div, ParamExpr::pi(),
                                     ParamExpr::number(4.0));
        default:
            return ParamExpr::number(kValues[testing::pick_int(rng, 0, 4)]);
    }
}

struct FuzzRegisters {
    std::vector<RegDecl> qregs;
    std::vector<RegDecl> cregs;
};

QubitArg pick_slot(testing::Rng& rng, const std::vector<RegDecl>& regs,
                   std::vector<std::pair<std::string, std::int64_t>>& used) {
    while (true) {
        const RegDecl& r = regs[testing::pick_int(rng, 0, static_cast<int>(regs.size()) - 1)];
        const std::int64_t idx = testing::pick_int(rng, 0, static_cast<int>(r.size) - 1);
        if (std::find(used.begin(), used.end(), std::make_pair(r.name, idx)) == used.end()) {
            used.emplace_back(r.name, idx);
            return QubitArg{r.name, idx};
        }
    }
}

Program random_program(testing::Rng& rng) {
    Program p;
    p.includes = {"qelib1.inc"};
    FuzzRegisters regs;
    regs.qregs.push_back({RegKind::qreg, "qa", testing::pick_int(rng, 1, 4)});
    regs.qregs.push_back({RegKind::qreg, "qb", testing::pick_int(rng, 1, 4)});
    regs.cregs.push_back({RegKind::creg, "ca", testing::pick_int(rng, 1, 4)});
    p.declarations = {regs.qregs[0], regs.qregs[1], regs.cregs[0]};

    int total_qubits = static_cast<int>(regs.qregs[0].size + regs.qregs[1].size);
    const int num_stmts = testing::pick_int(rng, 0, 20);
    for (int i = 0; i < num_stmts; ++i) {
        const int roll = testing::pick_int(rng, 0, 99);
        Statement stmt;
        if (roll < 55) {
            const NamedGate& g = kFuzzGates[testing::pick_int(rng, 0, 9)];
            if (g.qubits > total_qubits) {
                continue;
            }
            GateApp app;
            app.name = g.name;
            for (int k = 0; k < g.params; ++k) {
                app.params.push_back(random_param(rng));
            }
            if (g.qubits == 1 && testing::pick_bool(rng, 0.2)) {
                app.qubits.push_back(QubitArg{regs.qregs[0].name, std::nullopt});
            } else {
                std::vector<std::pair<std::string, std::int64_t>> used;
                for (int k = 0; k < g.qubits; ++k) {
                    app.qubits.push_back(pick_slot(rng, regs.qregs, used));
                }
            }
            stmt = std::move(app);
        } else if (roll < 70) {
            MeasureStmt m;
            if (testing::pick_bool(rng, 0.3) && regs.qregs[0].size == regs.cregs[0].size) {
                m.qubit = {regs.qregs[0].name, std::nullopt};
                m.clbit = {regs.cregs[0].name, std::nullopt};
            } else {
                std::vector<std::pair<std::string, std::int64_t>> used;
                m.qubit = pick_slot(rng, regs.qregs, used);
                m.clbit = {regs.cregs[0].name,
                           testing::pick_int(rng, 0, static_cast<int>(regs.cregs[0].size) - 1)};
            }
            stmt = std::move(m);
        } else if (roll < 80) {
            ResetStmt r;
            if (testing::pick_bool(rng, 0.3)) {
                r.target = {regs.qregs[1].name, std::nullopt};
            } else {
                std::vector<std::pair<std::string, std::int64_t>> used;
                r.target = pick_slot(rng, regs.qregs, used);
            }
            stmt = std::move(r);
        } else if (roll < 90) {
            BarrierStmt b;
            if (testing::pick_bool(rng)) {
                b.args.push_back(QubitArg{regs.qregs[0].name, std::nullopt});
                if (testing::pick_bool(rng)) {
                    b.args.push_back(QubitArg{regs.qregs[1].name, std::nullopt});
                }
            } else {
                std::vector<std::pair<std::string, std::int64_t>> used;
                const int n = testing::pick_int(rng, 1, std::min(3, total_qubits));
                for (int k = 0; k < n; ++k) {
                    b.args.push_back(pick_slot(rng, regs.qregs, used));
                }
            }
            stmt = std::move(b);
        } else {
            CondStmt c;
            c.creg = regs.cregs[0].name;
            c.value = testing::pick_int(rng, 0, 7);
            GateApp app;
            app.name = "x";
            std::vector<std::pair<std::string, std::int64_t>> used;
            app.qubits.push_back(pick_slot(rng, regs.qregs, used));
            c.body = std::move(app);
            stmt = std::move(c);
        }
        p.statements.push_back(std::move(stmt));
    }
    return p;
}

}  // namespace

TEST_CASE("property: printed random programs reparse to an equal AST and flatten in bounds") {
    testing::Rng rng(424242);
    for (int i = 0; i < 250; ++i) {
        const Program p = random_program(rng);
        const std::string text = print_program(p);
        CAPTURE(i);
        CAPTURE(text);
        const Program back = parse_program(text);
        CHECK(back == p);
        const FlatCircuit c = flatten(back);
        for (const auto& op : c.ops) {
            for (int q : op.qubits) {
                CHECK(q >= 0);
                CHECK(q < c.num_qubits);
            }
            for (int b : op.clbits) {
                CHECK(b >= 0);
                CHECK(b < c.num_clbits);
            }
            for (int b : op.cond_clbits) {
                CHECK(b >= 0);
                CHECK(b < c.num_clbits);
            }
            if (op.kind != OpKind::barrier) {
                CHECK_FALSE(op.qubits.empty());
            }
        }
    }
}

TEST_CASE("flatten preserves statement order for single-index programs") {
    const std::string src = one_gate("x q[0];\ny q[1];\nmeasure q[0] -> c[0];\nz q[1];");
    const FlatCircuit c = flatten(parse_program(src));
    std::vector<std::string> names;
    for (const auto& op : c.ops) {
        names.push_back(op.name);
    }
    CHECK(names == std::vector<std::string>{"x", "y", "measure", "z"});
}
