#include <cmath>
#include <utility>

#include "qact/format.hpp"
#include "qact/qasm.hpp"

namespace qact::qasm {

namespace {

constexpr double kPi = 3.141592653589793;

}  // namespace

struct ParamExpr::Node {
    enum class Kind { number, pi, name, negate, binary, call } kind;
    double value = 0.0;
    std::string id;
    BinaryOp op = BinaryOp::add;
    Func fn = Func::sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

ParamExpr ParamExpr::number(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = value;
    return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::pi() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::pi;
    return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::name(std::string id) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::name;
    n->id = std::move(id);
    return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::negate(ParamExpr operand) {
    if (operand.node_ && operand.node_->kind == Node::Kind::number) {
        return number(-operand.node_->value);
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::negate;
    n->lhs = std::move(operand.node_);
    return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::binary(BinaryOp op, ParamExpr lhs, ParamExpr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::call(Func fn, ParamExpr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->fn = fn;
    n->lhs = std::move(arg.node_);
    return ParamExpr(std::move(n));
}

std::optional<ParamExpr::Func> ParamExpr::func_from_name(std::string_view name) {
    if (name == "sin") return Func::sin;
    if (name == "cos") return Func::cos;
    if (name == "tan") return Func::tan;
    if (name == "exp") return Func::exp;
    if (name == "ln") return Func::ln;
    if (name == "sqrt") return Func::sqrt;
    return std::nullopt;
}

namespace {

double eval_node(const ParamExpr::Node& n, const std::map<std::string, double>& bindings);

double eval_binary(ParamExpr::BinaryOp op, double lhs, double rhs) {
    switch (op) {
        case ParamExpr::BinaryOp::add: return lhs + rhs;
        case ParamExpr::BinaryOp::sub: return lhs - rhs;
        case ParamExpr::BinaryOp::mul: return lhs * rhs;
        case ParamExpr::BinaryOp::div:
            if (rhs == 0.0) {
                throw EvalError("division by zero");
            }
            return lhs / rhs;
        case ParamExpr::BinaryOp::pow: return std::pow(lhs, rhs);
    }
    throw EvalError("unknown binary operator");
}

double eval_call(ParamExpr::Func fn, double arg) {
    switch (fn) {
        case ParamExpr::Func::sin: return std::sin(arg);
        case ParamExpr::Func::cos: return std::cos(arg);
        case ParamExpr::Func::tan: return std::tan(arg);
        case ParamExpr::Func::exp: return std::exp(arg);
        case ParamExpr::Func::ln:
            if (arg <= 0.0) {
                throw EvalError("ln of a non-positive value");
            }
            return std::log(arg);
        case ParamExpr::Func::sqrt:
            if (arg < 0.0) {
                throw EvalError("sqrt of a negative value");
            }
            return std::sqrt(arg);
    }
    throw EvalError("unknown function");
}

double eval_node(const ParamExpr::Node& n, const std::map<std::string, double>& bindings) {
    using Kind = ParamExpr::Node::Kind;
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::pi: return kPi;
        case Kind::name: {
            auto it = bindings.find(n.id);
            if (it == bindings.end()) {
                throw EvalError("unbound parameter \"" + n.id + "\"");
            }
            return it->second;
        }
        case Kind::negate: return -eval_node(*n.lhs, bindings);
        case Kind::binary:
            return eval_binary(n.op, eval_node(*n.lhs, bindings), eval_node(*n.rhs, bindings));
        case Kind::call: return eval_call(n.fn, eval_node(*n.lhs, bindings));
    }
    throw EvalError("malformed expression");
}

std::string_view op_text(ParamExpr::BinaryOp op) {
    switch (op) {
        case ParamExpr::BinaryOp::add: return "+";
        case ParamExpr::BinaryOp::sub: return "-";
        case ParamExpr::BinaryOp::mul: return "*";
        case ParamExpr::BinaryOp::div: return "/";
        case ParamExpr::BinaryOp::pow: return "^";
    }
    return "?";
}

std::string_view func_text(ParamExpr::Func fn) {
    switch (fn) {
        case ParamExpr::Func::sin: return "sin";
        case ParamExpr::Func::cos: return "cos";
        case ParamExpr::Func::tan: return "tan";
        case ParamExpr::Func::exp: return "exp";
        case ParamExpr::Func::ln: return "ln";
        case ParamExpr::Func::sqrt: return "sqrt";
    }
    return "?";
}

void print_node(const ParamExpr::Node& n, std::string& out) {
    using Kind = ParamExpr::Node::Kind;
    switch (n.kind) {
        case Kind::number:
            out += format_double(n.value);
            return;
        case Kind::pi:
            out += "pi";
            return;
        case Kind::name:
            out += n.id;
            return;
        case Kind::negate:
            out += "(-";
            print_node(*n.lhs, out);
            out += ")";
            return;
        case Kind::binary:
            out += "(";
            print_node(*n.lhs, out);
            out += op_text(n.op);
            print_node(*n.rhs, out);
            out += ")";
            return;
        case Kind::call:
            out += func_text(n.fn);
            out += "(";
            print_node(*n.lhs, out);
            out += ")";
            return;
    }
}

bool nodes_equal(const ParamExpr::Node& a, const ParamExpr::Node& b) {
    using Kind = ParamExpr::Node::Kind;
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
        case Kind::number: return a.value == b.value;
        case Kind::pi: return true;
        case Kind::name: return a.id == b.id;
        case Kind::negate: return nodes_equal(*a.lhs, *b.lhs);
        case Kind::binary:
            return a.op == b.op && nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
        case Kind::call: return a.fn == b.fn && nodes_equal(*a.lhs, *b.lhs);
    }
    return false;
}

}  // namespace

double ParamExpr::eval(const std::map<std::string, double>& bindings) const {
    double result = eval_node(*node_, bindings);
    if (!std::isfinite(result)) {
        throw EvalError("expression does not evaluate to a finite number");
    }
    return result;
}

std::string ParamExpr::to_string() const {
    std::string out;
    print_node(*node_, out);
    return out;
}

bool ParamExpr::operator==(const ParamExpr& other) const {
    return nodes_equal(*node_, *other.node_);
}

}  // namespace qact::qasm
