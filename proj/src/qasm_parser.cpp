#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <utility>

#include "qact/qasm.hpp"

namespace qact::qasm {

namespace {

// qelib1.inc standard library gates with (parameter, qubit) arities.
constexpr std::array<BuiltinGate, 24> kBuiltinGates{{
    {"u1", 1, 1}, {"u2", 2, 1}, {"u3", 3, 1}, {"id", 0, 1},
    {"x", 0, 1},  {"y", 0, 1},  {"z", 0, 1},  {"h", 0, 1},
    {"s", 0, 1},  {"sdg", 0, 1}, {"t", 0, 1}, {"tdg", 0, 1},
    {"rx", 1, 1}, {"ry", 1, 1}, {"rz", 1, 1},
    {"cx", 0, 2}, {"cz", 0, 2}, {"cy", 0, 2}, {"ch", 0, 2},
    {"swap", 0, 2}, {"crz", 1, 2}, {"cu1", 1, 2}, {"cu3", 3, 2},
    {"ccx", 0, 3},
}};

enum class Tok {
    ident,
    real,
    integer,
    string,
    lparen,
    rparen,
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    semi,
    comma,
    arrow,
    eqeq,
    plus,
    minus,
    star,
    slash,
    caret,
    eof,
};

struct Token {
    Tok kind = Tok::eof;
    std::string text;
    double real_value = 0.0;
    std::int64_t int_value = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
 public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            bool done = t.kind == Tok::eof;
            out.push_back(std::move(t));
            if (done) {
                return out;
            }
        }
    }

 private:
    [[noreturn]] void error(const std::string& message, int line, int col) {
        throw QasmError(message, line, col);
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char peek2() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_trivia() {
        for (;;) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek2() == '/') {
                while (peek() != '\n' && peek() != '\0') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    Token make(Tok kind, std::string text, int line, int col) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.line = line;
        t.col = col;
        return t;
    }

    Token next() {
        skip_trivia();
        int line = line_;
        int col = col_;
        char c = peek();
        if (c == '\0') {
            return make(Tok::eof, "", line, col);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                text += advance();
            }
            return make(Tok::ident, std::move(text), line, col);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek2())))) {
            return lex_number(line, col);
        }
        if (c == '"') {
            advance();
            std::string text;
            while (peek() != '"') {
                if (peek() == '\0' || peek() == '\n') {
                    error("unterminated string literal", line, col);
                }
                text += advance();
            }
            advance();
            return make(Tok::string, std::move(text), line, col);
        }
        advance();
        switch (c) {
            case '(': return make(Tok::lparen, "(", line, col);
            case ')': return make(Tok::rparen, ")", line, col);
            case '[': return make(Tok::lbracket, "[", line, col);
            case ']': return make(Tok::rbracket, "]", line, col);
            case '{': return make(Tok::lbrace, "{", line, col);
            case '}': return make(Tok::rbrace, "}", line, col);
            case ';': return make(Tok::semi, ";", line, col);
            case ',': return make(Tok::comma, ",", line, col);
            case '+': return make(Tok::plus, "+", line, col);
            case '*': return make(Tok::star, "*", line, col);
            case '/': return make(Tok::slash, "/", line, col);
            case '^': return make(Tok::caret, "^", line, col);
            case '-':
                if (peek() == '>') {
                    advance();
                    return make(Tok::arrow, "->", line, col);
                }
                return make(Tok::minus, "-", line, col);
            case '=':
                if (peek() == '=') {
                    advance();
                    return make(Tok::eqeq, "==", line, col);
                }
                error("expected \"==\"", line, col);
            default:
                error(std::string("unexpected character \"") + c + "\"", line, col);
        }
    }

    Token lex_number(int line, int col) {
        std::string text;
        bool is_real = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            text += advance();
        }
        if (peek() == '.') {
            is_real = true;
            text += advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                text += advance();
            }
        }
        if (peek() == 'e' || peek() == 'E') {
            is_real = true;
            text += advance();
            if (peek() == '+' || peek() == '-') {
                text += advance();
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                error("malformed exponent", line_, col_);
            }
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                text += advance();
            }
        }
        Token t = make(is_real ? Tok::real : Tok::integer, text, line, col);
        if (is_real) {
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), t.real_value);
            if (ec != std::errc() || p != text.data() + text.size()) {
                error("malformed real literal \"" + text + "\"", line, col);
            }
        } else {
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), t.int_value);
            if (ec != std::errc() || p != text.data() + text.size()) {
                error("integer literal out of range \"" + text + "\"", line, col);
            }
        }
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_reserved_gate_name(std::string_view name) {
    return name == "U" || name == "CX" || find_builtin(name) != nullptr;
}

class Parser {
 public:
    explicit Parser(std::string_view source) : tokens_(Lexer(source).run()) {}

    Program parse() {
        expect_keyword("OPENQASM");
        const Token& version = expect(Tok::real, "version number");
        if (version.text != "2.0") {
            error("unsupported OpenQASM version \"" + version.text + "\", expected 2.0", version);
        }
        prog_.version = version.text;
        expect(Tok::semi, "\";\"");

        while (peek().kind != Tok::eof) {
            const Token& t = peek();
            if (t.kind != Tok::ident) {
                error("expected a statement", t);
            }
            if (t.text == "include") {
                parse_include();
            } else if (t.text == "qreg" || t.text == "creg") {
                parse_reg_decl();
            } else if (t.text == "gate") {
                parse_gate_def();
            } else if (t.text == "opaque") {
                parse_opaque_decl();
            } else {
                prog_.statements.push_back(parse_statement());
            }
        }
        return std::move(prog_);
    }

 private:
    [[noreturn]] void error(const std::string& message, const Token& at) {
        throw QasmError(message, at.line, at.col);
    }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token& advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    const Token& expect(Tok kind, const std::string& what) {
        const Token& t = peek();
        if (t.kind != kind) {
            error("expected " + what, t);
        }
        return advance();
    }

    void expect_keyword(std::string_view kw) {
        const Token& t = peek();
        if (t.kind != Tok::ident || t.text != kw) {
            error("expected \"" + std::string(kw) + "\"", t);
        }
        advance();
    }

    void parse_include() {
        advance();
        const Token& name = expect(Tok::string, "an include file name");
        if (name.text != "qelib1.inc") {
            error("only include \"qelib1.inc\" is supported", name);
        }
        expect(Tok::semi, "\";\"");
        prog_.includes.push_back(name.text);
        qelib_ = true;
    }

    void parse_reg_decl() {
        const Token& kw = advance();
        RegDecl decl;
        decl.kind = kw.text == "qreg" ? RegKind::qreg : RegKind::creg;
        const Token& name = expect(Tok::ident, "a register name");
        decl.name = name.text;
        if (registers_.count(decl.name) != 0) {
            error("duplicate register \"" + decl.name + "\"", name);
        }
        expect(Tok::lbracket, "\"[\"");
        const Token& size = expect(Tok::integer, "a register size");
        if (size.int_value < 1) {
            error("register size must be at least 1", size);
        }
        decl.size = size.int_value;
        expect(Tok::rbracket, "\"]\"");
        expect(Tok::semi, "\";\"");
        registers_.emplace(decl.name, decl);
        prog_.declarations.push_back(std::move(decl));
    }

    std::vector<std::string> parse_id_list() {
        std::vector<std::string> names;
        for (;;) {
            names.push_back(expect(Tok::ident, "an identifier").text);
            if (peek().kind != Tok::comma) {
                return names;
            }
            advance();
        }
    }

    void check_new_gate_name(const Token& name) {
        if (is_reserved_gate_name(name.text)) {
            error("cannot redefine built-in gate \"" + name.text + "\"", name);
        }
        if (gate_index_.count(name.text) != 0) {
            error("gate \"" + name.text + "\" already defined", name);
        }
    }

    void check_formals(const std::vector<std::string>& names, const Token& at) {
        std::set<std::string_view> seen;
        for (const std::string& n : names) {
            if (n == "pi" || ParamExpr::func_from_name(n)) {
                error("reserved name \"" + n + "\" cannot be a gate formal", at);
            }
            if (!seen.insert(n).second) {
                error("duplicate gate formal \"" + n + "\"", at);
            }
        }
    }

    // gate name(params?) qubits { body }
    void parse_gate_def() {
        advance();
        const Token& name = expect(Tok::ident, "a gate name");
        check_new_gate_name(name);
        GateDef def;
        def.name = name.text;
        if (peek().kind == Tok::lparen) {
            advance();
            if (peek().kind != Tok::rparen) {
                def.params = parse_id_list();
            }
            expect(Tok::rparen, "\")\"");
        }
        def.qubits = parse_id_list();
        check_formals(def.params, name);
        check_formals(def.qubits, name);
        for (const std::string& q : def.qubits) {
            if (std::find(def.params.begin(), def.params.end(), q) != def.params.end()) {
                error("gate formal \"" + q + "\" used as both parameter and qubit", name);
            }
        }
        expect(Tok::lbrace, "\"{\"");
        std::vector<GateApp> body;
        while (peek().kind != Tok::rbrace) {
            body.push_back(parse_body_app(def));
        }
        advance();
        def.body = std::move(body);
        gate_index_.emplace(def.name, prog_.gate_defs.size());
        prog_.gate_defs.push_back(std::move(def));
    }

    void parse_opaque_decl() {
        advance();
        const Token& name = expect(Tok::ident, "a gate name");
        check_new_gate_name(name);
        GateDef def;
        def.name = name.text;
        if (peek().kind == Tok::lparen) {
            advance();
            if (peek().kind != Tok::rparen) {
                def.params = parse_id_list();
            }
            expect(Tok::rparen, "\")\"");
        }
        def.qubits = parse_id_list();
        check_formals(def.params, name);
        check_formals(def.qubits, name);
        expect(Tok::semi, "\";\"");
        gate_index_.emplace(def.name, prog_.gate_defs.size());
        prog_.gate_defs.push_back(std::move(def));
    }

    void resolve_gate_name(const Token& name, const GateDef* enclosing) {
        if (name.text == "U" || name.text == "CX") {
            return;
        }
        if (enclosing != nullptr && name.text == enclosing->name) {
            error("recursive gate definition \"" + name.text + "\"", name);
        }
        if (gate_index_.count(name.text) != 0) {
            return;
        }
        if (find_builtin(name.text) != nullptr) {
            if (!qelib_) {
                error("gate \"" + name.text + "\" requires include \"qelib1.inc\"", name);
            }
            return;
        }
        error("unknown gate \"" + name.text + "\"", name);
    }

    // Gate application inside a gate body: operands are bare formal names.
    GateApp parse_body_app(const GateDef& def) {
        const Token& name = expect(Tok::ident, "a gate name");
        if (name.text == "measure" || name.text == "reset" || name.text == "barrier" ||
            name.text == "if") {
            error("only gate applications are allowed in a gate body", name);
        }
        resolve_gate_name(name, &def);
        GateApp app;
        app.name = name.text;
        if (peek().kind == Tok::lparen) {
            advance();
            if (peek().kind != Tok::rparen) {
                app.params = parse_expr_list(&def.params);
            }
            expect(Tok::rparen, "\")\"");
        }
        std::set<std::string> used;
        for (;;) {
            const Token& q = expect(Tok::ident, "a qubit formal");
            if (std::find(def.qubits.begin(), def.qubits.end(), q.text) == def.qubits.end()) {
                error("undeclared qubit formal \"" + q.text + "\"", q);
            }
            if (!used.insert(q.text).second) {
                error("repeated qubit operand \"" + q.text + "\"", q);
            }
            app.qubits.push_back(QubitArg{q.text, std::nullopt});
            if (peek().kind != Tok::comma) {
                break;
            }
            advance();
        }
        expect(Tok::semi, "\";\"");
        return app;
    }

    QubitArg parse_argument(RegKind expected_kind) {
        const Token& name = expect(Tok::ident, "a register name");
        auto it = registers_.find(name.text);
        if (it == registers_.end()) {
            error("undeclared register \"" + name.text + "\"", name);
        }
        if (it->second.kind != expected_kind) {
            error(expected_kind == RegKind::qreg
                      ? "expected a quantum register, \"" + name.text + "\" is classical"
                      : "expected a classical register, \"" + name.text + "\" is quantum",
                  name);
        }
        QubitArg arg{name.text, std::nullopt};
        if (peek().kind == Tok::lbracket) {
            advance();
            const Token& idx = expect(Tok::integer, "an index");
            if (idx.int_value >= it->second.size) {
                error("index " + std::to_string(idx.int_value) + " out of range for register \"" +
                          name.text + "\" of size " + std::to_string(it->second.size),
                      idx);
            }
            arg.index = idx.int_value;
            expect(Tok::rbracket, "\"]\"");
        }
        return arg;
    }

    // Two operands on the same register overlap unless both are indexed
    // with distinct indices.
    void check_repeated_operands(const std::vector<QubitArg>& args, const Token& at) {
        for (std::size_t i = 0; i < args.size(); ++i) {
            for (std::size_t j = i + 1; j < args.size(); ++j) {
                if (args[i].reg != args[j].reg) {
                    continue;
                }
                if (!args[i].index || !args[j].index || *args[i].index == *args[j].index) {
                    error("repeated qubit operand \"" + args[i].reg + "\"", at);
                }
            }
        }
    }

    GateApp parse_gate_app() {
        const Token& name = expect(Tok::ident, "a gate name");
        resolve_gate_name(name, nullptr);
        GateApp app;
        app.name = name.text;
        if (peek().kind == Tok::lparen) {
            advance();
            if (peek().kind != Tok::rparen) {
                app.params = parse_expr_list(nullptr);
            }
            expect(Tok::rparen, "\")\"");
        }
        for (;;) {
            app.qubits.push_back(parse_argument(RegKind::qreg));
            if (peek().kind != Tok::comma) {
                break;
            }
            advance();
        }
        check_repeated_operands(app.qubits, name);
        expect(Tok::semi, "\";\"");
        return app;
    }

    MeasureStmt parse_measure() {
        advance();
        MeasureStmt m;
        m.qubit = parse_argument(RegKind::qreg);
        expect(Tok::arrow, "\"->\"");
        m.clbit = parse_argument(RegKind::creg);
        expect(Tok::semi, "\";\"");
        return m;
    }

    ResetStmt parse_reset() {
        advance();
        ResetStmt r;
        r.target = parse_argument(RegKind::qreg);
        expect(Tok::semi, "\";\"");
        return r;
    }

    BarrierStmt parse_barrier() {
        advance();
        BarrierStmt b;
        for (;;) {
            b.args.push_back(parse_argument(RegKind::qreg));
            if (peek().kind != Tok::comma) {
                break;
            }
            advance();
        }
        expect(Tok::semi, "\";\"");
        return b;
    }

    CondStmt parse_conditional() {
        advance();
        expect(Tok::lparen, "\"(\"");
        const Token& name = expect(Tok::ident, "a classical register name");
        auto it = registers_.find(name.text);
        if (it == registers_.end() || it->second.kind != RegKind::creg) {
            error("condition must name a declared classical register", name);
        }
        expect(Tok::eqeq, "\"==\"");
        const Token& value = expect(Tok::integer, "a nonnegative integer");
        expect(Tok::rparen, "\")\"");

        CondStmt cond;
        cond.creg = name.text;
        cond.value = value.int_value;
        const Token& inner = peek();
        if (inner.kind != Tok::ident) {
            error("expected a gate application, measure or reset", inner);
        }
        if (inner.text == "measure") {
            cond.body = parse_measure();
        } else if (inner.text == "reset") {
            cond.body = parse_reset();
        } else if (inner.text == "barrier" || inner.text == "if") {
            error("\"" + inner.text + "\" cannot be conditional", inner);
        } else {
            cond.body = parse_gate_app();
        }
        return cond;
    }

    Statement parse_statement() {
        const Token& t = peek();
        if (t.text == "measure") {
            return parse_measure();
        }
        if (t.text == "reset") {
            return parse_reset();
        }
        if (t.text == "barrier") {
            return parse_barrier();
        }
        if (t.text == "if") {
            return parse_conditional();
        }
        return parse_gate_app();
    }

    // Expression grammar: additive over multiplicative over unary minus,
    // with right-associative "^" binding tightest.
    std::vector<ParamExpr> parse_expr_list(const std::vector<std::string>* bound_names) {
        std::vector<ParamExpr> out;
        for (;;) {
            out.push_back(parse_expr(bound_names));
            if (peek().kind != Tok::comma) {
                return out;
            }
            advance();
        }
    }

    ParamExpr parse_expr(const std::vector<std::string>* bound) {
        ParamExpr lhs = parse_term(bound);
        for (;;) {
            if (peek().kind == Tok::plus) {
                advance();
                lhs = ParamExpr::binary(ParamExpr::BinaryOp::add, std::move(lhs), parse_term(bound));
            } else if (peek().kind == Tok::minus) {
                advance();
                lhs = ParamExpr::binary(ParamExpr::BinaryOp::sub, std::move(lhs), parse_term(bound));
            } else {
                return lhs;
            }
        }
    }

    ParamExpr parse_term(const std::vector<std::string>* bound) {
        ParamExpr lhs = parse_unary(bound);
        for (;;) {
            if (peek().kind == Tok::star) {
                advance();
                lhs = ParamExpr::binary(ParamExpr::BinaryOp::mul, std::move(lhs), parse_unary(bound));
            } else if (peek().kind == Tok::slash) {
                advance();
                lhs = ParamExpr::binary(ParamExpr::BinaryOp::div, std::move(lhs), parse_unary(bound));
            } else {
                return lhs;
            }
        }
    }

    ParamExpr parse_unary(const std::vector<std::string>* bound) {
        if (peek().kind == Tok::minus) {
            advance();
            return ParamExpr::negate(parse_unary(bound));
        }
        return parse_power(bound);
    }

    ParamExpr parse_power(const std::vector<std::string>* bound) {
        ParamExpr base = parse_atom(bound);
        if (peek().kind == Tok::caret) {
            advance();
            return ParamExpr::binary(ParamExpr::BinaryOp::pow, std::move(base), parse_unary(bound));
        }
        return base;
    }

    ParamExpr parse_atom(const std::vector<std::string>* bound) {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::real:
                advance();
                return ParamExpr::number(t.real_value);
            case Tok::integer:
                advance();
                return ParamExpr::number(static_cast<double>(t.int_value));
            case Tok::lparen: {
                advance();
                ParamExpr e = parse_expr(bound);
                expect(Tok::rparen, "\")\"");
                return e;
            }
            case Tok::ident: {
                advance();
                if (t.text == "pi") {
                    return ParamExpr::pi();
                }
                if (auto fn = ParamExpr::func_from_name(t.text)) {
                    expect(Tok::lparen, "\"(\"");
                    ParamExpr arg = parse_expr(bound);
                    expect(Tok::rparen, "\")\"");
                    return ParamExpr::call(*fn, std::move(arg));
                }
                if (bound != nullptr &&
                    std::find(bound->begin(), bound->end(), t.text) != bound->end()) {
                    return ParamExpr::name(t.text);
                }
                error("undefined parameter \"" + t.text + "\"", t);
            }
            default:
                error("expected an expression", t);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Program prog_;
    std::map<std::string, RegDecl> registers_;
    std::map<std::string, std::size_t> gate_index_;
    bool qelib_ = false;
};

}  // namespace

std::span<const BuiltinGate> builtin_gates() {
    return kBuiltinGates;
}

const BuiltinGate* find_builtin(std::string_view name) {
    for (const BuiltinGate& g : kBuiltinGates) {
        if (g.name == name) {
            return &g;
        }
    }
    return nullptr;
}

Program parse_program(std::string_view source) {
    return Parser(source).parse();
}

}  // namespace qact::qasm
