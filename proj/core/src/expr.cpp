#include "latspec/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <system_error>
#include <vector>

namespace latspec::expr {

namespace {

struct FuncName {
    std::string_view name;
    Func func;
};

constexpr std::array<FuncName, 9> kFuncs = {{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"abs", Func::Abs},
    {"sqrt", Func::Sqrt},
    {"re", Func::Re},
    {"im", Func::Im},
    {"conj", Func::Conj},
}};

std::optional<Func> lookup_func(std::string_view name) {
    for (const auto& f : kFuncs)
        if (f.name == name) return f.func;
    return std::nullopt;
}

std::optional<Builtin> lookup_builtin(std::string_view name) {
    if (name == "pi") return Builtin::Pi;
    if (name == "e") return Builtin::E;
    if (name == "i") return Builtin::I;
    return std::nullopt;
}

NodePtr make_literal(double v) {
    Node n;
    n.kind = Node::Kind::Literal;
    n.literal = v;
    return std::make_shared<const Node>(std::move(n));
}

NodePtr make_constant(Builtin b) {
    Node n;
    n.kind = Node::Kind::Constant;
    n.builtin = b;
    return std::make_shared<const Node>(std::move(n));
}

NodePtr make_variable() {
    Node n;
    n.kind = Node::Kind::Variable;
    return std::make_shared<const Node>(std::move(n));
}

NodePtr make_neg(NodePtr child) {
    Node n;
    n.kind = Node::Kind::Neg;
    n.lhs = std::move(child);
    return std::make_shared<const Node>(std::move(n));
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
    Node n;
    n.kind = Node::Kind::Binary;
    n.op = op;
    n.lhs = std::move(lhs);
    n.rhs = std::move(rhs);
    return std::make_shared<const Node>(std::move(n));
}

NodePtr make_call(Func f, NodePtr arg) {
    Node n;
    n.kind = Node::Kind::Call;
    n.func = f;
    n.lhs = std::move(arg);
    return std::make_shared<const Node>(std::move(n));
}

// ---------------------------------------------------------------------------
// Tokenizer.  Offsets are 0-based here; errors convert to 1-based.

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;  // 0-based byte offset of the first character
    std::string_view text;
    double number = 0.0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back(number(i));
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = i;
                while (i < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_'))
                    ++i;
                out.push_back({Tok::Ident, start, text_.substr(start, i - start)});
                continue;
            }
            Tok k;
            switch (c) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '/': k = Tok::Slash; break;
                case '^': k = Tok::Caret; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", i + 1);
            }
            out.push_back({k, i, text_.substr(i, 1)});
            ++i;
        }
        out.push_back({Tok::End, text_.size(), {}});
        return out;
    }

  private:
    Token number(std::size_t& i) {
        std::size_t start = i;
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        if (i < text_.size() && text_[i] == '.') {
            ++i;
            while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        }
        if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
            std::size_t mark = i;
            ++i;
            if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
            if (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
                while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
            } else {
                i = mark;  // "2e" is the number 2 followed by the identifier e
            }
        }
        std::string_view body = text_.substr(start, i - start);
        double value = 0.0;
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
        if (ec != std::errc() || p != body.data() + body.size())
            throw SyntaxError("malformed number", start + 1);
        return {Tok::Number, start, body, value};
    }

    std::string_view text_;
};

// ---------------------------------------------------------------------------
// Recursive-descent parser.

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string_view var) : toks_(std::move(tokens)), var_(var) {}

    NodePtr run() {
        NodePtr e = expr();
        expect(Tok::End, "unexpected trailing input");
        return e;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    void expect(Tok k, const char* msg) {
        if (peek().kind != k) throw SyntaxError(msg, peek().offset + 1);
        ++pos_;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            BinaryOp op = take().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            lhs = make_binary(op, std::move(lhs), term());
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            BinaryOp op = take().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
            lhs = make_binary(op, std::move(lhs), factor());
        }
        return lhs;
    }

    NodePtr factor() {
        if (peek().kind == Tok::Minus) {
            ++pos_;
            return make_neg(factor());
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (peek().kind == Tok::Caret) {
            ++pos_;
            return make_binary(BinaryOp::Pow, std::move(base), factor());
        }
        return base;
    }

    NodePtr primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number:
                ++pos_;
                return make_literal(t.number);
            case Tok::LParen: {
                ++pos_;
                NodePtr e = expr();
                expect(Tok::RParen, "expected ')'");
                return e;
            }
            case Tok::Ident: {
                Token id = take();
                if (auto f = lookup_func(id.text)) {
                    expect(Tok::LParen, "expected '(' after function name");
                    NodePtr arg = expr();
                    expect(Tok::RParen, "expected ')'");
                    return make_call(*f, std::move(arg));
                }
                if (id.text == var_) return make_variable();
                if (auto b = lookup_builtin(id.text)) return make_constant(*b);
                throw UnknownIdentifier(std::string(id.text), id.offset + 1);
            }
            default:
                throw SyntaxError("expected a value", t.offset + 1);
        }
    }

    std::vector<Token> toks_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation.

bool is_integer_valued(double r) {
    return std::isfinite(r) && std::nearbyint(r) == r && std::fabs(r) <= 9.0e15;
}

Complex integer_pow(Complex base, long long k) {
    if (base == Complex(0.0, 0.0)) {
        if (k < 0) throw DomainError("zero raised to a negative power");
        if (k == 0) throw DomainError("zero base with non-positive exponent");
        return {0.0, 0.0};
    }
    if (k == 0) return {1.0, 0.0};
    bool invert = k < 0;
    unsigned long long m =
        invert ? -static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
    Complex acc(1.0, 0.0);
    Complex b = base;
    while (m > 0) {
        if (m & 1ULL) acc *= b;
        m >>= 1ULL;
        if (m > 0) b *= b;
    }
    return invert ? Complex(1.0, 0.0) / acc : acc;
}

Complex eval_pow(Complex a, Complex w) {
    if (w.imag() == 0.0 && is_integer_valued(w.real()))
        return integer_pow(a, static_cast<long long>(w.real()));
    if (a == Complex(0.0, 0.0)) {
        if (w.real() > 0.0) return {0.0, 0.0};
        throw DomainError("zero base with non-positive exponent");
    }
    return std::exp(w * std::log(a));
}

Complex eval_node(const Node& n, Complex x) {
    switch (n.kind) {
        case Node::Kind::Literal:
            return {n.literal, 0.0};
        case Node::Kind::Constant:
            switch (n.builtin) {
                case Builtin::Pi: return {3.141592653589793238462643383279502884, 0.0};
                case Builtin::E: return {2.718281828459045235360287471352662498, 0.0};
                case Builtin::I: return {0.0, 1.0};
            }
            break;
        case Node::Kind::Variable:
            return x;
        case Node::Kind::Neg: {
            // Adding +0.0 turns the -0.0 produced by negating an exact zero
            // back into +0.0, so "-1" means -1 + 0i and log/sqrt/pow stay on
            // the conventional side of the branch cut.
            const Complex z = eval_node(*n.lhs, x);
            return {-z.real() + 0.0, -z.imag() + 0.0};
        }
        case Node::Kind::Binary: {
            Complex a = eval_node(*n.lhs, x);
            Complex b = eval_node(*n.rhs, x);
            switch (n.op) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (b == Complex(0.0, 0.0)) throw DomainError("division by zero");
                    return a / b;
                case BinaryOp::Pow: return eval_pow(a, b);
            }
            break;
        }
        case Node::Kind::Call: {
            Complex z = eval_node(*n.lhs, x);
            switch (n.func) {
                case Func::Sin: return std::sin(z);
                case Func::Cos: return std::cos(z);
                case Func::Exp: return std::exp(z);
                case Func::Log:
                    if (z == Complex(0.0, 0.0)) throw DomainError("log of zero");
                    return std::log(z);
                case Func::Abs: return {std::abs(z), 0.0};
                case Func::Sqrt: return std::sqrt(z);
                case Func::Re: return {z.real(), 0.0};
                case Func::Im: return {z.imag(), 0.0};
                case Func::Conj: return std::conj(z);
            }
            break;
        }
    }
    throw std::logic_error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Printing.  Parenthesization mirrors the grammar exactly so that printing
// and re-parsing reproduce the AST.

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int node_prec(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Binary:
            switch (n.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return kPrecAdd;
                case BinaryOp::Mul:
                case BinaryOp::Div: return kPrecMul;
                case BinaryOp::Pow: return kPrecPow;
            }
            return kPrecAtom;
        case Node::Kind::Neg:
            return kPrecNeg;
        default:
            return kPrecAtom;
    }
}

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

const char* func_name(Func f) {
    for (const auto& e : kFuncs)
        if (e.func == f) return e.name.data();
    return "?";
}

void print_node(const Node& n, const std::string& var, int min_prec, std::string& out) {
    const bool parens = node_prec(n) < min_prec;
    if (parens) out += '(';
    switch (n.kind) {
        case Node::Kind::Literal:
            out += format_double(n.literal);
            break;
        case Node::Kind::Constant:
            out += n.builtin == Builtin::Pi ? "pi" : (n.builtin == Builtin::E ? "e" : "i");
            break;
        case Node::Kind::Variable:
            out += var;
            break;
        case Node::Kind::Neg:
            out += '-';
            print_node(*n.lhs, var, kPrecNeg, out);
            break;
        case Node::Kind::Binary: {
            const char* sym = nullptr;
            int lhs_ctx = 0, rhs_ctx = 0;
            switch (n.op) {
                case BinaryOp::Add: sym = " + "; lhs_ctx = kPrecAdd; rhs_ctx = kPrecMul; break;
                case BinaryOp::Sub: sym = " - "; lhs_ctx = kPrecAdd; rhs_ctx = kPrecMul; break;
                case BinaryOp::Mul: sym = "*"; lhs_ctx = kPrecMul; rhs_ctx = kPrecNeg; break;
                case BinaryOp::Div: sym = "/"; lhs_ctx = kPrecMul; rhs_ctx = kPrecNeg; break;
                case BinaryOp::Pow: sym = "^"; lhs_ctx = kPrecAtom; rhs_ctx = kPrecNeg; break;
            }
            print_node(*n.lhs, var, lhs_ctx, out);
            out += sym;
            print_node(*n.rhs, var, rhs_ctx, out);
            break;
        }
        case Node::Kind::Call:
            out += func_name(n.func);
            out += '(';
            print_node(*n.lhs, var, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

bool node_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Node::Kind::Literal: return a.literal == b.literal;
        case Node::Kind::Constant: return a.builtin == b.builtin;
        case Node::Kind::Variable: return true;
        case Node::Kind::Neg: return node_equal(*a.lhs, *b.lhs);
        case Node::Kind::Binary:
            return a.op == b.op && node_equal(*a.lhs, *b.lhs) && node_equal(*a.rhs, *b.rhs);
        case Node::Kind::Call: return a.func == b.func && node_equal(*a.lhs, *b.lhs);
    }
    return false;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

void check_var_name(std::string_view var_name) {
    if (!valid_identifier(var_name))
        throw std::invalid_argument("variable name must be an identifier");
    if (lookup_func(var_name) || lookup_builtin(var_name))
        throw std::invalid_argument("variable name collides with a reserved name: " +
                                    std::string(var_name));
}

}  // namespace

SyntaxError::SyntaxError(const std::string& what, std::size_t offset_)
    : std::runtime_error(what + " at offset " + std::to_string(offset_)), offset(offset_) {}

UnknownIdentifier::UnknownIdentifier(const std::string& name_, std::size_t offset_)
    : std::runtime_error("unknown identifier '" + name_ + "' at offset " +
                         std::to_string(offset_)),
      name(name_),
      offset(offset_) {}

Expr Expr::parse(std::string_view text, std::string_view var_name) {
    check_var_name(var_name);
    if (text.empty()) throw SyntaxError("empty expression", 1);
    Lexer lexer(text);
    Parser parser(lexer.run(), var_name);
    return Expr(parser.run(), std::string(var_name));
}

Complex Expr::eval(Complex value) const {
    if (!root_) throw std::logic_error("eval on an empty expression");
    return eval_node(*root_, value);
}

std::string Expr::to_string() const {
    if (!root_) return {};
    std::string out;
    print_node(*root_, var_, 0, out);
    return out;
}

Expr Expr::literal(double value, std::string var_name) {
    check_var_name(var_name);
    if (!std::isfinite(value) || value < 0.0)
        throw std::invalid_argument("literal must be finite and non-negative");
    return Expr(make_literal(value), std::move(var_name));
}

Expr Expr::constant(Builtin b, std::string var_name) {
    check_var_name(var_name);
    return Expr(make_constant(b), std::move(var_name));
}

Expr Expr::variable(std::string var_name) {
    check_var_name(var_name);
    return Expr(make_variable(), std::move(var_name));
}

Expr Expr::negate(Expr e) { return Expr(make_neg(std::move(e.root_)), std::move(e.var_)); }

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    if (lhs.var_ != rhs.var_)
        throw std::invalid_argument("cannot combine expressions in different variables");
    return Expr(make_binary(op, std::move(lhs.root_), std::move(rhs.root_)), std::move(lhs.var_));
}

Expr Expr::call(Func f, Expr arg) {
    return Expr(make_call(f, std::move(arg.root_)), std::move(arg.var_));
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.var_ != b.var_) return false;
    if (!a.root_ || !b.root_) return a.root_ == b.root_;
    return node_equal(*a.root_, *b.root_);
}

}  // namespace latspec::expr
