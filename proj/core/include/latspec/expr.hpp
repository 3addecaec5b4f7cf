#ifndef LATSPEC_EXPR_HPP
#define LATSPEC_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "latspec/common.hpp"

namespace latspec::expr {

// Closed-form complex expressions in one free variable.  Grammar
// (whitespace-insensitive, no implicit multiplication):
//
//   expr    = term { ("+" | "-") term }
//   term    = factor { ("*" | "/") factor }
//   factor  = "-" factor | power
//   power   = primary [ "^" factor ]          (right-associative)
//   primary = number | "pi" | "e" | "i" | variable
//           | function "(" expr ")" | "(" expr ")"
//
// Functions: sin cos exp log abs sqrt re im conj.  `log`, `sqrt` and `^`
// with a non-integer exponent use the principal branch; an integer exponent
// is evaluated by repeated squaring, so (-1)^n is exactly +/-1.

/// Byte offsets in errors are 1-based; end-of-input reports length+1.
struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& what, std::size_t offset_);
    std::size_t offset;
};

struct UnknownIdentifier : std::runtime_error {
    UnknownIdentifier(const std::string& name_, std::size_t offset_);
    std::string name;
    std::size_t offset;
};

/// Division by exact zero, log(0), or 0^w with Re(w) <= 0.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Builtin { Pi, E, I };
enum class Func { Sin, Cos, Exp, Log, Abs, Sqrt, Re, Im, Conj };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Literal, Constant, Variable, Neg, Binary, Call };
    Kind kind;
    double literal = 0.0;        // Literal
    Builtin builtin = Builtin::Pi;  // Constant
    BinaryOp op = BinaryOp::Add; // Binary
    Func func = Func::Sin;       // Call
    NodePtr lhs;                 // Neg/Call child, Binary left
    NodePtr rhs;                 // Binary right
};

class Expr {
  public:
    Expr() = default;

    /// Throws SyntaxError / UnknownIdentifier. `var_name` must be an
    /// identifier not colliding with a constant or function name.
    static Expr parse(std::string_view text, std::string_view var_name);

    /// Throws DomainError on division by exact zero, log(0), 0^w (Re w <= 0).
    Complex eval(Complex value) const;

    /// Serialization re-parses to a structurally identical AST.
    std::string to_string() const;

    const std::string& variable() const { return var_; }
    const NodePtr& root() const { return root_; }
    bool valid() const { return root_ != nullptr; }

    // Programmatic constructors (used for symbol transforms and AST tests).
    static Expr literal(double value, std::string var_name);
    static Expr constant(Builtin b, std::string var_name);
    static Expr variable(std::string var_name);
    static Expr negate(Expr e);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);  // vars must agree
    static Expr call(Func f, Expr arg);

    friend bool operator==(const Expr& a, const Expr& b);

  private:
    Expr(NodePtr root, std::string var) : root_(std::move(root)), var_(std::move(var)) {}
    NodePtr root_;
    std::string var_;
};

bool operator==(const Expr& a, const Expr& b);

}  // namespace latspec::expr

#endif
