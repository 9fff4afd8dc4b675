#pragma once

// Analytic functions of one complex variable: parsing, evaluation and exact
// symbolic differentiation.
//
// Grammar (whitespace-insensitive):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := atom ('^' unsigned-int)? | '-' factor
//   atom   := 'z' | 'i' | number | ident '(' expr ')' | '(' expr ')'
//   ident  := 'exp' | 'sin' | 'cos'
//
// `^` binds tighter than unary minus, so `-z^2` is `-(z^2)`. There is no
// `log` and no non-integer power: every expression without a quotient is an
// entire function.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "minding/types.hpp"

namespace minding {

enum class NodeKind : std::uint8_t {
    Variable,
    Literal,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Exp,
    Sin,
    Cos,
    Neg,
};

/// Immutable expression tree. Copies share structure; all operations are
/// pure and safe to call concurrently.
class Expr {
public:
    /// The constant 0.
    Expr();

    static Expr variable();
    static Expr literal(Complex value);
    static Expr add(Expr lhs, Expr rhs);
    static Expr sub(Expr lhs, Expr rhs);
    static Expr mul(Expr lhs, Expr rhs);
    static Expr div(Expr lhs, Expr rhs);
    static Expr pow(Expr base, unsigned exponent);
    static Expr exp(Expr arg);
    static Expr sin(Expr arg);
    static Expr cos(Expr arg);
    static Expr neg(Expr arg);

    NodeKind kind() const noexcept;
    /// Number of children (0, 1 or 2).
    std::size_t arity() const noexcept;
    const Expr& child(std::size_t index) const;
    /// Only meaningful for Literal nodes.
    Complex literal_value() const noexcept;
    /// Only meaningful for Pow nodes.
    unsigned exponent() const noexcept;

    /// Throws EvaluationError on division by zero or a non-finite result.
    Complex evaluate(Complex z) const;

    /// Exact derivative d/dz. Constant subtrees are folded; nothing else is
    /// simplified.
    Expr derivative() const;

    /// True when the tree contains no quotient, i.e. it is entire.
    bool is_entire() const noexcept;

    std::size_t node_count() const noexcept;

    /// Text that parses back to a structurally equal tree whenever every
    /// literal is a non-negative real or the imaginary unit. Other literals
    /// print as a parenthesized sum and come back as a small subtree.
    std::string to_string() const;

    /// Structural equality.
    friend bool operator==(const Expr& lhs, const Expr& rhs) noexcept;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

Expr parse(std::string_view source);

inline Complex evaluate(const Expr& f, Complex z) { return f.evaluate(z); }
inline Expr differentiate(const Expr& f) { return f.derivative(); }

/// Re f(x + iy): the conformal exponent of the metric e^{2 Re f} g0.
double real_part_field(const Expr& f, Point2 p);

}  // namespace minding
