#include "minding/complex_expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "minding/errors.hpp"

namespace minding {

struct Expr::Node {
    NodeKind kind = NodeKind::Literal;
    Complex value{0.0, 0.0};
    unsigned exponent = 0;
    std::vector<Expr> children;
    std::size_t arity = 0;
};

namespace {

bool is_finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

Complex int_pow(Complex base, unsigned n) {
    Complex result{1.0, 0.0};
    while (n != 0) {
        if (n & 1u) result *= base;
        n >>= 1u;
        if (n != 0) base *= base;
    }
    return result;
}

std::string format_real(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::logic_error("to_chars failed");
    return {buf.data(), end};
}

// Binding strength used by the printer.
int precedence(NodeKind kind) {
    switch (kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

bool is_plain_literal(Complex v) {
    if (v == Complex{0.0, 1.0}) return true;
    return v.imag() == 0.0 && !std::signbit(v.imag()) && v.real() >= 0.0 && !std::signbit(v.real());
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Expr::Expr() : node_(std::make_shared<const Node>()) {}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    return Expr(std::move(n));
}

Expr Expr::literal(Complex value) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Literal;
    n->value = value;
    return Expr(std::move(n));
}

#define MINDING_BINARY(NAME, KIND)                                  \
    Expr Expr::NAME(Expr lhs, Expr rhs) {                           \
        auto n = std::make_shared<Node>();                          \
        n->kind = NodeKind::KIND;                                   \
        n->children = {std::move(lhs), std::move(rhs)};             \
        n->arity = 2;                                               \
        return Expr(std::move(n));                                  \
    }

#define MINDING_UNARY(NAME, KIND)                                   \
    Expr Expr::NAME(Expr arg) {                                     \
        auto n = std::make_shared<Node>();                          \
        n->kind = NodeKind::KIND;                                   \
        n->children.push_back(std::move(arg));                      \
        n->arity = 1;                                               \
        return Expr(std::move(n));                                  \
    }

MINDING_BINARY(add, Add)
MINDING_BINARY(sub, Sub)
MINDING_BINARY(mul, Mul)
MINDING_BINARY(div, Div)
MINDING_UNARY(exp, Exp)
MINDING_UNARY(sin, Sin)
MINDING_UNARY(cos, Cos)
MINDING_UNARY(neg, Neg)

#undef MINDING_BINARY
#undef MINDING_UNARY

Expr Expr::pow(Expr base, unsigned exponent) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Pow;
    n->children.push_back(std::move(base));
    n->exponent = exponent;
    n->arity = 1;
    return Expr(std::move(n));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }
std::size_t Expr::arity() const noexcept { return node_->arity; }

const Expr& Expr::child(std::size_t index) const {
    if (index >= node_->arity) throw std::out_of_range("Expr::child index out of range");
    return node_->children[index];
}

Complex Expr::literal_value() const noexcept { return node_->value; }
unsigned Expr::exponent() const noexcept { return node_->exponent; }

// ---------------------------------------------------------------------------
// Evaluation

Complex Expr::evaluate(Complex z) const {
    const Node& n = *node_;
    Complex out;
    switch (n.kind) {
        case NodeKind::Variable: out = z; break;
        case NodeKind::Literal: out = n.value; break;
        case NodeKind::Add: out = n.children[0].evaluate(z) + n.children[1].evaluate(z); break;
        case NodeKind::Sub: out = n.children[0].evaluate(z) - n.children[1].evaluate(z); break;
        case NodeKind::Mul: out = n.children[0].evaluate(z) * n.children[1].evaluate(z); break;
        case NodeKind::Div: {
            const Complex num = n.children[0].evaluate(z);
            const Complex den = n.children[1].evaluate(z);
            if (den == Complex{0.0, 0.0}) throw EvaluationError("division by zero", to_string());
            out = num / den;
            break;
        }
        case NodeKind::Pow: out = int_pow(n.children[0].evaluate(z), n.exponent); break;
        case NodeKind::Exp: out = std::exp(n.children[0].evaluate(z)); break;
        case NodeKind::Sin: out = std::sin(n.children[0].evaluate(z)); break;
        case NodeKind::Cos: out = std::cos(n.children[0].evaluate(z)); break;
        case NodeKind::Neg: out = -n.children[0].evaluate(z); break;
    }
    if (!is_finite(out)) throw EvaluationError("non-finite value", to_string());
    return out;
}

bool Expr::is_entire() const noexcept {
    if (node_->kind == NodeKind::Div) return false;
    for (std::size_t k = 0; k < node_->arity; ++k) {
        if (!node_->children[k].is_entire()) return false;
    }
    return true;
}

std::size_t Expr::node_count() const noexcept {
    std::size_t count = 1;
    for (std::size_t k = 0; k < node_->arity; ++k) count += node_->children[k].node_count();
    return count;
}

bool operator==(const Expr& lhs, const Expr& rhs) noexcept {
    if (lhs.node_ == rhs.node_) return true;
    const auto& a = *lhs.node_;
    const auto& b = *rhs.node_;
    if (a.kind != b.kind || a.arity != b.arity) return false;
    if (a.kind == NodeKind::Literal && a.value != b.value) return false;
    if (a.kind == NodeKind::Pow && a.exponent != b.exponent) return false;
    for (std::size_t k = 0; k < a.arity; ++k) {
        if (!(a.children[k] == b.children[k])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Differentiation with constant folding

namespace {

// Folds `candidate` to a literal when every child is a literal and the value
// is finite.
Expr fold(const Expr& candidate) {
    if (candidate.arity() == 0) return candidate;
    for (std::size_t k = 0; k < candidate.arity(); ++k) {
        if (candidate.child(k).kind() != NodeKind::Literal) return candidate;
    }
    try {
        return Expr::literal(candidate.evaluate(Complex{0.0, 0.0}));
    } catch (const EvaluationError&) {
        return candidate;
    }
}

Expr f_add(Expr a, Expr b) { return fold(Expr::add(std::move(a), std::move(b))); }
Expr f_sub(Expr a, Expr b) { return fold(Expr::sub(std::move(a), std::move(b))); }
Expr f_mul(Expr a, Expr b) { return fold(Expr::mul(std::move(a), std::move(b))); }
Expr f_div(Expr a, Expr b) { return fold(Expr::div(std::move(a), std::move(b))); }
Expr f_pow(Expr a, unsigned n) { return fold(Expr::pow(std::move(a), n)); }
Expr f_neg(Expr a) { return fold(Expr::neg(std::move(a))); }
Expr f_lit(double v) { return Expr::literal(Complex{v, 0.0}); }

// Bottom-up folding of a whole subtree.
Expr fold_all(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Variable:
        case NodeKind::Literal: return e;
        case NodeKind::Add: return f_add(fold_all(e.child(0)), fold_all(e.child(1)));
        case NodeKind::Sub: return f_sub(fold_all(e.child(0)), fold_all(e.child(1)));
        case NodeKind::Mul: return f_mul(fold_all(e.child(0)), fold_all(e.child(1)));
        case NodeKind::Div: return f_div(fold_all(e.child(0)), fold_all(e.child(1)));
        case NodeKind::Pow: return f_pow(fold_all(e.child(0)), e.exponent());
        case NodeKind::Exp: return fold(Expr::exp(fold_all(e.child(0))));
        case NodeKind::Sin: return fold(Expr::sin(fold_all(e.child(0))));
        case NodeKind::Cos: return fold(Expr::cos(fold_all(e.child(0))));
        case NodeKind::Neg: return f_neg(fold_all(e.child(0)));
    }
    return e;
}

}  // namespace

Expr Expr::derivative() const {
    const Node& n = *node_;
    switch (n.kind) {
        case NodeKind::Variable: return f_lit(1.0);
        case NodeKind::Literal: return f_lit(0.0);
        case NodeKind::Add:
            return f_add(n.children[0].derivative(), n.children[1].derivative());
        case NodeKind::Sub:
            return f_sub(n.children[0].derivative(), n.children[1].derivative());
        case NodeKind::Mul: {
            const Expr a = fold_all(n.children[0]);
            const Expr b = fold_all(n.children[1]);
            return f_add(f_mul(a.derivative(), b), f_mul(a, b.derivative()));
        }
        case NodeKind::Div: {
            const Expr a = fold_all(n.children[0]);
            const Expr b = fold_all(n.children[1]);
            return f_div(f_sub(f_mul(a.derivative(), b), f_mul(a, b.derivative())), f_pow(b, 2));
        }
        case NodeKind::Pow: {
            if (n.exponent == 0) return f_lit(0.0);
            const Expr a = fold_all(n.children[0]);
            return f_mul(f_mul(f_lit(static_cast<double>(n.exponent)), f_pow(a, n.exponent - 1)),
                         a.derivative());
        }
        case NodeKind::Exp: return f_mul(fold_all(*this), n.children[0].derivative());
        case NodeKind::Sin:
            return f_mul(fold(Expr::cos(fold_all(n.children[0]))), n.children[0].derivative());
        case NodeKind::Cos:
            return f_mul(f_neg(fold(Expr::sin(fold_all(n.children[0])))), n.children[0].derivative());
        case NodeKind::Neg: return f_neg(n.children[0].derivative());
    }
    throw std::logic_error("unreachable NodeKind");
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.to_string(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(e, out);
    if (wrap) out += ')';
}

void print_literal(Complex v, std::string& out) {
    if (v == Complex{0.0, 1.0}) {
        out += 'i';
    } else if (is_plain_literal(v)) {
        out += format_real(v.real());
    } else {
        // Not expressible as a single atom.
        out += '(';
        out += v.real() < 0.0 || std::signbit(v.real()) ? "-" + format_real(-v.real()) : format_real(v.real());
        out += v.imag() < 0.0 || std::signbit(v.imag()) ? " - " : " + ";
        out += format_real(std::abs(v.imag()));
        out += "*i)";
    }
}

void print(const Expr& e, std::string& out) {
    const int p = precedence(e.kind());
    switch (e.kind()) {
        case NodeKind::Variable: out += 'z'; break;
        case NodeKind::Literal: print_literal(e.literal_value(), out); break;
        case NodeKind::Add:
        case NodeKind::Sub:
            print_wrapped(e.child(0), precedence(e.child(0).kind()) < p, out);
            out += e.kind() == NodeKind::Add ? " + " : " - ";
            print_wrapped(e.child(1), precedence(e.child(1).kind()) <= p, out);
            break;
        case NodeKind::Mul:
        case NodeKind::Div:
            print_wrapped(e.child(0), precedence(e.child(0).kind()) < p, out);
            out += e.kind() == NodeKind::Mul ? "*" : "/";
            print_wrapped(e.child(1), precedence(e.child(1).kind()) <= p, out);
            break;
        case NodeKind::Pow: {
            const Expr& base = e.child(0);
            const bool atom = base.kind() == NodeKind::Variable ||
                              (base.kind() == NodeKind::Literal && is_plain_literal(base.literal_value())) ||
                              base.kind() == NodeKind::Exp || base.kind() == NodeKind::Sin ||
                              base.kind() == NodeKind::Cos;
            print_wrapped(base, !atom, out);
            out += '^';
            out += std::to_string(e.exponent());
            break;
        }
        case NodeKind::Neg:
            out += '-';
            print_wrapped(e.child(0), precedence(e.child(0).kind()) < p, out);
            break;
        case NodeKind::Exp:
        case NodeKind::Sin:
        case NodeKind::Cos:
            out += e.kind() == NodeKind::Exp ? "exp(" : e.kind() == NodeKind::Sin ? "sin(" : "cos(";
            print(e.child(0), out);
            out += ')';
            break;
    }
}

}  // namespace

std::string Expr::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse_all() {
        skip_ws();
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string msg = "syntax error at offset " + std::to_string(pos_) + ": expected ";
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (k) msg += k + 1 == expected.size() ? " or " : ", ";
            msg += expected[k];
        }
        msg += pos_ < src_.size() ? std::string(", found '") + src_[pos_] + "'" : ", found end of input";
        throw ParseError(ParseError::Kind::Syntax, pos_, std::move(expected), msg);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::add(std::move(lhs), parse_term());
            } else if (accept('-')) {
                lhs = Expr::sub(std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::mul(std::move(lhs), parse_factor());
            } else if (accept('/')) {
                lhs = Expr::div(std::move(lhs), parse_factor());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_factor() {
        if (accept('-')) return Expr::neg(parse_factor());
        Expr base = parse_atom();
        if (accept('^')) {
            skip_ws();
            return Expr::pow(std::move(base), parse_unsigned());
        }
        return base;
    }

    unsigned parse_unsigned() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (start == pos_ || ec != std::errc{} || ptr != src_.data() + pos_) {
            pos_ = start;
            fail({"unsigned integer"});
        }
        return value;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail({"'z'", "'i'", "number", "function", "'('", "'-'"});
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail({"')'"});
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail({"'z'", "'i'", "number", "function", "'('", "'-'"});
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t s = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return pos_ - s;
        };
        std::size_t n = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail({"number"});
        }
        // Optional exponent; only consumed when it is well formed.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{} || ptr != src_.data() + pos_ || !std::isfinite(value)) {
            pos_ = start;
            fail({"finite number"});
        }
        return Expr::literal(Complex{value, 0.0});
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "z") return Expr::variable();
        if (name == "i") return Expr::literal(Complex{0.0, 1.0});
        Expr (*make)(Expr) = nullptr;
        if (name == "exp") make = &Expr::exp;
        if (name == "sin") make = &Expr::sin;
        if (name == "cos") make = &Expr::cos;
        if (make == nullptr) {
            throw ParseError(ParseError::Kind::UnknownIdentifier, start, {"'z'", "'i'", "exp", "sin", "cos"},
                             "unknown identifier '" + std::string(name) + "' at offset " +
                                 std::to_string(start));
        }
        if (!accept('(')) fail({"'('"});
        Expr arg = parse_expr();
        if (!accept(')')) fail({"')'"});
        return make(std::move(arg));
    }
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

double real_part_field(const Expr& f, Point2 p) { return f.evaluate(to_complex(p)).real(); }

}  // namespace minding
