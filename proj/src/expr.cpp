#include "rasym/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rasym/errors.hpp"

namespace rasym {

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

NodePtr make(Expr::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_lit(const Rational& q) {
    auto n = std::make_shared<Node>();
    n->kind = Expr::Kind::Lit;
    n->lit = q;
    return n;
}

NodePtr make_pow(NodePtr base, const Rational& e) {
    auto n = std::make_shared<Node>();
    n->kind = Expr::Kind::Pow;
    n->a = std::move(base);
    n->exponent = e;
    return n;
}

struct Parser {
    const std::string& s;
    const std::vector<std::string>& allowed;
    std::size_t i = 0;
    std::string seen_var;

    explicit Parser(const std::string& text, const std::vector<std::string>& vars)
        : s(text), allowed(vars) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, i); }

    Integer read_digits() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected a number");
        if (i < s.size() && s[i] == '.')
            fail("decimal literals are not supported; use a rational like 1/2");
        return Integer(s.substr(start, i - start));
    }

    std::string read_ident() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        return s.substr(start, i - start);
    }

    NodePtr parse_expr() {
        NodePtr e = parse_term();
        for (;;) {
            if (eat('+')) e = make(Expr::Kind::Add, e, parse_term());
            else if (eat('-')) e = make(Expr::Kind::Sub, e, parse_term());
            else return e;
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (eat('*')) e = make(Expr::Kind::Mul, e, parse_unary());
            else if (eat('/')) e = make(Expr::Kind::Div, e, parse_unary());
            else return e;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make(Expr::Kind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (!eat('^')) return base;
        return make_pow(base, parse_exponent());
    }

    // An exponent parses like any power-level sub-expression and must then
    // constant-fold to an exact rational; `x^(1-p)` still reports the unknown
    // identifier, while genuinely non-rational values fail as irrational.
    Rational parse_exponent() {
        bool neg = eat('-');
        NodePtr e = parse_power();
        Rational r = fold_exact(e);
        return neg ? Rational(-r) : r;
    }

    Rational fold_exact(const NodePtr& n) {
        switch (n->kind) {
            case Expr::Kind::Lit: return n->lit;
            case Expr::Kind::Add: return fold_exact(n->a) + fold_exact(n->b);
            case Expr::Kind::Sub: return fold_exact(n->a) - fold_exact(n->b);
            case Expr::Kind::Mul: return fold_exact(n->a) * fold_exact(n->b);
            case Expr::Kind::Neg: return Rational(-fold_exact(n->a));
            case Expr::Kind::Div: {
                Rational d = fold_exact(n->b);
                if (d == 0) fail("zero denominator in exponent");
                return fold_exact(n->a) / d;
            }
            case Expr::Kind::Pow: return fold_pow(fold_exact(n->a), n->exponent);
            case Expr::Kind::Sqrt: return fold_pow(fold_exact(n->a), rat(1, 2));
            case Expr::Kind::Var: fail("irrational exponent: exponents must be rational literals");
            default: fail("irrational exponent");
        }
    }

    Rational fold_pow(const Rational& base, Rational e) {
        Rational b = base;
        if (!rat_is_integer(e)) {
            if (b <= 0) fail("irrational exponent");
            auto root = rat_root_exact(b, static_cast<unsigned long>(e.get_den().get_ui()));
            if (!root) fail("irrational exponent");
            b = *root;
            e = Rational(e.get_num());
        }
        if (b == 0 && e < 0) fail("zero base with negative exponent");
        return rat_pow_int(b, rat_to_long(e));
    }

    NodePtr parse_atom() {
        skip_ws();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '(') {
            ++i;
            NodePtr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return make_lit(Rational(read_digits()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = i;
            std::string name = read_ident();
            if (name == "sqrt" || name == "exp" || name == "ln") {
                if (!eat('(')) fail("expected '(' after " + name);
                NodePtr arg = parse_expr();
                if (!eat(')')) fail("expected ')'");
                Expr::Kind k = name == "sqrt" ? Expr::Kind::Sqrt
                             : name == "exp"  ? Expr::Kind::Exp
                                              : Expr::Kind::Ln;
                return make(k, arg);
            }
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
                i = at;
                fail("unknown identifier '" + name + "'");
            }
            if (!seen_var.empty() && seen_var != name) {
                i = at;
                fail("unknown identifier '" + name + "' (variable already bound to '" +
                     seen_var + "')");
            }
            seen_var = name;
            return make(Expr::Kind::Var);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void render(const NodePtr& n, const std::string& var, std::string& out) {
    auto child = [&](const NodePtr& c, int min_prec) {
        bool parens = precedence(c->kind) < min_prec;
        if (parens) out += "(";
        render(c, var, out);
        if (parens) out += ")";
    };
    switch (n->kind) {
        case Expr::Kind::Var: out += var; break;
        case Expr::Kind::Lit: out += rat_to_string(n->lit); break;
        case Expr::Kind::Add:
            child(n->a, 1);
            out += " + ";
            child(n->b, 2);
            break;
        case Expr::Kind::Sub:
            child(n->a, 1);
            out += " - ";
            child(n->b, 2);
            break;
        case Expr::Kind::Mul:
            child(n->a, 2);
            out += "*";
            child(n->b, 3);
            break;
        case Expr::Kind::Div:
            child(n->a, 2);
            out += "/";
            child(n->b, 3);
            break;
        case Expr::Kind::Neg:
            out += "-";
            child(n->a, 3);
            break;
        case Expr::Kind::Pow: {
            child(n->a, 5);
            out += "^";
            if (rat_is_integer(n->exponent) && n->exponent >= 0)
                out += rat_to_string(n->exponent);
            else
                out += "(" + rat_to_string(n->exponent) + ")";
            break;
        }
        case Expr::Kind::Sqrt:
        case Expr::Kind::Exp:
        case Expr::Kind::Ln: {
            out += n->kind == Expr::Kind::Sqrt ? "sqrt" : n->kind == Expr::Kind::Exp ? "exp" : "ln";
            out += "(";
            render(n->a, var, out);
            out += ")";
            break;
        }
    }
}

struct Ev {
    Real v;
    double e;  // ulps at working precision
};

constexpr double kErrCeiling = 5.36870912e8;  // 2^29

double mag_ratio(const Real& num, const Real& den) {
    // |num|/|den| approximated by exponent difference; safe against under/overflow.
    if (num.is_zero()) return 0.0;
    long d = num.exp2() - den.exp2();
    if (d > 120) return 1e36;
    return std::ldexp(1.0, static_cast<int>(d) + 1);
}

Ev eval_node(const NodePtr& n, const Real& point, mpfr_prec_t w) {
    switch (n->kind) {
        case Expr::Kind::Var: return {point.round_to(w), 0.0};
        case Expr::Kind::Lit: return {Real(n->lit, w), 0.5};
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            Ev a = eval_node(n->a, point, w);
            Ev b = eval_node(n->b, point, w);
            Real r = n->kind == Expr::Kind::Add ? a.v + b.v : a.v - b.v;
            double err;
            if (r.is_zero())
                err = (a.e == 0.0 && b.e == 0.0) ? 0.0 : kErrCeiling * 2;
            else
                err = a.e * mag_ratio(a.v, r) + b.e * mag_ratio(b.v, r) + 0.5;
            return {std::move(r), err};
        }
        case Expr::Kind::Mul: {
            Ev a = eval_node(n->a, point, w);
            Ev b = eval_node(n->b, point, w);
            return {a.v * b.v, a.e + b.e + 0.5};
        }
        case Expr::Kind::Div: {
            Ev a = eval_node(n->a, point, w);
            Ev b = eval_node(n->b, point, w);
            if (b.v.is_zero()) throw DomainError("division by zero while evaluating");
            return {a.v / b.v, a.e + b.e + 0.5};
        }
        case Expr::Kind::Neg: {
            Ev a = eval_node(n->a, point, w);
            return {-a.v, a.e};
        }
        case Expr::Kind::Pow: {
            Ev a = eval_node(n->a, point, w);
            if (!rat_is_integer(n->exponent) && a.v.sign() <= 0)
                throw DomainError("fractional power of a nonpositive value");
            if (a.v.is_zero() && n->exponent < 0) throw DomainError("zero base with negative power");
            Real r = a.v.pow_rational(n->exponent, w);
            double amp = std::abs(n->exponent.get_d());
            return {std::move(r), a.e * amp + 1.0};
        }
        case Expr::Kind::Sqrt: {
            Ev a = eval_node(n->a, point, w);
            if (a.v.sign() < 0) throw DomainError("sqrt of a negative value");
            return {a.v.sqrt(), a.e * 0.5 + 0.5};
        }
        case Expr::Kind::Exp: {
            Ev a = eval_node(n->a, point, w);
            double mag = a.v.is_zero() ? 0.0 : std::ldexp(1.0, static_cast<int>(std::min<long>(a.v.exp2(), 80)));
            return {a.v.exp(), a.e * mag + 0.5};
        }
        case Expr::Kind::Ln: {
            Ev a = eval_node(n->a, point, w);
            if (a.v.sign() <= 0) throw DomainError("ln of a nonpositive value");
            Real r = a.v.log();
            double amp = r.is_zero() ? kErrCeiling : std::ldexp(1.0, static_cast<int>(1 - std::max<long>(r.exp2(), -80)));
            return {std::move(r), a.e * amp + 0.5};
        }
    }
    throw Error("unreachable expression kind");
}

void count_vars(const NodePtr& n, int& vars) {
    if (!n) return;
    if (n->kind == Expr::Kind::Var) ++vars;
    count_vars(n->a, vars);
    count_vars(n->b, vars);
}

}  // namespace

Expr Expr::parse(const std::string& text, const std::vector<std::string>& allowed_vars) {
    Parser p(text, allowed_vars);
    NodePtr root = p.parse_expr();
    p.skip_ws();
    if (p.i != text.size()) p.fail("trailing input");
    if (p.seen_var.empty())
        throw SyntaxError("expression contains no variable (expected one of the declared names)", 0);
    int vars = 0;
    count_vars(root, vars);
    if (vars == 0) throw SyntaxError("expression contains no variable", 0);
    return Expr(std::move(root), p.seen_var);
}

std::string Expr::pretty() const {
    std::string out;
    render(root_, var_, out);
    return out;
}

Expr::Evaluated Expr::eval_checked(const Real& point, mpfr_prec_t prec) const {
    if (prec < 64) throw PrecisionError("evaluation precision must be at least 64 bits");
    if (point.sign() <= 0) throw DomainError("evaluation point must be positive");
    mpfr_prec_t w = prec + 32;
    Ev r = eval_node(root_, point, w);
    if (r.e > kErrCeiling)
        throw PrecisionError("cancellation exceeds the rounding budget; raise the precision");
    return {r.v.round_to(prec), r.e / 4294967296.0 + 0.5};
}

Real Expr::eval(const Real& point, mpfr_prec_t prec) const {
    return eval_checked(point, prec).value;
}

bool Expr::structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::Lit && a->lit != b->lit) return false;
    if (a->kind == Kind::Pow && a->exponent != b->exponent) return false;
    return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
}

}  // namespace rasym
