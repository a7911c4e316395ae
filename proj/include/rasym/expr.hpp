#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rasym/rational.hpp"
#include "rasym/real.hpp"

namespace rasym {

// Parsed recurrence-map expression in one variable. Immutable after
// construction; nodes are shared freely.
//
// Grammar (documented in docs/formats.md): infix + - * /, `^` with an exact
// rational-literal exponent (right associative, literal powers folded),
// function-call syntax for sqrt/exp/ln, rational literals as integers or a/b,
// unary minus binding tighter than `*`.
class Expr {
  public:
    enum class Kind { Var, Lit, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Exp, Ln };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct Node {
        Kind kind;
        Rational lit;       // Kind::Lit
        Rational exponent;  // Kind::Pow
        NodePtr a, b;
    };

    // Parses with the given set of acceptable variable names; exactly one of
    // them must occur in the text. Throws SyntaxError otherwise.
    static Expr parse(const std::string& text,
                      const std::vector<std::string>& allowed_vars = {"x", "y"});

    static Expr from_tree(NodePtr root, std::string var) {
        return Expr(std::move(root), std::move(var));
    }

    const NodePtr& root() const { return root_; }
    const std::string& variable() const { return var_; }

    std::string pretty() const;

    struct Evaluated {
        Real value;
        double err_ulps;  // forward error bound, in units in the last place
    };

    // Evaluates at point > 0 with a 32-bit internal guard; the result is
    // correct to well within 8 ulp at `prec` unless PrecisionError is thrown.
    Evaluated eval_checked(const Real& point, mpfr_prec_t prec) const;
    Real eval(const Real& point, mpfr_prec_t prec) const;

    static bool structurally_equal(const NodePtr& a, const NodePtr& b);

  private:
    Expr(NodePtr root, std::string var) : root_(std::move(root)), var_(std::move(var)) {}
    NodePtr root_;
    std::string var_;
};

}  // namespace rasym
