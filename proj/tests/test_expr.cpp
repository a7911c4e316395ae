#include <doctest.h>

#include <random>

#include "rasym/errors.hpp"
#include "rasym/expr.hpp"

using namespace rasym;

TEST_CASE("parser produces the grammar-forced AST") {
    Expr e = Expr::parse("x*(1+1/x)^(1/2)");
    const auto& root = e.root();
    REQUIRE(root->kind == Expr::Kind::Mul);
    CHECK(root->a->kind == Expr::Kind::Var);
    REQUIRE(root->b->kind == Expr::Kind::Pow);
    CHECK(root->b->exponent == rat(1, 2));
    REQUIRE(root->b->a->kind == Expr::Kind::Add);
    CHECK(root->b->a->a->kind == Expr::Kind::Lit);
    CHECK(root->b->a->b->kind == Expr::Kind::Div);
}

TEST_CASE("paper maps parse") {
    CHECK_NOTHROW(Expr::parse("x + sqrt(1 + 1/x)"));
    CHECK_NOTHROW(Expr::parse("x*exp(sqrt(1+1/x)-1)"));
    CHECK_NOTHROW(Expr::parse("x*(1+ln(1+2/x+2/x^2))"));
    CHECK_NOTHROW(Expr::parse("x + 1/x^(1/2)"));
    Expr y = Expr::parse("y/(1+y)");
    CHECK(y.variable() == "y");
}

TEST_CASE("parser error cases") {
    CHECK_THROWS_WITH_AS(Expr::parse("x^(1-p)"), doctest::Contains("unknown identifier"),
                         SyntaxError);
    CHECK_THROWS_AS(Expr::parse("x + y"), SyntaxError);       // two variables
    CHECK_THROWS_AS(Expr::parse("3 + 4"), SyntaxError);       // no variable
    CHECK_THROWS_AS(Expr::parse("x^x"), SyntaxError);         // non-literal exponent
    CHECK_THROWS_AS(Expr::parse("x^0.5"), SyntaxError);       // decimal literal
    CHECK_THROWS_AS(Expr::parse("x*(1+x"), SyntaxError);      // unbalanced
    CHECK_THROWS_AS(Expr::parse("x^(2^(1/2))"), SyntaxError); // irrational exponent
    CHECK(Expr::parse("x^(4^(1/2))").root()->exponent == rat(2));  // exact fold
}

TEST_CASE("unary minus binds tighter than *") {
    // -x^2 is -(x^2); the unary minus applies to the whole power factor.
    Expr e = Expr::parse("-x*3");
    REQUIRE(e.root()->kind == Expr::Kind::Mul);
    CHECK(e.root()->a->kind == Expr::Kind::Neg);
}

TEST_CASE("eval matches exact anchors") {
    mpfr_prec_t p = 128;
    Expr e1 = Expr::parse("x + 1/x");
    CHECK(e1.eval(Real(1L, p), p) == Real(2L, p));

    Expr e2 = Expr::parse("x*exp(1/x)");
    Real got = e2.eval(Real(1L, p), p);
    Real want("2.71828182845904523536028747135266249775724709369995957", p);
    CHECK((got - want).abs() < Real(rat(1, 1000), p).pow_int(11));

    Expr e3 = Expr::parse("sqrt(x + x^2)");
    Real s2 = Real(2L, 192).sqrt();
    CHECK(agreeing_digits(e3.eval(Real(1L, 192), 192), s2, 60) >= 50);
}

TEST_CASE("eval error paths") {
    mpfr_prec_t p = 128;
    CHECK_THROWS_AS(Expr::parse("ln(x-2)").eval(Real(1L, p), p), DomainError);
    CHECK_THROWS_AS(Expr::parse("1/(x-1)").eval(Real(1L, p), p), DomainError);
    CHECK_THROWS_AS(Expr::parse("x+1").eval(Real(0L, p), p), DomainError);
    CHECK_THROWS_AS(Expr::parse("sqrt(x-5)").eval(Real(1L, p), p), DomainError);
}

namespace {

Expr::NodePtr random_node(std::mt19937& rng, int depth) {
    auto node = [&](Expr::Kind k, Expr::NodePtr a, Expr::NodePtr b = nullptr) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return Expr::NodePtr(n);
    };
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng)) {
        case 0: {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Var;
            return n;
        }
        case 1: {
            // The grammar only yields integer literals; fractions come in as Div.
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Lit;
            n->lit = rat(std::uniform_int_distribution<long>(0, 9)(rng));
            return n;
        }
        case 2: return node(Expr::Kind::Add, random_node(rng, depth - 1), random_node(rng, depth - 1));
        case 3: return node(Expr::Kind::Sub, random_node(rng, depth - 1), random_node(rng, depth - 1));
        case 4: return node(Expr::Kind::Mul, random_node(rng, depth - 1), random_node(rng, depth - 1));
        case 5: return node(Expr::Kind::Div, random_node(rng, depth - 1), random_node(rng, depth - 1));
        case 6: return node(Expr::Kind::Neg, random_node(rng, depth - 1));
        case 7: {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Pow;
            n->a = random_node(rng, depth - 1);
            n->exponent = rat(std::uniform_int_distribution<long>(-5, 5)(rng),
                              std::uniform_int_distribution<long>(1, 4)(rng));
            return n;
        }
        case 8: return node(Expr::Kind::Sqrt, random_node(rng, depth - 1));
        default:
            return node(std::uniform_int_distribution<int>(0, 1)(rng) ? Expr::Kind::Exp
                                                                      : Expr::Kind::Ln,
                        random_node(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("pretty-print / parse round trip on random ASTs") {
    std::mt19937 rng(20250620);
    for (int i = 0; i < 300; ++i) {
        // Wrap in "+ x" so the tree always contains the variable.
        auto wrap = std::make_shared<Expr::Node>();
        wrap->kind = Expr::Kind::Add;
        wrap->a = random_node(rng, 4);
        auto v = std::make_shared<Expr::Node>();
        v->kind = Expr::Kind::Var;
        wrap->b = v;
        Expr e = Expr::from_tree(wrap, "x");
        Expr back = Expr::parse(e.pretty());
        CHECK_MESSAGE(Expr::structurally_equal(e.root(), back.root()), e.pretty());
    }

    const char* corpus[] = {
        "x*(1+1/x)^(1/2)",
        "x + sqrt(1 + 1/x)",
        "sqrt(1+x+x^2)",
        "x*exp(sqrt(1+1/x)-1)",
        "x*(1+ln(1+2/x+2/x^2))",
        "(1+x)^2/x",
        "x + 1 + ln(1+1/x)",
        "-x + -3*x/4 - (2 - x)",
        "x^(-1)*(1+x)^2",
        "x + 1/x^(1/3)",
        "exp(ln(1+1/x))*x",
    };
    for (const char* text : corpus) {
        Expr a = Expr::parse(text);
        Expr b = Expr::parse(a.pretty());
        CHECK_MESSAGE(Expr::structurally_equal(a.root(), b.root()), text, " -> ", a.pretty());
        CHECK(a.pretty() == b.pretty());
    }
}

TEST_CASE("doubled precision agrees within the stated bound") {
    std::mt19937 rng(7);
    auto check_bound = [&](const Expr& e, int reps) {
        int done = 0;
        for (int i = 0; i < reps; ++i) {
            long num = std::uniform_int_distribution<long>(1, 1000)(rng);
            long den = std::uniform_int_distribution<long>(1, 50)(rng);
            mpfr_prec_t p = 96 + 16 * (i % 4);
            Real point(rat(num, den), p);
            Real lo(p), hi(2 * p);
            try {
                lo = e.eval(point, p);
                hi = e.eval(point, 2 * p);
            } catch (const DomainError&) {
                continue;  // random trees may leave the domain; not this test's topic
            } catch (const PrecisionError&) {
                continue;
            }
            // |lo - hi| <= 8 * 2^-p * |result|
            if (lo.is_zero()) {
                CHECK(hi.is_zero());
                ++done;
                continue;
            }
            Real bound = lo.abs();
            mpfr_mul_2si(bound.raw(), bound.raw(), -static_cast<long>(p) + 3, MPFR_RNDN);
            CHECK((lo - hi).abs() < bound);
            ++done;
        }
        return done;
    };

    const char* corpus[] = {"x*exp(1/x)", "sqrt(x+x^2)", "x+1+ln(1+1/x)",
                            "x*(1+1/x)^(2/3)", "x+1/x^3", "x*exp(sqrt(1/x))"};
    for (const char* text : corpus) CHECK(check_bound(Expr::parse(text), 20) == 20);

    // Randomized corpus: generated trees, domain failures skipped.
    int evaluated = 0;
    for (int i = 0; i < 150; ++i) {
        auto wrap = std::make_shared<Expr::Node>();
        wrap->kind = Expr::Kind::Add;
        wrap->a = random_node(rng, 3);
        auto v = std::make_shared<Expr::Node>();
        v->kind = Expr::Kind::Var;
        wrap->b = v;
        evaluated += check_bound(Expr::from_tree(wrap, "x"), 3);
    }
    CHECK(evaluated > 120);
}

TEST_CASE("eval is deterministic") {
    Expr e = Expr::parse("x*exp(sqrt(1+1/x)-1)");
    Real a = e.eval(Real(rat(7, 3), 192), 192);
    Real b = e.eval(Real(rat(7, 3), 192), 192);
    CHECK(a == b);
}
