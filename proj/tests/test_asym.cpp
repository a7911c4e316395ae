#include <doctest.h>

#include <random>

#include "rasym/asym_series.hpp"
#include "rasym/errors.hpp"
#include "rasym/json_io.hpp"

using namespace rasym;

namespace {

AsymSeries kpow(const Rational& r0, int order) {
    return AsymSeries::unit(ScaleFactor(), r0, order);
}

AsymSeries lnk(int order) {
    AsymSeries s(ScaleFactor(), rat(0), order);
    s.set_term(0, 1, ConstPoly(rat(1)));
    return s;
}

bool near_zero(const Real& d, long exp_bound) { return d.is_zero() || d.exp2() < exp_bound; }

bool equal_through(const AsymSeries& a, const AsymSeries& b, int through) {
    if (!(a.scale() == b.scale()) || a.r0() != b.r0()) return false;
    for (int m = 0; m <= through; ++m)
        for (int l = 0; l <= through + 1; ++l)
            if (!(a.term(m, l) == b.term(m, l))) return false;
    return true;
}

AsymSeries random_series(std::mt19937& rng, int order) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3), r0num(-2, 2), r0den(1, 3);
    AsymSeries s(ScaleFactor::from_rational(rat(2)).pow(rat(r0num(rng), 3)),
                 rat(r0num(rng), r0den(rng)), order);
    s.set_term(0, 0, ConstPoly(rat(1)));
    for (int m = 1; m <= order; ++m)
        for (int l = 0; l <= m; ++l)
            s.set_term(m, l, ConstPoly({rat(num(rng), den(rng)), rat(num(rng), den(rng))}));
    return s;
}

}  // namespace

TEST_CASE("a_shift of k^-1 is the alternating series") {
    AsymSeries s = kpow(rat(-1), 8);
    AsymSeries sh = a_shift(s);
    for (int m = 0; m <= 8; ++m) {
        CHECK(sh.term(m, 0) == ConstPoly(rat(m % 2 ? -1 : 1)));
        CHECK(sh.term(m, 1).is_zero());
    }
}

TEST_CASE("a_shift of ln k adds the log1p tail") {
    AsymSeries sh = a_shift(lnk(8));
    CHECK(sh.term(0, 1) == ConstPoly(rat(1)));
    for (int m = 1; m <= 8; ++m)
        CHECK(sh.term(m, 0) == ConstPoly(rat(m % 2 ? 1 : -1, m)));
}

TEST_CASE("a_shift of ln(k)*k^-1 equals the product of the two expansions") {
    AsymSeries s(ScaleFactor(), rat(-1), 8);
    s.set_term(0, 1, ConstPoly(rat(1)));
    AsymSeries got = a_shift(s);
    AsymSeries oracle = a_mul(a_shift(lnk(8)), a_shift(kpow(rat(-1), 8)));
    CHECK(equal_through(got, oracle, 8));
}

TEST_CASE("a_shift is multiplicative on random series") {
    std::mt19937 rng(42);
    for (int i = 0; i < 25; ++i) {
        AsymSeries a = random_series(rng, 6), b = random_series(rng, 6);
        AsymSeries lhs = a_shift(a_mul(a, b));
        AsymSeries rhs = a_mul(a_shift(a), a_shift(b));
        CHECK(equal_through(lhs, rhs, 6));
    }
}

TEST_CASE("reciprocal of the 1/(k+1) series is exactly k+1") {
    // 1/(k+1) = k^-1 (1 - k^-1 + k^-2 - ...)
    AsymSeries y(ScaleFactor(), rat(-1), 8);
    for (int m = 0; m <= 8; ++m) y.set_term(m, 0, ConstPoly(rat(m % 2 ? -1 : 1)));
    AsymSeries x = a_reciprocal(y);
    CHECK(x.r0() == rat(1));
    CHECK(x.term(0, 0) == ConstPoly(rat(1)));
    CHECK(x.term(1, 0) == ConstPoly(rat(1)));
    for (int m = 2; m <= 8; ++m) CHECK(x.term(m, 0).is_zero());
}

TEST_CASE("a_mul(S, a_reciprocal(S)) == 1") {
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        AsymSeries s = random_series(rng, 6);
        CHECK(a_mul(s, a_reciprocal(s)).is_one(6));
    }
    AsymSeries bad(ScaleFactor(), rat(0), 4);
    bad.set_term(0, 0, ConstPoly(rat(2)));
    CHECK_THROWS_AS(a_reciprocal(bad), StructureError);
}

TEST_CASE("a_eval exact anchors") {
    AsymSeries s(ScaleFactor::from_rational(rat(2)), rat(1, 2), 4);
    s.set_term(0, 0, ConstPoly(rat(1)));
    CHECK(a_eval(s, 4, std::nullopt, 128) == Real(4L, 128));

    AsymSeries t(ScaleFactor(), rat(-1), 4);
    t.set_term(0, 0, ConstPoly(rat(1)));
    t.set_term(1, 0, ConstPoly(rat(-1)));
    Real v = a_eval(t, 10, std::nullopt, 128);
    CHECK(near_zero((v - Real(rat(9, 100), 128)).abs(), -120));
}

TEST_CASE("a_eval needs a value for C when coefficients depend on it") {
    AsymSeries s(ScaleFactor(), rat(-1), 2);
    s.set_term(0, 0, ConstPoly(rat(1)));
    s.set_term(1, 0, ConstPoly::symbol());
    CHECK_THROWS_AS(a_eval(s, 10, std::nullopt, 128), DomainError);
    Real c(rat(3), 128);
    Real v = a_eval(s, 10, c, 128);  // (1 + 3/10)/10
    CHECK(near_zero((v - Real(rat(13, 100), 128)).abs(), -120));
}

TEST_CASE("truncated series tracks the closed form within twice the dropped term") {
    // S = truncation of 1/(k+1); exact value known.
    for (int M : {3, 5, 7}) {
        AsymSeries y(ScaleFactor(), rat(-1), M);
        for (int m = 0; m <= M; ++m) y.set_term(m, 0, ConstPoly(rat(m % 2 ? -1 : 1)));
        for (long k : {100L, 1000L, 10000L}) {
            Real got = a_eval(y, k, std::nullopt, 192);
            Real exact = Real(1L, 192) / Real(k + 1, 192);
            Real dropped = Real(k, 192).pow_int(-(M + 2));
            CHECK((got - exact).abs() < dropped + dropped);
        }
    }
}

TEST_CASE("series JSON round trip is lossless") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 10; ++i) {
        AsymSeries s = random_series(rng, 5);
        AsymSeries back = series_from_json(series_to_json(s));
        CHECK(equal_through(s, back, 5));
        CHECK(back.order() == s.order());
    }
}

TEST_CASE("display scaling requires a rational ratio") {
    AsymSeries s(ScaleFactor::from_rational(rat(2)).pow(rat(1, 2)), rat(-1, 2), 2);
    s.set_term(0, 0, ConstPoly(rat(1)));
    CHECK_THROWS_AS(scaled_display_terms(s, ScaleFactor()), StructureError);
    auto terms = scaled_display_terms(s, ScaleFactor::from_rational(rat(2)).pow(rat(1, 2)));
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].coeff == ConstPoly(rat(2)));
    CHECK(terms[0].kexp == rat(-1, 2));
}
