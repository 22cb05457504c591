#include "bianchi/quad.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

using namespace bianchi;

namespace {
QuadElement w() { return QuadElement::omega(); }
QuadElement half() { return QuadElement(Rational(1, 2), Rational(0)); }
}  // namespace

TEST_CASE("norm values") {
    CHECK(norm(w()) == Rational(2));
    CHECK(norm(QuadElement(1)) == Rational(1));
    // (1 + w)/2: a = b = 1/2, hand oracle (1/2)^2 + 2 (1/2)^2 = 3/4
    QuadElement x(Rational(1, 2), Rational(1, 2));
    CHECK(norm(x) == Rational(3, 4));
}

TEST_CASE("omega squares to minus two") {
    CHECK(w() * w() == QuadElement(-2));
    CHECK(conjugate(w()) == -w());
}

TEST_CASE("dyadic valuation on the pinned inputs") {
    CHECK(dyadic_valuation(w()) == 1);
    CHECK(dyadic_valuation(QuadElement(2)) == 2);
    CHECK(dyadic_valuation(QuadElement(1)) == 0);
    CHECK(dyadic_valuation(half()) == -2);  // oracle: rational v2 of norm 1/4
    CHECK(oracle::rational_v2(norm(half())) == -2);
    CHECK_THROWS_AS(dyadic_valuation(QuadElement(0)), std::domain_error);
}

TEST_CASE("valuation sentinel is not an integer") {
    Valuation inf = valuation(QuadElement(0));
    CHECK(inf.is_infinite());
    CHECK_THROWS_AS(inf.value(), std::domain_error);
    CHECK(valuation(w()) == Valuation::finite(1));
    CHECK(min(inf, Valuation::finite(-5)) == Valuation::finite(-5));
    CHECK((inf + Valuation::finite(3)).is_infinite());
}

TEST_CASE("uniformizer predicate") {
    CHECK(is_uniformizer(w()));
    CHECK_FALSE(is_uniformizer(QuadElement(2)));
    CHECK_FALSE(is_uniformizer(QuadElement(1)));
    CHECK_THROWS_AS(is_uniformizer(QuadElement(0)), std::invalid_argument);
    CHECK_THROWS_AS(is_uniformizer(half()), std::invalid_argument);  // not dyadically local
}

TEST_CASE("subring membership") {
    CHECK(in_subring(half(), SubringTag::ZOmegaHalf));
    CHECK_FALSE(in_subring(half(), SubringTag::DyadicLocal));
    CHECK(in_subring(w(), SubringTag::ZOmega));
    QuadElement third(Rational(1, 3), Rational(0));
    CHECK(in_subring(third, SubringTag::DyadicLocal));
    CHECK_FALSE(in_subring(third, SubringTag::ZOmegaHalf));
    CHECK(in_subring(QuadElement(Rational(7, 8), Rational(-3, 2)), SubringTag::ZOmegaHalf));
}

TEST_CASE("valuation properties on random bounded-height elements") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 2000; ++i) {
        QuadElement x = oracle::random_nonzero_quad(rng, 15);
        QuadElement y = oracle::random_nonzero_quad(rng, 15);
        CHECK(dyadic_valuation(x * y) == dyadic_valuation(x) + dyadic_valuation(y));
        if (!(x + y).is_zero())
            CHECK(dyadic_valuation(x + y) >= std::min(dyadic_valuation(x), dyadic_valuation(y)));
        CHECK(norm(conjugate(x)) == norm(x));
        CHECK(conjugate(conjugate(x)) == x);
        CHECK(norm(x * y) == norm(x) * norm(y));
    }
}

TEST_CASE("valuation restricted to rationals doubles the 2-adic valuation") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        Rational r = oracle::random_rational(rng, 60);
        if (r == 0) continue;
        CHECK(dyadic_valuation(QuadElement(r, Rational(0))) == 2 * oracle::rational_v2(r));
    }
}

TEST_CASE("positive valuation on the local ring is at least one") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        QuadElement x = oracle::random_nonzero_quad(rng, 9);
        if (!in_subring(x, SubringTag::DyadicLocal)) continue;
        long v = dyadic_valuation(x);
        CHECK(v >= 0);
    }
}

TEST_CASE("textual round trip") {
    CHECK(format(w()) == "0+1*w");
    CHECK(format(QuadElement(Rational(-1, 2), Rational(1, 4))) == "-1/2+1/4*w");
    CHECK(format(QuadElement(Rational(1, 2), Rational(-1, 2))) == "1/2-1/2*w");
    CHECK(format(QuadElement(-3)) == "-3");
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        QuadElement x = oracle::random_quad(rng, 30);
        CHECK(parse_quad(format(x)) == x);
    }
    CHECK(parse_quad("w") == w());
    CHECK(parse_quad("-w") == -w());
    CHECK(parse_quad("2*w") == QuadElement(Rational(0), Rational(2)));
    CHECK_THROWS_AS(parse_quad(""), std::invalid_argument);
}
