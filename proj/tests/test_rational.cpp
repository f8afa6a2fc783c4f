#include "doctest.h"
#include "mechlab/rational.hpp"

using mechlab::Rational;

TEST_CASE("construction reduces to lowest terms") {
    Rational q(6, 4);
    CHECK(q.num() == 3);
    CHECK(q.den() == 2);
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(3, 5) == Rational(-3, 5));
    Rational acc;
    for (int i = 0; i < 10; ++i) acc += Rational(1, 10);
    CHECK(acc == Rational(1));
}

TEST_CASE("comparisons cross-multiply") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(7, 3) > Rational(2));
    CHECK(Rational(5, 5) <= Rational(1));
    // values near the 64-bit edge still compare correctly
    Rational big(INT64_MAX, 2);
    Rational bigger(INT64_MAX, 1);
    CHECK(big < bigger);
}

TEST_CASE("overflow of the reduced result throws") {
    Rational big(INT64_MAX);
    CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
    CHECK_THROWS_AS(big + big, std::overflow_error);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("pow2 handles both signs") {
    CHECK(Rational::pow2(0) == Rational(1));
    CHECK(Rational::pow2(5) == Rational(32));
    CHECK(Rational::pow2(-3) == Rational(1, 8));
    CHECK(Rational::pow2(62) == Rational(1LL << 62));
    CHECK_THROWS_AS(Rational::pow2(63), std::overflow_error);
}

TEST_CASE("string round trip") {
    CHECK(Rational(7).str() == "7");
    CHECK(Rational(-3, 4).str() == "-3/4");
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse(Rational(22, 7).str()) == Rational(22, 7));
}

TEST_CASE("sign and zero predicates") {
    CHECK(Rational().is_zero());
    CHECK(Rational(0).sign() == 0);
    CHECK(Rational(3, 4).sign() == 1);
    CHECK(Rational(-1, 9).sign() == -1);
}
