#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alcove/rational.hpp"

using alcove::Rational;

TEST_CASE("normalization and accessors") {
    CHECK(Rational(4, 6) == Rational(2, 3));
    CHECK(Rational(-4, 6) == Rational(-2, 3));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(7).is_integer());
    CHECK(Rational(7).as_integer() == 7);
    CHECK_FALSE(Rational(1, 2).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("field operations") {
    Rational a(1, 6), b(3, 4);
    CHECK(a + b == Rational(11, 12));
    CHECK(b - a == Rational(7, 12));
    CHECK(a * b == Rational(1, 8));
    CHECK(a / b == Rational(2, 9));
    CHECK(-a == Rational(-1, 6));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
}

TEST_CASE("comparisons avoid intermediate overflow") {
    Rational big(3000000000LL, 7);
    Rational bigger(3000000001LL, 7);
    CHECK(big < bigger);
    CHECK(big <= big);
    CHECK(bigger > big);
}

TEST_CASE("string round trip") {
    CHECK(Rational::from_string("-3/9") == Rational(-1, 3));
    CHECK(Rational::from_string("5") == Rational(5));
    CHECK(Rational(2, 3).str() == "2/3");
    CHECK(Rational(-7).str() == "-7");
}

TEST_CASE("reduced overflow still throws") {
    Rational huge(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(huge * Rational(8), alcove::bound_exceeded);
    // but cancellation through 128-bit intermediates is fine
    Rational x(INT64_MAX / 3, 5);
    CHECK(x * Rational(5, INT64_MAX / 3) == Rational(1));
}

TEST_CASE("double conversion") {
    CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
    CHECK(Rational(-22, 7).to_double() == doctest::Approx(-3.142857142857143));
}
