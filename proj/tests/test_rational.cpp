#include "doctest.h"

#include "curvtess/rational.hpp"

using namespace curvtess;

TEST_CASE("canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
    Rational a(1, 6), b(1, 10);
    CHECK(a + b == Rational(4, 15));
    CHECK(a - b == Rational(1, 15));
    CHECK(a * b == Rational(1, 60));
    CHECK(a / b == Rational(5, 3));
    CHECK(-a == Rational(-1, 6));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);

    // large denominators stay exact
    Rational s;
    for (int d = 3; d <= 60; ++d) s += Rational(1, d);
    Rational t;
    for (int d = 60; d >= 3; --d) t += Rational(1, d);
    CHECK(s == t);
    CHECK(s.den() > BigInt(1000000));
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 3) > Rational(-1, 2));
    CHECK(Rational(7, 12) > Rational(1, 2));
    CHECK(Rational(1, 12) >= Rational(1, 12));
}

TEST_CASE("string round trip") {
    CHECK(Rational(1, 12).str() == "1/12");
    CHECK(Rational(-5, 3).str() == "-5/3");
    CHECK(Rational(4).str() == "4");
    CHECK(Rational::parse("1/12") == Rational(1, 12));
    CHECK(Rational::parse("-7/2") == Rational(-7, 2));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(!Rational::parse(""));
    CHECK(!Rational::parse("x/2"));
    CHECK(!Rational::parse("1/0"));
    CHECK(Rational::parse("219060189739591200").has_value());
}

TEST_CASE("angle arithmetic") {
    Angle a(Rational(2, 3)), b(Rational(1, 3));
    CHECK((a + b).pi_coeff == Rational(1));
    CHECK(a.str() == "2/3*pi");
}
