#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dilation/expr.hpp"
#include "dilation/errors.hpp"

using dilation::expr::compile;

TEST_CASE("arithmetic and precedence") {
    CHECK(compile("1+2*3")(0.0) == doctest::Approx(7.0));
    CHECK(compile("(1+2)*3")(0.0) == doctest::Approx(9.0));
    CHECK(compile("2^3^2")(0.0) == doctest::Approx(512.0)); // right-assoc
    CHECK(compile("-x^2")(3.0) == doctest::Approx(-9.0));
    CHECK(compile("x/2 - 1")(5.0) == doctest::Approx(1.5));
}

TEST_CASE("functions") {
    CHECK(compile("exp(x)")(1.0) == doctest::Approx(std::exp(1.0)));
    CHECK(compile("log(x)")(std::exp(2.0)) == doctest::Approx(2.0));
    CHECK(compile("sin(x)+cos(x)")(0.0) == doctest::Approx(1.0));
    CHECK(compile("sinh(x)")(1.0) == doctest::Approx(std::sinh(1.0)));
    CHECK(compile("cosh(x)")(1.0) == doctest::Approx(std::cosh(1.0)));
    CHECK(compile("abs(x-2)")(0.5) == doctest::Approx(1.5));
    CHECK(compile("x^2/2")(3.0) == doctest::Approx(4.5));
    CHECK(compile("pi")(0.0) == doctest::Approx(M_PI));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(compile("1+"), dilation::DomainError);
    CHECK_THROWS_AS(compile("foo(x)"), dilation::DomainError);
    CHECK_THROWS_AS(compile("(x"), dilation::DomainError);
    CHECK_THROWS_AS(compile("x 1"), dilation::DomainError);
}
