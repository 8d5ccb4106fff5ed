#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "zm/special_fn.hpp"

using namespace zm;

TEST_CASE("log_gamma at small integers and 1/2") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14);
    CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(kPi)) < 1e-14);
}

TEST_CASE("log_gamma complex: recurrence and reflection") {
    const cplx s(0.3, 1.7);
    CHECK(std::abs(std::exp(log_gamma(s + 1.0) - log_gamma(s)) - s) < 1e-13);
    // Gamma(s)Gamma(1-s) = pi / sin(pi s)
    const cplx lhs = std::exp(log_gamma(s) + log_gamma(1.0 - s));
    CHECK(std::abs(lhs - kPi / std::sin(kPi * s)) < 1e-12 * std::abs(lhs));
    // large argument vs lgamma
    CHECK(std::abs(log_gamma(cplx(123.25, 0.0)).real() - std::lgamma(123.25)) < 1e-10);
    CHECK(std::abs(log_gamma(cplx(-2.5, 0.0)).real() - std::lgamma(-2.5)) < 1e-13);
}

TEST_CASE("log_gamma poles") {
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-3.0), DomainError);
    CHECK(rgamma(-3.0) == cplx(0.0));
    CHECK(std::abs(rgamma(4.0) - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(cplx(2.3, 1.0), 0) == cplx(1.0));
    CHECK(std::abs(pochhammer(1.0, 3) - 6.0) < 1e-15);
    CHECK(std::abs(pochhammer(0.5, 4) - 6.5625) < 1e-14);
    CHECK(pochhammer_k(cplx(0.7), 0, 2) == cplx(1.0));
    CHECK(std::abs(pochhammer_k(1.0, 3, 2) - 15.0) < 1e-14);
    const cplx x(0.4, -1.2);
    CHECK(std::abs(pochhammer_k(x, 5, 1) - pochhammer(x, 5)) < 1e-13);
}

TEST_CASE("gauss_2f1 basics") {
    CHECK(std::abs(gauss_2f1({0.3, 1.2, 2.5, 0.0}) - 1.0) < 1e-16);
    const cplx a(1.3, 0.4), w(0.35, 0.1);
    CHECK(std::abs(gauss_2f1({a, 2.2, 2.2, w}) - std::pow(1.0 - w, -a)) < 1e-14);
    CHECK(std::abs(gauss_2f1({1.0, 1.0, 2.0, 0.5}) - 2.0 * std::log(2.0)) < 1e-14);
    // terminating: F(-2, b; c; w) is a polynomial, any w
    const double b = 1.5, c = 2.5, x = 3.0;
    const double poly = 1 - 2 * b / c * x + b * (b + 1) / (c * (c + 1)) * x * x;
    CHECK(std::abs(gauss_2f1({-2.0, b, c, x}) - poly) < 1e-12);
}

TEST_CASE("gauss_2f1 Pfaff transformation agrees with direct series") {
    const cplx a(1.5, 0.5), b(-0.5, 0.5), c(2.0, 0.0);
    const double xi = 0.3;
    const cplx w = xi / (xi - 1.0);
    CHECK(std::abs(gauss_2f1_pfaff(a, b, c, xi) - gauss_2f1({a, b, c, w})) < 1e-13);
}

TEST_CASE("regularized 2F1 at non-positive integer c") {
    // F(a,b;c;w)/Gamma(c) at c = -1 equals (a)_2 (b)_2 w^2 F(a+2,b+2;3;w)/2!
    const cplx a(0.7, 0.2), b(1.1, -0.3);
    const double w = 0.2;
    const cplx lim = pochhammer(a, 2) * pochhammer(b, 2) * w * w * gauss_2f1({a + 2.0, b + 2.0, 3.0, w}) / 2.0;
    CHECK(std::abs(gauss_2f1_reg({a, b, -1.0, w}) - lim) < 1e-14);
    // generic c: plain ratio
    const cplx c(2.4, 0.0);
    CHECK(std::abs(gauss_2f1_reg({a, b, c, w}) - gauss_2f1({a, b, c, w}) * rgamma(c)) < 1e-14);
}

TEST_CASE("gauss_2f1_many matches pointwise") {
    std::vector<cplx> w{0.1, cplx(0.2, 0.3), cplx(-0.4, 0.1)}, out(3);
    gauss_2f1_many(0.5, 1.5, 2.5, w, out);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(out[i] - gauss_2f1({0.5, 1.5, 2.5, w[i]})) < 1e-15);
}
