#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "zm/partition.hpp"

using namespace zm;

namespace {
const ZParams kFlag{cplx(1.5, 0.5), cplx(1.5, -0.5), 0.3, 2.0};
}

TEST_CASE("diagram construction") {
    CHECK_THROWS_AS(YoungDiagram({1, 2}), DomainError);
    CHECK_THROWS_AS(YoungDiagram({2, 0}), DomainError);
    YoungDiagram l({3, 1, 1});
    CHECK(l.size() == 5);
    CHECK(l.transpose() == YoungDiagram({3, 1, 1}));
    CHECK(YoungDiagram({4, 2}).transpose() == YoungDiagram({2, 2, 1, 1}));
    CHECK(l.part(7) == 0);
}

TEST_CASE("hook products") {
    auto h = hook_products(YoungDiagram({1}), 2.0);
    CHECK(h.h == doctest::Approx(1.0));
    CHECK(h.hp == doctest::Approx(2.0));
    h = hook_products(YoungDiagram({2}), 2.0);
    CHECK(h.h == doctest::Approx(2.0));
    CHECK(h.hp == doctest::Approx(6.0));
    h = hook_products(YoungDiagram({1, 1}), 2.0);
    CHECK(h.h == doctest::Approx(3.0));
    CHECK(h.hp == doctest::Approx(8.0));
    // theta = 1: both are the classical hook product
    h = hook_products(YoungDiagram({3, 1}), 1.0);
    CHECK(h.h == doctest::Approx(8.0));
    CHECK(h.hp == doctest::Approx(8.0));
}

TEST_CASE("generalized pochhammer") {
    CHECK(gen_pochhammer(cplx(0.3, 0.2), YoungDiagram(), 2.0) == cplx(1.0));
    const cplx z(0.3, 0.2);
    CHECK(std::abs(gen_pochhammer(z, YoungDiagram({2}), 2.0) - z * (z + 1.0)) < 1e-15);
    CHECK(std::abs(gen_pochhammer(2.0, YoungDiagram({1, 1}), 2.0)) < 1e-15);
}

TEST_CASE("fixed-size measure") {
    CHECK(std::abs(zmeasure_n(YoungDiagram({1}), kFlag) - 1.0) < 1e-14);
    const ZParams deg{2.0, 2.0, 0.3, 2.0};
    CHECK(std::abs(zmeasure_n(YoungDiagram({2}), deg) - 1.0) < 1e-14);
    CHECK(std::abs(zmeasure_n(YoungDiagram({1, 1}), deg)) < 1e-14);
    for (int n = 1; n <= 12; ++n) {
        cplx s = 0.0;
        for (const auto& l : enumerate_diagrams(n)) s += zmeasure_n(l, kFlag);
        CHECK(std::abs(s - 1.0) < 1e-10);
    }
}

TEST_CASE("mixed measure") {
    const double t = kFlag.t().real();
    CHECK(std::abs(zmeasure_mixed(YoungDiagram(), kFlag) - std::pow(1 - 0.3, t)) < 1e-15);
    YoungDiagram l({3, 1});
    const double layer = std::pow(0.7, t) * std::tgamma(t + 4) / std::tgamma(t) * std::pow(0.3, 4) / 24.0;
    CHECK(std::abs(zmeasure_mixed(l, kFlag) - layer * zmeasure_n(l, kFlag)) < 1e-15);
}

TEST_CASE("transpose symmetry and plancherel limit") {
    CHECK(transpose_symmetry_check(YoungDiagram({2, 1}), kFlag));
    CHECK(transpose_symmetry_check(YoungDiagram({1}), kFlag));
    CHECK(transpose_symmetry_check(YoungDiagram({3, 1, 1}), kFlag));
    CHECK(plancherel_ratio(YoungDiagram({1}), 10.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(plancherel_ratio(YoungDiagram({2, 1}), 1e4, 2.0) - 1.0) < 1e-3);
    CHECK(std::fabs(plancherel_ratio(YoungDiagram({2, 1}), 1e6, 2.0) - 1.0) < 1e-5);
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_diagrams(0).size() == 1);
    CHECK(enumerate_diagrams(4).size() == 5);
    CHECK(enumerate_diagrams(30).size() == 5604);
    CHECK_THROWS_AS(enumerate_diagrams(61), DomainError);
}

TEST_CASE("D2 embedding") {
    auto e = embed_d2(YoungDiagram(), 3);
    REQUIRE(e.size() == 3);
    CHECK(e[0] == HalfInt::parse("-3/2"));
    CHECK(e[1] == HalfInt::parse("-7/2"));
    CHECK(e[2] == HalfInt::parse("-11/2"));
    e = embed_d2(YoungDiagram({2}), 2);
    CHECK(e[0] == HalfInt::parse("1/2"));
    CHECK(e[1] == HalfInt::parse("-7/2"));
    YoungDiagram l({5, 3, 3});
    auto many = embed_d2(l, 40);
    for (int k = -79; k < 20; ++k) {
        const bool in = std::find(many.begin(), many.end(), HalfInt(k)) != many.end();
        CHECK(in == in_d2(l, HalfInt(k)));
    }
}

TEST_CASE("positivity classes") {
    CHECK(positivity(cplx(1.5, 0.5), cplx(1.5, -0.5), 2.0) == Series::Principal);
    CHECK(positivity(2.0, 2.0, 2.0) != Series::None);
    CHECK(positivity(4.0, 2.5, 2.0) == Series::Degenerate);
    CHECK(positivity(1.7, 0.7, 2.0) == Series::None);  // signed measure
    CHECK(positivity(cplx(1.5, 0.5), cplx(1.0, 0.0), 2.0) == Series::None);
    CHECK(admissible(cplx(1.5, 0.5), cplx(1.5, -0.5)));
    CHECK(admissible(1.2, 1.7));
    CHECK_FALSE(admissible(0.5, 1.5));
    CHECK_THROWS_AS((ZParams{1.0, 1.0, 1.5, 2.0}.validate()), DomainError);
}

TEST_CASE("half-integer parsing") {
    CHECK(HalfInt::parse("-3/2").value() == -1.5);
    CHECK(HalfInt::parse("2+1/2").value() == 2.5);
    CHECK(HalfInt::parse("-3+1/2").value() == -2.5);
    CHECK_THROWS_AS(HalfInt::parse("2/2"), DomainError);
    CHECK_THROWS_AS(HalfInt::parse("1.5"), DomainError);
    CHECK(HalfInt::parse("9/2").str() == "9/2");
}
