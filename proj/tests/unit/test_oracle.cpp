#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "zm/kernel_theta2.hpp"
#include "zm/oracle.hpp"

using namespace zm;

namespace {
const ZParams kFlag{cplx(1.5, 0.5), cplx(1.5, -0.5), 0.3, 2.0};
HalfInt h(int k) { return HalfInt(k); }
}  // namespace

TEST_CASE("tail bound") {
    const double t = kFlag.t().real();
    CHECK(std::fabs(tail_bound(kFlag, 0) - (1.0 - std::pow(0.7, t))) < 1e-14);
    CHECK(tail_bound(kFlag, 40) < 1e-10);
    double prev = 2.0;
    for (int c = 0; c < 30; c += 3) {
        const double v = tail_bound(kFlag, c);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(tail_bound(ZParams{cplx(1.5, 0.5), 1.0, 0.3, 2.0}, 10), DomainError);
}

TEST_CASE("measure table mass") {
    MeasureTable t(kFlag, 20);
    CHECK(std::fabs(t.total() + t.tail() - 1.0) < 1e-12);
}

TEST_CASE("corr oracle properties") {
    MeasureTable t(kFlag, 25);
    const auto a = t.corr({h(-2)});
    const auto b = t.corr({h(-2), h(0)});
    const auto c = t.corr({h(-2), h(0), h(-4)});
    CHECK(b.value <= a.value);
    CHECK(c.value <= b.value);
    CHECK(t.corr({h(0), h(-2)}).value == b.value);
    for (int k = -6; k < 6; ++k) {
        const double v = t.corr({h(k)}).value;
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + t.tail());
    }
    ZParams sw = kFlag;
    std::swap(sw.z, sw.zp);
    CHECK(std::fabs(MeasureTable(sw, 25).corr({h(-2), h(0)}).value - b.value) < 1e-15);
    ZParams tiny = kFlag;
    tiny.xi = 1e-6;
    CHECK(corr_oracle({h(-2)}, tiny, 10).value > 1.0 - 1e-5);
    // 5/2 needs lambda_1 >= 4
    double heavy = 0.0;
    for (int n = 4; n <= 25; ++n) heavy += layer_mass(kFlag, n);
    CHECK(t.corr({h(2)}).value <= heavy + t.tail());
}

TEST_CASE("oracle vs pfaffian, small") {
    MeasureTable t(kFlag, 30);
    Theta2 eng(kFlag);
    for (auto pts : {std::vector<HalfInt>{h(-2)}, std::vector<HalfInt>{h(-2), h(0)}})
        CHECK(std::fabs(t.corr(pts).value - correlation(eng, pts).value) < std::max(1e-6, t.tail()));
}

TEST_CASE("sampler") {
    DiagramSampler a(kFlag, 11), b(kFlag, 11);
    for (int i = 0; i < 200; ++i) CHECK(a.draw() == b.draw());
    DiagramSampler deg(ZParams{2.0, 2.0, 0.3, 2.0}, 5);
    for (int i = 0; i < 2000; ++i) CHECK(deg.draw().rows() <= 1);
    DiagramSampler s(kFlag, 99);
    const int n = 20000;
    double m = 0;
    for (int i = 0; i < n; ++i) m += s.draw().size();
    const double t = kFlag.t().real(), mu = t * 0.3 / 0.7, var = t * 0.3 / (0.7 * 0.7);
    CHECK(std::fabs(m / n - mu) < 4.0 * std::sqrt(var / n));
    CHECK(sample_diagram(kFlag, 3) == sample_diagram(kFlag, 3));
}

TEST_CASE("meixner oracle") {
    const MeixnerParams m1{1, 1.5, 0.25}, m2{2, 1.5, 0.25};
    for (long x = 0; x < 4; ++x) {
        const auto r = meixner_oracle({x}, m1, 60);
        CHECK(std::fabs(r.value - meixner_weight(x, 1.5, 0.25) * std::pow(0.75, 1.5)) < 1e-12);
    }
    double s = 0.0;
    for (long x = 0; x <= 60; ++x) s += meixner_oracle({x}, m2, 60).value;
    CHECK(std::fabs(s - 2.0) < 1e-8);
    CHECK(std::fabs(meixner_oracle({1, 3}, m2, 60).value - meixner_correlation({1, 3}, m2)) < 1e-8);
}
