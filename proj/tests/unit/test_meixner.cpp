#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "zm/kernel_theta2.hpp"
#include "zm/meixner.hpp"

using namespace zm;

namespace {
const MeixnerParams kM1{1, 1.5, 0.25};
const MeixnerParams kM2{2, 1.5, 0.25};
}  // namespace

TEST_CASE("weight") {
    CHECK(meixner_weight(0, 1.5, 0.25) == doctest::Approx(1.0));
    CHECK(meixner_weight(1, 1.5, 0.25) == doctest::Approx(0.375));
    double s = 0.0;
    for (long x = 0; x < 400; ++x) s += meixner_weight(x, 1.5, 0.25);
    CHECK(std::fabs(s - std::pow(0.75, -1.5)) < 1e-12);
    CHECK_THROWS_AS(meixner_weight(-1, 1.5, 0.25), DomainError);
}

TEST_CASE("orthonormal functions") {
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n)
        for (int m = n; m <= 8; ++m) {
            double s = 0.0;
            for (long x = 0; x <= 200; ++x) s += meixner_fn(n, x, 1.5, 0.25) * meixner_fn(m, x, 1.5, 0.25);
            worst = std::max(worst, std::fabs(s - (n == m ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-10);
    // M_0 before normalization is 1: the function is sqrt(weight / |M_0|^2)
    CHECK(std::fabs(meixner_fn(0, 3, 1.5, 0.25) -
                    std::sqrt(meixner_weight(3, 1.5, 0.25) * std::pow(0.75, 1.5))) < 1e-15);
}

TEST_CASE("K_2N: symmetry, projection, shift identity") {
    CHECK(k2n(2, 5, kM2) == k2n(5, 2, kM2));
    double s = 0.0;
    for (long u = 0; u <= 300; ++u) s += k2n(1, u, kM2) * k2n(u, 4, kM2);
    CHECK(std::fabs(s - k2n(1, 4, kM2)) < 1e-8);
    for (const auto& mp : {kM1, kM2}) {
        const ZParams sp = mp.shift_params();
        for (long x = 0; x < 4; ++x)
            for (long y = 0; y < 4; ++y) {
                const HalfInt hx(x - 2 * mp.N), hy(y - 2 * mp.N);
                CHECK(std::fabs(k2n(x, y, mp) - k_contour_c(hx, hy, sp).real()) < 1e-9);
            }
    }
}

TEST_CASE("difference operators") {
    for (long y = 0; y < 5; ++y) CHECK(d_minus_kernel(0, y, kM1) == 0.0);
    CHECK(d_plus_kernel(2, 3, kM1) == doctest::Approx(2.0 * std::sqrt(3.0 / 3.5)));
    CHECK(d_plus_kernel(2, 4, kM1) == 0.0);
    CHECK(d_minus_kernel(3, 1, kM1) == 0.0);
}

TEST_CASE("E inverts D") {
    for (int k = 0; k <= 6; ++k) {
        IntFn f = [k](long x) { return meixner_fn(k, x, 1.5, 0.25); };
        IntFn df = [&](long x) {
            return d_plus_kernel(x, x + 1, kM1) * f(x + 1) - (x > 0 ? d_minus_kernel(x, x - 1, kM1) * f(x - 1) : 0.0);
        };
        IntFn ef = [&](long x) { return e_apply(f, x, kM1); };
        for (long x = 0; x <= 40; x += 7) {
            CHECK(std::fabs(e_apply(df, x, kM1) - f(x)) < 1e-9);
            const double dEf = d_plus_kernel(x, x + 1, kM1) * ef(x + 1) -
                               (x > 0 ? d_minus_kernel(x, x - 1, kM1) * ef(x - 1) : 0.0);
            CHECK(std::fabs(dEf - f(x)) < 1e-9);
        }
    }
    int calls = 0;
    IntFn count = [&](long) {
        ++calls;
        return 1.0;
    };
    e_apply(count, 1, kM1);
    CHECK(calls == 1);
}

TEST_CASE("S_2N: operator vs contour vs antisymmetrised form") {
    MeixnerOps ops(kM1);
    for (long x = 0; x <= 4; ++x)
        for (long y = 0; y <= 4; ++y) {
            const double a = ops.s(x, y);
            CHECK(std::fabs(a - s2n_contour(x, y, kM1)) < 1e-8);
            CHECK(std::fabs(a - s2n_antisym(x, y, kM1)) < 1e-8);
            CHECK(std::fabs(a + ops.s(y, x)) < 1e-10);
        }
}

TEST_CASE("S_2N against the hypergeometric kernel at integer parameters") {
    for (const auto& mp : {kM1, kM2}) {
        const ZParams zp = mp.measure_params();
        Theta2 eng(zp);
        for (long x = 0; x < 4; ++x)
            for (long y = 0; y < 4; ++y) {
                const HalfInt hx(x - 2 * mp.N), hy(y - 2 * mp.N);
                const double g = std::sqrt((hx.value() + zp.z.real() + 0.5) * (hy.value() + zp.z.real() + 0.5));
                const double rhs = std::sqrt(mp.xi) * eng.s(hx, hy, Repr::Series).real() / g;
                CHECK(std::fabs(s2n_operator(x, y, mp) - rhs) < 1e-8);
            }
    }
}

TEST_CASE("ensemble and correlations") {
    MeixnerEnsemble e1(kM1, 60);
    for (long x = 0; x < 5; ++x) {
        const double closed = meixner_weight(x, 1.5, 0.25) * std::pow(0.75, 1.5);
        CHECK(std::fabs(e1.prob({{x}}) - closed) < 1e-12);
        CHECK(std::fabs(meixner_correlation({x}, kM1) - closed) < 1e-8);
    }
    MeixnerEnsemble e2(kM2, 60);
    CHECK(e2.tail() < 1e-9);
    CHECK(e2.prob({{3, 4}}) == 0.0);
    MeixnerOps ops(kM2);
    for (long x = 0; x < 4; ++x) {
        CHECK(std::fabs(meixner_correlation(ops, {x}, kM2) - e2.correlation({x})) < 1e-8);
        CHECK(std::fabs(meixner_correlation(ops, {x, x + 2}, kM2) - e2.correlation({x, x + 2})) < 1e-8);
    }
    CHECK(std::fabs(e2.correlation({2, 3})) < 1e-12);
}

TEST_CASE("bijection and pushforward") {
    auto c = zmeasure_bijection(YoungDiagram(), kM2);
    CHECK(c.points == std::vector<long>{0, 2});
    c = zmeasure_bijection(YoungDiagram({1}), kM1);
    CHECK(c.points == std::vector<long>{1});
    CHECK_THROWS_AS(zmeasure_bijection(YoungDiagram({1, 1, 1}), kM2), DomainError);

    const ZParams zp = kM2.measure_params();
    MeixnerEnsemble e2(kM2, 80);
    double ratio = 0.0, worst = 0.0;
    for (int n = 0; n <= 10; ++n)
        for (const auto& l : enumerate_diagrams(n)) {
            if (l.rows() > kM2.N) continue;
            const double m = zmeasure_mixed(l, zp).real();
            const double q = e2.prob(zmeasure_bijection(l, kM2));
            if (ratio == 0.0) ratio = m / q;
            worst = std::max(worst, std::fabs(m / q / ratio - 1.0));
        }
    CHECK(worst < 1e-10);
}
