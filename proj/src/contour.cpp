#include "zm/contour.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace zm {

Circle::Circle(double r_, int n_) : r(r_), n(n_), w(n_), root(n_) {
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        root[j] = {std::cos(th), std::sin(th)};
        w[j] = r * root[j];
    }
}

cplx Circle::pow_int(int j, long m) const {
    long idx = (static_cast<long>(j) * (m % n)) % n;
    if (idx < 0) idx += n;
    return std::pow(r, static_cast<double>(m)) * root[idx];
}

double radius_out(double xi) { return 0.5 * (1.0 + 1.0 / std::sqrt(xi)); }
double radius_in(double xi) { return 0.5 * (1.0 + std::sqrt(xi)); }

void guard_radii(double& r1, double& r2, double xi, double guard) {
    if (std::fabs(r1 * r2 - 1.0) >= guard) return;
    const double sx = std::sqrt(xi);
    if (r1 * r2 >= 1.0) {
        // push the larger radius outward, staying clear of 1/sqrt(xi)
        double& big = (r1 >= r2) ? r1 : r2;
        const double other = (r1 >= r2) ? r2 : r1;
        const double want = (1.0 + guard) / other;
        if (want > big + 0.8 * (1.0 / sx - big)) throw DomainError("guard_radii: no admissible radius pair for xi");
        big = want;
    } else {
        double& small = (r1 <= r2) ? r1 : r2;
        const double other = (r1 <= r2) ? r2 : r1;
        const double want = (1.0 - guard) / other;
        if (want < small - 0.8 * (small - sx)) throw DomainError("guard_radii: no admissible radius pair for xi");
        small = want;
    }
}

namespace {

void check_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("contour radius must be positive");
}

[[noreturn]] void no_conv(const char* what, cplx a, cplx b) {
    throw ConvergenceError(std::string(what) + ": node cap reached, last estimates (" +
                           std::to_string(a.real()) + "," + std::to_string(a.imag()) + ") and (" +
                           std::to_string(b.real()) + "," + std::to_string(b.imag()) + ")");
}

}  // namespace

cplx circle_integral(const Integrand1& f, const ContourSpec& spec, int node_cap, QuadReport* rep) {
    check_radius(spec.radius);
    auto eval = [&](int n) {
        Circle c(spec.radius, n);
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += f(c.w[j]) * c.w[j];
        return s / static_cast<double>(n);
    };
    int n = std::max(4, spec.nodes);
    cplx prev = eval(n);
    for (;;) {
        if (2 * n > node_cap) no_conv("circle_integral", prev, prev);
        const cplx cur = eval(2 * n);
        const double d = std::abs(cur - prev);
        n *= 2;
        if (d < spec.tol) {
            if (rep) *rep = {cur, n, 0, d};
            return cur;
        }
        prev = cur;
    }
}

cplx double_circle_integral(const Integrand2& f, const ContourSpec& s1, const ContourSpec& s2,
                            int node_cap, QuadReport* rep) {
    check_radius(s1.radius);
    check_radius(s2.radius);
    const double tol = std::min(s1.tol, s2.tol);
    auto eval = [&](int n1, int n2) {
        Circle c1(s1.radius, n1), c2(s2.radius, n2);
        double mn = 1e300;
        cplx s = 0.0;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                mn = std::min(mn, std::abs(c1.w[i] * c2.w[j] - 1.0));
                s += f(c1.w[i], c2.w[j]) * c1.w[i] * c2.w[j];
            }
        if (mn < 10.0 * 2.2e-16 * s1.radius * s2.radius)
            throw DomainError("double_circle_integral: node lands on w1 w2 = 1");
        return s / (static_cast<double>(n1) * n2);
    };
    int n1 = std::max(4, s1.nodes), n2 = std::max(4, s2.nodes);
    cplx cur = eval(n1, n2);
    for (;;) {
        if (2 * n1 > node_cap && 2 * n2 > node_cap) no_conv("double_circle_integral", cur, cur);
        const cplx a = 2 * n1 <= node_cap ? eval(2 * n1, n2) : cur;
        const cplx b = 2 * n2 <= node_cap ? eval(n1, 2 * n2) : cur;
        const double d1 = std::abs(a - cur), d2 = std::abs(b - cur);
        if (d1 < tol && d2 < tol) {
            if (rep) *rep = {cur, n1, n2, std::max(d1, d2)};
            return cur;
        }
        if (d1 >= tol) n1 *= 2;
        if (d2 >= tol) n2 *= 2;
        if (n1 > node_cap || n2 > node_cap) no_conv("double_circle_integral", a, b);
        cur = eval(n1, n2);
    }
}

cplx circle_mean(const NodeFn& g, double r, const NumOpts& o, QuadReport* rep) {
    check_radius(r);
    auto eval = [&](int n) {
        Circle c(r, n);
        std::vector<cplx> v(n);
        g(c, v);
        cplx s = 0.0;
        for (const cplx& x : v) s += x;
        return s / static_cast<double>(n);
    };
    int n = std::max(4, o.nodes_min);
    cplx prev = eval(n);
    for (;;) {
        if (2 * n > o.nodes_cap_single) no_conv("circle_mean", prev, prev);
        const cplx cur = eval(2 * n);
        const double d = std::abs(cur - prev);
        n *= 2;
        if (d < o.quad_tol) {
            if (rep) *rep = {cur, n, 0, d};
            return cur;
        }
        prev = cur;
    }
}

cplx pole_mean(const NodeFn& a, const NodeFn& b, double r1, double r2, const NumOpts& o,
               QuadReport* rep) {
    check_radius(r1);
    check_radius(r2);
    if (std::fabs(r1 * r2 - 1.0) < 0.5 * o.pole_guard)
        throw DomainError("pole_mean: radii too close to r1 r2 = 1");
    // node values per level, filled lazily
    std::map<int, std::pair<Circle, std::vector<cplx>>> ca, cb;
    auto get = [](auto& cache, const NodeFn& fn, double r, int n) -> auto& {
        auto it = cache.find(n);
        if (it == cache.end()) {
            Circle c(r, n);
            std::vector<cplx> v(n);
            fn(c, v);
            it = cache.emplace(n, std::make_pair(std::move(c), std::move(v))).first;
        }
        return it->second;
    };
    auto eval = [&](int n1, int n2) {
        auto& A = get(ca, a, r1, n1);
        auto& B = get(cb, b, r2, n2);
        const auto& w1 = A.first.w;
        const auto& w2 = B.first.w;
        cplx s = 0.0;
        for (int i = 0; i < n1; ++i) {
            cplx row = 0.0;
            const cplx wi = w1[i];
            for (int j = 0; j < n2; ++j) row += B.second[j] / (wi * w2[j] - 1.0);
            s += A.second[i] * row;
        }
        return s / (static_cast<double>(n1) * n2);
    };
    const int cap = o.nodes_cap_double;
    int n1 = std::max(4, o.nodes_min), n2 = n1;
    cplx cur = eval(n1, n2);
    for (;;) {
        const cplx x = 2 * n1 <= cap ? eval(2 * n1, n2) : cur;
        const cplx y = 2 * n2 <= cap ? eval(n1, 2 * n2) : cur;
        const double d1 = std::abs(x - cur), d2 = std::abs(y - cur);
        if (d1 < o.quad_tol && d2 < o.quad_tol) {
            if (rep) *rep = {cur, n1, n2, std::max(d1, d2)};
            return cur;
        }
        if (d1 >= o.quad_tol) n1 *= 2;
        if (d2 >= o.quad_tol) n2 *= 2;
        if (n1 > cap || n2 > cap) no_conv("pole_mean", x, y);
        cur = eval(n1, n2);
    }
}

}  // namespace zm
