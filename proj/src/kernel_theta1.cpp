#include "zm/kernel_theta1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gauge.hpp"
#include "zm/contour.hpp"
#include "zm/special_fn.hpp"

namespace zm {

using detail::log_p;

namespace {

double real_checked(cplx v, const char* what) {
    if (std::fabs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)))
        throw DomainError(std::string(what) + ": imaginary residue " + std::to_string(v.imag()) +
                          " (parameters not admissible?)");
    return v.real();
}

double radicand(const ZParams& p, double u) {
    const cplx v = p.xi * (p.z + u) * (p.zp + u);
    if (std::fabs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)) || v.real() < -1e-12)
        throw DomainError("difference operator: radicand not a non-negative real");
    return std::sqrt(std::max(0.0, v.real()));
}

// log of the largest |term| in 2F1(al, be; ga; xi)
double log_max_term(cplx al, cplx be, cplx ga, double xi) {
    const double past = std::max({std::abs(al), std::abs(be), std::abs(ga)}) + 2.0;
    double lt = 0.0, best = 0.0;
    for (long n = 0; n < 10000000L; ++n) {
        const double r = xi * std::abs((al + double(n)) * (be + double(n)) / ((ga + double(n)) * (n + 1.0)));
        if (r == 0.0) break;
        lt += std::log(r);
        best = std::max(best, lt);
        if (r < 1.0 && n > past) break;
    }
    return best;
}

// series value; ill is set when cancellation eats more than ~3 digits
cplx psi_series_impl(HalfInt a, HalfInt x, const ZParams& p, const NumOpts& o, bool& ill) {
    ill = false;
    const double av = a.value(), xv = x.value();
    const cplx za = p.z - av + 0.5, zpa = p.zp - av + 0.5;
    if (is_nonpos_int(za, 0.0) || is_nonpos_int(zpa, 0.0)) return 0.0;
    const double lg = 0.5 * (log_gamma(xv + p.z + 0.5) + log_gamma(xv + p.zp + 0.5) - log_gamma(za) -
                             log_gamma(zpa))
                              .real();
    const cplx A = -p.z + av + 0.5, B = -p.zp + av + 0.5;
    const double C = xv + av + 1.0;  // integer
    const cplx pf = std::pow(1.0 - p.xi, 0.5 * (p.zp - p.z) + 0.5);
    const double lx = lg + 0.5 * (xv + av) * std::log(p.xi);
    auto check = [&](cplx v, double lead, HypArg h) {
        if (!std::isfinite(std::abs(v))) {
            ill = true;
            return cplx(0.0);
        }
        const double lv = std::log(std::abs(v));
        ill = !std::isfinite(lv) || lead + std::log(std::abs(pf)) + log_max_term(h.a, h.b, h.c, h.w.real()) - lv > 7.0;
        return v;
    };
    auto f21 = [&](const HypArg& h) -> cplx {
        try {
            return gauss_2f1(h, o.series_tol);
        } catch (const ConvergenceError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    if (C > 0.0) {  // keep 1/Gamma(C) inside the exponent, both factors overflow separately for large a
        const HypArg h{A, C - B, C, p.xi};
        return check(std::exp(lx - std::lgamma(C)) * pf * f21(h), lx - std::lgamma(C), h);
    }
    // C = -m: the regularized series starts at n0 = m + 1,
    // F/Gamma(C) = (A)_n0 (C-B)_n0 xi^n0 / n0! * F(A+n0, C-B+n0; n0+1; xi); leading factor in logs
    const long n0 = static_cast<long>(1.0 - C);
    const cplx Bc = C - B;
    cplx lead = lx + n0 * std::log(p.xi) - std::lgamma(n0 + 1.0);
    for (long k = 0; k < n0; ++k) {
        const cplx fa = A + double(k), fb = Bc + double(k);
        if (fa == 0.0 || fb == 0.0) return 0.0;
        lead += std::log(fa) + std::log(fb);
    }
    const HypArg h{A + double(n0), Bc + double(n0), double(n0 + 1), p.xi};
    return check(std::exp(lead) * pf * f21(h), lead.real(), h);
}

}  // namespace

double PsiColumn::at(HalfInt x) const {
    const std::int64_t i = x.k - k0;
    return i < 0 || i >= static_cast<std::int64_t>(v.size()) ? 0.0 : v[i];
}

PsiColumn psi_column(HalfInt a, const ZParams& p) {
    if (!admissible(p.z, p.zp)) throw DomainError("psi_column: parameters not admissible");
    const double av = a.value(), s = std::sqrt(p.xi);
    const double lam = av * (1.0 - p.xi);
    // oscillating band x = -a t, t in [(1-s)/(1+s), (1+s)/(1-s)]; outside it the decay is about s per step
    const double t1 = (1.0 - s) / (1.0 + s), t2 = 1.0 / t1;
    const double b1 = std::min({-av * t1, -av * t2, -av}), b2 = std::max({-av * t1, -av * t2, -av});
    const double margin = 2.0 * std::log(1e-40) / std::log(p.xi) + 40.0;
    PsiColumn col;
    col.k0 = static_cast<std::int64_t>(std::floor(b1 - margin));
    const std::int64_t k1 = static_cast<std::int64_t>(std::ceil(b2 + margin));
    const std::size_t n = static_cast<std::size_t>(k1 - col.k0 + 1);
    auto xv = [&](std::size_t i) { return double(col.k0 + std::int64_t(i)) + 0.5; };
    auto diag = [&](double x) { return (x + p.xi * (p.z + p.zp + x)).real(); };
    constexpr double big = 1e250;

    // minimal from the left, run up to the right edge of the band
    std::size_t iR = std::min<std::size_t>(n - 1, static_cast<std::size_t>(std::ceil(b2 - double(col.k0))) + 1);
    std::vector<double> fl(iR + 1, 0.0);
    fl[0] = 1.0;
    for (std::size_t i = 0; i < iR; ++i) {
        const double x = xv(i), prev = i ? fl[i - 1] : 0.0;
        fl[i + 1] = ((lam + diag(x)) * fl[i] - radicand(p, x - 0.5) * prev) / radicand(p, x + 0.5);
        if (std::fabs(fl[i + 1]) > big)
            for (std::size_t j = 0; j <= i + 1; ++j) fl[j] /= big;
    }
    std::size_t m = 0;
    for (std::size_t i = 0; i <= iR; ++i)
        if (std::fabs(fl[i]) > std::fabs(fl[m])) m = i;

    // minimal from the right, down to m
    col.v.assign(n, 0.0);
    col.v[n - 1] = 1.0;
    for (std::size_t i = n - 1; i > m; --i) {
        const double x = xv(i), next = i + 1 < n ? col.v[i + 1] : 0.0;
        col.v[i - 1] = ((lam + diag(x)) * col.v[i] - radicand(p, x + 0.5) * next) / radicand(p, x - 0.5);
        if (std::fabs(col.v[i - 1]) > big)
            for (std::size_t j = i - 1; j < n; ++j) col.v[j] /= big;
    }
    const double sc = fl[m] / col.v[m];
    for (std::size_t i = m; i < n; ++i) col.v[i] *= sc;
    for (std::size_t i = 0; i < m; ++i) col.v[i] = fl[i];

    double top = 0.0;
    for (double v : col.v) top = std::max(top, std::fabs(v));
    double nn = 0.0;
    for (double& v : col.v) {
        v /= top;
        nn += v * v;
    }
    // psi_a(x) > 0 for large x
    const std::size_t probe = n - 1 - static_cast<std::size_t>(margin / 2);
    nn = std::sqrt(nn) * (col.v[probe] < 0.0 ? -1.0 : 1.0);
    for (double& v : col.v) v /= nn;
    return col;
}

cplx psi_series_c(HalfInt a, HalfInt x, const ZParams& p, const NumOpts& o) {
    bool ill = false;
    const cplx v = psi_series_impl(a, x, p, o, ill);
    if (ill && admissible(p.z, p.zp)) return psi_column(a, p).at(x);
    return v;
}

double psi_series(HalfInt a, HalfInt x, const ZParams& p, const NumOpts& o) {
    return real_checked(psi_series_c(a, x, p, o), "psi_series");
}

double psi_contour(HalfInt a, HalfInt x, const ZParams& p, const NumOpts& o, double radius) {
    const double av = a.value(), xv = x.value();
    const cplx za = p.z - av + 0.5, zpa = p.zp - av + 0.5;
    if (is_nonpos_int(za, 0.0) || is_nonpos_int(zpa, 0.0)) return 0.0;
    const double s = std::sqrt(p.xi);
    const cplx pre = std::exp(log_p(xv, p) - log_gamma(xv + p.zp + 0.5) + log_gamma(zpa) -
                              0.5 * (log_gamma(za) + log_gamma(zpa)).real()) *
                     std::pow(1.0 - p.xi, 0.5 * (p.zp - p.z + 1.0));
    const long m = -(x.k + a.k + 1);  // -x - a
    auto g = [&](const Circle& c, std::span<cplx> out) {
        detail::fill_factor(c, s, -p.zp + av - 0.5, p.z - av - 0.5, out);
        for (int j = 0; j < c.n; ++j) out[j] *= c.pow_int(j, m);
    };
    return real_checked(pre * circle_mean(g, radius, o), "psi_contour");
}

cplx PsiCache::operator()(HalfInt a, HalfInt x) {
    const auto key = std::make_pair(a.k, x.k);
    auto it = psi_.find(key);
    if (it != psi_.end()) return it->second;
    bool ill = false;
    cplx v = psi_series_impl(a, x, p_, o_, ill);
    if (ill && admissible(p_.z, p_.zp)) {
        auto ct = cols_.find(a.k);
        if (ct == cols_.end()) ct = cols_.emplace(a.k, psi_column(a, p_)).first;
        v = ct->second.at(x);
    }
    psi_.emplace(key, v);
    return v;
}

cplx PsiCache::k(HalfInt x, HalfInt y) {
    const auto key = std::make_pair(std::min(x.k, y.k), std::max(x.k, y.k));
    auto it = k_.find(key);
    if (it != k_.end()) return it->second;
    cplx s = 0.0;
    const std::int64_t top = std::max({x.k, y.k, -x.k, -y.k});
    int quiet = 0;
    for (int i = 0; i < o_.k_cutoff; ++i) {
        const cplx t = (*this)(HalfInt(i), x) * (*this)(HalfInt(i), y);
        s += t;
        // psi_a(x) ~ xi^{|a+x|/2}: once a is well past both points the tail is tiny
        if (i > top + 20 && std::abs(t) <= 1e-18 * std::max(std::abs(s), 1e-300)) {
            if (++quiet >= 5) break;
        } else {
            quiet = 0;
        }
    }
    k_.emplace(key, s);
    return s;
}

KSeries k_series(HalfInt x, HalfInt y, const ZParams& p, int cutoff, const NumOpts& o) {
    if (cutoff < 1) throw DomainError("k_series: cutoff must be >= 1");
    cplx s = 0.0, last = 0.0;
    for (int i = 0; i < cutoff; ++i) {
        last = psi_series_c(HalfInt(i), x, p, o) * psi_series_c(HalfInt(i), y, p, o);
        s += last;
    }
    return {real_checked(s, "k_series"), std::abs(last)};
}

cplx k_contour_c(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o, std::optional<double> r1,
                 std::optional<double> r2) {
    const double s = std::sqrt(p.xi);
    double ra = r1.value_or(radius_out(p.xi)), rb = r2.value_or(radius_out(p.xi));
    detail::guard_radii_or_keep(ra, rb, p.xi, o);
    const long mx = -x.k, my = -y.k;  // -x + 1/2
    auto fa = [&](const Circle& c, std::span<cplx> out) {
        detail::fill_factor(c, s, -p.zp, p.z, out);
        for (int j = 0; j < c.n; ++j) out[j] *= c.pow_int(j, mx);
    };
    auto fb = [&](const Circle& c, std::span<cplx> out) {
        detail::fill_factor(c, s, -p.z, p.zp, out);
        for (int j = 0; j < c.n; ++j) out[j] *= c.pow_int(j, my);
    };
    return detail::phi(x.value(), y.value(), p) * pole_mean(fa, fb, ra, rb, o);
}

double k_contour(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o) {
    return real_checked(k_contour_c(x, y, p, o), "k_contour");
}

double difference_op_apply(const LatticeFn& f, HalfInt x, const ZParams& p) {
    const double xv = x.value();
    const cplx diag = xv + p.xi * (p.z + p.zp + xv);
    return radicand(p, xv + 0.5) * f(x + 1) + radicand(p, xv - 0.5) * f(x - 1) - diag.real() * f(x);
}

double difference_op_apply(const std::map<HalfInt, double>& f, HalfInt x, const ZParams& p) {
    auto get = [&](HalfInt u) {
        auto it = f.find(u);
        if (it == f.end()) throw DomainError("difference_op_apply: f undefined at " + u.str());
        return it->second;
    };
    return difference_op_apply(LatticeFn(get), x, p);
}

}  // namespace zm
