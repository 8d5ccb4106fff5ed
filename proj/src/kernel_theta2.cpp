#include "zm/kernel_theta2.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gauge.hpp"
#include "zm/contour.hpp"
#include "zm/special_fn.hpp"

namespace zm {

using detail::csqrt_pos;
using detail::fill_factor;
using detail::log_p;
using detail::phi;

Repr parse_repr(const std::string& s) {
    if (s == "series") return Repr::Series;
    if (s == "contour") return Repr::Contour;
    if (s == "iab") return Repr::IAB;
    if (s == "antisym" || s == "pq") return Repr::Antisym;
    throw DomainError("unknown representation '" + s + "'");
}

const char* repr_name(Repr r) {
    switch (r) {
        case Repr::Series: return "series";
        case Repr::Contour: return "contour";
        case Repr::IAB: return "iab";
        case Repr::Antisym: return "antisym";
    }
    return "?";
}

namespace {

// F(a,b;c;u) at u = w^{-2} (inv) or w^2 on every node
std::vector<cplx> hyp_on(const Circle& c, cplx a, cplx b, cplx cc, bool inv, double tol) {
    std::vector<cplx> arg(c.n), out(c.n);
    for (int j = 0; j < c.n; ++j) {
        const cplx w2 = c.w[j] * c.w[j];
        arg[j] = inv ? 1.0 / w2 : w2;
    }
    gauss_2f1_many(a, b, cc, arg, out, tol);
    return out;
}

// e(x,w; z,z'), the generating function of the E weights
void e_fun(HalfInt x, cplx zz, cplx zzp, const Circle& c, std::span<cplx> out, double tol) {
    const double xv = x.value();
    const long m = -x.k - 1;
    if (x.even()) {
        auto f = hyp_on(c, 1.0, (xv + zz + 1.5) / 2.0, (xv + zzp + 2.5) / 2.0, true, tol);
        for (int j = 0; j < c.n; ++j) out[j] = -f[j] * c.pow_int(j, m);
    } else {
        auto f = hyp_on(c, 1.0, (-zzp - xv - 0.5) / 2.0, (-zz - xv + 0.5) / 2.0, false, tol);
        for (int j = 0; j < c.n; ++j) out[j] = (f[j] - 1.0) * c.pow_int(j, m);
    }
}

enum Tag : int { kEkHat, kEpsm, kEpsp, kSTilde, kEkS, kEpsiS, kIc, kIs, kAc, kAs, kBc, kBs, kSBase = 100 };

}  // namespace

Theta2::Theta2(const ZParams& p, const NumOpts& o) : p_(p), o_(o), sq_(std::sqrt(p.xi)), psi_(p, o) {
    p_.validate();
}

template <class F>
cplx Theta2::weighted(HalfInt x, double c, int d, bool force_even, F&& f) {
    const double xv = x.value();
    const cplx z = p_.z, zp = p_.zp;
    const bool even = force_even || x.even();
    constexpr int kCap = 4000;
    cplx sum = 0.0, q = 1.0;
    double big = 0.0;
    int quiet = 0;
    for (int l = even ? 0 : 1; l < kCap; ++l) {
        const double j2 = 2.0 * (l - 1);
        cplx num, den;
        if (even) {
            if (l > 0) {
                num = (xv + z + c + j2) * (xv + zp + c + j2);
                den = (xv + z + c + 1.0 + j2) * (xv + zp + c + 1.0 + j2);
            }
        } else {
            num = (-xv - z - c + 1.0 + j2) * (-xv - zp - c + 1.0 + j2);
            den = (-xv - z - c + 2.0 + j2) * (-xv - zp - c + 2.0 + j2);
        }
        if (even ? l > 0 : true) {
            if (den == 0.0) throw DomainError("E-series: zero denominator in weight");
            q *= num / den;
        }
        if (q == 0.0) return even ? -sum : sum;  // weights terminate exactly
        const HalfInt u = even ? x + (2 * l + d) : x + (d - 2 * l);
        const cplx t = csqrt_pos(q) * f(u);
        sum += t;
        big = std::max(big, std::abs(t));
        if (std::abs(t) <= o_.e_tol * big) {
            if (++quiet >= 3) return even ? -sum : sum;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("E-series did not settle within " + std::to_string(kCap) + " terms");
}

cplx Theta2::ek_hat(HalfInt x, HalfInt y) {
    const auto key = std::make_tuple(int(kEkHat), x.k, y.k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    double r1 = detail::rad(x, p_.xi), r2 = radius_out(p_.xi);
    detail::guard_radii_or_keep(r1, r2, p_.xi, o_);
    const cplx z = p_.z, zp = p_.zp;
    const double s = sq_, tol = o_.series_tol;
    auto fa = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> e(c.n);
        e_fun(x, z, zp, c, e, tol);
        fill_factor(c, s, -zp, z, out);
        for (int j = 0; j < c.n; ++j) out[j] *= e[j];
    };
    const long my = -y.k;
    auto fb = [&](const Circle& c, std::span<cplx> out) {
        fill_factor(c, s, -z, zp, out);
        for (int j = 0; j < c.n; ++j) out[j] *= c.pow_int(j, my);
    };
    const cplx v = pole_mean(fa, fb, r1, r2, o_);
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::epsm_hat(HalfInt x) {
    const auto key = std::make_tuple(int(kEpsm), x.k, std::int64_t(0));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto g = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> e(c.n);
        e_fun(x, p_.z, p_.zp, c, e, o_.series_tol);
        fill_factor(c, sq_, -p_.zp - 1.0, p_.z, out);
        for (int j = 0; j < c.n; ++j) out[j] *= e[j];
    };
    const cplx v = circle_mean(g, detail::rad(x, p_.xi), o_);
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::epsp_hat(HalfInt y) {
    const auto key = std::make_tuple(int(kEpsp), y.k, std::int64_t(0));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto g = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> e(c.n);
        e_fun(y, p_.zp, p_.z, c, e, o_.series_tol);
        fill_factor(c, sq_, -p_.z, p_.zp - 1.0, out);
        for (int j = 0; j < c.n; ++j) out[j] *= e[j] / c.w[j];
    };
    const cplx v = circle_mean(g, detail::rad(y, p_.xi), o_);
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::ek(HalfInt x, HalfInt y, Form f) {
    if (f == Form::Contour) return phi(x.value() + 1.0, y.value(), p_) * ek_hat(x, y);
    const auto key = std::make_tuple(int(kEkS), x.k, y.k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const cplx v = weighted(x, 1.5, 1, false, [&](HalfInt u) { return psi_.k(u, y); });
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::epsi(int sign, HalfInt x, Form f) {
    const cplx z = p_.z, zp = p_.zp;
    if (f == Form::Contour) {
        const double u = x.value() + 1.0;
        if (sign < 0) {
            const cplx fm = std::exp(log_gamma(zp + 1.0) -
                                     0.5 * (log_gamma(z + 1.0) + log_gamma(zp + 1.0)).real() + log_p(u, p_) -
                                     log_gamma(u + zp + 0.5));
            return fm * std::pow(1.0 - p_.xi, 0.5 * (zp - z + 1.0)) * epsm_hat(x);
        }
        const cplx fp = std::exp(log_gamma(z) - 0.5 * (log_gamma(z) + log_gamma(zp)).real() + log_p(u, p_) -
                                 log_gamma(u + z + 0.5));
        return fp * std::pow(1.0 - p_.xi, 0.5 * (z - zp + 1.0)) * epsp_hat(x);
    }
    const auto key = std::make_tuple(int(kEpsiS) + (sign < 0 ? 0 : 1000), x.k, std::int64_t(0));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const HalfInt a(sign < 0 ? -1 : 0);
    const cplx v = weighted(x, 1.5, 1, false, [&](HalfInt u) { return psi_(a, u); });
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::s_series(HalfInt x, HalfInt y) {
    const double yv = y.value();
    const cplx z = p_.z, zp = p_.zp;
    return csqrt_pos((z + yv + 0.5) * (zp + yv + 0.5)) * ek(x, y, Form::Series) +
           csqrt_pos(z * zp) * epsi(-1, x, Form::Series) * epsi(+1, y, Form::Series);
}

cplx Theta2::s_contour(HalfInt x, HalfInt y) {
    return phi(x.value() + 1.0, y.value() + 1.0, p_) * s_hat(x, y, Repr::Contour);
}

cplx Theta2::s_tilde(HalfInt x, HalfInt y) {
    const auto key = std::make_tuple(int(kSTilde), x.k, y.k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const cplx z = p_.z, zp = p_.zp;
    const double xv = x.value(), yv = y.value(), s = sq_, tol = o_.series_tol;
    double r1 = detail::rad(x, p_.xi), r2 = detail::rad(y, p_.xi);
    detail::guard_radii_or_keep(r1, r2, p_.xi, o_);
    const cplx pre_p = std::exp(log_gamma(xv + z + 1.5) - log_p(xv + 1.0, p_));
    const cplx pre_q = std::exp(log_p(yv + 1.0, p_) - log_gamma(yv + z + 0.5));
    auto fa = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> f;
        if (x.even())
            f = hyp_on(c, (xv + z + 1.5) / 2.0, 1.0, (xv + zp + 2.5) / 2.0, true, tol);
        else
            f = hyp_on(c, -(xv + zp + 0.5) / 2.0, 1.0, -(xv + z - 0.5) / 2.0, false, tol);
        fill_factor(c, s, -zp - 1.0, z, out);
        const long m = -x.k - 1;
        for (int j = 0; j < c.n; ++j) {
            const cplx pv = x.even() ? f[j] : -(f[j] - 1.0);
            out[j] *= pre_p * pv * c.pow_int(j, m);
        }
    };
    auto fb = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> f;
        if (y.even())
            f = hyp_on(c, (yv + zp + 1.5) / 2.0, 1.0, (yv + z + 0.5) / 2.0, true, tol);
        else
            f = hyp_on(c, -(yv + z - 1.5) / 2.0, 1.0, -(yv + zp - 0.5) / 2.0, false, tol);
        fill_factor(c, s, -z, zp + 1.0, out);
        const long m = -y.k;
        for (int j = 0; j < c.n; ++j) {
            const cplx qv = y.even() ? f[j] : -(f[j] - 1.0);
            out[j] *= pre_q * qv * c.pow_int(j, m);
        }
    };
    const cplx v = -pole_mean(fa, fb, r1, r2, o_);
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::s_antisym(HalfInt x, HalfInt y) { return s_tilde(x, y) - s_tilde(y, x); }

cplx Theta2::iab_i(HalfInt x, HalfInt y, Form form) {
    const auto key = std::make_tuple(int(form == Form::Contour ? kIc : kIs), x.k, y.k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const cplx z = p_.z, zp = p_.zp;
    const double xv = x.value(), yv = y.value();
    cplx v;
    if (form == Form::Series) {
        const cplx pre = std::exp(log_p(xv - 1.0, p_) + log_p(yv - 1.0, p_) - log_gamma(xv + z - 0.5) -
                                  log_gamma(yv + zp - 0.5));
        v = pre * weighted(x, -0.5, -1, false, [&](HalfInt u) { return psi_.k(u, y - 1); });
    } else {
        const double s = sq_, tol = o_.series_tol;
        double r1 = detail::rad(x, p_.xi), r2 = radius_out(p_.xi);
        detail::guard_radii_or_keep(r1, r2, p_.xi, o_);
        auto fa = [&](const Circle& c, std::span<cplx> out) {
            std::vector<cplx> f;
            if (x.even())
                f = hyp_on(c, (xv + z - 0.5) / 2.0, 1.0, (xv + zp + 0.5) / 2.0, true, tol);
            else
                f = hyp_on(c, -(xv + zp - 1.5) / 2.0, 1.0, -(xv + z - 2.5) / 2.0, false, tol);
            fill_factor(c, s, -zp, z, out);
            const long m = -x.k + 1;
            for (int j = 0; j < c.n; ++j) out[j] *= (x.even() ? -f[j] : f[j] - 1.0) * c.pow_int(j, m);
        };
        auto fb = [&](const Circle& c, std::span<cplx> out) {
            fill_factor(c, s, -z, zp, out);
            const long m = -y.k + 1;
            for (int j = 0; j < c.n; ++j) out[j] *= c.pow_int(j, m);
        };
        v = pole_mean(fa, fb, r1, r2, o_);
    }
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::iab_a(HalfInt x, Form form) {
    const auto key = std::make_tuple(int(form == Form::Contour ? kAc : kAs), x.k, std::int64_t(0));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const cplx z = p_.z, zp = p_.zp;
    const double xv = x.value();
    cplx v;
    if (form == Form::Series) {
        const cplx pre = std::pow(1.0 - p_.xi, 0.5 * (z - zp - 1.0)) *
                         std::exp(0.5 * (log_gamma(z + 1.0) + log_gamma(zp + 1.0)).real() - log_gamma(zp + 1.0) +
                                  log_p(xv - 1.0, p_) - log_gamma(xv + z - 0.5));
        v = pre * weighted(x, -0.5, -1, false, [&](HalfInt u) { return psi_(HalfInt(-1), u); });
    } else {
        auto g = [&](const Circle& c, std::span<cplx> out) {
            std::vector<cplx> f;
            if (x.even())
                f = hyp_on(c, (xv + z - 0.5) / 2.0, 1.0, (xv + zp + 0.5) / 2.0, true, o_.series_tol);
            else
                f = hyp_on(c, -(xv + zp - 1.5) / 2.0, 1.0, -(xv + z - 2.5) / 2.0, false, o_.series_tol);
            fill_factor(c, sq_, -zp - 1.0, z, out);
            const long m = -x.k + 1;
            for (int j = 0; j < c.n; ++j) out[j] *= (x.even() ? -f[j] : f[j] - 1.0) * c.pow_int(j, m);
        };
        v = circle_mean(g, detail::rad(x, p_.xi), o_);
    }
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::iab_b(HalfInt y, Form form) {
    const auto key = std::make_tuple(int(form == Form::Contour ? kBc : kBs), y.k, std::int64_t(0));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const cplx z = p_.z, zp = p_.zp;
    const double yv = y.value();
    cplx v;
    if (form == Form::Series) {
        const cplx pre = std::pow(1.0 - p_.xi, 0.5 * (zp - z + 1.0)) * csqrt_pos(z * zp) /
                         csqrt_pos((yv + z - 0.5) * (yv + zp - 0.5)) *
                         std::exp(0.5 * (log_gamma(z + 1.0) + log_gamma(zp + 1.0)).real() - log_gamma(z + 1.0) +
                                  log_p(yv - 1.0, p_) - log_gamma(yv + zp - 0.5));
        v = pre * weighted(y, 0.5, 0, true, [&](HalfInt u) { return psi_(HalfInt(0), u); });
    } else {
        // one formula for both parities, contour outside the unit circle
        auto g = [&](const Circle& c, std::span<cplx> out) {
            auto f = hyp_on(c, (yv + zp + 0.5) / 2.0, 1.0, (yv + z - 0.5) / 2.0, true, o_.series_tol);
            fill_factor(c, sq_, -z, zp, out);
            const long m = -y.k + 1;
            for (int j = 0; j < c.n; ++j)
                out[j] *= (1.0 - (1.0 - sq_ / c.w[j]) * f[j]) * c.pow_int(j, m);
        };
        v = circle_mean(g, radius_out(p_.xi), o_);
    }
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::s_iab(HalfInt x, HalfInt y, Form f) {
    const cplx z = p_.z;
    const double xv = x.value(), yv = y.value();
    const cplx pre = std::exp(log_gamma(xv + z + 1.5) + log_p(yv + 1.0, p_) - log_p(xv + 1.0, p_) -
                              log_gamma(yv + z + 0.5));
    return pre * (iab_i(x + 2, y + 1, f) + iab_a(x + 2, f) * iab_b(y + 1, f));
}

cplx Theta2::s(HalfInt x, HalfInt y, Repr r) {
    const auto key = std::make_tuple(int(kSBase) + int(r), x.k, y.k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    cplx v;
    switch (r) {
        case Repr::Series: v = s_series(x, y); break;
        case Repr::Contour: v = s_contour(x, y); break;
        case Repr::IAB: v = s_iab(x, y); break;
        case Repr::Antisym: v = s_antisym(x, y); break;
    }
    memo_.emplace(key, v);
    return v;
}

cplx Theta2::s_hat(HalfInt x, HalfInt y, Repr r) {
    if (r != Repr::Contour) return s(x, y, r) / phi(x.value() + 1.0, y.value() + 1.0, p_);
    const double yv = y.value();
    return (p_.z + yv + 0.5) * ek_hat(x, y) + (1.0 - p_.xi) * p_.zp * epsm_hat(x) * epsp_hat(y);
}

namespace {

double as_real(cplx v, const char* what) {
    if (std::fabs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v)))
        throw DomainError(std::string(what) + ": complex value, imaginary part " + std::to_string(v.imag()));
    return v.real();
}

}  // namespace

double e_transform_k(HalfInt x, HalfInt y, const ZParams& p, Form f, const NumOpts& o) {
    Theta2 eng(p, o);
    return as_real(eng.ek(x, y, f), "e_transform_k");
}

double e_transform_psi(int sign, HalfInt x, const ZParams& p, Form f, const NumOpts& o) {
    Theta2 eng(p, o);
    return as_real(eng.epsi(sign, x, f), "e_transform_psi");
}

double s_entry(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o) {
    Theta2 eng(p, o);
    return as_real(eng.s_series(x, y), "s_entry");
}

double s_antisym_contour(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o) {
    Theta2 eng(p, o);
    return as_real(eng.s_antisym(x, y), "s_antisym_contour");
}

double s_via_iab(HalfInt x, HalfInt y, const ZParams& p, Form f, const NumOpts& o) {
    Theta2 eng(p, o);
    return as_real(eng.s_iab(x, y, f), "s_via_iab");
}

KernelBlock kernel_block(Theta2& eng, HalfInt x, HalfInt y, Repr r) {
    const ZParams& p = eng.params();
    const double xv = x.value(), yv = y.value();
    const cplx dx = csqrt_pos((p.z + xv + 1.5) * (p.zp + xv + 1.5));
    const cplx dy = csqrt_pos((p.z + yv + 1.5) * (p.zp + yv + 1.5));
    KernelBlock b;
    b.s = as_real(eng.s(x, y, r), "kernel_block");
    b.sd_minus = as_real(eng.s(x, y + 1, r) / dy, "kernel_block");
    b.d_plus_s = as_real(eng.s(x + 1, y, r) / dx, "kernel_block");
    b.d_plus_s_d_minus = as_real(eng.s(x + 1, y + 1, r) / (dx * dy), "kernel_block");
    return b;
}

KernelBlock kernel_block(HalfInt x, HalfInt y, const ZParams& p, Repr r, const NumOpts& o) {
    Theta2 eng(p, o);
    return kernel_block(eng, x, y, r);
}

double degenerate_entry(HalfInt x, HalfInt y, cplx z, double xi, const NumOpts& o) {
    if (!(xi > 0.0 && xi < 1.0)) throw DomainError("xi must lie in (0,1)");
    const double s = std::sqrt(xi);
    const double r = radius_out(xi);
    // (w2 - w1) split into two separable pieces
    auto base = [&](const Circle& c, std::span<cplx> out, long m, int extra) {
        fill_factor(c, s, -z, z, out);
        for (int j = 0; j < c.n; ++j) {
            const cplx w = c.w[j];
            out[j] *= c.pow_int(j, m + extra) / (w * w - 1.0);
        }
    };
    const long mx = -x.k + 1, my = -y.k + 1;
    auto a1 = [&](const Circle& c, std::span<cplx> o2) { base(c, o2, mx, 0); };
    auto b1 = [&](const Circle& c, std::span<cplx> o2) { base(c, o2, my, 1); };
    auto a2 = [&](const Circle& c, std::span<cplx> o2) { base(c, o2, mx, 1); };
    auto b2 = [&](const Circle& c, std::span<cplx> o2) { base(c, o2, my, 0); };
    const cplx v = -(pole_mean(a1, b1, r, r, o) - pole_mean(a2, b2, r, r, o));
    return as_real(v, "degenerate_entry");
}

KernelBlock degenerate_kernel(HalfInt x, HalfInt y, cplx z, double xi, const NumOpts& o) {
    KernelBlock b;
    b.s = degenerate_entry(x, y, z, xi, o);
    b.sd_minus = degenerate_entry(x, y + 1, z, xi, o);
    b.d_plus_s = degenerate_entry(x + 1, y, z, xi, o);
    b.d_plus_s_d_minus = degenerate_entry(x + 1, y + 1, z, xi, o);
    return b;
}

void check_distinct(const std::vector<HalfInt>& pts) {
    if (pts.empty()) throw DomainError("need at least one point");
    std::set<std::int64_t> seen;
    for (const HalfInt& x : pts)
        if (!seen.insert(x.k).second) throw DomainError("points must be distinct, repeated " + x.str());
}

CorrResult correlation(Theta2& eng, const std::vector<HalfInt>& pts, Repr r) {
    check_distinct(pts);
    const ZParams& p = eng.params();
    const int n = static_cast<int>(pts.size());
    const double tol = eng.opts().skew_tol;
    CorrResult res;
    if (admissible(p.z, p.zp)) {
        std::map<std::pair<int, int>, KernelBlock> blocks;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) blocks[{i, j}] = kernel_block(eng, pts[i], pts[j], r);
        RealMat m = assemble(blocks, n, tol, &res.skew_residual);
        res.value = pfaffian(m);
        res.method = std::string("pfaffian/") + repr_name(r);
        return res;
    }
    // gauge-free route: no square roots of gamma products
    auto lu = [&](double s) { return -log_gamma(s + p.zp + 1.5); };
    auto lv = [&](double s) { return -log_gamma(s + p.z + 1.5); };
    CplxMat m(2 * n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < 2; ++a)
            for (int j = 0; j < n; ++j)
                for (int b = 0; b < 2; ++b) {
                    const HalfInt s = pts[i] + a, t = pts[j] + b;
                    const double sv = s.value(), tv = t.value();
                    const cplx g = std::exp(0.5 * (lu(sv) - lv(sv)) - 0.5 * (lu(tv) - lv(tv)));
                    const double sign = ((a + b) & 1) ? -1.0 : 1.0;
                    m(2 * i + a, 2 * j + b) = sign * eng.s_hat(s, t, r) * g;
                }
    res.skew_residual = skew_residual(m);
    enforce_skew(m, tol);
    cplx lpre = 0.0;
    for (const HalfInt& x : pts) {
        const double v = x.value();
        lpre += -lu(v) - lv(v) + 0.5 * (lu(v) + lv(v)) + 0.5 * (lu(v + 1.0) + lv(v + 1.0));
    }
    const cplx val = std::exp(lpre) * pfaffian(m);
    res.value = val.real();
    res.imag = val.imag();
    res.method = std::string("pfaffian-gauge-free/") + repr_name(r);
    return res;
}

CorrResult correlation(const std::vector<HalfInt>& pts, const ZParams& p, Repr r, const NumOpts& o) {
    Theta2 eng(p, o);
    return correlation(eng, pts, r);
}

CorrResult correlation_degenerate(const std::vector<HalfInt>& pts, cplx z, double xi, const NumOpts& o) {
    check_distinct(pts);
    const int n = static_cast<int>(pts.size());
    std::map<std::pair<int, int>, KernelBlock> blocks;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) blocks[{i, j}] = degenerate_kernel(pts[i], pts[j], z, xi, o);
    CorrResult res;
    RealMat m = assemble(blocks, n, o.skew_tol, &res.skew_residual);
    res.value = pfaffian(m);
    res.method = "pfaffian/degenerate";
    return res;
}

}  // namespace zm
