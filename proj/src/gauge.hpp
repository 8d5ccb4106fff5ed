#pragma once

// shared gamma-ratio helpers, not installed

#include <cmath>

#include "zm/common.hpp"
#include "zm/contour.hpp"
#include "zm/partition.hpp"
#include "zm/special_fn.hpp"

namespace zm::detail {

// log of sqrt|Gamma(x+z+1/2) Gamma(x+z'+1/2)|
inline double log_p(double x, const ZParams& p) {
    return 0.5 * (log_gamma(x + p.z + 0.5) + log_gamma(x + p.zp + 0.5)).real();
}

// P(x)P(y) / (Gamma(x+z'+1/2) Gamma(y+z+1/2))
inline cplx phi(double x, double y, const ZParams& p) {
    return std::exp(log_p(x, p) + log_p(y, p) - log_gamma(x + p.zp + 0.5) - log_gamma(y + p.z + 0.5));
}

// (1 - s w)^a (1 - s/w)^b on the nodes
inline void fill_factor(const Circle& c, double s, cplx a, cplx b, std::span<cplx> out) {
    for (int j = 0; j < c.n; ++j) {
        const cplx w = c.w[j];
        out[j] = std::pow(1.0 - s * w, a) * std::pow(1.0 - s / w, b);
    }
}

inline void guard_radii_or_keep(double& r1, double& r2, double xi, const NumOpts& o) {
    guard_radii(r1, r2, xi, o.pole_guard);
}

inline double rad(HalfInt x, double xi) { return x.even() ? radius_out(xi) : radius_in(xi); }

inline cplx csqrt_pos(cplx v) {
    // principal root, snapping tiny imaginary noise
    if (std::fabs(v.imag()) <= 1e-14 * std::abs(v) && v.real() >= 0.0) return std::sqrt(v.real());
    return std::sqrt(v);
}

}  // namespace zm::detail
