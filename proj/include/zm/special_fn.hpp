#pragma once

#include <span>
#include <vector>

#include "zm/common.hpp"

namespace zm {

// log Gamma(s), imaginary part reduced to (-pi, pi]. Throws DomainError at poles.
cplx log_gamma(cplx s);
inline cplx gamma_fn(cplx s) { return std::exp(log_gamma(s)); }
// 1/Gamma(s); exactly zero at the poles.
cplx rgamma(cplx s);

bool is_nonpos_int(cplx s, double eps = 1e-13);

cplx pochhammer(cplx a, int n);
cplx pochhammer_k(cplx x, int n, int k);

struct HypArg {
    cplx a, b, c, w;
};

// Gauss 2F1 by direct series. Requires |w| < 1 unless the series terminates.
cplx gauss_2f1(const HypArg& arg, double tol = 1e-16);
// F(a,b;c;xi/(xi-1)) through the Pfaff transformation, 0 < xi < 1.
cplx gauss_2f1_pfaff(cplx a, cplx b, cplx c, double xi, double tol = 1e-16);
// F(a,b;c;w)/Gamma(c), finite also when c is a non-positive integer.
cplx gauss_2f1_reg(const HypArg& arg, double tol = 1e-16);

// Same a,b,c at many arguments (quadrature nodes).
void gauss_2f1_many(cplx a, cplx b, cplx c, std::span<const cplx> w, std::span<cplx> out,
                    double tol = 1e-16);

}  // namespace zm
