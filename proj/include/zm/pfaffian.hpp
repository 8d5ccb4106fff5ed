#pragma once

#include <map>
#include <utility>
#include <vector>

#include "zm/common.hpp"

namespace zm {

template <class T>
struct DenseMat {
    int n = 0;
    std::vector<T> d;

    DenseMat() = default;
    explicit DenseMat(int n_) : n(n_), d(static_cast<std::size_t>(n_) * n_, T(0)) {}
    T& operator()(int i, int j) { return d[static_cast<std::size_t>(i) * n + j]; }
    const T& operator()(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
};

using RealMat = DenseMat<double>;
using CplxMat = DenseMat<cplx>;

// max |A + A^T|
template <class T>
double skew_residual(const DenseMat<T>& a);
// A <- (A - A^T)/2 when the residual is below tol, DomainError otherwise
template <class T>
void enforce_skew(DenseMat<T>& a, double tol);

double pfaffian(const RealMat& a);
cplx pfaffian(const CplxMat& a);
// cofactor expansion along the first row, exponential cost; test oracle
double pfaffian_expansion(const RealMat& a);

// entries S, SD-, D+S, D+SD- at a lattice pair
struct KernelBlock {
    double s = 0.0;
    double sd_minus = 0.0;
    double d_plus_s = 0.0;
    double d_plus_s_d_minus = 0.0;
};

// 2n x 2n matrix, block (i,j) = [S, -SD-; -D+S, D+SD-]; (j,i) from the negated transpose
// unless supplied, in which case it is checked
RealMat assemble(const std::map<std::pair<int, int>, KernelBlock>& blocks, int n,
                 double skew_tol = 1e-9, double* residual = nullptr);

}  // namespace zm
