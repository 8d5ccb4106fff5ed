#include "zm/pfaffian.hpp"

#include <cmath>
#include <string>

namespace zm {

template <class T>
double skew_residual(const DenseMat<T>& a) {
    double r = 0.0;
    for (int i = 0; i < a.n; ++i)
        for (int j = i; j < a.n; ++j) r = std::max(r, std::abs(a(i, j) + a(j, i)));
    return r;
}

template <class T>
void enforce_skew(DenseMat<T>& a, double tol) {
    const double r = skew_residual(a);
    if (r > tol) throw DomainError("matrix not skew-symmetric, residual " + std::to_string(r));
    for (int i = 0; i < a.n; ++i) {
        a(i, i) = T(0);
        for (int j = i + 1; j < a.n; ++j) {
            const T v = 0.5 * (a(i, j) - a(j, i));
            a(i, j) = v;
            a(j, i) = -v;
        }
    }
}

template double skew_residual(const DenseMat<double>&);
template double skew_residual(const DenseMat<cplx>&);
template void enforce_skew(DenseMat<double>&, double);
template void enforce_skew(DenseMat<cplx>&, double);

namespace {

template <class T>
void check_input(const DenseMat<T>& a) {
    if (a.n % 2 != 0) throw DomainError("pfaffian: odd dimension");
    const double scale = [&] {
        double m = 0.0;
        for (const T& v : a.d) m = std::max(m, std::abs(v));
        return m;
    }();
    if (skew_residual(a) > 1e-12 * std::max(scale, 1.0))
        throw DomainError("pfaffian: input not skew-symmetric");
}

// Parlett-Reid: Gauss transformations with pivoting, A -> L T L^T
template <class T>
T pf_ltl(DenseMat<T> a) {
    check_input(a);
    const int n = a.n;
    T pf(1);
    std::vector<T> tau(n);
    for (int k = 0; k + 1 < n; k += 2) {
        int kp = k + 1;
        double best = std::abs(a(k + 1, k));
        for (int i = k + 2; i < n; ++i)
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                kp = i;
            }
        if (kp != k + 1) {
            for (int j = 0; j < n; ++j) std::swap(a(k + 1, j), a(kp, j));
            for (int i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, kp));
            pf = -pf;
        }
        if (best < 1e-300) return T(0);
        const T piv = a(k, k + 1);
        pf *= piv;
        for (int j = k + 2; j < n; ++j) tau[j] = a(k, j) / piv;
        for (int i = k + 2; i < n; ++i) {
            const T ci = a(i, k + 1);
            for (int j = k + 2; j < n; ++j) a(i, j) += tau[i] * a(j, k + 1) - ci * tau[j];
        }
    }
    return pf;
}

double expand(const RealMat& a, std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int i0 = idx[0];
    double s = 0.0, sign = 1.0;
    for (std::size_t t = 1; t < idx.size(); ++t) {
        const int j = idx[t];
        if (a(i0, j) != 0.0) {
            std::vector<int> rest;
            rest.reserve(idx.size() - 2);
            for (std::size_t u = 1; u < idx.size(); ++u)
                if (u != t) rest.push_back(idx[u]);
            s += sign * a(i0, j) * expand(a, rest);
        }
        sign = -sign;
    }
    return s;
}

}  // namespace

double pfaffian(const RealMat& a) { return pf_ltl(a); }
cplx pfaffian(const CplxMat& a) { return pf_ltl(a); }

double pfaffian_expansion(const RealMat& a) {
    check_input(a);
    std::vector<int> idx(a.n);
    for (int i = 0; i < a.n; ++i) idx[i] = i;
    return expand(a, idx);
}

RealMat assemble(const std::map<std::pair<int, int>, KernelBlock>& blocks, int n, double skew_tol,
                 double* residual) {
    if (n < 1) throw DomainError("assemble: n must be positive");
    RealMat m(2 * n);
    auto put = [&](int i, int j, const KernelBlock& b) {
        m(2 * i, 2 * j) = b.s;
        m(2 * i, 2 * j + 1) = -b.sd_minus;
        m(2 * i + 1, 2 * j) = -b.d_plus_s;
        m(2 * i + 1, 2 * j + 1) = b.d_plus_s_d_minus;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            auto it = blocks.find({i, j});
            if (it == blocks.end()) throw DomainError("assemble: missing block");
            put(i, j, it->second);
            if (j == i) continue;
            auto jt = blocks.find({j, i});
            if (jt != blocks.end()) {
                put(j, i, jt->second);
            } else {
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) m(2 * j + b, 2 * i + a) = -m(2 * i + a, 2 * j + b);
            }
        }
    const double r = skew_residual(m);
    if (residual) *residual = r;
    enforce_skew(m, skew_tol);
    return m;
}

}  // namespace zm
