#include "zm/special_fn.hpp"

#include <array>
#include <cmath>
#include <string>

namespace zm {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,        -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,         -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

bool exact_pole(cplx s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

cplx reduce_branch(cplx v) {
    double im = std::remainder(v.imag(), 2.0 * kPi);
    if (im <= -kPi) im += 2.0 * kPi;
    return {v.real(), im};
}

// log sin(pi s), any branch
cplx log_sin_pi(cplx s) {
    const double n = std::round(s.real());
    const cplx u = s - n;
    const cplx t = kPi * u;
    const cplx I(0.0, 1.0);
    cplx v;
    if (t.imag() > 15.0) {
        v = -I * t + std::log((std::exp(2.0 * I * t) - 1.0) / (2.0 * I));
    } else if (t.imag() < -15.0) {
        v = I * t + std::log((1.0 - std::exp(-2.0 * I * t)) / (2.0 * I));
    } else {
        v = std::log(std::sin(t));
    }
    if (std::fmod(std::fabs(n), 2.0) == 1.0) v += I * kPi;
    return v;
}

cplx log_gamma_right(cplx s) {
    // shift into the Stirling region
    cplx shift = 0.0;
    while (s.real() < 15.0) {
        shift += std::log(s);
        s += 1.0;
    }
    const cplx inv = 1.0 / s;
    const cplx inv2 = inv * inv;
    cplx corr = 0.0;
    cplx p = inv;
    for (double c : kStirling) {
        corr += c * p;
        p *= inv2;
    }
    return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * kPi) + corr - shift;
}

}  // namespace

bool is_nonpos_int(cplx s, double eps) {
    if (std::fabs(s.imag()) > eps) return false;
    const double r = std::round(s.real());
    return r <= 0.0 && std::fabs(s.real() - r) <= eps;
}

cplx log_gamma(cplx s) {
    if (exact_pole(s)) throw DomainError("log_gamma: pole at " + std::to_string(s.real()));
    if (s.real() < 0.5) {
        return reduce_branch(std::log(kPi) - log_sin_pi(s) - log_gamma_right(1.0 - s));
    }
    return reduce_branch(log_gamma_right(s));
}

cplx rgamma(cplx s) {
    if (exact_pole(s)) return 0.0;
    return std::exp(-log_gamma(s));
}

cplx pochhammer(cplx a, int n) {
    cplx r = 1.0;
    for (int j = 0; j < n; ++j) r *= a + static_cast<double>(j);
    return r;
}

cplx pochhammer_k(cplx x, int n, int k) {
    cplx r = 1.0;
    for (int j = 0; j < n; ++j) r *= x + static_cast<double>(j) * k;
    return r;
}

namespace {

constexpr long kSeriesCap = 1000000;

bool terminates(cplx a, cplx b) { return is_nonpos_int(a, 0.0) || is_nonpos_int(b, 0.0); }

// sum_{n >= n0} t_n, t_{n+1} = t_n (a+n)(b+n)/((n+1)(c+n)) w
cplx sum_tail(cplx a, cplx b, cplx c, cplx w, cplx t, long n0, double tol) {
    cplx sum = t;
    int small = 0;
    for (long n = n0;; ++n) {
        if (t == 0.0) break;
        const cplx den = static_cast<double>(n + 1) * (c + static_cast<double>(n));
        if (den == 0.0) throw DomainError("gauss_2f1: c is a non-positive integer");
        t *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) / den * w;
        sum += t;
        if (!std::isfinite(std::abs(sum))) throw ConvergenceError("gauss_2f1: overflow in the series");
        if (std::abs(t) <= tol * std::abs(sum)) {
            if (++small >= 3) break;
        } else {
            small = 0;
        }
        if (n - n0 > kSeriesCap) throw ConvergenceError("gauss_2f1: term cap reached");
    }
    return sum;
}

}  // namespace

cplx gauss_2f1(const HypArg& h, double tol) {
    if (std::abs(h.w) >= 1.0 && !terminates(h.a, h.b))
        throw DomainError("gauss_2f1: |w| >= 1 and the series does not terminate");
    return sum_tail(h.a, h.b, h.c, h.w, 1.0, 0, tol);
}

cplx gauss_2f1_pfaff(cplx a, cplx b, cplx c, double xi, double tol) {
    if (!(xi > 0.0 && xi < 1.0)) throw DomainError("gauss_2f1_pfaff: xi outside (0,1)");
    return std::pow(1.0 - xi, a) * gauss_2f1({a, c - b, c, xi}, tol);
}

cplx gauss_2f1_reg(const HypArg& h, double tol) {
    if (!is_nonpos_int(h.c, 0.0)) return gauss_2f1(h, tol) * rgamma(h.c);
    if (std::abs(h.w) >= 1.0 && !terminates(h.a, h.b))
        throw DomainError("gauss_2f1_reg: |w| >= 1 and the series does not terminate");
    const long m = static_cast<long>(-h.c.real());
    const long n0 = m + 1;
    cplx t = 1.0;
    for (long k = 0; k < n0; ++k)
        t *= (h.a + static_cast<double>(k)) * (h.b + static_cast<double>(k)) /
             static_cast<double>(k + 1) * h.w;
    // Gamma(c + n0) = Gamma(1) = 1
    return sum_tail(h.a, h.b, h.c, h.w, t, n0, tol);
}

void gauss_2f1_many(cplx a, cplx b, cplx c, std::span<const cplx> w, std::span<cplx> out,
                    double tol) {
    if (out.size() != w.size()) throw std::invalid_argument("gauss_2f1_many: size mismatch");
    std::vector<cplx> coef{1.0};
    const bool term = terminates(a, b);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const cplx wi = w[i];
        if (std::abs(wi) >= 1.0 && !term)
            throw DomainError("gauss_2f1_many: |w| >= 1 and the series does not terminate");
        cplx sum = 1.0, p = 1.0;
        int small = 0;
        for (std::size_t n = 1;; ++n) {
            if (n >= coef.size()) {
                const double m = static_cast<double>(n - 1);
                const cplx den = (m + 1.0) * (c + m);
                if (den == 0.0) {
                    if (coef.back() == 0.0) {
                        coef.push_back(0.0);
                    } else {
                        throw DomainError("gauss_2f1_many: c is a non-positive integer");
                    }
                } else {
                    coef.push_back(coef.back() * (a + m) * (b + m) / den);
                }
            }
            if (coef[n] == 0.0) break;
            p *= wi;
            const cplx t = coef[n] * p;
            sum += t;
            if (std::abs(t) <= tol * std::abs(sum)) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
            if (n > static_cast<std::size_t>(kSeriesCap))
                throw ConvergenceError("gauss_2f1_many: term cap reached");
        }
        out[i] = sum;
    }
}

}  // namespace zm
