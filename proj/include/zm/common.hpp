#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Bad input: parameters outside a domain, poles, malformed lattice points.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Series or quadrature that failed to reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of Z' = Z + 1/2, stored exactly as k (value k + 1/2).
struct HalfInt {
    std::int64_t k = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(std::int64_t k_) : k(k_) {}

    static HalfInt from_double(double v);
    // "p/2" with odd p, or "k+1/2"
    static HalfInt parse(const std::string& s);

    constexpr double value() const { return static_cast<double>(k) + 0.5; }
    // parity of x - 1/2
    constexpr bool even() const { return (k & 1) == 0; }
    constexpr HalfInt operator+(std::int64_t d) const { return HalfInt(k + d); }
    constexpr HalfInt operator-(std::int64_t d) const { return HalfInt(k - d); }
    constexpr bool operator==(const HalfInt&) const = default;
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const;  // as p/2
};

// Tunables shared by quadrature and series code. Defaults are what the CLI prints
// under --show-config.
struct NumOpts {
    double quad_tol = 1e-13;      // absolute, max-norm between successive doublings
    int nodes_min = 64;
    int nodes_cap_single = 1 << 18;
    int nodes_cap_double = 1 << 11;  // per axis
    double series_tol = 1e-16;    // 2F1 term cutoff, relative
    double e_tol = 1e-12;         // E-transform truncation, relative to max term
    int k_cutoff = 200;           // terms in the psi expansion of K
    int lattice_max = 400;        // Meixner lattice truncation
    double pole_guard = 0.05;     // min |r1 r2 - 1|
    double skew_tol = 1e-9;
};

const NumOpts& default_opts();

}  // namespace zm
