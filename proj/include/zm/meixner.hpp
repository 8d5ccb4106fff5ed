#pragma once

#include <functional>
#include <vector>

#include "zm/common.hpp"
#include "zm/partition.hpp"

namespace zm {

struct MeixnerParams {
    int N = 1;
    double beta = 1.5;
    double xi = 0.25;

    void validate() const;
    // z = 2N, z' = 2N + beta - 2: the measure correspondence
    ZParams measure_params() const;
    // z = 2N, z' = 2N + beta - 1: the K_2N shift identity
    ZParams shift_params() const;
};

double meixner_weight(long x, double beta, double xi);
double meixner_fn(int n, long x, double beta, double xi);
double k2n(long x, long y, const MeixnerParams& mp);
double d_plus_kernel(long x, long y, const MeixnerParams& mp);
double d_minus_kernel(long x, long y, const MeixnerParams& mp);

using IntFn = std::function<double(long)>;
double e_apply(const IntFn& f, long x, const MeixnerParams& mp, const NumOpts& o = default_opts());

// Operator algebra on the truncated lattice {0..X-1}, K_2N kept in factored form
class MeixnerOps {
public:
    MeixnerOps(const MeixnerParams& mp, int lattice = default_opts().lattice_max);

    int size() const { return X_; }
    double m(int n, long x) const { return static_cast<double>(ml(n, x)); }
    double k(long x, long y) const;
    double s(long x, long y) const;  // S_2N = EK + KE - EKDKE
    double e_entry(long x, long t) const;
    // E acting on a function via the stored rows (same truncation as s)
    double e_row_apply(long x, const IntFn& f) const;

private:
    void check(long x) const;

    MeixnerParams mp_;
    int X_;
    int R_;                                       // 2N
    // extended precision: S is a difference of nearly equal low-rank terms far out on the lattice
    long double ml(int n, long x) const { return M_[static_cast<std::size_t>(n) * X_ + x]; }
    std::vector<long double> M_;                       // R x X
    std::vector<std::vector<std::pair<int, long double>>> E_;  // sparse rows
    std::vector<long double> A_, B_, C_;               // X x R, R x X, R x R
};

double s2n_operator(long x, long y, const MeixnerParams& mp, const NumOpts& o = default_opts());
double s2n_contour(long x, long y, const MeixnerParams& mp, const NumOpts& o = default_opts());
// antisymmetrised single double integral form
double s2n_tilde(long x, long y, const MeixnerParams& mp, const NumOpts& o = default_opts());
double s2n_antisym(long x, long y, const MeixnerParams& mp, const NumOpts& o = default_opts());

struct LatticeConfig {
    std::vector<long> points;  // strictly increasing
};

class MeixnerEnsemble {
public:
    MeixnerEnsemble(const MeixnerParams& mp, int x_max);
    double prob(const LatticeConfig& c) const;
    // rho_n by summing configurations that contain the points
    double correlation(const std::vector<long>& pts) const;
    double tail() const { return tail_; }
    double log_z() const { return log_z_; }

private:
    double log_weight(const std::vector<long>& pts) const;  // -inf when zero
    MeixnerParams mp_;
    int x_max_;
    double log_z_ = 0.0;
    double tail_ = 0.0;
    std::vector<std::vector<long>> configs_;
    std::vector<double> probs_;
};

double ensemble_prob(const LatticeConfig& c, const MeixnerParams& mp, int x_max, double* tail = nullptr);

double meixner_correlation(const MeixnerOps& ops, const std::vector<long>& pts, const MeixnerParams& mp);
double meixner_correlation(const std::vector<long>& pts, const MeixnerParams& mp,
                           const NumOpts& o = default_opts());

LatticeConfig zmeasure_bijection(const YoungDiagram& l, const MeixnerParams& mp);

}  // namespace zm
