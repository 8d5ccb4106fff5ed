#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "zm/common.hpp"
#include "zm/partition.hpp"

namespace zm {

// psi_a(x) as complex; real for admissible parameters, kept complex so the
// Meixner-integer points (not admissible) can flow through the same code
cplx psi_series_c(HalfInt a, HalfInt x, const ZParams& p, const NumOpts& o = default_opts());
double psi_series(HalfInt a, HalfInt x, const ZParams& p, const NumOpts& o = default_opts());
double psi_contour(HalfInt a, HalfInt x, const ZParams& p, const NumOpts& o = default_opts(),
                   double radius = 1.0);

// psi_a on the lattice as an eigenvector of the difference operator, built by
// recurrence from both tails; admissible parameters only. zero outside [k0, k0 + size)
struct PsiColumn {
    std::int64_t k0 = 0;
    std::vector<double> v;
    double at(HalfInt x) const;
};
PsiColumn psi_column(HalfInt a, const ZParams& p);

struct KSeries {
    double value;
    double last_term;
};
KSeries k_series(HalfInt x, HalfInt y, const ZParams& p, int cutoff = 200,
                 const NumOpts& o = default_opts());
cplx k_contour_c(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o = default_opts(),
                 std::optional<double> r1 = {}, std::optional<double> r2 = {});
double k_contour(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o = default_opts());

using LatticeFn = std::function<double(HalfInt)>;
double difference_op_apply(const LatticeFn& f, HalfInt x, const ZParams& p);
double difference_op_apply(const std::map<HalfInt, double>& f, HalfInt x, const ZParams& p);

// memo of psi values, shared by the E-series code
class PsiCache {
public:
    PsiCache(const ZParams& p, const NumOpts& o) : p_(p), o_(o) {}
    cplx operator()(HalfInt a, HalfInt x);
    // K(x,y) as a psi sum with early exit once terms are negligible
    cplx k(HalfInt x, HalfInt y);

private:
    ZParams p_;
    NumOpts o_;
    std::map<std::pair<std::int64_t, std::int64_t>, cplx> psi_;
    std::map<std::pair<std::int64_t, std::int64_t>, cplx> k_;
    std::map<std::int64_t, PsiColumn> cols_;
};

}  // namespace zm
