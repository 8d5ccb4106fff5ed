#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "zm/common.hpp"
#include "zm/kernel_theta1.hpp"
#include "zm/partition.hpp"
#include "zm/pfaffian.hpp"

namespace zm {

enum class Repr { Series, Contour, IAB, Antisym };
Repr parse_repr(const std::string& s);
const char* repr_name(Repr r);

enum class Form { Series, Contour };

// Evaluates the theta = 2 kernel pieces with memoisation. One instance per
// parameter set; not thread safe, make one per worker.
class Theta2 {
public:
    Theta2(const ZParams& p, const NumOpts& o = default_opts());

    const ZParams& params() const { return p_; }
    const NumOpts& opts() const { return o_; }

    // (E K)(x,y) and (E psi_{+-1/2})(x)
    cplx ek(HalfInt x, HalfInt y, Form f);
    cplx epsi(int sign, HalfInt x, Form f);

    // S(x,y) in the requested representation
    cplx s(HalfInt x, HalfInt y, Repr r);
    // S(x,y) / phi(x+1, y+1): no square roots of gamma products, fine off the admissible set
    cplx s_hat(HalfInt x, HalfInt y, Repr r);

    cplx iab_i(HalfInt x, HalfInt y, Form f);
    cplx iab_a(HalfInt x, Form f);
    cplx iab_b(HalfInt y, Form f);

    cplx s_series(HalfInt x, HalfInt y);
    cplx s_contour(HalfInt x, HalfInt y);
    cplx s_antisym(HalfInt x, HalfInt y);
    cplx s_iab(HalfInt x, HalfInt y, Form f = Form::Contour);

    cplx k(HalfInt x, HalfInt y) { return psi_.k(x, y); }
    cplx psi(HalfInt a, HalfInt x) { return psi_(a, x); }

private:
    cplx ek_hat(HalfInt x, HalfInt y);
    cplx epsm_hat(HalfInt x);
    cplx epsp_hat(HalfInt y);
    cplx s_tilde(HalfInt x, HalfInt y);
    template <class F>
    cplx weighted(HalfInt x, double c, int d, bool force_even, F&& f);

    ZParams p_;
    NumOpts o_;
    double sq_;  // sqrt(xi)
    PsiCache psi_;
    std::map<std::tuple<int, std::int64_t, std::int64_t>, cplx> memo_;
};

// free-function surface
double e_transform_k(HalfInt x, HalfInt y, const ZParams& p, Form f = Form::Series,
                     const NumOpts& o = default_opts());
double e_transform_psi(int sign, HalfInt x, const ZParams& p, Form f = Form::Series,
                       const NumOpts& o = default_opts());
double s_entry(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o = default_opts());
double s_antisym_contour(HalfInt x, HalfInt y, const ZParams& p, const NumOpts& o = default_opts());
double s_via_iab(HalfInt x, HalfInt y, const ZParams& p, Form f = Form::Contour,
                 const NumOpts& o = default_opts());

KernelBlock kernel_block(Theta2& eng, HalfInt x, HalfInt y, Repr r);
KernelBlock kernel_block(HalfInt x, HalfInt y, const ZParams& p, Repr r = Repr::Contour,
                         const NumOpts& o = default_opts());

// Degenerate z' = z - 1 kernel, single rational double integral
double degenerate_entry(HalfInt x, HalfInt y, cplx z, double xi, const NumOpts& o = default_opts());
KernelBlock degenerate_kernel(HalfInt x, HalfInt y, cplx z, double xi,
                              const NumOpts& o = default_opts());

struct CorrResult {
    double value = 0.0;
    double imag = 0.0;           // discarded imaginary part (gauge-free route)
    double skew_residual = 0.0;  // before antisymmetrisation
    std::string method;
};

CorrResult correlation(Theta2& eng, const std::vector<HalfInt>& pts, Repr r = Repr::Contour);
CorrResult correlation(const std::vector<HalfInt>& pts, const ZParams& p, Repr r = Repr::Contour,
                       const NumOpts& o = default_opts());
CorrResult correlation_degenerate(const std::vector<HalfInt>& pts, cplx z, double xi,
                                  const NumOpts& o = default_opts());

void check_distinct(const std::vector<HalfInt>& pts);

}  // namespace zm
