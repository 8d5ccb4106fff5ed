#include "zm/meixner.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "gauge.hpp"
#include "zm/contour.hpp"
#include "zm/pfaffian.hpp"
#include "zm/special_fn.hpp"

namespace zm {

void MeixnerParams::validate() const {
    if (N < 1) throw DomainError("N must be >= 1");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (!(xi > 0.0 && xi < 1.0)) throw DomainError("xi must lie in (0,1)");
}

ZParams MeixnerParams::measure_params() const { return {2.0 * N, 2.0 * N + beta - 2.0, xi, 2.0}; }
ZParams MeixnerParams::shift_params() const { return {2.0 * N, 2.0 * N + beta - 1.0, xi, 2.0}; }

namespace {

template <class T = double>
T log_weight1(long x, T beta, T xi) {
    using std::lgamma, std::log;
    return lgamma(beta + x) - lgamma(beta) - lgamma(x + T(1)) + x * log(xi);
}

template <class T = double>
T log_norm2(int n, T beta, T c) {
    using std::lgamma, std::log, std::log1p;
    return -n * log(c) + lgamma(n + T(1)) - lgamma(beta + n) + lgamma(beta) - beta * log1p(-c);
}

// monic-free Meixner polynomials M_0..M_{R-1} at x
template <class T>
void meixner_polys(int R, T x, T beta, T c, std::vector<T>& out) {
    out.assign(R, 0.0);
    if (R == 0) return;
    out[0] = 1.0;
    if (R == 1) return;
    out[1] = 1 + (c - 1) * x / (c * beta);
    for (int n = 1; n + 1 < R; ++n)
        out[n + 1] = ((c - 1) * x * out[n] + (n + (n + beta) * c) * out[n] - n * out[n - 1]) / (c * (n + beta));
}

void check_nonneg(long x) {
    if (x < 0) throw DomainError("Meixner lattice points are non-negative");
}

}  // namespace

double meixner_weight(long x, double beta, double xi) {
    check_nonneg(x);
    return std::exp(log_weight1(x, beta, xi));
}

double meixner_fn(int n, long x, double beta, double xi) {
    check_nonneg(x);
    if (n < 0) throw DomainError("meixner_fn: n < 0");
    std::vector<double> m;
    meixner_polys(n + 1, static_cast<double>(x), beta, xi, m);
    const double sg = (n & 1) ? -1.0 : 1.0;
    return sg * m[n] * std::exp(0.5 * (log_weight1(x, beta, xi) - log_norm2(n, beta, xi)));
}

double k2n(long x, long y, const MeixnerParams& mp) {
    mp.validate();
    double s = 0.0;
    for (int n = 0; n < 2 * mp.N; ++n) s += meixner_fn(n, x, mp.beta, mp.xi) * meixner_fn(n, y, mp.beta, mp.xi);
    return s;
}

double d_plus_kernel(long x, long y, const MeixnerParams& mp) {
    check_nonneg(x);
    if (y != x + 1) return 0.0;
    return std::sqrt((1.0 + x) / (mp.beta + x)) / std::sqrt(mp.xi);
}

double d_minus_kernel(long x, long y, const MeixnerParams& mp) {
    check_nonneg(x);
    if (y != x - 1 || x == 0) return 0.0;
    return std::sqrt(x / (mp.beta + x - 1.0)) / std::sqrt(mp.xi);
}

namespace {

// calls emit(t, weight) for each term of the E row at x; returns false to stop early
template <class T = double, class Emit>
void e_row(long x, T beta, T xi, long limit, Emit&& emit) {
    using std::sqrt;
    const T sx = sqrt(xi);
    if (x % 2 == 0) {
        T r = (beta + x) / (1 + T(x));
        for (long y = 0;; ++y) {
            const long t = x + 2 * y + 1;
            if (t >= limit) return;
            if (y > 0) r *= (beta + x + 2 * y) * T(x + 2 * y) / ((1 + T(x + 2 * y)) * (beta + x + 2 * y - 1));
            if (!emit(t, -sx * sqrt(r))) return;
        }
    }
    T r = (1 - beta - x) / (-T(x));
    for (long y = 0; y <= (x - 1) / 2; ++y) {
        if (y > 0) r *= (1 - beta - x + 2 * y) * T(-1 - x + 2 * y) / (T(-x + 2 * y) * (-beta - x + 2 * y));
        if (r < 0) throw DomainError("E weight radicand negative");
        if (!emit(x - 2 * y - 1, sx * sqrt(r))) return;
    }
}

}  // namespace

double e_apply(const IntFn& f, long x, const MeixnerParams& mp, const NumOpts& o) {
    check_nonneg(x);
    double sum = 0.0, big = 0.0;
    int quiet = 0;
    bool done = false;
    e_row(x, mp.beta, mp.xi, std::numeric_limits<long>::max() / 4, [&](long t, double w) {
        const double v = w * f(t);
        sum += v;
        if (x % 2 == 0) {
            big = std::max(big, std::fabs(v));
            quiet = std::fabs(v) <= o.e_tol * big ? quiet + 1 : 0;
            if (quiet >= 3) done = true;
            if (t > x + 2L * 100000) throw ConvergenceError("e_apply: even-case sum did not settle");
        }
        return !done;
    });
    return sum;
}

MeixnerOps::MeixnerOps(const MeixnerParams& mp, int lattice) : mp_(mp), X_(lattice), R_(2 * mp.N) {
    using L = long double;
    mp_.validate();
    if (X_ < 8) throw DomainError("lattice too small");
    const L beta = mp.beta, xi = mp.xi;
    M_.assign(static_cast<std::size_t>(R_) * X_, 0.0L);
    std::vector<L> poly;
    for (int x = 0; x < X_; ++x) {
        meixner_polys<L>(R_, x, beta, xi, poly);
        const L lw = log_weight1<L>(x, beta, xi);
        for (int n = 0; n < R_; ++n) {
            const L sg = (n & 1) ? -1.0L : 1.0L;
            M_[static_cast<std::size_t>(n) * X_ + x] = sg * poly[n] * std::exp(0.5L * (lw - log_norm2<L>(n, beta, xi)));
        }
    }
    E_.resize(X_);
    for (int x = 0; x < X_; ++x)
        e_row<L>(x, beta, xi, X_, [&](long t, L w) {
            E_[x].emplace_back(static_cast<int>(t), w);
            return true;
        });
    // A = E M^T, B = M E, C = M D M^T
    A_.assign(static_cast<std::size_t>(X_) * R_, 0.0L);
    B_.assign(static_cast<std::size_t>(R_) * X_, 0.0L);
    C_.assign(static_cast<std::size_t>(R_) * R_, 0.0L);
    for (int x = 0; x < X_; ++x)
        for (auto [t, w] : E_[x])
            for (int k = 0; k < R_; ++k) {
                A_[static_cast<std::size_t>(x) * R_ + k] += w * ml(k, t);
                B_[static_cast<std::size_t>(k) * X_ + t] += ml(k, x) * w;
            }
    auto dplus = [&](long x) { return std::sqrt((1 + L(x)) / (beta + x) / xi); };
    auto dminus = [&](long x) { return std::sqrt(L(x) / (beta + x - 1) / xi); };
    for (int l = 0; l < R_; ++l)
        for (int x = 0; x < X_; ++x) {
            L dm = 0.0L;  // (D M_l)(x)
            if (x + 1 < X_) dm += dplus(x) * ml(l, x + 1);
            if (x > 0) dm -= dminus(x) * ml(l, x - 1);
            for (int k = 0; k < R_; ++k) C_[static_cast<std::size_t>(k) * R_ + l] += ml(k, x) * dm;
        }
}

void MeixnerOps::check(long x) const {
    if (x < 0 || x >= X_) throw DomainError("lattice point outside truncated range");
}

double MeixnerOps::k(long x, long y) const {
    check(x);
    check(y);
    double s = 0.0;
    for (int n = 0; n < R_; ++n) s += m(n, x) * m(n, y);
    return s;
}

double MeixnerOps::s(long x, long y) const {
    check(x);
    check(y);
    const long double* a = &A_[static_cast<std::size_t>(x) * R_];
    long double v = 0.0L;
    for (int k = 0; k < R_; ++k) {
        v += a[k] * ml(k, y) + ml(k, x) * B_[static_cast<std::size_t>(k) * X_ + y];
        long double cb = 0.0L;
        for (int l = 0; l < R_; ++l) cb += C_[static_cast<std::size_t>(k) * R_ + l] * B_[static_cast<std::size_t>(l) * X_ + y];
        v -= a[k] * cb;
    }
    return static_cast<double>(v);
}

double MeixnerOps::e_entry(long x, long t) const {
    check(x);
    for (auto [u, w] : E_[x])
        if (u == t) return static_cast<double>(w);
    return 0.0;
}

double MeixnerOps::e_row_apply(long x, const IntFn& f) const {
    check(x);
    long double s = 0.0L;
    for (auto [t, w] : E_[x]) s += w * f(t);
    return static_cast<double>(s);
}

double s2n_operator(long x, long y, const MeixnerParams& mp, const NumOpts& o) {
    MeixnerOps ops(mp, o.lattice_max);
    return ops.s(x, y);
}

namespace {

std::vector<cplx> hyp_nodes(const Circle& c, cplx a, cplx b, cplx cc, bool inv, double tol) {
    std::vector<cplx> arg(c.n), out(c.n);
    for (int j = 0; j < c.n; ++j) {
        const cplx w2 = c.w[j] * c.w[j];
        arg[j] = inv ? 1.0 / w2 : w2;
    }
    gauss_2f1_many(a, b, cc, arg, out, tol);
    return out;
}

double rad_int(long x, double xi) { return x % 2 == 0 ? radius_out(xi) : radius_in(xi); }

}  // namespace

double s2n_contour(long x, long y, const MeixnerParams& mp, const NumOpts& o) {
    mp.validate();
    check_nonneg(x);
    check_nonneg(y);
    const double b = mp.beta, s = std::sqrt(mp.xi), tol = o.series_tol;
    const double twoN = 2.0 * mp.N;
    const double pre = s * std::exp(0.5 * (std::lgamma(x + 1.0) + std::lgamma(y + b) - std::lgamma(x + b) -
                                           std::lgamma(y + 1.0)));
    const long m1 = -x + 2 * mp.N - 1, m2 = -y + 2 * mp.N;
    const bool xe = x % 2 == 0, ye = y % 2 == 0;
    auto g1f1 = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> f = xe ? hyp_nodes(c, (x + 2.0) / 2.0, 1.0, (x + b + 1.0) / 2.0, true, tol)
                                 : hyp_nodes(c, -(b + x - 1.0) / 2.0, 1.0, -x / 2.0, false, tol);
        detail::fill_factor(c, s, -twoN - b + 1.0, twoN, out);
        for (int j = 0; j < c.n; ++j) out[j] *= (xe ? f[j] : f[j] - 1.0) * c.pow_int(j, m1);
    };
    auto g2 = [&](const Circle& c, std::span<cplx> out) {
        detail::fill_factor(c, s, -twoN, twoN + b - 1.0, out);
        for (int j = 0; j < c.n; ++j) out[j] *= c.pow_int(j, m2);
    };
    auto g2f2 = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> f = ye ? hyp_nodes(c, (y + b) / 2.0, 1.0, (y + 1.0) / 2.0, true, tol)
                                 : hyp_nodes(c, (1.0 - y) / 2.0, 1.0, (2.0 - b - y) / 2.0, false, tol);
        g2(c, out);
        for (int j = 0; j < c.n; ++j) out[j] *= ye ? f[j] - 1.0 : f[j];
    };
    double r1 = rad_int(x, mp.xi), r2 = rad_int(y, mp.xi);
    guard_radii(r1, r2, mp.xi, o.pole_guard);
    const cplx first = pole_mean(g1f1, g2, r1, r2, o);
    const cplx second = circle_mean(g1f1, r1, o) * circle_mean(g2f2, r2, o);
    const double sg = xe ? -1.0 : 1.0, s2 = ye ? -1.0 : 1.0;
    return sg * pre * (first + s2 * second).real();
}

double s2n_tilde(long x, long y, const MeixnerParams& mp, const NumOpts& o) {
    mp.validate();
    check_nonneg(x);
    check_nonneg(y);
    const double b = mp.beta, s = std::sqrt(mp.xi), tol = o.series_tol;
    const double twoN = 2.0 * mp.N;
    const double gx = std::exp(0.5 * (std::lgamma(x + 1.0) - std::lgamma(x + b)));
    const double gy = std::exp(0.5 * (std::lgamma(y + b) - std::lgamma(y + 1.0)));
    const bool xe = x % 2 == 0, ye = y % 2 == 0;
    auto pa = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> f = xe ? hyp_nodes(c, (x + 2.0) / 2.0, 1.0, (x + b + 1.0) / 2.0, true, tol)
                                 : hyp_nodes(c, -(b + x - 1.0) / 2.0, 1.0, -x / 2.0, false, tol);
        detail::fill_factor(c, s, -twoN - b + 1.0, twoN, out);
        const long m = -x - 1 + 2 * mp.N;
        for (int j = 0; j < c.n; ++j) out[j] *= gx * (xe ? f[j] : -(f[j] - 1.0)) * c.pow_int(j, m);
    };
    auto qb = [&](const Circle& c, std::span<cplx> out) {
        std::vector<cplx> f = ye ? hyp_nodes(c, (y + b) / 2.0, 1.0, (y + 1.0) / 2.0, true, tol)
                                 : hyp_nodes(c, -(y - 1.0) / 2.0, 1.0, -(b + y - 2.0) / 2.0, false, tol);
        detail::fill_factor(c, s, -twoN, twoN + b - 1.0, out);
        const long m = -y + 2 * mp.N;
        for (int j = 0; j < c.n; ++j) out[j] *= gy * (ye ? f[j] : -(f[j] - 1.0)) * c.pow_int(j, m);
    };
    double r1 = rad_int(x, mp.xi), r2 = rad_int(y, mp.xi);
    guard_radii(r1, r2, mp.xi, o.pole_guard);
    return -s * pole_mean(pa, qb, r1, r2, o).real();
}

double s2n_antisym(long x, long y, const MeixnerParams& mp, const NumOpts& o) {
    return s2n_tilde(x, y, mp, o) - s2n_tilde(y, x, mp, o);
}

MeixnerEnsemble::MeixnerEnsemble(const MeixnerParams& mp, int x_max) : mp_(mp), x_max_(x_max) {
    mp_.validate();
    if (mp.N > 3) throw DomainError("ensemble enumeration supports N <= 3");
    if (x_max < mp.N) throw DomainError("x_max too small for N points");
    std::vector<long> cur(mp.N);
    std::vector<double> lw;
    double edge = -std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, int i, long lo) -> void {
        if (i == mp_.N) {
            const double v = log_weight(cur);
            configs_.push_back(cur);
            lw.push_back(v);
            if (cur.back() == x_max_) edge = std::max(edge, v);
            return;
        }
        for (long x = lo; x <= x_max_; ++x) {
            cur[i] = x;
            self(self, i + 1, x + 1);
        }
    };
    rec(rec, 0, 0);
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : lw) mx = std::max(mx, v);
    double z = 0.0, zedge = 0.0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        const double e = std::exp(lw[i] - mx);
        z += e;
        if (configs_[i].back() == x_max_) zedge += e;
    }
    log_z_ = mx + std::log(z);
    probs_.resize(lw.size());
    for (std::size_t i = 0; i < lw.size(); ++i) probs_[i] = std::exp(lw[i] - log_z_);
    // mass with top point beyond x_max, from the decay rate of the last layer
    tail_ = zedge / z * mp_.xi / (1.0 - mp_.xi) * mp_.N;
    (void)edge;
}

double MeixnerEnsemble::log_weight(const std::vector<long>& pts) const {
    double v = 0.0;
    for (long x : pts) v += log_weight1(x, mp_.beta, mp_.xi);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = static_cast<double>(pts[i] - pts[j]);
            const double f = d * d * (d * d - 1.0);
            if (f == 0.0) return -std::numeric_limits<double>::infinity();
            v += std::log(f);
        }
    return v;
}

double MeixnerEnsemble::prob(const LatticeConfig& c) const {
    if (static_cast<int>(c.points.size()) != mp_.N) throw DomainError("configuration must have N points");
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (c.points[i] < 0 || c.points[i] > x_max_) throw DomainError("configuration outside [0, x_max]");
        if (i && c.points[i] <= c.points[i - 1]) throw DomainError("configuration must be strictly increasing");
    }
    return std::exp(log_weight(c.points) - log_z_);
}

double MeixnerEnsemble::correlation(const std::vector<long>& pts) const {
    std::set<long> want(pts.begin(), pts.end());
    if (want.size() != pts.size()) throw DomainError("points must be distinct");
    double s = 0.0;
    for (std::size_t i = 0; i < configs_.size(); ++i) {
        std::size_t hit = 0;
        for (long x : configs_[i]) hit += want.count(x);
        if (hit == want.size()) s += probs_[i];
    }
    return s;
}

double ensemble_prob(const LatticeConfig& c, const MeixnerParams& mp, int x_max, double* tail) {
    MeixnerEnsemble ens(mp, x_max);
    if (tail) *tail = ens.tail();
    return ens.prob(c);
}

double meixner_correlation(const MeixnerOps& ops, const std::vector<long>& pts, const MeixnerParams& mp) {
    std::set<long> seen;
    for (long x : pts) {
        check_nonneg(x);
        if (!seen.insert(x).second) throw DomainError("points must be distinct");
    }
    const int n = static_cast<int>(pts.size());
    std::map<std::pair<int, int>, KernelBlock> blocks;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const long x = pts[i], y = pts[j];
            const double dp = d_plus_kernel(x, x + 1, mp);
            const double dm = d_minus_kernel(y + 1, y, mp);
            KernelBlock b;
            b.s = ops.s(x, y);
            b.sd_minus = ops.s(x, y + 1) * dm;
            b.d_plus_s = dp * ops.s(x + 1, y);
            b.d_plus_s_d_minus = dp * ops.s(x + 1, y + 1) * dm;
            blocks[{i, j}] = b;
        }
    return pfaffian(assemble(blocks, n));
}

double meixner_correlation(const std::vector<long>& pts, const MeixnerParams& mp, const NumOpts& o) {
    MeixnerOps ops(mp, o.lattice_max);
    return meixner_correlation(ops, pts, mp);
}

LatticeConfig zmeasure_bijection(const YoungDiagram& l, const MeixnerParams& mp) {
    if (l.rows() > mp.N) throw DomainError("diagram has more than N rows");
    LatticeConfig c;
    c.points.resize(mp.N);
    for (int i = 1; i <= mp.N; ++i) c.points[mp.N - i] = l.part(i - 1) - 2L * i + 2L * mp.N;
    for (int i = 1; i < mp.N; ++i)
        if (c.points[i] <= c.points[i - 1]) throw DomainError("bijection produced a non-increasing configuration");
    return c;
}

}  // namespace zm
