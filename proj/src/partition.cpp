#include "zm/partition.hpp"

#include <cmath>
#include <sstream>

#include "zm/special_fn.hpp"

namespace zm {

void ZParams::validate() const {
    if (!(xi > 0.0 && xi < 1.0)) throw DomainError("xi must lie in (0,1), got " + std::to_string(xi));
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    auto fin = [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
    if (!fin(z) || !fin(zp)) throw DomainError("z, z' must be finite");
}

bool admissible(cplx z, cplx zp, double eps) {
    if (std::fabs(z.imag()) > eps) return std::abs(zp - std::conj(z)) <= eps * (1.0 + std::abs(z));
    if (std::fabs(zp.imag()) > eps) return false;
    const double a = z.real(), b = zp.real();
    const double m = std::floor(a);
    if (a - m <= eps || m + 1.0 - a <= eps) return false;
    return b > m + eps && b < m + 1.0 - eps;
}

namespace {

bool near_int(double v, double eps) { return std::fabs(v - std::round(v)) <= eps; }

// real z' positive for theta = 2 degenerate cases, one direction
bool degenerate_pair(double z, double zp, double theta, double eps) {
    // z = m theta, z' > (m-1) theta, m = 1, 2, ...
    const double m = z / theta;
    if (m > 0.5 && near_int(m, eps) && zp > (std::round(m) - 1.0) * theta + eps) return true;
    // z = -m, z' < -m + 1
    if (z < -0.5 && near_int(z, eps) && zp < z + 1.0 - eps) return true;
    return false;
}

}  // namespace

Series positivity(cplx z, cplx zp, double theta, double eps) {
    const bool real = std::fabs(z.imag()) <= eps && std::fabs(zp.imag()) <= eps;
    if (!real) {
        if (std::abs(zp - std::conj(z)) > eps * (1.0 + std::abs(z))) return Series::None;
        return Series::Principal;  // z off the real axis, so off Z<=0 + Z>=0 theta
    }
    const double a = z.real(), b = zp.real();
    if (degenerate_pair(a, b, theta, eps) || degenerate_pair(b, a, theta, eps))
        return Series::Degenerate;
    if (std::fabs(a - b) <= eps) {
        // z' = conj z on the real line: needs z outside Z<=0 + Z>=0 theta
        for (int i = 0; i <= 200; ++i) {
            const double r = a - i * theta;
            if (r <= eps && near_int(r, eps)) return Series::None;
        }
        return Series::Principal;
    }
    // complementary: theta rational (checked only for theta = p/q with small q),
    // both inside one interval of Z + Z theta
    int q = 0;
    for (int d = 1; d <= 12; ++d)
        if (near_int(theta * d, 1e-12)) {
            q = d;
            break;
        }
    if (q == 0) return Series::None;
    const double step = 1.0 / q;  // Z + Z theta = (1/q) Z
    const double lo = std::floor(std::min(a, b) / step);
    if (near_int(a / step, eps) || near_int(b / step, eps)) return Series::None;
    if (std::floor(std::max(a, b) / step) != lo) return Series::None;
    return Series::Complementary;
}

const char* series_name(Series s) {
    switch (s) {
        case Series::Principal: return "principal";
        case Series::Complementary: return "complementary";
        case Series::Degenerate: return "degenerate";
        default: return "none";
    }
}

YoungDiagram::YoungDiagram(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw DomainError("diagram parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("diagram parts must be non-increasing");
        size_ += parts_[i];
    }
}

YoungDiagram YoungDiagram::transpose() const {
    if (parts_.empty()) return {};
    std::vector<int> t(parts_[0], 0);
    for (int r : parts_)
        for (int j = 0; j < r; ++j) ++t[j];
    return YoungDiagram(std::move(t));
}

std::string YoungDiagram::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ']';
    return os.str();
}

Hooks log_hook_products(const YoungDiagram& l, double theta) {
    const YoungDiagram lt = l.transpose();
    double h = 0.0, hp = 0.0;
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.part(i); ++j) {
            const double arm = l.part(i) - j - 1;
            const double leg = lt.part(j) - i - 1;
            h += std::log(arm + leg * theta + 1.0);
            hp += std::log(arm + leg * theta + theta);
        }
    return {h, hp};
}

Hooks hook_products(const YoungDiagram& l, double theta) {
    const Hooks lg = log_hook_products(l, theta);
    return {std::exp(lg.h), std::exp(lg.hp)};
}

cplx gen_pochhammer(cplx z, const YoungDiagram& l, double theta) {
    cplx r = 1.0;
    for (int i = 0; i < l.rows(); ++i) r *= pochhammer(z - static_cast<double>(i) * theta, l.part(i));
    return r;
}

namespace {

// log of (z)_{lambda,theta}; returns false when the symbol vanishes
bool log_gen_poch(cplx z, const YoungDiagram& l, double theta, cplx& out) {
    out = 0.0;
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.part(i); ++j) {
            const cplx f = z + static_cast<double>(j) - static_cast<double>(i) * theta;
            if (f == 0.0) return false;
            out += std::log(f);
        }
    return true;
}

}  // namespace

cplx zmeasure_n(const YoungDiagram& l, const ZParams& p) {
    const int n = l.size();
    if (n < 1) throw DomainError("zmeasure_n needs |lambda| >= 1");
    const cplx t = p.t();
    const cplx tn = pochhammer(t, n);
    if (std::abs(tn) == 0.0) throw DomainError("zmeasure_n: (t)_n vanishes");
    cplx a, b;
    if (!log_gen_poch(p.z, l, p.theta, a) || !log_gen_poch(p.zp, l, p.theta, b)) return 0.0;
    const Hooks hk = log_hook_products(l, p.theta);
    cplx ltn = 0.0;
    for (int k = 0; k < n; ++k) ltn += std::log(t + static_cast<double>(k));
    return std::exp(std::lgamma(n + 1.0) + a + b - ltn - hk.h - hk.hp);
}

cplx zmeasure_mixed(const YoungDiagram& l, const ZParams& p) {
    const cplx lead = std::exp(p.t() * std::log(1.0 - p.xi));
    cplx a, b;
    if (!log_gen_poch(p.z, l, p.theta, a) || !log_gen_poch(p.zp, l, p.theta, b)) return 0.0;
    const Hooks hk = log_hook_products(l, p.theta);
    return lead * std::exp(a + b + l.size() * std::log(p.xi) - hk.h - hk.hp);
}

bool transpose_symmetry_check(const YoungDiagram& l, const ZParams& p, double rtol) {
    const cplx lhs = zmeasure_n(l, p);
    ZParams q = p;
    q.z = -p.z / p.theta;
    q.zp = -p.zp / p.theta;
    q.theta = 1.0 / p.theta;
    const cplx rhs = zmeasure_n(l.transpose(), q);
    return std::abs(lhs - rhs) <= rtol * std::max(std::abs(lhs), 1e-300);
}

double plancherel_ratio(const YoungDiagram& l, double R, double theta) {
    const int n = l.size();
    if (n < 1) throw DomainError("plancherel_ratio needs |lambda| >= 1");
    ZParams p{R, R, 0.5, theta};
    const Hooks hk = log_hook_products(l, theta);
    const double lpl = std::lgamma(n + 1.0) + n * std::log(theta) - hk.h - hk.hp;
    // ratio of z-measure to Plancherel, both in log form
    cplx a, b;
    if (!log_gen_poch(p.z, l, theta, a) || !log_gen_poch(p.zp, l, theta, b)) return 0.0;
    double ltn = 0.0;
    const double t = R * R / theta;
    for (int k = 0; k < n; ++k) ltn += std::log(t + k);
    const double lz = std::lgamma(n + 1.0) + (a + b).real() - ltn - hk.h - hk.hp;
    return std::exp(lz - lpl);
}

namespace {

void gen_parts(int n, int maxpart, std::vector<int>& cur, std::vector<YoungDiagram>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int k = std::min(n, maxpart); k >= 1; --k) {
        cur.push_back(k);
        gen_parts(n - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<YoungDiagram> enumerate_diagrams(int n, int cap) {
    if (n < 0) throw DomainError("enumerate_diagrams: n < 0");
    if (n > cap) throw DomainError("enumerate_diagrams: n above cap " + std::to_string(cap));
    std::vector<YoungDiagram> out;
    std::vector<int> cur;
    gen_parts(n, n, cur, out);
    return out;
}

std::vector<HalfInt> embed_d2(const YoungDiagram& l, int count) {
    if (count < l.rows()) throw DomainError("embed_d2: count below number of rows");
    std::vector<HalfInt> out;
    out.reserve(count);
    // lambda_i - 2i + 1/2 with 1-based i  ->  k = lambda_i - 2i
    for (int i = 1; i <= count; ++i) out.emplace_back(l.part(i - 1) - 2 * i);
    return out;
}

bool in_d2(const YoungDiagram& l, HalfInt x) {
    for (int i = 1;; ++i) {
        const std::int64_t v = l.part(i - 1) - 2 * i;
        if (v == x.k) return true;
        if (v < x.k) return false;
    }
}

}  // namespace zm
