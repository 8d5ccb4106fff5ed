#include "zm/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace zm {

void require_positive(const ZParams& p) {
    p.validate();
    if (std::fabs(p.theta - 2.0) > 1e-15) throw DomainError("oracle is set up for theta = 2");
    if (positivity(p.z, p.zp, p.theta) == Series::None)
        throw DomainError("parameters are not in a positive series; the measure is not a probability");
    const cplx t = p.t();
    if (!(t.real() > 0.0) || std::fabs(t.imag()) > 1e-12) throw DomainError("t = zz'/theta must be positive");
}

double layer_mass(const ZParams& p, int n) {
    const double t = p.t().real();
    return std::exp(t * std::log1p(-p.xi) + std::lgamma(t + n) - std::lgamma(t) + n * std::log(p.xi) -
                    std::lgamma(n + 1.0));
}

double tail_bound(const ZParams& p, int cutoff) {
    require_positive(p);
    if (cutoff < 0) throw DomainError("tail_bound: cutoff < 0");
    const double t = p.t().real();
    double term = layer_mass(p, cutoff + 1), sum = 0.0;
    for (long n = cutoff + 1; n < cutoff + 2000000L; ++n) {
        sum += term;
        // past the mode the ratio is below 1 and keeps falling
        if (n > t * p.xi / (1.0 - p.xi) + 1.0 && term <= 1e-18 * sum) return sum;
        if (sum == 0.0 && term == 0.0) return 0.0;
        term *= (t + n) * p.xi / (n + 1.0);
    }
    throw ConvergenceError("tail_bound: sum did not settle");
}

MeasureTable::MeasureTable(const ZParams& p, int cutoff) : p_(p), cutoff_(cutoff) {
    require_positive(p);
    tail_ = tail_bound(p, cutoff);
    for (int n = 0; n <= cutoff; ++n)
        for (YoungDiagram& l : enumerate_diagrams(n)) {
            const cplx v = zmeasure_mixed(l, p);
            if (std::fabs(v.imag()) > 1e-12 * std::max(1e-300, std::abs(v)) + 1e-300)
                throw DomainError("measure weight not real for " + l.str());
            if (v.real() == 0.0) continue;  // outside the support
            diagrams_.push_back(std::move(l));
            weights_.push_back(v.real());
        }
}

double MeasureTable::total() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

OracleResult MeasureTable::corr(const std::vector<HalfInt>& pts) const {
    if (pts.empty()) throw DomainError("need at least one point");
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) throw DomainError("points must be distinct");
    double s = 0.0;
    for (std::size_t i = 0; i < diagrams_.size(); ++i) {
        bool all = true;
        for (const HalfInt& x : pts)
            if (!in_d2(diagrams_[i], x)) {
                all = false;
                break;
            }
        if (all) s += weights_[i];
    }
    return {s, tail_, cutoff_};
}

OracleResult corr_oracle(const std::vector<HalfInt>& pts, const ZParams& p, int cutoff) {
    return MeasureTable(p, cutoff).corr(pts);
}

DiagramSampler::DiagramSampler(const ZParams& p, std::uint64_t seed, int cap)
    : p_(p), seed_(seed), cap_(cap), rng_(seed), layers_(cap + 1), cdfs_(cap + 1) {
    require_positive(p);
    if (cap > kDiagramCap) throw DomainError("sampler cap above diagram cap");
    double acc = 0.0;
    for (int n = 0; n <= cap; ++n) {
        acc += layer_mass(p, n);
        size_cdf_.push_back(acc);
    }
}

const std::vector<double>& DiagramSampler::layer_cdf(int n) {
    if (cdfs_[n].empty()) {
        layers_[n] = enumerate_diagrams(n);
        double acc = 0.0;
        for (const YoungDiagram& l : layers_[n]) {
            // zmeasure_n is a probability on the layer; the empty layer is a single point
            const double w = n == 0 ? 1.0 : std::max(0.0, zmeasure_n(l, p_).real());
            acc += w;
            cdfs_[n].push_back(acc);
        }
    }
    return cdfs_[n];
}

YoungDiagram DiagramSampler::draw() {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng_);
    auto it = std::upper_bound(size_cdf_.begin(), size_cdf_.end(), u);
    if (it == size_cdf_.end()) throw DomainError("sampler: drew a size above the cap");
    const int n = static_cast<int>(it - size_cdf_.begin());
    const std::vector<double>& cdf = layer_cdf(n);
    const double v = unif(rng_) * cdf.back();
    auto jt = std::upper_bound(cdf.begin(), cdf.end(), v);
    if (jt == cdf.end()) --jt;
    return layers_[n][jt - cdf.begin()];
}

YoungDiagram sample_diagram(const ZParams& p, std::uint64_t seed) {
    DiagramSampler s(p, seed);
    return s.draw();
}

OracleResult meixner_oracle(const std::vector<long>& pts, const MeixnerParams& mp, int x_max) {
    MeixnerEnsemble ens(mp, x_max);
    return {ens.correlation(pts), ens.tail(), x_max};
}

}  // namespace zm
