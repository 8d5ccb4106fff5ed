#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zm/common.hpp"
#include "zm/meixner.hpp"
#include "zm/partition.hpp"

namespace zm {

struct OracleResult {
    double value = 0.0;
    double tail = 0.0;
    int cutoff = 0;
};

// mass of layers n > cutoff: sum (1-xi)^t (t)_n xi^n / n!
double tail_bound(const ZParams& p, int cutoff);
double layer_mass(const ZParams& p, int n);

// every diagram with |lambda| <= cutoff and its mixed-measure weight
class MeasureTable {
public:
    MeasureTable(const ZParams& p, int cutoff);
    OracleResult corr(const std::vector<HalfInt>& pts) const;
    double total() const;  // sum of stored weights
    double tail() const { return tail_; }
    int cutoff() const { return cutoff_; }
    const std::vector<YoungDiagram>& diagrams() const { return diagrams_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    ZParams p_;
    int cutoff_;
    double tail_;
    std::vector<YoungDiagram> diagrams_;
    std::vector<double> weights_;
};

OracleResult corr_oracle(const std::vector<HalfInt>& pts, const ZParams& p, int cutoff = 40);

class DiagramSampler {
public:
    DiagramSampler(const ZParams& p, std::uint64_t seed, int cap = 40);
    YoungDiagram draw();
    std::uint64_t seed() const { return seed_; }

private:
    const std::vector<double>& layer_cdf(int n);

    ZParams p_;
    std::uint64_t seed_;
    int cap_;
    std::mt19937_64 rng_;
    std::vector<double> size_cdf_;
    std::vector<std::vector<YoungDiagram>> layers_;
    std::vector<std::vector<double>> cdfs_;
};

YoungDiagram sample_diagram(const ZParams& p, std::uint64_t seed);

OracleResult meixner_oracle(const std::vector<long>& pts, const MeixnerParams& mp, int x_max);

void require_positive(const ZParams& p);

}  // namespace zm
