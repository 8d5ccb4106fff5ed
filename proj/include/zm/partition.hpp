#pragma once

#include <string>
#include <vector>

#include "zm/common.hpp"

namespace zm {

struct ZParams {
    cplx z{1.0, 0.0};
    cplx zp{1.0, 0.0};
    double xi = 0.3;
    double theta = 2.0;

    cplx t() const { return z * zp / theta; }
    void validate() const;  // xi in (0,1), theta > 0, finite
};

// theta = 1 admissibility: principal (z' = conj z, z not real) or complementary
// (both real inside one open interval (m, m+1)).
bool admissible(cplx z, cplx zp, double eps = 1e-12);

enum class Series { None, Principal, Complementary, Degenerate };
// which positive series (z, z', theta) falls into
Series positivity(cplx z, cplx zp, double theta, double eps = 1e-12);
const char* series_name(Series s);

class YoungDiagram {
public:
    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> parts);  // throws unless weakly decreasing, positive

    const std::vector<int>& parts() const { return parts_; }
    int rows() const { return static_cast<int>(parts_.size()); }
    int size() const { return size_; }
    int part(int i) const { return i < rows() ? parts_[i] : 0; }  // 0-based
    YoungDiagram transpose() const;
    std::string str() const;

    bool operator==(const YoungDiagram&) const = default;

private:
    std::vector<int> parts_;
    int size_ = 0;
};

struct Hooks {
    double h, hp;
};
Hooks hook_products(const YoungDiagram& l, double theta);
// log H, log H' (sums of logs of positive factors)
Hooks log_hook_products(const YoungDiagram& l, double theta);

cplx gen_pochhammer(cplx z, const YoungDiagram& l, double theta);

cplx zmeasure_n(const YoungDiagram& l, const ZParams& p);
cplx zmeasure_mixed(const YoungDiagram& l, const ZParams& p);
bool transpose_symmetry_check(const YoungDiagram& l, const ZParams& p, double rtol = 1e-12);
double plancherel_ratio(const YoungDiagram& l, double R, double theta);

inline constexpr int kDiagramCap = 60;
std::vector<YoungDiagram> enumerate_diagrams(int n, int cap = kDiagramCap);

std::vector<HalfInt> embed_d2(const YoungDiagram& l, int count);
bool in_d2(const YoungDiagram& l, HalfInt x);

}  // namespace zm
