#pragma once

#include <functional>
#include <span>
#include <vector>

#include "zm/common.hpp"

namespace zm {

struct ContourSpec {
    double radius = 1.0;
    int nodes = 64;  // starting node count, power of two
    double tol = 1e-13;
};

// Nodes r e^{2 pi i j / n}
struct Circle {
    double r;
    int n;
    std::vector<cplx> w;
    std::vector<cplx> root;  // e^{2 pi i j / n}

    Circle(double r_, int n_);
    // w_j^m for integer m, exact angle reduction
    cplx pow_int(int j, long m) const;
};

using Integrand1 = std::function<cplx(cplx)>;
using Integrand2 = std::function<cplx(cplx, cplx)>;
// evaluates a function on a whole node vector at once
using NodeFn = std::function<void(const Circle&, std::span<cplx>)>;

struct QuadReport {
    cplx value;
    int nodes1 = 0, nodes2 = 0;
    double last_diff = 0.0;
};

// (1/2 pi i) \oint f(w) dw
cplx circle_integral(const Integrand1& f, const ContourSpec& spec, int node_cap = 1 << 18,
                     QuadReport* rep = nullptr);
// (1/2 pi i)^2 \oint\oint f dw1 dw2, per-axis doubling
cplx double_circle_integral(const Integrand2& f, const ContourSpec& s1, const ContourSpec& s2,
                            int node_cap = 1 << 11, QuadReport* rep = nullptr);

// (1/2 pi i) \oint g(w) dw / w
cplx circle_mean(const NodeFn& g, double r, const NumOpts& o, QuadReport* rep = nullptr);

// (1/2 pi i)^2 \oint\oint a(w1) b(w2) / (w1 w2 - 1) dw1/w1 dw2/w2
cplx pole_mean(const NodeFn& a, const NodeFn& b, double r1, double r2, const NumOpts& o,
               QuadReport* rep = nullptr);

// default radii for |w| > 1 and |w| < 1 constraints at a given xi
double radius_out(double xi);
double radius_in(double xi);
// nudges radii away from r1 r2 = 1; throws if the annulus leaves no room
void guard_radii(double& r1, double& r2, double xi, double guard);

}  // namespace zm
