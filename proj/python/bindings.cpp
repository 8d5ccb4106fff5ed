#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <variant>

#include "zm/kernel_theta2.hpp"
#include "zm/meixner.hpp"
#include "zm/oracle.hpp"
#include "zm/special_fn.hpp"

namespace py = pybind11;
using namespace zm;

namespace {

// lattice points come in as "p/2" strings or floats k + 1/2
using PyPoint = std::variant<std::string, double>;

HalfInt to_half(const PyPoint& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return HalfInt::parse(*s);
    return HalfInt::from_double(std::get<double>(v));
}

std::vector<HalfInt> to_half(const std::vector<PyPoint>& v) {
    std::vector<HalfInt> out;
    for (const auto& p : v) out.push_back(to_half(p));
    return out;
}

py::dict block_dict(const KernelBlock& b) {
    py::dict d;
    d["s"] = b.s;
    d["sd_minus"] = b.sd_minus;
    d["d_plus_s"] = b.d_plus_s;
    d["d_plus_s_d_minus"] = b.d_plus_s_d_minus;
    return d;
}

RealMat to_mat(const std::vector<std::vector<double>>& a) {
    RealMat m(static_cast<int>(a.size()));
    for (int i = 0; i < m.n; ++i) {
        if (static_cast<int>(a[i].size()) != m.n) throw DomainError("matrix must be square");
        for (int j = 0; j < m.n; ++j) m(i, j) = a[i][j];
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "z-measure kernels at theta = 2";
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<ZParams>(m, "ZParams")
        .def(py::init([](cplx z, std::optional<cplx> zp, double xi, double theta) {
                 ZParams p{z, zp.value_or(std::conj(z)), xi, theta};
                 p.validate();
                 return p;
             }),
             py::arg("z"), py::arg("zp") = py::none(), py::arg("xi") = 0.3, py::arg("theta") = 2.0)
        .def_readwrite("z", &ZParams::z)
        .def_readwrite("zp", &ZParams::zp)
        .def_readwrite("xi", &ZParams::xi)
        .def_readwrite("theta", &ZParams::theta)
        .def_property_readonly("t", &ZParams::t)
        .def("__repr__", [](const ZParams& p) {
            return "ZParams(z=" + py::repr(py::cast(p.z)).cast<std::string>() +
                   ", zp=" + py::repr(py::cast(p.zp)).cast<std::string>() + ", xi=" + std::to_string(p.xi) + ")";
        });

    py::class_<MeixnerParams>(m, "MeixnerParams")
        .def(py::init([](int N, double beta, double xi) {
                 MeixnerParams mp{N, beta, xi};
                 mp.validate();
                 return mp;
             }),
             py::arg("N") = 1, py::arg("beta") = 1.5, py::arg("xi") = 0.25)
        .def_readonly("N", &MeixnerParams::N)
        .def_readonly("beta", &MeixnerParams::beta)
        .def_readonly("xi", &MeixnerParams::xi);

    m.def("log_gamma", &log_gamma, py::arg("s"));
    m.def("gauss_2f1", [](cplx a, cplx b, cplx c, cplx w) { return gauss_2f1({a, b, c, w}); });
    m.def("admissible", [](cplx z, cplx zp) { return admissible(z, zp); });
    m.def("positivity", [](cplx z, cplx zp, double theta) { return std::string(series_name(positivity(z, zp, theta))); },
          py::arg("z"), py::arg("zp"), py::arg("theta") = 2.0);

    m.def("psi_series", [](PyPoint a, PyPoint x, const ZParams& p) { return psi_series(to_half(a), to_half(x), p); });
    m.def("psi_contour", [](PyPoint a, PyPoint x, const ZParams& p) { return psi_contour(to_half(a), to_half(x), p); });
    m.def("k_series", [](PyPoint x, PyPoint y, const ZParams& p, int cutoff) {
        return k_series(to_half(x), to_half(y), p, cutoff).value;
    }, py::arg("x"), py::arg("y"), py::arg("p"), py::arg("cutoff") = 200);
    m.def("k_contour", [](PyPoint x, PyPoint y, const ZParams& p) { return k_contour(to_half(x), to_half(y), p); });

    m.def("s_entry", [](PyPoint x, PyPoint y, const ZParams& p, const std::string& repr) {
        Theta2 eng(p);
        const cplx v = eng.s(to_half(x), to_half(y), parse_repr(repr));
        if (std::fabs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v)))
            throw DomainError("S is not real at these parameters");
        return v.real();
    }, py::arg("x"), py::arg("y"), py::arg("p"), py::arg("representation") = "series");
    m.def("kernel_block", [](PyPoint x, PyPoint y, const ZParams& p, const std::string& repr) {
        return block_dict(kernel_block(to_half(x), to_half(y), p, parse_repr(repr)));
    }, py::arg("x"), py::arg("y"), py::arg("p"), py::arg("representation") = "series");
    m.def("degenerate_kernel", [](PyPoint x, PyPoint y, cplx z, double xi) {
        return block_dict(degenerate_kernel(to_half(x), to_half(y), z, xi));
    });
    m.def("correlation", [](const std::vector<PyPoint>& pts, const ZParams& p, const std::string& repr) {
        return correlation(to_half(pts), p, parse_repr(repr)).value;
    }, py::arg("points"), py::arg("p"), py::arg("representation") = "series");
    m.def("correlation_degenerate", [](const std::vector<PyPoint>& pts, cplx z, double xi) {
        return correlation_degenerate(to_half(pts), z, xi).value;
    });

    m.def("pfaffian", [](const std::vector<std::vector<double>>& a) { return pfaffian(to_mat(a)); });
    m.def("pfaffian_expansion", [](const std::vector<std::vector<double>>& a) { return pfaffian_expansion(to_mat(a)); });

    m.def("enumerate_diagrams", [](int n) {
        std::vector<std::vector<int>> out;
        for (const auto& l : enumerate_diagrams(n)) out.push_back(l.parts());
        return out;
    });
    m.def("zmeasure_n", [](std::vector<int> parts, const ZParams& p) { return zmeasure_n(YoungDiagram(parts), p); });
    m.def("zmeasure_mixed", [](std::vector<int> parts, const ZParams& p) {
        return zmeasure_mixed(YoungDiagram(parts), p);
    });

    m.def("tail_bound", &tail_bound, py::arg("p"), py::arg("cutoff"));
    m.def("corr_oracle", [](const std::vector<PyPoint>& pts, const ZParams& p, int cutoff) {
        const OracleResult r = corr_oracle(to_half(pts), p, cutoff);
        return py::make_tuple(r.value, r.tail);
    }, py::arg("points"), py::arg("p"), py::arg("cutoff") = 40);
    m.def("sample", [](const ZParams& p, std::uint64_t seed, int count) {
        DiagramSampler s(p, seed);
        std::vector<std::vector<int>> out;
        for (int i = 0; i < count; ++i) out.push_back(s.draw().parts());
        return out;
    }, py::arg("p"), py::arg("seed"), py::arg("count") = 1);

    m.def("meixner_weight", &meixner_weight);
    m.def("k2n", &k2n);
    m.def("s2n_operator", [](long x, long y, const MeixnerParams& mp) { return s2n_operator(x, y, mp); });
    m.def("s2n_contour", [](long x, long y, const MeixnerParams& mp) { return s2n_contour(x, y, mp); });
    m.def("meixner_correlation", [](const std::vector<long>& pts, const MeixnerParams& mp) {
        return meixner_correlation(pts, mp);
    });
    m.def("meixner_oracle", [](const std::vector<long>& pts, const MeixnerParams& mp, int x_max) {
        const OracleResult r = meixner_oracle(pts, mp, x_max);
        return py::make_tuple(r.value, r.tail);
    }, py::arg("points"), py::arg("mp"), py::arg("x_max") = 60);
}
