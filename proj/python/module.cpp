#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "avk/catspaces.hpp"
#include "avk/chains.hpp"
#include "avk/cocycle.hpp"
#include "avk/hyp2.hpp"
#include "avk/verify.hpp"

namespace py = pybind11;
using namespace avk;

namespace {

Chain chain_from_pairs(const std::vector<std::pair<double, double>>& pts) {
    std::vector<HPoint> points;
    points.reserve(pts.size());
    for (const auto& [re, im] : pts)
        points.emplace_back(re, im);
    return Chain(std::move(points));
}

std::vector<std::pair<double, double>> points_of(const Chain& c) {
    std::vector<std::pair<double, double>> out;
    out.reserve(c.size());
    for (const auto& p : c.points())
        out.emplace_back(p.re, p.im);
    return out;
}

} // namespace

PYBIND11_MODULE(avkpy, m) {
    m.doc() = "Hyperbolic chain calculus: upper half-plane primitives, good chains, "
              "avalanche-principle bounds and CAT(-1) comparison checks.";

    py::class_<HPoint>(m, "HPoint")
        .def(py::init<double, double>(), py::arg("re"), py::arg("im"))
        .def_readonly("re", &HPoint::re)
        .def_readonly("im", &HPoint::im)
        .def("__repr__", [](const HPoint& p) {
            return "HPoint(" + std::to_string(p.re) + ", " + std::to_string(p.im) + ")";
        });

    py::class_<Mat2>(m, "Mat2")
        .def(py::init<double, double, double, double>(), py::arg("a"), py::arg("b"),
             py::arg("c"), py::arg("d"))
        .def_readonly("a", &Mat2::a)
        .def_readonly("b", &Mat2::b)
        .def_readonly("c", &Mat2::c)
        .def_readonly("d", &Mat2::d);

    py::class_<GoodPair>(m, "GoodPair")
        .def_readonly("a", &GoodPair::a)
        .def_readonly("b", &GoodPair::b)
        .def_readonly("lam", &GoodPair::lambda)
        .def_readonly("phi", &GoodPair::phi);

    m.def("dist", [](const HPoint& p, const HPoint& q) { return dist(p, q); });
    m.def("gromov",
          [](const HPoint& x, const HPoint& y, const HPoint& z) { return gromov(x, y, z); });
    m.def("angle_from_sides", &angle_from_sides);
    m.def("lc_length", &lc_length);
    m.def("saccheri_chord", &saccheri_chord);
    m.def("mobius_apply", [](const Mat2& a, const HPoint& p) { return mobius_apply(a, p); });
    m.def("reflect_across", &reflect_across);

    m.def("good_pair", &good_pair, py::arg("a"), py::arg("b"));
    m.def("good_pair_from_params", &good_pair_from_params, py::arg("lam"), py::arg("phi"));
    m.def("tension",
          [](const std::vector<std::pair<double, double>>& pts) {
              return tension(chain_from_pairs(pts));
          });
    m.def("is_good_chain", [](const std::vector<std::pair<double, double>>& pts,
                              const GoodPair& gp) { return is_good_chain(chain_from_pairs(pts), gp); });
    m.def("is_convex", [](const std::vector<std::pair<double, double>>& pts) {
        return is_convex(chain_from_pairs(pts));
    });
    m.def("canonical_chain",
          [](const GoodPair& gp, int n) { return points_of(canonical_chain(gp, n)); });
    m.def("distorted_chain", [](const std::vector<double>& steps, const GoodPair& gp) {
        return points_of(distorted_chain(steps, gp));
    });
    m.def("tension_closed_form", [](const std::vector<double>& lambdas, double alpha) {
        return tension_closed_form(lambdas, alpha);
    });
    m.def("tension_degenerate",
          [](const std::vector<double>& lambdas) { return tension_degenerate(lambdas); });
    m.def("ap_bound", &ap_bound);
    m.def("regular_polygon_chain",
          [](int n, double r) { return points_of(regular_polygon_chain(n, r)); });
    m.def("sample_good_chain", [](const GoodPair& gp, int n, std::uint64_t seed, bool convex) {
        return points_of(sample_good_chain(gp, n, seed, convex));
    });

    m.def("op_norm", &op_norm);
    m.def("ap_residual", [](const std::vector<std::array<double, 4>>& mats) {
        std::vector<Mat2> ms;
        ms.reserve(mats.size());
        for (const auto& e : mats)
            ms.emplace_back(e[0], e[1], e[2], e[3]);
        return ap_residual(MatChain(std::move(ms)));
    });
    m.def("stable_length_lb", &stable_length_lb);

    m.def("h3_dist", [](std::array<double, 3> p, std::array<double, 3> q) {
        return h3_dist(H3Point{p[0], p[1], p[2]}, H3Point{q[0], q[1], q[2]});
    });

    m.def("verify_cat_comparison_h2", [](const std::vector<std::pair<double, double>>& pts) {
        const CatReport r = verify_cat_comparison(MetricChain::from_h2(chain_from_pairs(pts)));
        return py::make_tuple(r.tau_source, r.tau_image, r.ok);
    });
}
