// Python bindings for the restriction-to-curves laboratory. Rationals
// cross the boundary as "num/den" strings so exactness survives.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arl/curves.hpp"
#include "arl/exponents.hpp"
#include "arl/extension.hpp"
#include "arl/interpolation.hpp"
#include "arl/measure.hpp"
#include "arl/rng.hpp"
#include "arl/stepfn.hpp"

namespace py = pybind11;
using namespace arl;

namespace {

Curve make_curve(const std::string& family, std::vector<double> params, int dim, double lo, double hi) {
    if (family == "monomial") return Curve::monomial(std::move(params), lo, hi);
    if (family == "simple_poly") return Curve::simple_polynomial(dim, std::move(params), lo, hi);
    if (family == "exponential") return Curve::exponential(std::move(params), lo, hi);
    if (family == "model") return Curve::model(dim, lo, hi);
    throw std::invalid_argument("unknown curve family: " + family);
}

std::vector<Rational> parse_rats(const std::vector<std::string>& v) {
    std::vector<Rational> out;
    for (const auto& s : v) out.push_back(Rational::parse(s));
    return out;
}

}  // namespace

PYBIND11_MODULE(arlab, m) {
    m.doc() = "numerical laboratory for Fourier restriction to curves with affine arclength measure";

    py::class_<Curve>(m, "Curve")
        .def(py::init(&make_curve), py::arg("family"), py::arg("params") = std::vector<double>{},
             py::arg("dim") = 0, py::arg("t_lo") = 0.0, py::arg("t_hi") = 1.0)
        .def_property_readonly("dim", &Curve::dim)
        .def_property_readonly("t_lo", &Curve::t_lo)
        .def_property_readonly("t_hi", &Curve::t_hi)
        .def("position", &Curve::position, py::arg("t"))
        .def("derivative", &Curve::derivative, py::arg("t"), py::arg("order"))
        .def("torsion", &Curve::torsion, py::arg("t"))
        .def("torsion_closed_form", &Curve::torsion_closed_form, py::arg("t"))
        .def("affine_weight", &Curve::affine_weight, py::arg("t"));

    py::class_<OffspringCurve>(m, "OffspringCurve")
        .def(py::init([](const Curve& parent, std::vector<double> kappa) {
                 return OffspringCurve(parent, OffspringSpec::make(std::move(kappa), parent));
             }),
             py::arg("parent"), py::arg("kappa"))
        .def_property_readonly("t_lo", &OffspringCurve::t_lo)
        .def_property_readonly("t_hi", &OffspringCurve::t_hi)
        .def("torsion", &OffspringCurve::torsion, py::arg("t"))
        .def("torsion_closed_form", &OffspringCurve::torsion_closed_form, py::arg("t"))
        .def("affine_weight", &OffspringCurve::affine_weight, py::arg("t"));

    m.def("jacobian", [](const Curve& c, std::vector<double> t) { return jacobian_raw(c, t); }, py::arg("curve"),
          py::arg("t"));

    m.def(
        "check_jacobian_bound",
        [](const Curve& c, std::uint64_t n, std::uint64_t seed) {
            auto r = check_jacobian_bound(c, n, seed);
            py::dict d;
            d["min_ratio"] = r.min_ratio;
            d["max_ratio"] = r.max_ratio;
            d["ratio_variance"] = r.ratio_variance;
            d["degenerate_family"] = r.degenerate_family;
            d["samples"] = r.samples;
            return d;
        },
        py::arg("curve"), py::arg("n_samples"), py::arg("seed"));

    m.def(
        "vandermonde_sublevel",
        [](int d, std::vector<double> alphas, double box, std::uint64_t n, std::uint64_t seed) {
            auto ladder = vandermonde_sublevel_ladder(d, alphas, box, n, seed);
            py::list out;
            for (const auto& e : ladder) {
                py::dict row;
                row["alpha"] = e.alpha;
                row["estimate"] = e.estimate;
                row["std_error"] = e.std_error;
                out.append(row);
            }
            return out;
        },
        py::arg("d"), py::arg("alphas"), py::arg("box_halfwidth"), py::arg("n_mc"), py::arg("seed"));

    m.def(
        "polynomial_sublevel_check",
        [](std::vector<double> coeffs, double a, double b, double eps) {
            auto r = polynomial_sublevel_check(Poly(std::move(coeffs)), a, b, eps);
            return py::make_tuple(r.measured, r.bound, r.within_bound);
        },
        py::arg("coeffs"), py::arg("a"), py::arg("b"), py::arg("eps"));

    m.def(
        "lorentz_quasinorm",
        [](std::vector<std::pair<double, double>> pieces, double p, double q) {
            std::vector<StepPiece> sp;
            for (auto [v, mass] : pieces) sp.push_back({v, mass});
            return lorentz_quasinorm(StepFunction(std::move(sp)), p, q);
        },
        py::arg("pieces"), py::arg("p"), py::arg("q"));

    m.def(
        "k_functional",
        [](std::map<int, double> entries, double p0, double s0, double p1, double s1, double t) {
            auto k = k_functional(WeightedSequence(std::move(entries)), SpaceCouple{{p0, s0}, {p1, s1}}, t);
            return py::make_tuple(k.value, k.exact);
        },
        py::arg("entries"), py::arg("p0"), py::arg("s0"), py::arg("p1"), py::arg("s1"), py::arg("t"));

    m.def(
        "interpolation_norm",
        [](std::map<int, double> entries, double p0, double s0, double p1, double s1, double theta, double q) {
            return interpolation_norm(WeightedSequence(std::move(entries)), SpaceCouple{{p0, s0}, {p1, s1}}, theta,
                                      q);
        },
        py::arg("entries"), py::arg("p0"), py::arg("s0"), py::arg("p1"), py::arg("s1"), py::arg("theta"),
        py::arg("q"));

    m.def("endpoint_exponents", [](int d) {
        auto e = endpoint_exponents(d);
        py::dict out;
        out["p_d"] = e.p_d.to_string();
        out["Q"] = e.Q.to_string();
        out["p_d_conjugate"] = e.p_d_conjugate.to_string();
        out["sigma_of_p_d"] = e.sigma_of_p_d.to_string();
        out["identities_pass"] = e.conjugate_equals_Q && e.sigma_fixed_point;
        out["endpoint_known_to_fail"] = e.endpoint_known_to_fail;
        return out;
    });

    m.def(
        "drury_iteration",
        [](int d, const std::string& p0, int max_iter) {
            auto r = drury_iteration(d, Rational::parse(p0), max_iter);
            py::dict out;
            out["limit"] = r.limit.to_string();
            out["theta_min"] = r.theta_min.to_string();
            out["monotone"] = r.monotone;
            out["steps_to_1e30"] = r.steps_to_1e30;
            return out;
        },
        py::arg("d"), py::arg("p0") = "2", py::arg("max_iter") = 100);

    m.def(
        "birkhoff_decompose",
        [](std::vector<std::vector<std::string>> entries) {
            std::vector<std::vector<Rational>> rows;
            for (auto& row : entries) rows.push_back(parse_rats(row));
            auto terms = birkhoff_decompose(DSMatrix::from_entries(std::move(rows)));
            py::list out;
            for (const auto& t : terms) out.append(py::make_tuple(t.coeff.to_string(), t.perm));
            return out;
        },
        py::arg("entries"));

    m.def(
        "knapp_ratio_scan",
        [](const Curve& c, double t, std::vector<double> hs) {
            auto reps = knapp_ratio_scan(c, t, hs);
            py::list out;
            for (const auto& r : reps) {
                py::dict row;
                row["h"] = r.h;
                row["volume"] = r.volume;
                row["ratio"] = r.ratio;
                out.append(row);
            }
            return out;
        },
        py::arg("curve"), py::arg("t"), py::arg("h_ladder"));

    m.def(
        "extension_eval",
        [](const Curve& c, const std::function<double(double)>& f, std::vector<double> x, int quad_n) {
            auto v = extension_eval(c, f, x, quad_n);
            return py::make_tuple(std::complex<double>(v.value), v.error_estimate);
        },
        py::arg("curve"), py::arg("f"), py::arg("x"), py::arg("quad_n") = 64);

    m.def("weak_norm_estimate", &weak_norm_estimate, py::arg("abs_values"), py::arg("cell_volumes"), py::arg("Q"));
}
