#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dynsamp/conditions.hpp"
#include "dynsamp/discretization.hpp"
#include "dynsamp/scenario.hpp"

namespace py = pybind11;
using namespace dynsamp;

namespace {

std::vector<hardy::DiscPoint> to_disc(const std::vector<cplx>& values) {
    std::vector<hardy::DiscPoint> pts;
    pts.reserve(values.size());
    for (cplx v : values) pts.emplace_back(v);
    return pts;
}

std::vector<hardy::HalfPlanePoint> to_halfplane(const std::vector<cplx>& values) {
    std::vector<hardy::HalfPlanePoint> pts;
    pts.reserve(values.size());
    for (cplx v : values) pts.emplace_back(v);
    return pts;
}

py::dict bounds_dict(const FrameBounds& fb) {
    py::dict d;
    d["lower"] = fb.lower;
    d["upper"] = fb.upper;
    d["dimension"] = fb.dimension;
    d["numerically_zero"] = fb.numerically_zero;
    return d;
}

}  // namespace

PYBIND11_MODULE(_dynsamp, m) {
    m.doc() = "Frame analysis for continuous-time dynamical sampling systems";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

    // Hardy-space primitives
    m.def("mobius", &hardy::mobius, py::arg("z"),
          "Self-inverse Moebius map h(z) = (1 - z)/(1 + z)");
    m.def(
        "kernel_disc",
        [](cplx s, cplx z) { return hardy::kernel_disc(hardy::DiscPoint(s), hardy::DiscPoint(z)); },
        py::arg("s"), py::arg("z"));
    m.def(
        "kernel_halfplane",
        [](cplx s, cplx z) {
            return hardy::kernel_halfplane(hardy::HalfPlanePoint(s), hardy::HalfPlanePoint(z));
        },
        py::arg("s"), py::arg("z"));
    m.def(
        "pseudo_hyperbolic",
        [](cplx z, cplx w) {
            return hardy::pseudo_hyperbolic(hardy::DiscPoint(z), hardy::DiscPoint(w));
        },
        py::arg("z"), py::arg("w"));
    m.def(
        "gram_disc",
        [](const std::vector<cplx>& pts) { return hardy::gram(to_disc(pts)).entries; },
        py::arg("points"));
    m.def(
        "gram_halfplane",
        [](const std::vector<cplx>& pts) { return hardy::gram(to_halfplane(pts)).entries; },
        py::arg("points"));

    // Quadratic forms and frame bounds
    m.def(
        "quadform_continuous",
        [](const std::vector<cplx>& lambdas, const Eigen::MatrixXcd& g) {
            return quadform_continuous(Spectrum::from_values(lambdas),
                                       make_vector_set(g, VectorKind::continuous_g))
                .matrix;
        },
        py::arg("lambdas"), py::arg("g"),
        "Closed-form matrix of the continuous sampling energy");
    m.def(
        "quadform_discrete",
        [](const std::vector<cplx>& etas, const Eigen::MatrixXcd& a) {
            return quadform_discrete(to_disc(etas), make_vector_set(a, VectorKind::discrete_a))
                .matrix;
        },
        py::arg("etas"), py::arg("a"),
        "Closed-form matrix of the discrete sampling energy");
    m.def(
        "cayley_transform",
        [](const std::vector<cplx>& lambdas, const Eigen::MatrixXcd& g) {
            const CayleyData data = cayley_transform_vectors(
                Spectrum::from_values(lambdas), make_vector_set(g, VectorKind::continuous_g));
            std::vector<cplx> etas;
            for (const auto& e : data.etas) etas.push_back(e.value());
            return py::make_tuple(etas, data.a.coeffs);
        },
        py::arg("lambdas"), py::arg("g"),
        "Returns (etas, a) with eta_j = h(lambda_j), a^i_j = sqrt(2)/(1+lambda_j) g^i_j");
    m.def(
        "frame_bounds",
        [](const Eigen::MatrixXcd& matrix) {
            return bounds_dict(frame_bounds(QuadForm{matrix, QuadSource::continuous}));
        },
        py::arg("matrix"), "Extreme eigenvalues of a Hermitian quadratic form");
    m.def(
        "sampled_quadform_uniform",
        [](const std::vector<cplx>& lambdas, const Eigen::MatrixXcd& g, double step) {
            return sampled_quadform(Spectrum::from_values(lambdas),
                                    make_vector_set(g, VectorKind::continuous_g),
                                    TimeGrid::uniform(step))
                .matrix;
        },
        py::arg("lambdas"), py::arg("g"), py::arg("step"));
    m.def(
        "sampled_quadform_finite",
        [](const std::vector<cplx>& lambdas, const Eigen::MatrixXcd& g,
           const std::vector<double>& points) {
            return sampled_quadform(Spectrum::from_values(lambdas),
                                    make_vector_set(g, VectorKind::continuous_g),
                                    TimeGrid::finite(points))
                .matrix;
        },
        py::arg("lambdas"), py::arg("g"), py::arg("points"));

    // Structural conditions
    m.def(
        "carleson_constant",
        [](const std::vector<cplx>& etas) {
            return carleson_test(to_disc(etas), 50.0).constant_estimate;
        },
        py::arg("etas"));
    m.def(
        "full_theorem_check",
        [](const std::vector<cplx>& lambdas, const Eigen::MatrixXcd& g) {
            const ConditionReport report =
                full_theorem_check(Spectrum::from_values(lambdas),
                                   make_vector_set(g, VectorKind::continuous_g));
            py::dict d;
            d["carleson"] = report.carleson.is_carleson;
            d["carleson_constant"] = report.carleson.constant_estimate;
            d["separation"] = report.separation.satisfied;
            d["cluster"] = report.cluster.satisfied;
            d["structural_verdict"] = report.structural_verdict;
            d["frame_bounds"] = bounds_dict(report.numerical);
            d["verdicts_agree"] = report.verdicts_agree;
            return d;
        },
        py::arg("lambdas"), py::arg("g"));

    // Scenario pipeline
    m.def(
        "analyze",
        [](const std::string& scenario_json) {
            return run_analyze(parse_scenario(scenario_json)).payload.dump(2);
        },
        py::arg("scenario_json"), "Run the analysis pipeline; returns the JSON report text");
    m.def(
        "reconstruct",
        [](const std::string& scenario_json, int trials) {
            ReconstructOptions options;
            options.trials = trials;
            return run_reconstruct(parse_scenario(scenario_json), options).payload.dump(2);
        },
        py::arg("scenario_json"), py::arg("trials") = 1,
        "Least-squares recovery from noisy space-time samples; returns the JSON report text");
}
