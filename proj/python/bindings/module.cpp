// pybind11 surface over the core library. Matrices cross the boundary as
// flat row-major lists of complex numbers together with the dimension;
// observables stay opaque so the parameter bookkeeping cannot be bypassed.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "projqm/algebra.hpp"
#include "projqm/dynamics.hpp"
#include "projqm/errors.hpp"
#include "projqm/geometry.hpp"
#include "projqm/maps.hpp"
#include "projqm/measures.hpp"
#include "projqm/verify.hpp"

namespace py = pybind11;
using namespace projqm;

namespace {

ComplexMatrix to_matrix(const std::vector<Complex>& flat, std::size_t n) {
    if (flat.size() != n * n)
        throw DimensionError("expected " + std::to_string(n * n) + " entries for an " +
                             std::to_string(n) + " x " + std::to_string(n) + " matrix, got " +
                             std::to_string(flat.size()));
    ComplexMatrix m(n);
    m.data() = flat;
    return m;
}

std::vector<Complex> to_flat(const ComplexMatrix& m) { return m.data(); }

PurePoint to_point(const std::vector<Complex>& psi) { return PurePoint::normalized(psi); }

py::dict bounds_dict(const BoundsResult& b) {
    py::dict d;
    d["min"] = b.min_f;
    d["max"] = b.max_f;
    d["range_inside_spectrum"] = b.o5_holds;
    d["sup_norm"] = b.sup_norm;
    d["sup_bound"] = b.sup_bound;
    d["sup_bound_holds"] = b.sup_bound_holds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "geometric formulation of finite-dimensional quantum mechanics";
    m.attr("__version__") = "1.0.0";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<AffineObservable>(m, "Observable",
                                 "affine function of the projector, f(p) = tr(pK) + b")
        .def_property_readonly("n",
                               [](const AffineObservable& f) { return f.params().dimension(); })
        .def_property_readonly("kappa",
                               [](const AffineObservable& f) { return f.params().kappa(); })
        .def_property_readonly("offset", &AffineObservable::offset)
        .def("kernel", [](const AffineObservable& f) { return to_flat(f.kernel()); })
        .def("evaluate",
             [](const AffineObservable& f, const std::vector<Complex>& psi) {
                 return f.evaluate(to_point(psi));
             },
             py::arg("psi"))
        .def("frame_weight", &AffineObservable::frame_weight)
        .def("is_real", &AffineObservable::is_real, py::arg("tol") = 1e-10)
        .def("conj", &AffineObservable::conj);

    m.def(
        "quantize",
        [](const std::vector<Complex>& a, std::size_t n, double kappa) {
            return quantize_inverse(HermitianOperator(to_matrix(a, n)), QuantParams(n, kappa));
        },
        py::arg("matrix"), py::arg("n"), py::arg("kappa"),
        "map a Hermitian operator (flat row-major) to its affine observable");

    m.def(
        "dequantize",
        [](const AffineObservable& f, double tol) { return to_flat(dequantize(f, tol)); },
        py::arg("observable"), py::arg("tol") = 1e-8,
        "invert a canonically stored observable back to its operator");

    m.def("star", &star_operator, py::arg("f"), py::arg("g"),
          "noncommutative product of two observables");
    m.def("jordan", &jordan, py::arg("f"), py::arg("g"));
    m.def("lie", &lie, py::arg("f"), py::arg("g"));
    m.def("poisson", &poisson, py::arg("f"), py::arg("g"));
    m.def("cstar_norm", &cstar_norm, py::arg("f"));
    m.def("integral_mean", &integral_mean, py::arg("f"), "Haar mean over pure states");
    m.def("integral_product", &integral_product, py::arg("f"), py::arg("g"),
          "closed-form Haar mean of the pointwise product");
    m.def(
        "star_at",
        [](const AffineObservable& f, const AffineObservable& g, const std::vector<Complex>& psi) {
            return star_geometric(f, g, to_point(psi));
        },
        py::arg("f"), py::arg("g"), py::arg("psi"),
        "pointwise product value assembled from the geometric data");

    m.def(
        "eig_hermitian",
        [](const std::vector<Complex>& a, std::size_t n) {
            const EigenDecomposition d = eig_hermitian(to_matrix(a, n));
            return py::make_tuple(d.values, to_flat(d.vectors));
        },
        py::arg("matrix"), py::arg("n"),
        "ascending eigenvalues and phase-fixed eigenvector columns");

    m.def(
        "bounds",
        [](const std::vector<Complex>& a, std::size_t n, double kappa) {
            return bounds_dict(bounds(HermitianOperator(to_matrix(a, n)), QuantParams(n, kappa)));
        },
        py::arg("matrix"), py::arg("n"), py::arg("kappa"),
        "closed-form range of the quantized operator");

    m.def(
        "positivity",
        [](std::size_t n, double kappa, std::size_t trials, std::uint64_t seed) {
            const PositivityResult r =
                positivity_check(QuantParams(n, kappa), trials, SeededSampler(seed));
            py::dict d;
            d["always_nonneg"] = r.always_nonneg;
            d["analytic_worst"] = r.analytic_worst;
            d["observed_worst"] = r.observed_worst;
            d["negative_witness"] = r.negative_witness;
            return d;
        },
        py::arg("n"), py::arg("kappa"), py::arg("trials") = 2000, py::arg("seed") = 42,
        "scan state densities for negative values");

    m.def(
        "exact_integral",
        [](const std::vector<Complex>& a, std::size_t n) {
            return exact_integral(to_matrix(a, n));
        },
        py::arg("matrix"), py::arg("n"));
    m.def(
        "exact_integral_pair",
        [](const std::vector<Complex>& a, const std::vector<Complex>& b, std::size_t n) {
            return exact_integral_pair(to_matrix(a, n), to_matrix(b, n));
        },
        py::arg("a"), py::arg("b"), py::arg("n"));
    m.def(
        "mc_integral_pair",
        [](const std::vector<Complex>& a, const std::vector<Complex>& b, std::size_t n,
           std::size_t samples, std::uint64_t seed) {
            const ComplexMatrix am = to_matrix(a, n), bm = to_matrix(b, n);
            const McEstimate e = mc_integrate(
                [&](const PurePoint& p) {
                    return std::conj(p.expectation(am)) * p.expectation(bm);
                },
                samples, SeededSampler(seed), n);
            return py::make_tuple(e.mean, e.std_error);
        },
        py::arg("a"), py::arg("b"), py::arg("n"), py::arg("samples") = 10000,
        py::arg("seed") = 42, "Monte Carlo second moment with its standard error");

    m.def(
        "sample_points",
        [](std::size_t n, std::size_t count, std::uint64_t seed) {
            SeededSampler s(seed);
            std::vector<std::vector<Complex>> out;
            out.reserve(count);
            for (std::size_t k = 0; k < count; ++k) out.push_back(sample_pure(s, n).amplitudes());
            return out;
        },
        py::arg("n"), py::arg("count") = 1, py::arg("seed") = 42,
        "draws from the invariant measure on pure points");

    m.def(
        "evolve",
        [](const std::vector<Complex>& h, std::size_t n, const std::vector<Complex>& psi0,
           double dt, double t_final, std::size_t stride, bool reproject) {
            FlowConfig cfg;
            cfg.dt = dt;
            cfg.t_final = t_final;
            cfg.stride = stride;
            cfg.reproject = reproject;
            const std::vector<FlowSample> traj =
                evolve_flow(to_point(psi0), HermitianOperator(to_matrix(h, n)), cfg);
            std::vector<std::pair<double, std::vector<Complex>>> out;
            out.reserve(traj.size());
            for (const FlowSample& fs : traj) out.emplace_back(fs.t, fs.point.amplitudes());
            return out;
        },
        py::arg("hamiltonian"), py::arg("n"), py::arg("psi0"), py::arg("dt") = 1e-3,
        py::arg("t_final") = 1.0, py::arg("stride") = 10, py::arg("reproject") = true,
        "integrate the Hamiltonian flow; returns (t, amplitudes) samples");

    m.def(
        "evolve_exact",
        [](const std::vector<Complex>& psi0, const std::vector<Complex>& h, std::size_t n,
           double t) {
            return evolve_exact(to_point(psi0), HermitianOperator(to_matrix(h, n)), t)
                .amplitudes();
        },
        py::arg("psi0"), py::arg("hamiltonian"), py::arg("n"), py::arg("t"),
        "spectral propagator");

    m.def(
        "gleason_fit",
        [](const std::vector<std::pair<std::vector<Complex>, Complex>>& samples, std::size_t n) {
            std::vector<std::pair<PurePoint, Complex>> data;
            data.reserve(samples.size());
            for (const auto& [psi, v] : samples) data.emplace_back(to_point(psi), v);
            const GleasonFit fit = gleason_fit(data, n);
            return py::make_tuple(to_flat(fit.op), fit.residual, fit.warnings);
        },
        py::arg("samples"), py::arg("n"),
        "least-squares operator reconstruction from (psi, value) samples");

    m.def(
        "verify",
        [](std::size_t n, double kappa, std::uint64_t seed, std::size_t samples, double tol) {
            VerifyConfig cfg;
            cfg.n = n;
            cfg.kappa = kappa;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.tol = tol;
            const VerifyReport rep = run_verify(cfg);
            py::list checks;
            for (const CheckResult& c : rep.checks) {
                py::dict d;
                d["id"] = c.id;
                d["violation"] = c.violation;
                d["threshold"] = c.threshold;
                d["status"] = std::string(to_string(c.status));
                checks.append(d);
            }
            py::dict out;
            out["all_passed"] = rep.all_passed;
            out["checks"] = checks;
            return out;
        },
        py::arg("n") = 3, py::arg("kappa") = 4.0, py::arg("seed") = 42,
        py::arg("samples") = 100000, py::arg("tol") = 1e-10,
        "run the built-in self-check suite");
}
