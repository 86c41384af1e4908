// SPDX-License-Identifier: Apache-2.0
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cauchyrician/baselines.hpp"
#include "cauchyrician/distribution.hpp"
#include "cauchyrician/estimation.hpp"
#include "cauchyrician/goodness_of_fit.hpp"
#include "cauchyrician/rng.hpp"
#include "cauchyrician/sampling.hpp"
#include "cauchyrician/special_functions.hpp"

namespace py = pybind11;
using namespace cauchyrician;

namespace {

py::dict estimate_dict(const ParamEstimate& est) {
    py::dict d;
    d["gamma_hat"] = est.gamma_hat;
    d["delta_hat"] = est.delta_hat;
    d["a_used"] = est.a_used;
    d["delta_clamped"] = est.diagnostics.delta_clamped;
    d["gamma_nonpositive"] = est.diagnostics.gamma_nonpositive;
    return d;
}

AMode parse_mode(const std::string& mode) {
    if (mode == "mean") return AMode::mean;
    if (mode == "median") return AMode::median;
    throw py::value_error("a-mode must be 'mean' or 'median'");
}

BaselineKind parse_kind(const std::string& kind) {
    if (kind == "rician") return BaselineKind::rician;
    if (kind == "weibull") return BaselineKind::weibull;
    if (kind == "lognormal") return BaselineKind::lognormal;
    if (kind == "g0") return BaselineKind::g0;
    throw py::value_error("unknown baseline kind: " + kind);
}

py::dict fit_dict(const BaselineFit& fit) {
    py::dict d;
    d["kind"] = kind_name(kind_of(fit.model));
    d["degenerate"] = fit.degenerate;
    d["method"] = fit.method;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RicianParams>) {
                d["nu"] = m.nu;
                d["sigma"] = m.sigma;
            } else if constexpr (std::is_same_v<T, WeibullParams>) {
                d["shape"] = m.shape;
                d["scale"] = m.scale;
            } else if constexpr (std::is_same_v<T, LogNormalParams>) {
                d["mu"] = m.mu;
                d["s"] = m.s;
            } else {
                d["alpha"] = m.alpha;
                d["gamma"] = m.gamma;
                d["looks"] = m.looks;
            }
        },
        fit.model);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cauchy-Rician amplitude distribution, sampler, and moment estimator";

    m.attr("generator_id") = kGeneratorId;

    // special functions
    m.def("ellip_e", &ellip_e, py::arg("k"),
          "Complete elliptic integral of the second kind (modulus convention).");
    m.def("bessel_j0", &bessel_j0, py::arg("x"));
    m.def("bessel_i0", &bessel_i0, py::arg("x"));
    m.def("bessel_i0_scaled", &bessel_i0_scaled, py::arg("x"));
    m.def("log_gamma", &log_gamma, py::arg("x"));

    // distribution
    m.def(
        "pdf", [](double g, double d, double x) { return pdf(CrParams(g, d), x); },
        py::arg("gamma"), py::arg("delta"), py::arg("x"));
    m.def(
        "log_pdf", [](double g, double d, double x) { return log_pdf(CrParams(g, d), x); },
        py::arg("gamma"), py::arg("delta"), py::arg("x"));
    m.def(
        "cdf",
        [](double g, double d, double x, double tol) { return cdf(CrParams(g, d), x, tol); },
        py::arg("gamma"), py::arg("delta"), py::arg("x"), py::arg("tol") = 1e-9);
    m.def(
        "pdf_oracle",
        [](double g, double d, double x, double abs_tol, double rel_tol) {
            OracleOptions opt;
            opt.abs_tol = abs_tol;
            opt.rel_tol = rel_tol;
            return pdf_oracle(CrParams(g, d), x, opt);
        },
        py::arg("gamma"), py::arg("delta"), py::arg("x"), py::arg("abs_tol") = 1e-10,
        py::arg("rel_tol") = 0.0);
    m.def(
        "moment1",
        [](double g, double d, double a) { return moment1(CrParams(g, d), MomentConstant(a)); },
        py::arg("gamma"), py::arg("delta"), py::arg("a"));
    m.def(
        "moment2",
        [](double g, double d, double a) { return moment2(CrParams(g, d), MomentConstant(a)); },
        py::arg("gamma"), py::arg("delta"), py::arg("a"));

    // sampling
    m.def(
        "sample_amplitude",
        [](double g, double d, std::size_t n, std::uint64_t seed) {
            return sample_amplitude(CrParams(g, d), n, seed).amplitudes;
        },
        py::arg("gamma"), py::arg("delta"), py::arg("n"), py::arg("seed"));
    m.def(
        "sample_complex",
        [](double g, double d, double d1, double d2, std::size_t n, std::uint64_t seed) {
            return sample_complex(CrParams(g, d), LocationDecomposition{d1, d2}, n, seed);
        },
        py::arg("gamma"), py::arg("delta"), py::arg("delta1"), py::arg("delta2"), py::arg("n"),
        py::arg("seed"));
    m.def("sample_isotropic_cauchy_radius", &sample_isotropic_cauchy_radius, py::arg("u"),
          py::arg("gamma"));

    // estimation
    m.def(
        "empirical_moments",
        [](const std::vector<double>& data, double a) {
            const MomentPair p = empirical_moments(data, MomentConstant(a));
            return py::make_tuple(p.e1, p.e2);
        },
        py::arg("data"), py::arg("a"));
    m.def(
        "estimate",
        [](const std::vector<double>& data, py::object a, const std::string& mode) {
            const MomentConstant c = a.is_none() ? choose_a(data, parse_mode(mode))
                                                 : MomentConstant(a.cast<double>());
            return estimate_dict(estimate(data, c));
        },
        py::arg("data"), py::arg("a") = py::none(), py::arg("a_mode") = "mean");
    m.def(
        "estimate_single_moment",
        [](const std::vector<double>& data, double a1, double a2) {
            return estimate_dict(
                estimate_single_moment(data, MomentConstant(a1), MomentConstant(a2)));
        },
        py::arg("data"), py::arg("a1"), py::arg("a2"));
    m.def(
        "choose_a",
        [](const std::vector<double>& data, const std::string& mode) {
            return choose_a(data, parse_mode(mode)).a;
        },
        py::arg("data"), py::arg("a_mode") = "mean");

    // baselines
    m.def(
        "fit_baseline",
        [](const std::string& kind, const std::vector<double>& data, double looks) {
            return fit_dict(fit_baseline(parse_kind(kind), data, looks));
        },
        py::arg("kind"), py::arg("data"), py::arg("g0_looks") = 1.0);
    m.def(
        "rician_pdf",
        [](double nu, double sigma, double x) {
            return baseline_pdf(RicianParams{nu, sigma}, x);
        },
        py::arg("nu"), py::arg("sigma"), py::arg("x"));
    m.def(
        "weibull_pdf",
        [](double shape, double scale, double x) {
            return baseline_pdf(WeibullParams{shape, scale}, x);
        },
        py::arg("shape"), py::arg("scale"), py::arg("x"));
    m.def(
        "lognormal_pdf",
        [](double mu, double s, double x) { return baseline_pdf(LogNormalParams{mu, s}, x); },
        py::arg("mu"), py::arg("s"), py::arg("x"));
    m.def(
        "g0_pdf",
        [](double alpha, double gamma, double looks, double x) {
            return baseline_pdf(G0Params{alpha, gamma, looks}, x);
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("looks"), py::arg("x"));

    // goodness of fit
    m.def(
        "kl_divergence",
        [](const std::vector<double>& data, const std::function<double(double)>& model_pdf,
           int bins, double quantile, double floor_epsilon) {
            HistogramSpec spec{bins, quantile, floor_epsilon};
            return kl_divergence(data, model_pdf, spec);
        },
        py::arg("data"), py::arg("model_pdf"), py::arg("bins") = 100,
        py::arg("quantile") = 0.999, py::arg("floor_epsilon") = 1e-12);
    m.def(
        "run_grid_experiment",
        [](const std::vector<double>& gammas, const std::vector<double>& deltas, std::size_t n,
           int repeats, std::uint64_t seed, const std::string& mode) {
            GridExperimentConfig cfg;
            cfg.gamma_grid = gammas;
            cfg.delta_grid = deltas;
            cfg.samples_per_cell = n;
            cfg.repeats = repeats;
            cfg.master_seed = seed;
            cfg.a_mode = parse_mode(mode);
            const MseSurface s = run_grid_experiment(cfg);
            py::list cells;
            for (const MseCell& c : s.cells) {
                py::dict d;
                d["gamma_true"] = c.gamma_true;
                d["delta_true"] = c.delta_true;
                d["gamma_hat_mean"] = c.gamma_hat_mean;
                d["delta_hat_mean"] = c.delta_hat_mean;
                d["gamma_mse"] = c.gamma_mse;
                d["delta_mse"] = c.delta_mse;
                d["clamp_count"] = c.clamp_count;
                cells.append(d);
            }
            return cells;
        },
        py::arg("gamma_grid"), py::arg("delta_grid"), py::arg("n") = 40000,
        py::arg("repeats") = 1, py::arg("seed") = 0, py::arg("a_mode") = "mean");
    m.def(
        "benchmark_fit",
        [](std::size_t n, double gamma, double delta, int repeats, std::uint64_t seed) {
            const BenchmarkReport r = benchmark_fit(n, CrParams(gamma, delta), repeats, seed);
            py::dict d;
            d["n"] = r.n;
            d["repeats"] = r.repeats;
            d["mean_us"] = r.mean_us;
            d["min_us"] = r.min_us;
            d["median_us"] = r.median_us;
            d["machine"] = r.machine;
            return d;
        },
        py::arg("n"), py::arg("gamma"), py::arg("delta"), py::arg("repeats") = 20,
        py::arg("seed") = 0x9e3779b9);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
