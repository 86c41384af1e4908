// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/goodness_of_fit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cauchyrician/detail/kahan.hpp"
#include "cauchyrician/errors.hpp"
#include "cauchyrician/rng.hpp"
#include "cauchyrician/sampling.hpp"

namespace cauchyrician {
namespace {

double empirical_quantile(std::vector<double> sorted, double q) {
    // order statistic at ceil(q n), 1-based
    const std::size_t n = sorted.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 1, n);
    std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
    return sorted[k - 1];
}

}  // namespace

double kl_divergence(std::span<const double> data, const std::function<double(double)>& model_pdf,
                     const HistogramSpec& spec) {
    if (data.empty()) throw DataError("kl_divergence: empty data");
    if (spec.bin_count < 2 || spec.bin_count > 1'000'000 ||
        !(spec.upper_quantile > 0.0 && spec.upper_quantile <= 1.0) ||
        !(spec.floor_epsilon > 0.0)) {
        throw std::invalid_argument("kl_divergence: invalid histogram spec");
    }
    const double upper = empirical_quantile({data.begin(), data.end()}, spec.upper_quantile);
    if (!(upper > 0.0)) throw DataError("kl_divergence: degenerate binning range");

    const int bins = spec.bin_count;
    const double width = upper / bins;

    std::vector<double> p(bins, 0.0);
    std::size_t in_range = 0;
    for (double x : data) {
        if (x < 0.0 || x > upper) continue;
        int j = static_cast<int>(x / width);
        j = std::min(j, bins - 1);
        p[static_cast<std::size_t>(j)] += 1.0;
        ++in_range;
    }
    if (in_range == 0) throw DataError("kl_divergence: no data in binning range");
    for (double& v : p) v /= static_cast<double>(in_range);

    // Model bin masses by 17-node trapezoid; a non-finite endpoint value
    // (integrable singularity, e.g. Weibull shape < 1 at x = 0) is resampled
    // just inside the bin.
    std::vector<double> q(bins, 0.0);
    detail::KahanSum mass;
    for (int j = 0; j < bins; ++j) {
        const double lo = j * width, hi = (j + 1) * width;
        const double step = (hi - lo) / 16.0;
        double acc = 0.0;
        for (int i = 0; i <= 16; ++i) {
            double xi = lo + i * step;
            double f = model_pdf(xi);
            if (!std::isfinite(f)) {
                f = model_pdf(xi + (i == 0 ? 1.0 : -1.0) * 1e-3 * step);
            }
            acc += (i == 0 || i == 16) ? 0.5 * f : f;
        }
        q[static_cast<std::size_t>(j)] = acc * step;
        mass.add(q[static_cast<std::size_t>(j)]);
    }
    const double total = mass.result();
    if (!(total >= 1e-6)) {
        throw DataError("kl_divergence: model leaves < 1e-6 mass on the data range");
    }
    for (double& v : q) v /= total;

    const auto floor_and_normalize = [&](std::vector<double>& v) {
        double s = 0.0;
        for (double& e : v) {
            e = std::max(e, spec.floor_epsilon);
            s += e;
        }
        for (double& e : v) e /= s;
    };
    floor_and_normalize(p);
    floor_and_normalize(q);

    detail::KahanSum kl;
    for (int j = 0; j < bins; ++j) {
        kl.add(p[j] * std::log(p[j] / q[j]));
    }
    return std::max(kl.result(), 0.0);
}

std::vector<double> arithmetic_grid(double start, double step, double stop) {
    if (!(start > 0.0) || !(step > 0.0) || stop < start) {
        throw std::invalid_argument("arithmetic_grid: need 0 < start <= stop, step > 0");
    }
    std::vector<double> g;
    for (double v = start; v <= stop + 1e-9 * step; v += step) g.push_back(v);
    return g;
}

MseSurface run_grid_experiment(const GridExperimentConfig& cfg) {
    if (cfg.repeats < 1) throw std::invalid_argument("run_grid_experiment: repeats must be >= 1");
    if (cfg.samples_per_cell == 0) {
        throw std::invalid_argument("run_grid_experiment: samples_per_cell must be >= 1");
    }
    if (cfg.gamma_grid.empty() || cfg.delta_grid.empty()) {
        throw std::invalid_argument("run_grid_experiment: empty grid");
    }
    for (const auto* grid : {&cfg.gamma_grid, &cfg.delta_grid}) {
        for (std::size_t i = 0; i < grid->size(); ++i) {
            if (!((*grid)[i] > 0.0) || (i > 0 && (*grid)[i] <= (*grid)[i - 1])) {
                throw std::invalid_argument("run_grid_experiment: grids must be positive increasing");
            }
        }
    }

    MseSurface surface{cfg, {}};
    surface.cells.reserve(cfg.gamma_grid.size() * cfg.delta_grid.size());
    for (std::size_t i = 0; i < cfg.gamma_grid.size(); ++i) {
        for (std::size_t j = 0; j < cfg.delta_grid.size(); ++j) {
            const CrParams truth(cfg.gamma_grid[i], cfg.delta_grid[j]);
            MseCell cell{truth.gamma, truth.delta, 0.0, 0.0, 0.0, 0.0, 0};
            for (int r = 0; r < cfg.repeats; ++r) {
                const std::uint64_t cell_seed = derive_seed(
                    derive_seed(derive_seed(cfg.master_seed, i), j), static_cast<std::uint64_t>(r));
                const SampleBatch batch =
                    sample_amplitude(truth, cfg.samples_per_cell, cell_seed);
                const MomentConstant a = cfg.a_mode == AMode::fixed
                                             ? MomentConstant(cfg.a_fixed)
                                             : choose_a(batch.amplitudes, cfg.a_mode);
                const ParamEstimate est = estimate(batch.amplitudes, a);
                cell.gamma_hat_mean += est.gamma_hat;
                cell.delta_hat_mean += est.delta_hat;
                cell.gamma_mse += (est.gamma_hat - truth.gamma) * (est.gamma_hat - truth.gamma);
                cell.delta_mse += (est.delta_hat - truth.delta) * (est.delta_hat - truth.delta);
                if (est.diagnostics.delta_clamped) ++cell.clamp_count;
            }
            const double inv_r = 1.0 / cfg.repeats;
            cell.gamma_hat_mean *= inv_r;
            cell.delta_hat_mean *= inv_r;
            cell.gamma_mse *= inv_r;
            cell.delta_mse *= inv_r;
            surface.cells.push_back(cell);
        }
    }
    return surface;
}

BenchmarkReport benchmark_fit(std::size_t n, const CrParams& p, int repeats, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("benchmark_fit: n must be >= 1");
    if (repeats < 1) throw std::invalid_argument("benchmark_fit: repeats must be >= 1");
    const SampleBatch batch = sample_amplitude(p, n, seed);
    const MomentConstant a = choose_a(batch.amplitudes);  // outside the timed region

    std::vector<double> us;
    us.reserve(static_cast<std::size_t>(repeats));
    volatile double sink = 0.0;  // keep the fit from being optimized away
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const ParamEstimate est = estimate(batch.amplitudes, a);
        const auto t1 = std::chrono::steady_clock::now();
        sink = sink + est.gamma_hat + est.delta_hat;
        us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    (void)sink;
    std::vector<double> sorted = us;
    std::sort(sorted.begin(), sorted.end());
    detail::KahanSum total;
    for (double v : us) total.add(v);
    BenchmarkReport rep{};
    rep.n = n;
    rep.repeats = repeats;
    rep.mean_us = total.result() / repeats;
    rep.min_us = sorted.front();
    rep.median_us = sorted[sorted.size() / 2];
    rep.gamma = p.gamma;
    rep.delta = p.delta;
    rep.seed = seed;
    rep.machine = std::to_string(std::thread::hardware_concurrency()) + " hw threads, " +
#if defined(__clang__)
                  "clang " __clang_version__;
#elif defined(__GNUC__)
                  "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__);
#else
                  "unknown compiler";
#endif
    return rep;
}

}  // namespace cauchyrician
