// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cauchyrician/distribution.hpp"
#include "cauchyrician/estimation.hpp"

namespace cauchyrician {

/// Binning contract shared by KL scoring and plot-data emission. The range
/// is [0, upper] with upper the empirical quantile of the data; the sample
/// maximum of an x^-2 tail is too unstable to bin against.
struct HistogramSpec {
    int bin_count = 100;
    double upper_quantile = 0.999;
    double floor_epsilon = 1e-12;
};

/// KL(empirical || model) over the spec's bins. Model bin masses are
/// integrated (17-node trapezoid per bin), both sides renormalized over the
/// covered range and floored at floor_epsilon. Throws DataError when the
/// model leaves less than 1e-6 mass on the range.
double kl_divergence(std::span<const double> data, const std::function<double(double)>& model_pdf,
                     const HistogramSpec& spec = {});

std::vector<double> arithmetic_grid(double start, double step, double stop);

struct GridExperimentConfig {
    std::vector<double> gamma_grid = arithmetic_grid(5, 5, 150);
    std::vector<double> delta_grid = arithmetic_grid(5, 5, 200);
    std::size_t samples_per_cell = 40000;
    int repeats = 1;
    std::uint64_t master_seed = 0;
    AMode a_mode = AMode::mean;
    double a_fixed = 1.0;
};

struct MseCell {
    double gamma_true;
    double delta_true;
    double gamma_hat_mean;
    double delta_hat_mean;
    double gamma_mse;
    double delta_mse;
    int clamp_count;
};

struct MseSurface {
    GridExperimentConfig config;
    std::vector<MseCell> cells;  // row-major over (gamma, delta)
};

/// Synthetic grid experiment: per cell and repeat, the batch seed is
/// derive(derive(derive(master_seed, row), col), repeat), so any cell is
/// reproducible in isolation and scheduling cannot change the result.
MseSurface run_grid_experiment(const GridExperimentConfig& cfg);

struct BenchmarkReport {
    std::size_t n;
    int repeats;
    double mean_us;
    double min_us;
    double median_us;
    double gamma;
    double delta;
    std::uint64_t seed;
    std::string machine;
};

/// Wall-clock of estimate() alone (moments + closed-form solve; generation
/// and the a heuristic excluded), single-threaded.
BenchmarkReport benchmark_fit(std::size_t n, const CrParams& p, int repeats,
                              std::uint64_t seed = 0x9e3779b9);

}  // namespace cauchyrician
