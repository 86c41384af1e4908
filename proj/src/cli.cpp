// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <span>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cauchyrician/baselines.hpp"
#include "cauchyrician/dataset.hpp"
#include "cauchyrician/distribution.hpp"
#include "cauchyrician/errors.hpp"
#include "cauchyrician/estimation.hpp"
#include "cauchyrician/goodness_of_fit.hpp"
#include "cauchyrician/rng.hpp"
#include "cauchyrician/sampling.hpp"

namespace cauchyrician {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutputDirEnv = "CRSAR_OUTPUT_DIR";

// 17 significant digits: enough for a lossless double round-trip.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

fs::path resolve_output(const std::string& raw) {
    fs::path p(raw);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            return fs::path(dir) / p;
        }
    }
    return p;
}

// write-to-temporary, rename-on-success; nothing partial survives a failure
void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    fs::create_directories(dir);
    fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

void emit(const std::string& raw_target, const std::string& content) {
    if (raw_target == "-") {
        std::cout << content;
        return;
    }
    atomic_write(resolve_output(raw_target), content);
}

void emit_sidecar(const std::string& raw_target, const json& config) {
    if (raw_target == "-") return;  // streams carry no sidecar
    const fs::path p = resolve_output(raw_target);
    atomic_write(fs::path(p.string() + ".json"), config.dump(2) + "\n");
}

struct InputFlags {
    std::string path;
    std::string format = "csv_amplitudes";
    std::size_t raster_width = 0;
    std::size_t raster_height = 0;
    std::vector<std::size_t> patch;  // row0 col0 rows cols

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", path, "input data file")->required();
        cmd->add_option("--format", format, "input format")
            ->check(CLI::IsMember({"csv_amplitudes", "raw_f64le", "raw_u16le_raster", "pgm_raster"}));
        cmd->add_option("--raster-width", raster_width, "raster width (raw_u16le_raster)");
        cmd->add_option("--raster-height", raster_height, "raster height (raw_u16le_raster)");
        cmd->add_option("--patch", patch, "patch geometry: row0 col0 rows cols")->expected(4);
    }

    InputDataset dataset() const {
        InputDataset d;
        d.path = path;
        if (format == "csv_amplitudes") d.format = DataFormat::csv_amplitudes;
        else if (format == "raw_f64le") d.format = DataFormat::raw_f64le;
        else if (format == "raw_u16le_raster") d.format = DataFormat::raw_u16le_raster;
        else d.format = DataFormat::pgm_raster;
        d.raster_width = raster_width;
        d.raster_height = raster_height;
        if (!patch.empty()) d.patch = PatchGeometry{patch[0], patch[1], patch[2], patch[3]};
        return d;
    }

    json config() const {
        json j{{"input", path}, {"format", format}};
        if (raster_width != 0) j["raster_width"] = raster_width;
        if (raster_height != 0) j["raster_height"] = raster_height;
        if (!patch.empty()) j["patch"] = patch;
        return j;
    }
};

struct AFlags {
    std::string mode = "mean";
    double value = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--a-mode", mode, "moment constant heuristic")
            ->check(CLI::IsMember({"mean", "median", "fixed"}));
        cmd->add_option("--a-value", value, "constant for --a-mode fixed");
    }

    MomentConstant pick(std::span<const double> data) const {
        if (mode == "fixed") return MomentConstant(value);
        return choose_a(data, mode == "mean" ? AMode::mean : AMode::median);
    }

    AMode amode() const {
        return mode == "mean" ? AMode::mean : (mode == "median" ? AMode::median : AMode::fixed);
    }
};

std::vector<double> parse_grid_spec(const std::string& spec) {
    double start = 0, step = 0, stop = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    ss >> start >> c1 >> step >> c2 >> stop;
    if (!ss || c1 != ':' || c2 != ':' || !ss.eof()) {
        throw CLI::ValidationError("grid", "grid spec must be start:step:stop, got '" + spec + "'");
    }
    return arithmetic_grid(start, step, stop);
}

json diagnostics_json(const ParamEstimate& est) {
    return json{{"delta_clamped", est.diagnostics.delta_clamped},
                {"gamma_nonpositive", est.diagnostics.gamma_nonpositive}};
}

// ---- subcommand bodies ------------------------------------------------

int cmd_fit(const InputFlags& in, const AFlags& aflags, const std::string& estimator,
            double a2_factor, const std::string& output) {
    const std::vector<double> data = load_dataset(in.dataset());
    const MomentConstant a = aflags.pick(data);

    const auto t0 = std::chrono::steady_clock::now();
    const ParamEstimate est =
        estimator == "single-moment"
            ? estimate_single_moment(data, a, MomentConstant(a.a * a2_factor))
            : estimate(data, a);
    const auto t1 = std::chrono::steady_clock::now();

    json j{{"gamma_hat", est.gamma_hat},
           {"delta_hat", est.delta_hat},
           {"a_used", est.a_used},
           {"n", data.size()},
           {"diagnostics", diagnostics_json(est)},
           {"time_us", std::chrono::duration<double, std::micro>(t1 - t0).count()},
           {"estimator", estimator},
           {"config", json{{"command", "fit"},
                           {"a_mode", aflags.mode},
                           {"a_value", aflags.value},
                           {"a2_factor", a2_factor},
                           {"input", in.config()}}}};
    emit(output, j.dump(2) + "\n");
    return 0;
}

int cmd_simulate(double gamma, double delta, std::size_t n, std::uint64_t seed,
                 const std::string& format, const std::string& output) {
    const CrParams p(gamma, delta);
    const SampleBatch batch = sample_amplitude(p, n, seed);

    std::string payload;
    if (format == "csv") {
        std::string s;
        s.reserve(batch.amplitudes.size() * 20);
        for (double v : batch.amplitudes) {
            s += fmt17(v);
            s += '\n';
        }
        payload = std::move(s);
    } else {  // raw_f64le
        payload.resize(batch.amplitudes.size() * 8);
        for (std::size_t i = 0; i < batch.amplitudes.size(); ++i) {
            std::uint64_t u = 0;
            static_assert(sizeof(double) == 8);
            std::memcpy(&u, &batch.amplitudes[i], 8);
            for (int b = 0; b < 8; ++b) {
                payload[8 * i + static_cast<std::size_t>(b)] =
                    static_cast<char>((u >> (8 * b)) & 0xff);
            }
        }
    }
    emit(output, payload);
    emit_sidecar(output, json{{"command", "simulate"},
                              {"gamma", gamma},
                              {"delta", delta},
                              {"n", n},
                              {"seed", seed},
                              {"format", format},
                              {"generator", kGeneratorId}});
    return 0;
}

int cmd_grid(const std::string& gamma_spec, const std::string& delta_spec, std::size_t n,
             int repeats, std::uint64_t seed, const AFlags& aflags, const std::string& output) {
    GridExperimentConfig cfg;
    cfg.gamma_grid = parse_grid_spec(gamma_spec);
    cfg.delta_grid = parse_grid_spec(delta_spec);
    cfg.samples_per_cell = n;
    cfg.repeats = repeats;
    cfg.master_seed = seed;
    cfg.a_mode = aflags.amode();
    cfg.a_fixed = aflags.value;

    const MseSurface surface = run_grid_experiment(cfg);
    std::string csv = "gamma_true,delta_true,gamma_hat_mean,delta_hat_mean,gamma_mse,delta_mse,"
                      "clamp_count\n";
    for (const MseCell& c : surface.cells) {
        csv += fmt17(c.gamma_true) + "," + fmt17(c.delta_true) + "," + fmt17(c.gamma_hat_mean) +
               "," + fmt17(c.delta_hat_mean) + "," + fmt17(c.gamma_mse) + "," +
               fmt17(c.delta_mse) + "," + std::to_string(c.clamp_count) + "\n";
    }
    emit(output, csv);
    emit_sidecar(output, json{{"command", "grid"},
                              {"gamma_grid", gamma_spec},
                              {"delta_grid", delta_spec},
                              {"n", n},
                              {"repeats", repeats},
                              {"seed", seed},
                              {"a_mode", aflags.mode},
                              {"a_value", aflags.value},
                              {"generator", kGeneratorId}});
    return 0;
}

int cmd_compare(const InputFlags& in, const AFlags& aflags, const HistogramSpec& spec,
                double g0_looks, const std::string& out_format, const std::string& output) {
    const std::vector<double> data = load_dataset(in.dataset());

    struct Row {
        std::string model;
        double kl = std::numeric_limits<double>::quiet_NaN();
        json params;
        std::string note;
    };
    std::vector<Row> rows;

    {
        Row r{"cauchy_rician", 0.0, {}, ""};
        const ParamEstimate est = estimate(data, aflags.pick(data));
        const CrParams p(std::max(est.gamma_hat, 1e-12), std::max(est.delta_hat, 0.0));
        r.params = json{{"gamma_hat", est.gamma_hat},
                        {"delta_hat", est.delta_hat},
                        {"a_used", est.a_used}};
        if (est.diagnostics.gamma_nonpositive) r.note = "gamma_nonpositive";
        r.kl = kl_divergence(data, [&](double x) { return pdf(p, x); }, spec);
        rows.push_back(std::move(r));
    }
    // fitters with a positive-support requirement see the positive subsample;
    // quantized rasters routinely carry exact zeros at the intensity floor
    std::vector<double> positive;
    positive.reserve(data.size());
    for (double x : data) {
        if (x > 0.0) positive.push_back(x);
    }
    const std::size_t dropped = data.size() - positive.size();

    for (BaselineKind kind : {BaselineKind::rician, BaselineKind::weibull, BaselineKind::lognormal,
                              BaselineKind::g0}) {
        Row r{kind_name(kind), std::numeric_limits<double>::quiet_NaN(), {}, ""};
        const bool needs_positive = kind != BaselineKind::rician;
        try {
            const BaselineFit fit =
                fit_baseline(kind, needs_positive ? std::span<const double>(positive)
                                                  : std::span<const double>(data),
                             g0_looks);
            std::visit(
                [&](const auto& m) {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, RicianParams>) {
                        r.params = json{{"nu", m.nu}, {"sigma", m.sigma}};
                    } else if constexpr (std::is_same_v<T, WeibullParams>) {
                        r.params = json{{"shape", m.shape}, {"scale", m.scale}};
                    } else if constexpr (std::is_same_v<T, LogNormalParams>) {
                        r.params = json{{"mu", m.mu}, {"s", m.s}};
                    } else {
                        r.params = json{{"alpha", m.alpha}, {"gamma", m.gamma}, {"looks", m.looks}};
                    }
                },
                fit.model);
            r.note = fit.degenerate ? "degenerate" : fit.method;
            if (needs_positive && dropped > 0) {
                r.note += " (fitted on " + std::to_string(positive.size()) + " positive of " +
                          std::to_string(data.size()) + " values)";
            }
            if (!fit.degenerate) {
                r.kl = kl_divergence(data, [&](double x) { return baseline_pdf(fit.model, x); },
                                     spec);
            }
        } catch (const std::exception& e) {
            r.note = e.what();
        }
        rows.push_back(std::move(r));
    }

    const json config{{"command", "compare"},   {"a_mode", aflags.mode},
                      {"a_value", aflags.value}, {"bins", spec.bin_count},
                      {"quantile", spec.upper_quantile}, {"floor_epsilon", spec.floor_epsilon},
                      {"g0_looks", g0_looks},    {"input", in.config()}};
    if (out_format == "json") {
        json jrows = json::array();
        for (const Row& r : rows) {
            jrows.push_back(json{{"model", r.model},
                                 {"kl", r.kl},
                                 {"params", r.params},
                                 {"note", r.note}});
        }
        emit(output, json{{"results", jrows}, {"config", config}}.dump(2) + "\n");
    } else {
        std::string csv = "model,kl,params,note\n";
        for (const Row& r : rows) {
            csv += r.model + "," + (std::isnan(r.kl) ? "nan" : fmt17(r.kl)) + "," +
                   csv_quote(r.params.dump()) + "," + csv_quote(r.note) + "\n";
        }
        emit(output, csv);
        emit_sidecar(output, config);
    }
    return 0;
}

int cmd_bench(std::size_t n, int repeats, double gamma, double delta, std::uint64_t seed,
              const std::string& output) {
    const BenchmarkReport rep = benchmark_fit(n, CrParams(gamma, delta), repeats, seed);
    json j{{"n", rep.n},
           {"repeats", rep.repeats},
           {"mean_us", rep.mean_us},
           {"min_us", rep.min_us},
           {"median_us", rep.median_us},
           {"machine", rep.machine},
           {"config",
            json{{"command", "bench"}, {"gamma", rep.gamma}, {"delta", rep.delta},
                 {"seed", rep.seed}, {"generator", kGeneratorId}}}};
    emit(output, j.dump(2) + "\n");
    return 0;
}

int cmd_pdf_table(double gamma, double delta, double x_max, std::size_t points,
                  const std::string& spacing, bool with_oracle, std::size_t oracle_budget,
                  const std::string& output) {
    const CrParams p(gamma, delta);
    if (points < 2) throw CLI::ValidationError("pdf-table", "--points must be >= 2");
    if (x_max <= 0.0) x_max = 10.0 * (gamma + delta + 1.0);
    OracleOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-9;
    opt.max_evals = oracle_budget;

    std::string csv = with_oracle ? "x,pdf,pdf_oracle\n" : "x,pdf\n";
    for (std::size_t i = 0; i < points; ++i) {
        double x = 0.0;
        if (spacing == "log") {
            const double x_min = x_max * 1e-6;
            x = x_min * std::pow(x_max / x_min,
                                 static_cast<double>(i) / static_cast<double>(points - 1));
        } else {
            x = x_max * static_cast<double>(i) / static_cast<double>(points - 1);
        }
        csv += fmt17(x) + "," + fmt17(pdf(p, x));
        if (with_oracle) csv += "," + fmt17(pdf_oracle(p, x, opt));
        csv += "\n";
    }
    emit(output, csv);
    emit_sidecar(output, json{{"command", "pdf-table"},
                              {"gamma", gamma},
                              {"delta", delta},
                              {"x_max", x_max},
                              {"points", points},
                              {"spacing", spacing},
                              {"oracle", with_oracle}});
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("crsar");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Cauchy-Rician amplitude modelling for SAR imagery"};
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "estimate (gamma, delta) from amplitudes");
    InputFlags fit_in;
    AFlags fit_a;
    std::string fit_estimator = "two-moment";
    double fit_a2_factor = 2.0;
    std::string fit_output = "-";
    fit_in.attach(fit);
    fit_a.attach(fit);
    fit->add_option("--estimator", fit_estimator, "estimator variant")
        ->check(CLI::IsMember({"two-moment", "single-moment"}));
    fit->add_option("--a2-factor", fit_a2_factor, "second constant factor (single-moment)");
    fit->add_option("--output,-o", fit_output, "output path or - for stdout");

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a seeded amplitude batch");
    double sim_gamma = 1.0, sim_delta = 0.0;
    std::size_t sim_n = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_format = "csv", sim_output = "-";
    sim->add_option("--gamma", sim_gamma, "scale parameter")->required();
    sim->add_option("--delta", sim_delta, "unified location parameter")->required();
    sim->add_option("--n", sim_n, "sample count")->required();
    sim->add_option("--seed", sim_seed, "batch seed");
    sim->add_option("--format", sim_format, "output encoding")
        ->check(CLI::IsMember({"csv", "raw_f64le"}));
    sim->add_option("--output,-o", sim_output, "output path or - for stdout");

    // grid
    auto* grid = app.add_subcommand("grid", "synthetic (gamma, delta) MSE surface");
    std::string grid_gamma = "5:5:150", grid_delta = "5:5:200", grid_output = "-";
    std::size_t grid_n = 40000;
    int grid_repeats = 1;
    std::uint64_t grid_seed = 0;
    AFlags grid_a;
    grid->add_option("--gamma-grid", grid_gamma, "gamma grid start:step:stop");
    grid->add_option("--delta-grid", grid_delta, "delta grid start:step:stop");
    grid->add_option("--n", grid_n, "samples per cell");
    grid->add_option("--repeats", grid_repeats, "repeats per cell");
    grid->add_option("--seed", grid_seed, "master seed");
    grid_a.attach(grid);
    grid->add_option("--output,-o", grid_output, "output path or - for stdout");

    // compare
    auto* cmp = app.add_subcommand("compare", "KL comparison against baseline models");
    InputFlags cmp_in;
    AFlags cmp_a;
    HistogramSpec cmp_spec;
    double cmp_looks = 1.0;
    std::string cmp_format = "csv", cmp_output = "-";
    cmp_in.attach(cmp);
    cmp_a.attach(cmp);
    cmp->add_option("--bins", cmp_spec.bin_count, "histogram bin count");
    cmp->add_option("--quantile", cmp_spec.upper_quantile, "upper range quantile");
    cmp->add_option("--floor", cmp_spec.floor_epsilon, "probability floor");
    cmp->add_option("--g0-looks", cmp_looks, "fixed looks for the G0 fit");
    cmp->add_option("--output-format", cmp_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmp->add_option("--output,-o", cmp_output, "output path or - for stdout");

    // bench
    auto* bench = app.add_subcommand("bench", "wall-clock of the moment estimator");
    std::size_t bench_n = 40000;
    int bench_repeats = 50;
    double bench_gamma = 50.0, bench_delta = 100.0;
    std::uint64_t bench_seed = 0x9e3779b9;
    std::string bench_output = "-";
    bench->add_option("--n", bench_n, "sample count");
    bench->add_option("--repeats", bench_repeats, "timing repeats");
    bench->add_option("--gamma", bench_gamma, "scale of the synthetic batch");
    bench->add_option("--delta", bench_delta, "location of the synthetic batch");
    bench->add_option("--seed", bench_seed, "batch seed");
    bench->add_option("--output,-o", bench_output, "output path or - for stdout");

    // pdf-table
    auto* tab = app.add_subcommand("pdf-table", "emit (x, pdf) pairs for plotting");
    double tab_gamma = 1.0, tab_delta = 0.0, tab_xmax = 0.0;
    std::size_t tab_points = 512, tab_budget = 1000000;
    bool tab_oracle = false;
    std::string tab_spacing = "linear", tab_output = "-";
    tab->add_option("--gamma", tab_gamma, "scale parameter")->required();
    tab->add_option("--delta", tab_delta, "unified location parameter")->required();
    tab->add_option("--x-max", tab_xmax, "table end (default 10 (gamma+delta+1))");
    tab->add_option("--points", tab_points, "number of rows");
    tab->add_option("--spacing", tab_spacing, "x spacing")
        ->check(CLI::IsMember({"linear", "log"}));
    tab->add_flag("--oracle", tab_oracle, "add a Bessel-integral cross-validation column");
    tab->add_option("--oracle-budget", tab_budget, "integrand evaluation budget per point");
    tab->add_option("--output,-o", tab_output, "output path or - for stdout");

    try {
        app.parse(argc, argv);
        if (fit->parsed()) {
            return cmd_fit(fit_in, fit_a, fit_estimator, fit_a2_factor, fit_output);
        }
        if (sim->parsed()) {
            return cmd_simulate(sim_gamma, sim_delta, sim_n, sim_seed, sim_format, sim_output);
        }
        if (grid->parsed()) {
            return cmd_grid(grid_gamma, grid_delta, grid_n, grid_repeats, grid_seed, grid_a,
                            grid_output);
        }
        if (cmp->parsed()) {
            return cmd_compare(cmp_in, cmp_a, cmp_spec, cmp_looks, cmp_format, cmp_output);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_n, bench_repeats, bench_gamma, bench_delta, bench_seed,
                             bench_output);
        }
        return cmd_pdf_table(tab_gamma, tab_delta, tab_xmax, tab_points, tab_spacing, tab_oracle,
                             tab_budget, tab_output);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const NonConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cauchyrician
