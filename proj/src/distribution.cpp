// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cauchyrician/detail/quadrature.hpp"
#include "cauchyrician/errors.hpp"
#include "cauchyrician/special_functions.hpp"

namespace cauchyrician {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_support(double x, const char* who) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error(std::string(who) + ": amplitude must be finite and >= 0");
    }
}

// Elliptic modulus of the closed form. Computed as a quotient of square
// roots (not sqrt of a quotient) so x ~ delta does not lose digits, and
// clamped: rounding can push the quotient to 1 + 1ulp near x = delta.
double elliptic_modulus(const CrParams& p, double x) {
    const double root = std::sqrt(p.gamma * p.gamma + (x + p.delta) * (x + p.delta));
    const double k = 2.0 * std::sqrt(x * p.delta) / root;
    return std::min(k, 1.0);
}

struct WynnResult {
    double best;
    double err;
};

// Wynn epsilon table over a window of partial sums; walks the even columns
// and keeps the entry with the smallest neighbour disagreement.
WynnResult wynn_extrapolate(const std::vector<double>& partial, std::size_t window) {
    const std::size_t start = partial.size() > window ? partial.size() - window : 0;
    std::vector<double> cur(partial.begin() + static_cast<std::ptrdiff_t>(start), partial.end());
    std::vector<double> aux(cur.size() + 1, 0.0);
    WynnResult r{cur.back(), cur.size() > 1
                                 ? std::fabs(cur[cur.size() - 1] - cur[cur.size() - 2])
                                 : std::numeric_limits<double>::infinity()};
    int k = 0;
    while (cur.size() >= 2) {
        std::vector<double> nxt(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double d = cur[i + 1] - cur[i];
            nxt[i] = (d != 0.0 && std::isfinite(d))
                         ? aux[i + 1] + 1.0 / d
                         : std::numeric_limits<double>::infinity();
        }
        aux = std::move(cur);
        cur = std::move(nxt);
        ++k;
        if (k % 2 == 0) {
            double tail[3];
            int m = 0;
            for (std::size_t i = cur.size() >= 3 ? cur.size() - 3 : 0; i < cur.size(); ++i) {
                if (std::isfinite(cur[i])) tail[m++] = cur[i];
            }
            if (m >= 2) {
                const double e =
                    std::max(std::fabs(tail[m - 1] - tail[m - 2]), std::fabs(tail[0] - tail[m - 1]));
                if (e < r.err) {
                    r.err = e;
                    r.best = tail[m - 1];
                }
            }
        }
    }
    return r;
}

}  // namespace

CrParams::CrParams(double gamma_in, double delta_in) : gamma(gamma_in), delta(delta_in) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw std::invalid_argument("CrParams: gamma must be finite and > 0");
    }
    if (!std::isfinite(delta) || delta < 0.0) {
        throw std::invalid_argument("CrParams: delta must be finite and >= 0");
    }
}

MomentConstant::MomentConstant(double a_in) : a(a_in) {
    if (!std::isfinite(a) || a <= 0.0) {
        throw std::invalid_argument("MomentConstant: a must be finite and > 0");
    }
}

double pdf(const CrParams& p, double x) {
    check_support(x, "pdf");
    if (x == 0.0) return 0.0;
    const double den2 = p.gamma * p.gamma + (x + p.delta) * (x + p.delta);
    const double e = ellip_e(elliptic_modulus(p, x));
    return 2.0 * p.gamma * x * e /
           (kPi * (p.gamma * p.gamma + (x - p.delta) * (x - p.delta)) * std::sqrt(den2));
}

double log_pdf(const CrParams& p, double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("log_pdf: amplitude must be finite and > 0");
    }
    const double den2 = p.gamma * p.gamma + (x + p.delta) * (x + p.delta);
    const double e = ellip_e(elliptic_modulus(p, x));
    return std::log(2.0 / kPi) + std::log(p.gamma) + std::log(x) + std::log(e) -
           std::log(p.gamma * p.gamma + (x - p.delta) * (x - p.delta)) - 0.5 * std::log(den2);
}

double pdf_oracle(const CrParams& p, double x, const OracleOptions& opt) {
    check_support(x, "pdf_oracle");
    if (x == 0.0) return 0.0;
    const double g = p.gamma, d = p.delta;

    const auto integrand = [&](double w) {
        return w * std::exp(-g * w) * bessel_j0(w * d) * bessel_j0(w * x);
    };

    // Panels are half-periods of the fastest oscillation (or the decay scale
    // when that dominates); the epsilon window is stretched to cover several
    // beats of the slow |x - delta| component.
    const double scale = std::max({x, d, g, 1.0});
    const double h = kPi / scale;
    const double f_slow = d > 0.0 ? std::max(std::fabs(x - d), g) : std::max(x, g);
    const std::size_t window = static_cast<std::size_t>(
        std::clamp(std::ceil(10.0 * scale / std::max(f_slow, 1.0 / scale)), 48.0, 200.0));
    const std::size_t max_panels = 8 * window;

    const auto tolerance = [&](double value) {
        return std::max(opt.abs_tol, opt.rel_tol * std::fabs(x * value));
    };

    std::vector<double> partial;
    partial.reserve(max_panels);
    double sum = 0.0;
    std::size_t evals = 0;
    double cand = 0.0;
    bool have_cand = false;
    for (std::size_t j = 0; j < max_panels; ++j) {
        if (evals + 16 > opt.max_evals) break;
        sum += detail::gl_integrate<16>(integrand, j * h, (j + 1) * h);
        evals += 16;
        partial.push_back(sum);
        const std::size_t m = partial.size();
        if (m >= 3 && std::fabs(partial[m - 1] - partial[m - 2]) <= 1e-16 * std::fabs(partial[m - 1]) &&
            std::fabs(partial[m - 2] - partial[m - 3]) <= 1e-16 * std::fabs(partial[m - 1])) {
            return x * sum;  // raw sum stalled: decay did all the work
        }
        if (j >= 12 && j % 8 == 4) {
            const WynnResult w = wynn_extrapolate(partial, window);
            if (x * w.err <= 0.2 * tolerance(w.best)) {
                if (have_cand && x * std::fabs(w.best - cand) <= tolerance(w.best)) {
                    return x * w.best;
                }
                cand = w.best;
                have_cand = true;
            } else {
                have_cand = false;
            }
        }
    }
    throw NonConvergenceError("pdf_oracle: quadrature budget exhausted before tolerance");
}

double cdf(const CrParams& p, double x, double tol) {
    check_support(x, "cdf");
    if (x == 0.0) return 0.0;
    const double g = p.gamma, d = p.delta;
    const auto f = [&](double t) { return pdf(p, t); };

    // Body integrated directly with splits at the mode region; far tail via
    // u = 1/t, where pdf(1/u)/u^2 approaches the tail constant smoothly.
    const double body_end = 2.0 * d + 10.0 * g + 1.0;
    std::vector<double> cuts{0.0};
    for (double c : {std::min(g, d), std::fabs(d - g), d, d + g, g}) {
        if (c > 0.0 && c < std::min(x, body_end)) cuts.push_back(c);
    }
    cuts.push_back(std::min(x, body_end));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    detail::AdaptiveOptions opt;
    opt.abs_tol = tol / (cuts.size() + 1);
    opt.rel_tol = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        acc += detail::adaptive_integrate(f, cuts[i], cuts[i + 1], opt);
    }
    if (x > body_end) {
        const auto tail = [&](double u) { return pdf(p, 1.0 / u) / (u * u); };
        acc += detail::adaptive_integrate(tail, 1.0 / x, 1.0 / body_end, opt);
    }
    return acc;
}

double moment1(const CrParams& p, MomentConstant a) {
    const double ga = p.gamma + a.a;
    return 1.0 / std::sqrt(ga * ga + p.delta * p.delta);
}

double moment2(const CrParams& p, MomentConstant a) {
    const double ga = p.gamma + a.a;
    const double q = ga * ga + p.delta * p.delta;
    return ga / (a.a * q * std::sqrt(q));
}

}  // namespace cauchyrician
