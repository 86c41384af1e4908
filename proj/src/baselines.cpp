// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cauchyrician/detail/kahan.hpp"
#include "cauchyrician/errors.hpp"
#include "cauchyrician/special_functions.hpp"

namespace cauchyrician {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive_data(std::span<const double> data, const char* who) {
    if (data.empty()) throw DataError(std::string(who) + ": empty data");
    for (double x : data) {
        if (!std::isfinite(x) || x <= 0.0) {
            throw DataError(std::string(who) + ": data must be finite and > 0");
        }
    }
}

double mean_of(std::span<const double> v) {
    detail::KahanSum s;
    for (double x : v) s.add(x);
    return s.result() / static_cast<double>(v.size());
}

struct Pdf {
    double x;

    double operator()(const RicianParams& m) const {
        if (!(m.sigma > 0.0) || m.nu < 0.0) throw std::domain_error("rician: bad parameters");
        if (x < 0.0) throw std::domain_error("rician: x must be >= 0");
        const double s2 = m.sigma * m.sigma;
        const double z = (x - m.nu);
        // (x/s^2) exp(-(x^2+nu^2)/2s^2) I0(x nu/s^2), assembled with the
        // scaled I0 so large x nu / s^2 cannot overflow.
        return x / s2 * std::exp(-0.5 * z * z / s2) * bessel_i0_scaled(x * m.nu / s2);
    }

    double operator()(const WeibullParams& m) const {
        if (!(m.shape > 0.0 && m.scale > 0.0)) throw std::domain_error("weibull: bad parameters");
        if (x < 0.0) throw std::domain_error("weibull: x must be >= 0");
        if (x == 0.0) {
            if (m.shape > 1.0) return 0.0;
            if (m.shape == 1.0) return 1.0 / m.scale;
            return std::numeric_limits<double>::infinity();
        }
        const double z = x / m.scale;
        return m.shape / m.scale * std::pow(z, m.shape - 1.0) * std::exp(-std::pow(z, m.shape));
    }

    double operator()(const LogNormalParams& m) const {
        if (!(m.s > 0.0)) throw std::domain_error("lognormal: degenerate s");
        if (x < 0.0) throw std::domain_error("lognormal: x must be > 0");
        if (x == 0.0) return 0.0;  // continuous extension of the x -> 0+ limit
        const double z = (std::log(x) - m.mu) / m.s;
        return std::exp(-0.5 * z * z) / (x * m.s * std::sqrt(2.0 * kPi));
    }

    double operator()(const G0Params& m) const {
        if (!(m.alpha < 0.0 && m.gamma > 0.0 && m.looks >= 1.0)) {
            throw std::domain_error("g0: bad parameters");
        }
        if (x < 0.0) throw std::domain_error("g0: x must be >= 0");
        if (x == 0.0) return 0.0;  // x^{2n-1} factor, n >= 1
        const double n = m.looks;
        const double log_c = std::log(2.0) + n * std::log(n) + log_gamma(n - m.alpha) -
                             m.alpha * std::log(m.gamma) - log_gamma(n) - log_gamma(-m.alpha);
        return std::exp(log_c + (2.0 * n - 1.0) * std::log(x) -
                        (n - m.alpha) * std::log(m.gamma + n * x * x));
    }
};

}  // namespace

BaselineKind kind_of(const BaselineModel& m) {
    switch (m.index()) {
        case 0: return BaselineKind::rician;
        case 1: return BaselineKind::weibull;
        case 2: return BaselineKind::lognormal;
        default: return BaselineKind::g0;
    }
}

const char* kind_name(BaselineKind k) {
    switch (k) {
        case BaselineKind::rician: return "rician";
        case BaselineKind::weibull: return "weibull";
        case BaselineKind::lognormal: return "lognormal";
        case BaselineKind::g0: return "g0";
    }
    return "?";
}

double baseline_pdf(const BaselineModel& m, double x) {
    if (!std::isfinite(x)) throw std::domain_error("baseline_pdf: non-finite x");
    return std::visit(Pdf{x}, m);
}

namespace {

BaselineFit fit_rician(std::span<const double> data) {
    if (data.empty()) throw DataError("fit rician: empty data");
    detail::KahanSum s2, s4;
    for (double x : data) {
        if (!std::isfinite(x) || x < 0.0) throw DataError("fit rician: data must be >= 0");
        const double q = x * x;
        s2.add(q);
        s4.add(q * q);
    }
    const double inv_n = 1.0 / static_cast<double>(data.size());
    const double m2 = s2.result() * inv_n;
    const double m4 = s4.result() * inv_n;
    const double impulsiveness = 2.0 * m2 * m2 - m4;
    BaselineFit fit{RicianParams{0.0, 1.0}, false, "even-moment inversion"};
    if (impulsiveness <= 0.0) {
        // below the Rayleigh boundary: nu = 0
        fit.model = RicianParams{0.0, std::sqrt(0.5 * m2)};
        fit.method = "even-moment inversion (rayleigh fallback)";
        return fit;
    }
    const double nu2 = std::sqrt(impulsiveness);
    const double sigma2 = 0.5 * (m2 - nu2);
    if (!(sigma2 > 0.0)) {
        fit.model = RicianParams{std::sqrt(nu2), std::sqrt(m2) * 1e-8};
        fit.degenerate = true;
        return fit;
    }
    fit.model = RicianParams{std::sqrt(nu2), std::sqrt(sigma2)};
    return fit;
}

BaselineFit fit_weibull(std::span<const double> data) {
    require_positive_data(data, "fit weibull");
    const double c = *std::max_element(data.begin(), data.end());
    const std::size_t n = data.size();
    std::vector<double> y(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = data[i] / c;  // scale out so y^k cannot overflow
        ly[i] = std::log(y[i]);
    }
    const double mean_ly = mean_of(ly);
    double var_ly = 0.0;
    for (double v : ly) var_ly += (v - mean_ly) * (v - mean_ly);
    var_ly /= static_cast<double>(n);
    if (var_ly == 0.0) {
        BaselineFit fit{WeibullParams{1.0, data[0]}, true, "mle (degenerate constant data)"};
        return fit;
    }

    // MLE shape equation: S1(k)/S0(k) - 1/k - mean(log y) = 0
    const auto g_and_dg = [&](double k, double& g, double& dg) {
        detail::KahanSum s0, s1, s2;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = std::pow(y[i], k);
            s0.add(w);
            s1.add(w * ly[i]);
            s2.add(w * ly[i] * ly[i]);
        }
        const double a0 = s0.result(), a1 = s1.result(), a2 = s2.result();
        g = a1 / a0 - 1.0 / k - mean_ly;
        dg = (a2 * a0 - a1 * a1) / (a0 * a0) + 1.0 / (k * k);
    };

    double k = 1.2 / std::sqrt(var_ly);  // moment-style starting point
    k = std::clamp(k, 1e-3, 1e3);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        double g = 0.0, dg = 0.0;
        g_and_dg(k, g, dg);
        const double step = g / dg;
        double next = k - step;
        if (!(next > 0.0)) next = 0.5 * k;
        if (std::fabs(next - k) <= 1e-10 * k) {
            k = next;
            converged = true;
            break;
        }
        k = next;
    }
    if (!converged) throw NonConvergenceError("fit weibull: shape Newton did not converge");
    detail::KahanSum sk;
    for (std::size_t i = 0; i < n; ++i) sk.add(std::pow(y[i], k));
    const double lambda = c * std::pow(sk.result() / static_cast<double>(n), 1.0 / k);
    return BaselineFit{WeibullParams{k, lambda}, false, "mle (newton on shape)"};
}

BaselineFit fit_lognormal(std::span<const double> data) {
    require_positive_data(data, "fit lognormal");
    std::vector<double> lx(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) lx[i] = std::log(data[i]);
    const double mu = mean_of(lx);
    detail::KahanSum sq;
    for (double v : lx) sq.add((v - mu) * (v - mu));
    const double s = std::sqrt(sq.result() / static_cast<double>(data.size()));
    if (s == 0.0) {
        return BaselineFit{LogNormalParams{mu, 0.0}, true, "mle-logs (degenerate constant data)"};
    }
    return BaselineFit{LogNormalParams{mu, s}, false, "mle-logs"};
}

BaselineFit fit_g0(std::span<const double> data, double looks) {
    require_positive_data(data, "fit g0");
    if (!(looks >= 1.0)) throw std::invalid_argument("fit g0: looks must be >= 1");
    std::vector<double> li(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) li[i] = 2.0 * std::log(data[i]);
    const double c1 = mean_of(li);
    detail::KahanSum sq;
    for (double v : li) sq.add((v - c1) * (v - c1));
    const double c2 = sq.result() / static_cast<double>(data.size());

    // log-cumulants of intensity: c1 = ln(gamma/n) + psi(n) - psi(-alpha),
    //                             c2 = psi'(n) + psi'(-alpha)
    const double rhs = c2 - detail::trigamma(looks);
    if (!(rhs > 0.0)) {
        throw NonConvergenceError("fit g0: log-variance at or below the speckle floor");
    }
    double lo = 1e-8, hi = 1e8;
    if (detail::trigamma(lo) < rhs || detail::trigamma(hi) > rhs) {
        throw NonConvergenceError("fit g0: trigamma inversion out of bracket");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (detail::trigamma(mid) > rhs) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * lo) break;
    }
    const double y = 0.5 * (lo + hi);  // = -alpha
    const double log_gamma_hat =
        c1 - detail::digamma(looks) + detail::digamma(y) + std::log(looks);
    return BaselineFit{G0Params{-y, std::exp(log_gamma_hat), looks}, false,
                       "log-cumulant matching"};
}

}  // namespace

BaselineFit fit_baseline(BaselineKind kind, std::span<const double> data, double g0_looks) {
    switch (kind) {
        case BaselineKind::rician: return fit_rician(data);
        case BaselineKind::weibull: return fit_weibull(data);
        case BaselineKind::lognormal: return fit_lognormal(data);
        case BaselineKind::g0: return fit_g0(data, g0_looks);
    }
    throw std::invalid_argument("fit_baseline: unknown kind");
}

}  // namespace cauchyrician
