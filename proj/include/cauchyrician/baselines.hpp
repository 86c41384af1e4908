// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <variant>

namespace cauchyrician {

enum class BaselineKind { rician, weibull, lognormal, g0 };

struct RicianParams {
    double nu;      // >= 0
    double sigma;   // > 0
};

struct WeibullParams {
    double shape;   // > 0
    double scale;   // > 0
};

struct LogNormalParams {
    double mu;
    double s;       // > 0 (0 only as a degenerate fit result)
};

/// Amplitude-domain G0 with roughness alpha < 0, scale gamma > 0, looks n >= 1:
///   f(x) = 2 n^n Gamma(n-alpha) x^{2n-1}
///          / (gamma^alpha Gamma(n) Gamma(-alpha) (gamma + n x^2)^{n-alpha}).
struct G0Params {
    double alpha;
    double gamma;
    double looks;
};

using BaselineModel = std::variant<RicianParams, WeibullParams, LogNormalParams, G0Params>;

BaselineKind kind_of(const BaselineModel& m);
const char* kind_name(BaselineKind k);

/// Density of the given model at x >= 0 (x > 0 for lognormal). Validates
/// parameter domains; the Weibull density diverges at x = 0 for shape < 1
/// and +infinity is returned there.
double baseline_pdf(const BaselineModel& m, double x);

struct BaselineFit {
    BaselineModel model;
    bool degenerate = false;
    std::string method;
};

/// Fitters used for the KL comparison:
///   lognormal  - closed-form MLE on logs
///   weibull    - MLE, Newton on the shape (1e-10, <= 100 iterations)
///   rician     - even-moment inversion nu^2 = sqrt(2 m2^2 - m4), with
///                Rayleigh fallback when the impulsiveness statistic
///                2 m2^2 - m4 is negative
///   g0         - log-cumulant matching on intensity x^2, looks fixed
BaselineFit fit_baseline(BaselineKind kind, std::span<const double> data, double g0_looks = 1.0);

}  // namespace cauchyrician
