// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace cauchyrician {

/// Parameters of the Cauchy-Rician amplitude law: scale gamma > 0 and the
/// unified location delta = sqrt(delta1^2 + delta2^2) >= 0.
struct CrParams {
    double gamma;
    double delta;

    CrParams(double gamma_in, double delta_in);
};

/// The free constant of the algebraic moment functions; must be > 0.
struct MomentConstant {
    double a;
    explicit MomentConstant(double a_in);
};

/// Closed-form amplitude density
///   f(x) = 2 gamma x E(k) / (pi [gamma^2 + (x-delta)^2] sqrt(gamma^2 + (x+delta)^2)),
///   k = 2 sqrt(x delta) / sqrt(gamma^2 + (x+delta)^2).
/// Supported on x >= 0 with f(0) = 0.
double pdf(const CrParams& p, double x);

/// log f(x) assembled factor-by-factor; finite far into the x^-2 tail
/// (x up to 1e12 and beyond). Requires x > 0.
double log_pdf(const CrParams& p, double x);

struct OracleOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;            // 0 disables the relative criterion
    std::size_t max_evals = 1'000'000;
};

/// Cross-validation route: evaluates the Bessel-transform form
///   f(x) = x integral_0^inf w e^{-gamma w} J0(w delta) J0(w x) dw
/// by half-period panel quadrature with epsilon-algorithm acceleration of
/// the panel sums. Slow; intended for tests, not production scoring.
double pdf_oracle(const CrParams& p, double x, const OracleOptions& opt = {});

/// Numeric CDF: adaptive quadrature of pdf over [0, x] with an inverted-x
/// substitution for the far tail. Non-decreasing, -> 1 as x -> inf.
double cdf(const CrParams& p, double x, double tol = 1e-9);

/// Population algebraic moments:
///   moment1 = E[(x^2+a^2)^{-1/2}] = 1 / sqrt((gamma+a)^2 + delta^2)
///   moment2 = E[(x^2+a^2)^{-3/2}] = (gamma+a) / (a [(gamma+a)^2 + delta^2]^{3/2})
double moment1(const CrParams& p, MomentConstant a);
double moment2(const CrParams& p, MomentConstant a);

}  // namespace cauchyrician
