// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace cauchyrician {

/// Complete elliptic integral of the second kind,
///   E(k) = integral_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt,  0 <= k <= 1.
///
/// The argument is the MODULUS k, not the parameter m = k^2. Libraries
/// disagree on this convention; every caller in this project passes k.
double ellip_e(double k);

/// Bessel function of the first kind, order zero. Power series below |x| = 8,
/// Chebyshev-fitted modulus/phase form above.
double bessel_j0(double x);

/// Modified Bessel function of the first kind, order zero, x >= 0.
/// Throws std::overflow_error for x >= 700 where e^x-scale growth leaves
/// the comfortable double range; use bessel_i0_scaled there.
double bessel_i0(double x);

/// e^{-x} I0(x); finite for all x >= 0.
double bessel_i0_scaled(double x);

/// log Gamma(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

namespace detail {
// Digamma / trigamma, internal plumbing for the G0 log-cumulant fitter.
double digamma(double x);
double trigamma(double x);
}  // namespace detail

}  // namespace cauchyrician
