// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cauchyrician/distribution.hpp"

namespace cauchyrician {

/// Split of the unified location delta into per-component locations;
/// sqrt(delta1^2 + delta2^2) must equal the target delta (1e-12 relative).
struct LocationDecomposition {
    double delta1;
    double delta2;
};

struct SampleBatch {
    std::vector<double> amplitudes;
    std::uint64_t seed;
    CrParams params;
};

/// Inverse of the radial CDF 1 - gamma/sqrt(gamma^2 + r^2) of an isotropic
/// bivariate Cauchy vector with scale gamma: r(u) = gamma sqrt(1/(1-u)^2 - 1).
/// Requires u in the open interval (0, 1).
double sample_isotropic_cauchy_radius(double u, double gamma);

/// n draws of (delta1, delta2) + gamma * C with C standard isotropic
/// bivariate Cauchy, via polar inverse-CDF (two uniforms per point).
/// Deterministic in (seed, n, p, loc); sample i consumes stream words
/// 2i (radius) and 2i+1 (angle).
std::vector<std::pair<double, double>> sample_complex(const CrParams& p,
                                                      const LocationDecomposition& loc,
                                                      std::size_t n, std::uint64_t seed);

/// Amplitude batch per the synthetic-data protocol: one uniformly random
/// decomposition phase per batch (drawn from a derived substream), then
/// moduli of sample_complex. The amplitude law depends only on delta.
SampleBatch sample_amplitude(const CrParams& p, std::size_t n, std::uint64_t seed);

}  // namespace cauchyrician
