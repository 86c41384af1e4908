// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

#include "cauchyrician/distribution.hpp"

namespace cauchyrician {

/// Empirical algebraic moments at constant a:
///   e1 = mean (x^2+a^2)^{-1/2},  e2 = mean (x^2+a^2)^{-3/2}.
/// Each summand is bounded by 1/a and 1/a^3 respectively.
struct MomentPair {
    double e1;
    double e2;
    double a;
    std::size_t n;
};

struct EstimateDiagnostics {
    bool delta_clamped = false;     // delta radicand was negative, reported as 0
    bool gamma_nonpositive = false; // gamma_hat <= 0; value reported as computed
};

struct ParamEstimate {
    double gamma_hat;
    double delta_hat;
    double a_used;
    EstimateDiagnostics diagnostics;
};

enum class AMode { mean, median, fixed };

/// Single compensated pass over the data. Throws DataError on empty input
/// or non-finite / negative entries.
MomentPair empirical_moments(std::span<const double> data, MomentConstant a);

/// Closed-form inversion of the two algebraic moments:
///   gamma_hat = a (e2/e1^3 - 1),  delta_hat = sqrt(e1^-2 - (gamma_hat+a)^2).
ParamEstimate estimate_from_moments(const MomentPair& m);

ParamEstimate estimate(std::span<const double> data, MomentConstant a);

/// Variant using only the first moment at two distinct constants a1 != a2:
/// subtracting e1(a)^-2 = (gamma+a)^2 + delta^2 at the two constants gives
/// gamma in closed form, then delta.
ParamEstimate estimate_single_moment(std::span<const double> data, MomentConstant a1,
                                     MomentConstant a2);

/// Heuristic for the moment constant: sample mean by default (median by
/// switch); falls back median -> 1.0 whenever the result would not be a
/// positive finite number.
MomentConstant choose_a(std::span<const double> data, AMode mode = AMode::mean);

}  // namespace cauchyrician
