// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "cauchyrician/rng.hpp"

namespace cauchyrician {
namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Substream tags hung off the batch seed.
constexpr std::uint64_t kSampleStream = 0;
constexpr std::uint64_t kPhaseStream = 1;

}  // namespace

double sample_isotropic_cauchy_radius(double u, double gamma) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("sample_isotropic_cauchy_radius: u must lie in (0, 1)");
    }
    const double t = 1.0 / (1.0 - u);
    return gamma * std::sqrt(t * t - 1.0);
}

std::vector<std::pair<double, double>> sample_complex(const CrParams& p,
                                                      const LocationDecomposition& loc,
                                                      std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_complex: n must be >= 1");
    const double norm = std::hypot(loc.delta1, loc.delta2);
    if (std::fabs(norm - p.delta) > 1e-12 * std::max(p.delta, 1.0)) {
        throw std::invalid_argument("sample_complex: decomposition norm does not match delta");
    }
    SplitMix64Stream stream(derive_seed(seed, kSampleStream));
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = sample_isotropic_cauchy_radius(stream.uniform_open(2 * i), p.gamma);
        const double theta = kTwoPi * stream.uniform_halfopen(2 * i + 1);
        out.emplace_back(loc.delta1 + r * std::cos(theta), loc.delta2 + r * std::sin(theta));
    }
    return out;
}

SampleBatch sample_amplitude(const CrParams& p, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_amplitude: n must be >= 1");
    // One decomposition phase per batch; the amplitude law only sees delta.
    SplitMix64Stream phase_stream(derive_seed(seed, kPhaseStream));
    const double phi = kTwoPi * phase_stream.uniform_halfopen(0);
    const LocationDecomposition loc{p.delta * std::cos(phi), p.delta * std::sin(phi)};

    SampleBatch batch{{}, seed, p};
    batch.amplitudes.reserve(n);
    for (const auto& [re, im] : sample_complex(p, loc, n, seed)) {
        batch.amplitudes.push_back(std::hypot(re, im));
    }
    return batch;
}

}  // namespace cauchyrician
