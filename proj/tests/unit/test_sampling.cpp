// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "cauchyrician/distribution.hpp"
#include "cauchyrician/rng.hpp"
#include "oracles.hpp"

using namespace cauchyrician;

TEST_SUITE("sampling") {

TEST_CASE("splitmix64 counter stream known answers") {
    // cross-checked against an independent implementation of the same
    // published output function
    const SplitMix64Stream s0(0);
    CHECK(s0.word(0) == 0xe220a8397b1dcdafull);
    CHECK(s0.word(1) == 0x6e789e6aa1b965f4ull);
    CHECK(s0.word(2) == 0x06c45d188009454full);
    CHECK(s0.word(3) == 0xf88bb8a8724c81ecull);
    const SplitMix64Stream s1(1);
    CHECK(s1.word(0) == 0x910a2dec89025cc1ull);
    CHECK(s1.word(1) == 0xbeeb8da1658eec67ull);
    const SplitMix64Stream s2(0x123456789abcdefull);
    CHECK(s2.word(0) == 0x157a3807a48faa9dull);
    CHECK(s2.word(3) == 0xa2d419334c4667ecull);
    // random access equals sequential access by construction
    CHECK(s0.uniform_open(17) > 0.0);
    CHECK(s0.uniform_open(17) < 1.0);
}

TEST_CASE("radius inversion closed form") {
    CHECK(sample_isotropic_cauchy_radius(0.5, 1.0) ==
          doctest::Approx(1.7320508075688772935).epsilon(1e-15));
    CHECK(sample_isotropic_cauchy_radius(1.0 - 1.0 / std::sqrt(2.0), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sample_isotropic_cauchy_radius(1e-12, 1.0) < 2e-6);
    CHECK(sample_isotropic_cauchy_radius(1e-12, 1.0) > 0.0);
    CHECK_THROWS_AS(sample_isotropic_cauchy_radius(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(sample_isotropic_cauchy_radius(1.0, 1.0), std::domain_error);
}

TEST_CASE("radius law agrees with the sub-Gaussian construction") {
    const std::size_t n = 200000;
    SplitMix64Stream stream(0xFEED);
    std::vector<double> inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        inv[i] = sample_isotropic_cauchy_radius(stream.uniform_open(i), 2.5);
    }
    const std::vector<double> sub = oracles::subgaussian_cauchy_radii(2.5, n, 99);
    const double d = oracles::ks_two_sample(inv, sub);
    const double crit = oracles::kKs1PercentCoefficient * std::sqrt(2.0 / static_cast<double>(n));
    CHECK(d < crit);
}

TEST_CASE("sample_complex degenerate scale pins samples at the location") {
    const CrParams p(1e-12, 5.0);
    const auto pts = sample_complex(p, {3.0, 4.0}, 5, 42);
    REQUIRE(pts.size() == 5);
    for (const auto& [re, im] : pts) {
        CHECK(std::fabs(re - 3.0) < 1e-6);
        CHECK(std::fabs(im - 4.0) < 1e-6);
    }
}

TEST_CASE("sample_complex validates inputs") {
    const CrParams p(1.0, 5.0);
    CHECK_THROWS_AS(sample_complex(p, {3.0, 3.0}, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_complex(p, {3.0, 4.0}, 0, 1), std::invalid_argument);
    CHECK_NOTHROW(sample_complex(p, {3.0, 4.0}, 4, 1));
}

TEST_CASE("sample_complex radial law at the origin") {
    const CrParams p(1.0, 0.0);
    const std::size_t n = 1000000;
    const auto pts = sample_complex(p, {0.0, 0.0}, n, 7);
    std::size_t inside = 0;
    for (const auto& [re, im] : pts) {
        if (re * re + im * im <= 1.0) ++inside;
    }
    // P(|C| <= 1) = 1 - 1/sqrt(2), binomial 3-sigma band
    const double want = 1.0 - 1.0 / std::sqrt(2.0);
    const double se = std::sqrt(want * (1.0 - want) / static_cast<double>(n));
    CHECK(std::fabs(static_cast<double>(inside) / static_cast<double>(n) - want) < 3.0 * se);
}

TEST_CASE("determinism: identical seeds produce bit-identical batches") {
    const CrParams p(5.0, 20.0);
    const SampleBatch a = sample_amplitude(p, 4096, 1234);
    const SampleBatch b = sample_amplitude(p, 4096, 1234);
    CHECK(a.amplitudes == b.amplitudes);
    const SampleBatch c = sample_amplitude(p, 4096, 1235);
    CHECK(a.amplitudes != c.amplitudes);
    CHECK_THROWS_AS(sample_amplitude(p, 0, 1), std::invalid_argument);
}

TEST_CASE("amplitude empirical CDF at the delta=0 closed form") {
    const CrParams p(1.0, 0.0);
    const SampleBatch batch = sample_amplitude(p, 1000000, 31415);
    std::size_t below = 0;
    for (double x : batch.amplitudes) {
        if (x <= 1.0) ++below;
    }
    const double want = 1.0 - 1.0 / std::sqrt(2.0);
    const double se = std::sqrt(want * (1.0 - want) / 1e6);
    CHECK(std::fabs(static_cast<double>(below) / 1e6 - want) < 3.0 * se);
}

TEST_CASE("amplitude distribution is invariant to the forced decomposition phase") {
    const CrParams p(5.0, 20.0);
    const std::size_t n = 200000;
    const auto amp = [&](const LocationDecomposition& loc, std::uint64_t seed) {
        std::vector<double> out;
        out.reserve(n);
        for (const auto& [re, im] : sample_complex(p, loc, n, seed)) {
            out.push_back(std::hypot(re, im));
        }
        return out;
    };
    const double phi = 1.1;
    const std::vector<double> a = amp({20.0, 0.0}, 2024);
    const std::vector<double> b = amp({20.0 * std::cos(phi), 20.0 * std::sin(phi)}, 2024);
    const double d = oracles::ks_two_sample(a, b);
    const double crit = oracles::kKs1PercentCoefficient * std::sqrt(2.0 / static_cast<double>(n));
    CHECK(d < crit);
}

TEST_CASE("KS: amplitudes against the numeric CDF") {
    const CrParams p(5.0, 20.0);
    const std::size_t n = 200000;
    SampleBatch batch = sample_amplitude(p, n, 777);
    std::sort(batch.amplitudes.begin(), batch.amplitudes.end());
    const auto pdf_fn = [&](double x) { return pdf(p, x); };
    const std::vector<double> f =
        oracles::cumulative_cdf_at(pdf_fn, batch.amplitudes, cdf(p, batch.amplitudes.front()));
    const double d = oracles::ks_statistic(f);
    const double crit = oracles::kKs1PercentCoefficient / std::sqrt(static_cast<double>(n));
    CHECK(d < crit);
}

TEST_CASE("binned chi-square: amplitude histogram matches the density") {
    // 40 equal-mass bins built from the numeric CDF; with true parameters
    // the statistic is chi2 with 39 dof, 1% critical value 62.428
    const std::size_t n = 100000;
    const int k = 40;
    for (const auto& [g, d] : std::vector<std::pair<double, double>>{{5.0, 20.0}, {1.0, 0.0}}) {
        const CrParams p(g, d);
        std::vector<double> edges(static_cast<std::size_t>(k - 1));
        for (int j = 1; j < k; ++j) {
            const double target = static_cast<double>(j) / k;
            double lo = 0.0, hi = 1e7 * (g + d + 1.0);
            for (int it = 0; it < 200 && hi - lo > 1e-9 * (1.0 + hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                (cdf(p, mid) < target ? lo : hi) = mid;
            }
            edges[static_cast<std::size_t>(j - 1)] = 0.5 * (lo + hi);
        }
        const SampleBatch batch = sample_amplitude(p, n, 0xC4150000 + static_cast<int>(g));
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (double x : batch.amplitudes) {
            const auto it = std::upper_bound(edges.begin(), edges.end(), x);
            ++counts[static_cast<std::size_t>(it - edges.begin())];
        }
        const double expect = static_cast<double>(n) / k;
        double chi2 = 0.0;
        for (std::size_t c : counts) {
            const double dd = static_cast<double>(c) - expect;
            chi2 += dd * dd / expect;
        }
        CHECK(chi2 < 62.4281210161849);
    }
}

TEST_CASE("isotropy: centered angles are uniform") {
    const CrParams p(3.0, 11.0);
    const std::size_t n = 100000;
    const LocationDecomposition loc{11.0 * std::cos(0.4), 11.0 * std::sin(0.4)};
    const auto pts = sample_complex(p, loc, n, 606);
    std::vector<std::size_t> bins(36, 0);
    for (const auto& [re, im] : pts) {
        const double ang = std::atan2(im - loc.delta2, re - loc.delta1);
        int b = static_cast<int>((ang + 3.14159265358979323846) / (2 * 3.14159265358979323846) * 36);
        b = std::clamp(b, 0, 35);
        ++bins[static_cast<std::size_t>(b)];
    }
    const double expect = static_cast<double>(n) / 36.0;
    double chi2 = 0.0;
    for (std::size_t c : bins) {
        const double d = static_cast<double>(c) - expect;
        chi2 += d * d / expect;
    }
    CHECK(chi2 < oracles::kChi2Crit99Dof35);
}

}  // TEST_SUITE
