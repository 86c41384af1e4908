// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cauchyrician/detail/kahan.hpp"
#include "cauchyrician/errors.hpp"

namespace cauchyrician {

MomentPair empirical_moments(std::span<const double> data, MomentConstant a) {
    if (data.empty()) throw DataError("empirical_moments: empty data");
    detail::KahanSum s1, s2;
    const double a2 = a.a * a.a;
    for (double x : data) {
        if (!std::isfinite(x) || x < 0.0) {
            throw DataError("empirical_moments: data must be finite and >= 0");
        }
        const double r = 1.0 / std::sqrt(x * x + a2);
        s1.add(r);
        s2.add(r * r * r);
    }
    const double inv_n = 1.0 / static_cast<double>(data.size());
    return MomentPair{s1.result() * inv_n, s2.result() * inv_n, a.a, data.size()};
}

ParamEstimate estimate_from_moments(const MomentPair& m) {
    if (!(m.e1 > 0.0)) throw DataError("estimate: degenerate first moment");
    const double a = m.a;
    const double e1sq = m.e1 * m.e1;
    const double gamma_hat = a * (m.e2 / (e1sq * m.e1) - 1.0);
    // delta^2 = 1/e1^2 - (gamma+a)^2 with (gamma+a) = a e2/e1^3; the factored
    // form avoids cancellation when delta is near zero.
    const double radicand =
        (e1sq - a * m.e2) * (e1sq + a * m.e2) / (e1sq * e1sq * e1sq);
    ParamEstimate out{gamma_hat, 0.0, a, {}};
    if (radicand >= 0.0) {
        out.delta_hat = std::sqrt(radicand);
    } else {
        out.diagnostics.delta_clamped = true;
    }
    out.diagnostics.gamma_nonpositive = !(gamma_hat > 0.0);
    return out;
}

ParamEstimate estimate(std::span<const double> data, MomentConstant a) {
    return estimate_from_moments(empirical_moments(data, a));
}

ParamEstimate estimate_single_moment(std::span<const double> data, MomentConstant a1,
                                     MomentConstant a2) {
    if (a1.a == a2.a) {
        throw std::invalid_argument("estimate_single_moment: constants must differ");
    }
    const MomentPair m1 = empirical_moments(data, a1);
    const MomentPair m2 = empirical_moments(data, a2);
    if (!(m1.e1 > 0.0 && m2.e1 > 0.0)) throw DataError("estimate: degenerate first moment");
    // e1(a)^-2 = (gamma+a)^2 + delta^2 at both constants; subtracting kills delta.
    const double q1 = 1.0 / (m1.e1 * m1.e1);
    const double q2 = 1.0 / (m2.e1 * m2.e1);
    const double gamma_hat = 0.5 * ((q1 - q2) / (a1.a - a2.a) - (a1.a + a2.a));
    const double ga = gamma_hat + a1.a;
    const double radicand = q1 - ga * ga;
    ParamEstimate out{gamma_hat, 0.0, a1.a, {}};
    if (radicand >= 0.0) {
        out.delta_hat = std::sqrt(radicand);
    } else {
        out.diagnostics.delta_clamped = true;
    }
    out.diagnostics.gamma_nonpositive = !(gamma_hat > 0.0);
    return out;
}

MomentConstant choose_a(std::span<const double> data, AMode mode) {
    if (data.empty()) throw DataError("choose_a: empty data");
    const auto median = [&]() {
        std::vector<double> copy(data.begin(), data.end());
        const std::size_t mid = copy.size() / 2;
        std::nth_element(copy.begin(), copy.begin() + mid, copy.end());
        double m = copy[mid];
        if (copy.size() % 2 == 0) {
            const double lo = *std::max_element(copy.begin(), copy.begin() + mid);
            m = 0.5 * (lo + m);
        }
        return m;
    };
    double a = 0.0;
    if (mode == AMode::mean) {
        detail::KahanSum s;
        for (double x : data) s.add(x);
        a = s.result() / static_cast<double>(data.size());
        if (!(a > 0.0) || !std::isfinite(a)) a = median();
    } else if (mode == AMode::median) {
        a = median();
    } else {
        throw std::invalid_argument("choose_a: fixed mode needs an explicit constant");
    }
    if (!(a > 0.0) || !std::isfinite(a)) a = 1.0;
    return MomentConstant(a);
}

}  // namespace cauchyrician
