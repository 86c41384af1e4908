// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/detail/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "cauchyrician/errors.hpp"

namespace cauchyrician::detail {
namespace {

template <int N>
GaussLegendre<N> make_rule() {
    GaussLegendre<N> rule{};
    for (int i = 0; i < (N + 1) / 2; ++i) {
        // Newton on P_N with the Chebyshev-angle initial guess
        double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= N; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = N * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.node[i] = -x;
        rule.node[N - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weight[i] = w;
        rule.weight[N - 1 - i] = w;
    }
    return rule;
}

struct AdaptiveState {
    const DoubleFn& f;
    const AdaptiveOptions& opt;
    std::size_t evals = 0;
};

double adaptive_segment(AdaptiveState& st, double a, double b, double fa_estimate, int depth,
                        double tol) {
    st.evals += 24;
    if (st.evals > st.opt.max_evals) {
        throw NonConvergenceError("adaptive_integrate: evaluation budget exhausted");
    }
    const double coarse = gl_integrate<8>(st.f, a, b);
    const double fine = gl_integrate<16>(st.f, a, b);
    const double err = std::fabs(fine - coarse);
    if (err <= tol || depth >= st.opt.max_depth) {
        if (depth >= st.opt.max_depth && err > tol * 16.0) {
            throw NonConvergenceError("adaptive_integrate: max depth with large residual");
        }
        return fine;
    }
    const double mid = 0.5 * (a + b);
    (void)fa_estimate;
    return adaptive_segment(st, a, mid, 0.0, depth + 1, 0.5 * tol) +
           adaptive_segment(st, mid, b, 0.0, depth + 1, 0.5 * tol);
}

}  // namespace

template <int N>
const GaussLegendre<N>& GaussLegendre<N>::get() {
    static const GaussLegendre<N> rule = make_rule<N>();
    return rule;
}

template struct GaussLegendre<8>;
template struct GaussLegendre<16>;
template struct GaussLegendre<32>;

double adaptive_integrate(const DoubleFn& f, double a, double b, const AdaptiveOptions& opt) {
    if (a == b) return 0.0;
    AdaptiveState st{f, opt};
    const double rough = std::fabs(gl_integrate<16>(f, a, b));
    const double tol = std::max(opt.abs_tol, opt.rel_tol * rough);
    return adaptive_segment(st, a, b, 0.0, 0, tol);
}

}  // namespace cauchyrician::detail
