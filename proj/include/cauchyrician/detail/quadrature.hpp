// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>

namespace cauchyrician::detail {

/// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre recurrence (symmetric half stored full).
template <int N>
struct GaussLegendre {
    std::array<double, N> node;
    std::array<double, N> weight;
    static const GaussLegendre& get();
};

extern template struct GaussLegendre<8>;
extern template struct GaussLegendre<16>;
extern template struct GaussLegendre<32>;

/// Fixed-order Gauss-Legendre integral of f over [a, b].
template <int N, typename F>
double gl_integrate(F&& f, double a, double b) {
    const auto& rule = GaussLegendre<N>::get();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < N; ++i) {
        s += rule.weight[i] * f(mid + half * rule.node[i]);
    }
    return half * s;
}

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 48;
    std::size_t max_evals = 2'000'000;
};

/// Globally adaptive bisection with a nested GL8/GL16 error estimate.
/// Throws NonConvergenceError when the evaluation budget runs out.
double adaptive_integrate(const class DoubleFn& f, double a, double b,
                          const AdaptiveOptions& opt = {});

/// Tiny type-erased callable so the adaptive driver can live in a .cpp file.
class DoubleFn {
  public:
    template <typename F>
    DoubleFn(const F& f)  // NOLINT(google-explicit-constructor)
        : obj_(&f), call_([](const void* o, double x) { return (*static_cast<const F*>(o))(x); }) {}
    double operator()(double x) const { return call_(obj_, x); }

  private:
    const void* obj_;
    double (*call_)(const void*, double);
};

}  // namespace cauchyrician::detail
