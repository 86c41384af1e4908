# SPDX-License-Identifier: Apache-2.0
"""Cauchy-Rician amplitude modelling: closed-form pdf, seeded sampler, and
the method-of-algebraic-moments parameter estimator, with baseline models
and KL goodness-of-fit scoring."""

from ._core import (  # noqa: F401
    __version__,
    generator_id,
    ellip_e,
    bessel_j0,
    bessel_i0,
    bessel_i0_scaled,
    log_gamma,
    pdf,
    log_pdf,
    cdf,
    pdf_oracle,
    moment1,
    moment2,
    sample_amplitude,
    sample_complex,
    sample_isotropic_cauchy_radius,
    empirical_moments,
    estimate,
    estimate_single_moment,
    choose_a,
    fit_baseline,
    rician_pdf,
    weibull_pdf,
    lognormal_pdf,
    g0_pdf,
    kl_divergence,
    run_grid_experiment,
    benchmark_fit,
)
