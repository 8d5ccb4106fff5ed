"""Correlation kernels of z-measures on partitions at theta = 2."""

from ._core import (  # noqa: F401
    ConvergenceError,
    DomainError,
    MeixnerParams,
    ZParams,
    admissible,
    corr_oracle,
    correlation,
    correlation_degenerate,
    degenerate_kernel,
    enumerate_diagrams,
    gauss_2f1,
    k2n,
    k_contour,
    k_series,
    kernel_block,
    log_gamma,
    meixner_correlation,
    meixner_oracle,
    meixner_weight,
    pfaffian,
    pfaffian_expansion,
    positivity,
    psi_contour,
    psi_series,
    s2n_contour,
    s2n_operator,
    s_entry,
    sample,
    tail_bound,
    zmeasure_mixed,
    zmeasure_n,
)

__version__ = "0.1.0"
