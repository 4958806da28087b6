"""Likelihood ratio tests for equality of k covariance matrices."""

from ._core import (
    AsymptoticParams,
    DesignError,
    DesignSpec,
    DomainError,
    MeanVariant,
    NotPositiveDefinite,
    Scenario,
    ScatterSummary,
    __version__,
    asymptotic_params,
    exact_moments,
    log_mgf_w,
    neg2_log_lambda_star,
    rng_algorithm,
    run_study,
    specfun,
    summarize,
    test,
)

__all__ = [
    "AsymptoticParams",
    "DesignError",
    "DesignSpec",
    "DomainError",
    "MeanVariant",
    "NotPositiveDefinite",
    "Scenario",
    "ScatterSummary",
    "__version__",
    "asymptotic_params",
    "exact_moments",
    "log_mgf_w",
    "neg2_log_lambda_star",
    "rng_algorithm",
    "run_study",
    "specfun",
    "summarize",
    "test",
]
