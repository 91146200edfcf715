"""Double-base (q0,q1)-expansions: algorithms, the Phi bijection, classifiers,
dimension estimation and certified series enclosures."""

from ._core import (  # noqa: F401
    ConfigError,
    EpSeq,
    NumericError,
    PreconditionError,
    alpha_run_lengths,
    block_count,
    classify_base_pair,
    classify_pair,
    classify_seq,
    compare_lex,
    conjugate,
    critical_points,
    distinct_tails,
    estimate_dimension,
    eval_S,
    is_unique_expansion,
    mu_run_lengths,
    orbit_uniqueness_check,
    phi_forward,
    phi_inverse,
    pi_eval,
    pi_tilde_eval,
    quasi_from_greedy,
    quasi_from_lazy,
    region,
    run_algorithm,
    sample_family_pair,
    seq_metric,
    shift,
)

__all__ = [name for name in dir() if not name.startswith("_")]
