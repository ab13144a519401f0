"""Generalized translation operators on [-1, 1], weighted best approximation
and the Jackson-type experiments built on them."""

from ._core import (
    ContractError,
    DomainError,
    Function,
    NumericError,
    best_approx,
    corpus,
    corpus_catalog,
    exit_code,
    function,
    gauss_jacobi,
    jackson_experiment,
    jackson_operator,
    jacobi,
    k_functional,
    kernel_self_test,
    markov_bernstein,
    modulus,
    polynomial,
    sl_eigenvalue,
    sym_translate,
    translate,
    verify_translation_identities,
    weighted_norm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
