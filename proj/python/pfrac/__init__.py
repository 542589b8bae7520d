"""Exact partial fraction decomposition over linear factors."""

from ._core import (
    ParseError,
    PfracError,
    binomial,
    canonical,
    compositions,
    decompose,
    decompose_terms,
    evaluate,
    expand,
    multinomial,
    oracle_decompose,
    run_cli,
    verify,
)

__all__ = [
    "ParseError",
    "PfracError",
    "binomial",
    "canonical",
    "compositions",
    "decompose",
    "decompose_terms",
    "evaluate",
    "expand",
    "multinomial",
    "oracle_decompose",
    "run_cli",
    "verify",
]
