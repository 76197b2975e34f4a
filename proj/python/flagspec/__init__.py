"""Spectra of weighted Laplacians on flag complexes over finite fields."""

from fractions import Fraction

from ._flagspec import (
    DomainError,
    ResourceError,
    block_multiplicity,
    block_spectrum,
    containment,
    distinct_count,
    fibo_roots,
    numeric_spectrum,
    perm_counts,
    q_binomial,
    reconcile,
)
from ._flagspec import block_char_poly as _block_char_poly

__all__ = [
    "DomainError",
    "ResourceError",
    "block_char_poly",
    "block_multiplicity",
    "block_spectrum",
    "containment",
    "distinct_count",
    "fibo_roots",
    "numeric_spectrum",
    "perm_counts",
    "q_binomial",
    "reconcile",
]


def block_char_poly(n, q, k):
    """Ascending coefficients of det(tI - L_k) as Fractions."""
    return [Fraction(c) for c in _block_char_poly(n, q, k)]
