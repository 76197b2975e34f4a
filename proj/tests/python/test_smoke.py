import math
from fractions import Fraction

import pytest

import flagspec


def test_q_binomial():
    assert flagspec.q_binomial(4, 2, 2) == 35
    assert flagspec.q_binomial(40, 20, 31) > 2**64


def test_heawood_blocks():
    assert flagspec.block_char_poly(3, 2, 1) == [Fraction(7, 9), Fraction(-2), Fraction(1)]
    spec = flagspec.block_spectrum(3, 2)
    assert sum(e["multiplicity"] for e in spec) == 14
    values = sorted({round(e["value"], 9) for e in spec})
    s = math.sqrt(2) / 3
    assert values == pytest.approx([0, 1 - s, 1 + s, 2], abs=1e-9)


def test_numeric_agrees_with_blocks():
    rec = flagspec.reconcile(4, 2)
    assert rec["pass"]
    assert rec["total"] == 65


def test_distinct_and_permutations():
    assert flagspec.distinct_count(3, 2) == (4, 4)
    assert flagspec.perm_counts(4, 1) == (2, 4)
    with pytest.raises(ValueError):
        flagspec.perm_counts(5, 4)


def test_containment_has_threshold():
    out = flagspec.containment(3, [2, 3, 5, 7, 11, 13])
    assert out["q0"] is not None
    assert flagspec.fibo_roots(3) == pytest.approx([-math.sqrt(2), 0, math.sqrt(2)])
