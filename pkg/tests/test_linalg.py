from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qpcohom.linalg import Echelon, PrimeField, kernel, parse_field, rank, rationals, span_basis

small = st.integers(-3, 3)
matrices = st.lists(st.lists(small, min_size=4, max_size=4), min_size=0, max_size=6)


def as_dicts(rows):
    return [{j: Fraction(v) for j, v in enumerate(r) if v} for r in rows]


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(rows):
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert rank(as_dicts(rows)) == expected


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_annihilate(rows):
    cols = as_dicts(rows)
    ker = kernel(cols)
    assert len(ker) == len(cols) - rank(cols)
    for lam in ker:
        total = {}
        for i, c in lam.items():
            for k, v in cols[i].items():
                total[k] = total.get(k, 0) + c * v
        assert not any(total.values())


def test_echelon_contains_and_basis():
    e = Echelon()
    assert e.add({0: 1, 1: 2})
    assert e.add({1: 1})
    assert not e.add({0: 3, 1: 7})
    assert e.contains({0: 1})
    assert len(span_basis([{0: 1}, {0: 2}, {2: 5}])) == 2


def test_prime_field_arithmetic():
    F = PrimeField(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a * b == F(1)
    assert (a / b) * b == a
    assert 1 / a == F(5)
    assert -a == F(4)
    assert not F(14)


def test_rank_depends_on_characteristic():
    F = PrimeField(2)
    rows = [{0: F(1), 1: F(1)}, {0: F(1), 1: F(-1)}]
    assert rank(rows) == 1
    assert rank([{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}]) == 2


def test_parse_field(monkeypatch):
    assert parse_field("q") is rationals
    assert parse_field("fp:5") == PrimeField(5)
    monkeypatch.setenv("QP_FIELD", "fp:3")
    assert parse_field(None) == PrimeField(3)
    with pytest.raises(ValueError):
        parse_field("reals")
