#!/usr/bin/env python3
"""
Tests for exact rank over Q and Q(zeta) and the Smith form over k[t].
"""

import sys
from pathlib import Path

import sympy
from hypothesis import given, settings as hsettings, strategies as st

# Add project root to path
sys.path.append(str(Path(__file__).parent))

from src.algebra.linalg import ExactMatrix, from_domain, rank_of_vectors, smith_diagonal, to_domain
from src.algebra.polyring import Polynomial
from src.algebra.scalars import FieldElement

matrices = st.lists(
    st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
    min_size=1,
    max_size=5,
)

ZETA3 = FieldElement([0, 1], 3)


def sparse(row):
    return {i: FieldElement.rational(v) for i, v in enumerate(row) if v}


@hsettings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank_of_vectors(sparse(row) for row in rows) == sympy.Matrix(rows).rank()


def test_rank_over_a_cyclotomic_field():
    one = FieldElement.rational(1, 3)
    assert rank_of_vectors([{0: one, 1: ZETA3}, {0: ZETA3, 1: ZETA3 * ZETA3}]) == 1
    assert rank_of_vectors([{0: one, 1: ZETA3}, {0: ZETA3, 1: one}]) == 2
    assert rank_of_vectors([{}, {}]) == 0


def test_domain_round_trip_keeps_the_element():
    element = FieldElement([2, -1], 5) * FieldElement([0, 0, 1], 5)
    assert from_domain(to_domain(element), 5) == element
    assert from_domain(to_domain(FieldElement.rational(3)), 1) == 3


def test_restrict_rows():
    matrix = ExactMatrix(
        row_labels=["low", "high"],
        col_labels=["u", "v"],
        columns=[sparse([1, 1]), sparse([0, 1])],
    )
    assert matrix.shape == (2, 2)
    assert matrix.nnz == 3
    assert matrix.rank() == 2
    high = matrix.restrict_rows(lambda label: label == "high")
    assert high.shape == (1, 2)
    assert high.rank() == 1
    assert high.entry(0, 1) == 1


def poly(text):
    return Polynomial.parse(text.replace("t", "h"))


def test_smith_diagonal():
    factors = smith_diagonal([[poly("t"), poly("0")], [poly("0"), poly("t+1")]])
    assert factors == [poly("1"), poly("t^2+t")]
    assert smith_diagonal([[poly("2t+2"), poly("t+1")]]) == [poly("t+1")]
    assert smith_diagonal([[poly("0")]]) == []
    factors = smith_diagonal([[poly("t^2"), poly("t")], [poly("t"), poly("1")]])
    assert factors == [poly("1")]


def test_smith_diagonal_over_a_cyclotomic_field():
    linear = Polynomial([-ZETA3, 1])
    zero = Polynomial.zero(3)
    factors = smith_diagonal([[linear, zero], [zero, linear]])
    assert factors == [linear, linear]
