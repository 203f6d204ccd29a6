#!/usr/bin/env python3
"""
Tests for the closed-form (co)homology tables and their truncated dimensions.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.append(str(Path(__file__).parent))

from src.algebra.weyl import AlgebraContext
from src.errors import HypothesisViolation
from src.theory.closedform import (
    DimensionSpec,
    GlobalDimension,
    WeightClass,
    classify_weight,
    compute_invariants,
    gldim,
    predict_cohomology,
    predict_homology,
    truncated_dim,
)

SMOOTH = AlgebraContext.parse("h^2 - 1", "2")
SINGULAR = AlgebraContext.parse("(h-1)^2*(h+2)", "2")
ROOT = AlgebraContext.parse("h^2 + 1", "-1")
ROOT_TORSION = AlgebraContext.parse("(h^2+1)^2", "-1")


def test_invariants_nonroot():
    inv = compute_invariants(SMOOTH)
    assert (inv.N, inv.M, inv.e, inv.c) == (2, 0, 0, "1")
    assert inv.eta_a is None
    assert "eta_a" not in inv.to_dict()


def test_invariants_root_with_torsion():
    inv = compute_invariants(ROOT_TORSION)
    assert (inv.N, inv.M, inv.e) == (4, 2, 2)
    assert inv.c == "h^2 + 1"
    assert (inv.eta_a, inv.eta_c, inv.eta_a_over_c) == (2, 1, 1)
    assert inv.a_bar_degree == 0


def test_invariants_root_smooth():
    inv = compute_invariants(ROOT)
    assert (inv.N, inv.M, inv.eta_a, inv.eta_c, inv.eta_a_over_c) == (2, 0, 1, 0, 1)


@pytest.mark.parametrize("actx", [ROOT, ROOT_TORSION, AlgebraContext.parse("h^3 + 2h + 5", "zeta:3")])
def test_eta_identity(actx):
    inv = compute_invariants(actx)
    norm_degree = inv.N - inv.eta_a
    assert norm_degree * inv.e == inv.N + inv.a_bar_degree


def test_hypotheses():
    with pytest.raises(HypothesisViolation):
        compute_invariants(AlgebraContext.parse("h^2 + h", "-1"))
    with pytest.raises(HypothesisViolation):
        compute_invariants(AlgebraContext.parse("2h^2 + 1", "2"))
    with pytest.raises(HypothesisViolation):
        predict_cohomology(AlgebraContext.parse("h^2 + h", "2"), 2, 0)
    assert predict_cohomology(AlgebraContext.parse("h^2 + h", "2"), 1, 0).finite_dim == 1


@pytest.mark.parametrize(
    "r,e,expected",
    [(4, 2, WeightClass.SINGULAR), (3, 2, WeightClass.REGULAR), (0, 0, WeightClass.ZERO), (5, 0, WeightClass.REGULAR)],
)
def test_classify_weight(r, e, expected):
    assert classify_weight(r, e) is expected


@pytest.mark.parametrize(
    "actx,expected",
    [(SMOOTH, GlobalDimension.FINITE_2), (SINGULAR, GlobalDimension.INFINITE), (ROOT_TORSION, GlobalDimension.INFINITE)],
)
def test_gldim(actx, expected):
    assert gldim(actx) is expected


def test_nonroot_homology_table():
    assert predict_homology(SMOOTH, 0, 0).finite_dim == 2
    assert [predict_homology(SMOOTH, p, 3).finite_dim for p in range(4)] == [1, 1, 0, 0]
    assert [predict_homology(SINGULAR, p, 0).finite_dim for p in range(5)] == [3, 1, 1, 1, 1]
    assert all(predict_homology(SINGULAR, p, -2).is_zero for p in range(2, 5))


def test_nonroot_cohomology_table():
    assert [truncated_dim(predict_cohomology(SMOOTH, p, 0), 20) for p in range(4)] == [(1, 1), (1, 1), (2, 2), (0, 0)]
    assert truncated_dim(predict_cohomology(SINGULAR, 2, 0), 20) == (3, 3)
    assert truncated_dim(predict_cohomology(SINGULAR, 3, 0), 20) == (1, 1)
    assert predict_cohomology(SMOOTH, 0, 1).is_zero


def test_root_homology_table():
    assert predict_homology(ROOT, 1, 5).finite_dim == 1
    assert predict_homology(ROOT, 1, 5).s_rank == 0
    assert predict_homology(ROOT, 0, 0).finite_dim == 1
    assert predict_homology(ROOT, 0, 0).s_rank == 1
    assert predict_homology(ROOT, 0, 2).shifts == [0]
    assert predict_homology(ROOT, 0, 3).finite_dim == 1
    assert predict_homology(ROOT, 1, 0).s_rank == 2
    assert predict_homology(ROOT, 1, -2).shifts == [0, 1]
    assert predict_homology(ROOT, 2, 2).shifts == [1]
    assert predict_homology(ROOT, 2, 1).is_zero
    assert predict_homology(ROOT, 3, 2).is_zero
    torsion = predict_homology(ROOT_TORSION, 3, 0)
    assert torsion.s_rank == 0 and torsion.constant_part == 2


def test_root_cohomology_table():
    spec = predict_cohomology(ROOT, 2, 0)
    assert spec.s_rank == 1 and spec.finite_dim == 1
    assert [predict_cohomology(ROOT, p, 0).s_rank for p in range(4)] == [1, 2, 1, 0]
    assert [predict_cohomology(ROOT, p, 4).s_rank for p in range(4)] == [1, 2, 1, 0]
    assert all(predict_cohomology(ROOT, p, 3).is_zero for p in range(4))
    assert predict_cohomology(ROOT_TORSION, 3, 0).constant_part == 2


def test_truncated_dim():
    assert truncated_dim(DimensionSpec(finite_dim=2), 20) == (2, 2)
    assert truncated_dim(DimensionSpec(e=2, shifts=[0]), 10) == (6, 6)
    assert truncated_dim(DimensionSpec(e=2, shifts=[None, None]), 10) == (10, 12)
    assert truncated_dim(DimensionSpec(e=3, shifts=[5]), 4) == (0, 0)
    assert DimensionSpec(e=2, shifts=[1], torsion=[2]).truncated_dim(7) == (6, 6)


def test_dimension_spec_text():
    assert str(DimensionSpec()) == "0"
    assert str(DimensionSpec(e=2, finite_dim=1, shifts=[1])) == "k + h^1S"
    assert DimensionSpec(e=2, shifts=[None]).to_dict()["s_rank"] == 1
