#!/usr/bin/env python3
"""
Tests for the weight-r Hochschild chain and cochain complexes.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.append(str(Path(__file__).parent))

from src.algebra.weyl import AlgebraContext, BracketConvention
from src.errors import UnsupportedCaseError
from src.homology.complexes import (
    ChainVector,
    ComplexHandle,
    DifferentialPart,
    Direction,
    build_hochschild_complex,
    first_page_representatives,
    total_components,
    total_rank,
    validate_first_page,
    validate_identities,
)
from src.homology.wedge import Wedge

SMOOTH = AlgebraContext.parse("h^2 - 1", "2")
SINGULAR = AlgebraContext.parse("(h-1)^2*(h+2)", "2")
ROOT = AlgebraContext.parse("h^2 + 1", "-1")
ROOT_TORSION = AlgebraContext.parse("(h^2+1)^2", "-1")
CUBIC_ROOT = AlgebraContext.parse("h^2 + 2", "zeta:3")


def test_total_rank():
    assert [total_rank(n) for n in range(6)] == [1, 3, 4, 4, 4, 4]
    assert total_components(-1) == []
    assert (1, Wedge.ONE) in total_components(2)


def test_degrees_of_the_differentials():
    hom = build_hochschild_complex(SMOOTH, Direction.HOMOLOGY, 0)
    coh = build_hochschild_complex(SMOOTH, Direction.COHOMOLOGY, 0)
    assert hom.out_degree(3) == 2 and hom.in_degree(3) == 4
    assert coh.out_degree(3) == 4 and coh.in_degree(3) == 2
    assert hom.column().out_degree(1) == 2
    assert hom.column().components(2) == [(0, w) for w in Wedge.of_degree(2)]


@pytest.mark.parametrize("actx", [SMOOTH, ROOT, CUBIC_ROOT], ids=["smooth", "root", "cubic-root"])
@pytest.mark.parametrize("direction", list(Direction))
@pytest.mark.parametrize("r", [-1, 0, 2])
def test_identities_hold(actx, direction, r):
    handle = build_hochschild_complex(actx, direction, r)
    reports = validate_identities(handle, h_deg_bound=3, degree_bound=3)
    failed = [report.to_dict() for report in reports if not report.passed]
    assert not failed


def test_plain_brackets_do_not_reproduce_the_differential():
    handle = build_hochschild_complex(SMOOTH, Direction.HOMOLOGY, 1, convention=BracketConvention.PLAIN)
    reports = {report.name.split(":")[-1]: report for report in validate_identities(handle, 2, 2)}
    assert reports["D^2"].passed
    assert not reports["derived=explicit"].passed


def test_differential_of_a_constant_zero_chain():
    handle = build_hochschild_complex(ROOT, Direction.HOMOLOGY, 0)
    image = handle.apply(ChainVector(0, 0, {}))
    assert image.is_zero()
    assert image.degree == -1


@pytest.mark.parametrize("actx,M", [(SINGULAR, 1), (ROOT_TORSION, 2)], ids=["singular", "root-torsion"])
@pytest.mark.parametrize(
    "side,p",
    [(Direction.HOMOLOGY, 2), (Direction.HOMOLOGY, 3), (Direction.COHOMOLOGY, 0), (Direction.COHOMOLOGY, 1)],
)
def test_first_page_representatives(actx, M, side, p):
    reps = first_page_representatives(actx, side, p, 0)
    assert len(reps) == M
    column = ComplexHandle(actx, side, 0, DifferentialPart.COLUMN)
    assert all(column.apply(v).is_zero() for v in reps)
    assert validate_first_page(actx, side, p).passed


def test_first_page_outside_supported_cases():
    with pytest.raises(UnsupportedCaseError):
        first_page_representatives(SINGULAR, Direction.HOMOLOGY, 1, 0)
    with pytest.raises(UnsupportedCaseError):
        first_page_representatives(SINGULAR, Direction.COHOMOLOGY, 0, 2)


def test_chain_vector_serialization():
    handle = build_hochschild_complex(SMOOTH, Direction.COHOMOLOGY, 0)
    v = handle.basis_chain(1, (0, Wedge.H), 2)
    data = v.to_dict()
    assert data["degree"] == 1
    assert data["coords"] == {"0:H": "h^2"}
