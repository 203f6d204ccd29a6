#!/usr/bin/env python3
"""
Acceptance runs at full size: the identity suite at the configured bounds,
the closed-form tables reproduced by truncated homology, the S-module
oracle, the mirror symmetry, q-independence, the sigma-norm lemmas and
the global-dimension criterion.
"""

import sys
from pathlib import Path

import pytest
import sympy
from hypothesis import given, settings as hsettings, strategies as st

# Add project root to path
sys.path.append(str(Path(__file__).parent))

from config.settings import get_settings
from src.algebra.polyring import (
    Polynomial,
    RingContext,
    coker_psi_dim,
    eta,
    f_bar,
    is_in_S,
    n_operator,
    pi_hlS_dim,
)
from src.algebra.scalars import QSpec
from src.algebra.weyl import AlgebraContext
from src.cli.jobs import EXIT_OK, parse_config, run
from src.cli.report import Verdict, oracle_disagreements
from src.homology.complexes import Direction, build_hochschild_complex, validate_identities
from src.homology.engine import hochschild_table
from src.homology.resolution import validate_bimodule_total, validate_comparison_maps, validate_smith_complexes
from src.theory.closedform import GlobalDimension, gldim

settings = get_settings()

IDENTITY_CONFIGS = [("h^2 - 1", "2"), ("h^2 + 1", "-1"), ("h^3 + h + 1", "zeta:3")]
IDENTITY_IDS = ["nonroot", "sign", "cubic-root"]


def verify(a, q, *options):
    report, code = run(parse_config(["verify", "--a", a, "--q", q, "--jobs", "1", *options]))
    return report, code


def cells(report, direction):
    return {(record.r, record.p): record for record in report.records if record.direction == direction}


def sample_dims(record):
    return {dim for _, dim in record.computed.samples}


def assert_all_passed(reports):
    failed = [report.to_dict() for report in reports if not report.passed]
    assert not failed


@pytest.mark.slow
@pytest.mark.parametrize("a,q", IDENTITY_CONFIGS, ids=IDENTITY_IDS)
@pytest.mark.parametrize("direction", list(Direction))
@pytest.mark.parametrize("r", range(-4, 5))
def test_complex_identities_at_full_bounds(a, q, direction, r):
    handle = build_hochschild_complex(AlgebraContext.parse(a, q), direction, r)
    assert_all_passed(
        validate_identities(handle, settings.identity_h_degree_bound, settings.identity_degree_bound)
    )


@pytest.mark.slow
@pytest.mark.parametrize("a,q", IDENTITY_CONFIGS, ids=IDENTITY_IDS)
def test_resolution_identities_at_full_bounds(a, q):
    actx = AlgebraContext.parse(a, q)
    bound = settings.identity_exponent_bound
    assert_all_passed(validate_bimodule_total(actx, bound))
    assert_all_passed(validate_smith_complexes(actx, bound))
    assert_all_passed(validate_comparison_maps(actx, bound))


@pytest.mark.slow
def test_nonroot_smooth_grid_with_mirror():
    report, code = verify("h^2 - 1", "2", "--weights=-4..4", "--degrees", "0..5", "--truncations", "16,20,24",
                          "--mirror-check")
    assert code == EXIT_OK
    assert all(record.verdict is Verdict.MATCH for record in report.records)
    assert not any("mirror" in note for record in report.records for note in record.notes)

    homology = cells(report, "homology")
    for (r, p), record in homology.items():
        expected = (2 if r == 0 else 1) if p == 0 else (0 if r == 0 else 1) if p == 1 else 0
        assert sample_dims(record) == {expected}, (r, p)
    cohomology = cells(report, "cohomology")
    for (r, p), record in cohomology.items():
        expected = {0: 1, 1: 1, 2: 2}.get(p, 0) if r == 0 else 0
        assert sample_dims(record) == {expected}, (r, p)


@pytest.mark.slow
def test_nonroot_singular_weight_zero():
    report, code = verify("(h-1)^2*(h+2)", "2", "--weights=0..0", "--degrees", "0..4")
    assert code == EXIT_OK
    homology = cells(report, "homology")
    assert [sample_dims(homology[(0, p)]) for p in range(5)] == [{3}, {1}, {1}, {1}, {1}]
    cohomology = cells(report, "cohomology")
    assert [sample_dims(cohomology[(0, p)]) for p in range(2, 5)] == [{3}, {1}, {1}]


@pytest.mark.slow
def test_root_smooth_table_and_oracle():
    report, code = verify("h^2 + 1", "-1", "--weights=-3..3", "--degrees", "0..3")
    assert code == EXIT_OK
    homology = cells(report, "homology")
    assert homology[(0, 1)].computed.slope == 2
    for r in (-2, 2):
        assert homology[(r, 0)].computed.slope == 1
        assert homology[(r, 2)].computed.slope == 1
    for r in (-3, -1, 1, 3):
        assert sample_dims(homology[(r, 1)]) == {1}
    assert all(sample_dims(homology[(r, 3)]) == {0} for r in range(-3, 4))
    cohomology = cells(report, "cohomology")
    assert [cohomology[(0, p)].computed.slope for p in range(3)] == [1, 2, 1]
    assert cohomology[(0, 2)].computed.constant == 1
    for r in (-3, -1, 1, 3):
        assert all(sample_dims(cohomology[(r, p)]) == {0} for p in range(4))
    for record in report.records:
        assert record.s_invariants is not None
        assert not oracle_disagreements(record.predicted, record.computed, record.s_invariants)


@pytest.mark.slow
def test_root_with_torsion_and_oracle():
    report, code = verify("(h^2+1)^2", "-1", "--weights=0..0", "--degrees", "0..4")
    assert code == EXIT_OK
    for direction in ("homology", "cohomology"):
        table = cells(report, direction)
        for p in (3, 4):
            record = table[(0, p)]
            assert sample_dims(record) == {2}
            assert record.s_invariants.free_rank == 0
            assert record.s_invariants.torsion_total == 2
    for record in report.records:
        assert record.s_invariants is not None
        assert record.computed.slope == record.s_invariants.free_rank
        assert not oracle_disagreements(record.predicted, record.computed, record.s_invariants)


@pytest.mark.slow
def test_high_degree_homology_does_not_depend_on_q():
    tables = [
        hochschild_table(AlgebraContext.parse("(h-1)^2*(h+2)", q), [0], 4, [16, 20, 24], Direction.HOMOLOGY, jobs=1)
        for q in ("2", "5")
    ]
    for p in (3, 4):
        assert tables[0][(0, p)].samples == tables[1][(0, p)].samples


nonzero = st.integers(min_value=-4, max_value=4).filter(bool)
lemma_polys = st.tuples(nonzero, st.lists(st.integers(min_value=-3, max_value=3), max_size=5))


@pytest.mark.parametrize("q", ["-1", "zeta:3"])
@hsettings(max_examples=5, deadline=None)
@given(lemma_polys)
def test_sigma_norm_lemmas(q, data):
    ctx = RingContext(QSpec.parse(q))
    e = ctx.e
    constant, rest = data
    f = Polynomial([constant, *rest]).embed(ctx.conductor)
    norm = n_operator(f, ctx)
    assert is_in_S(norm, ctx)
    assert f.monic() * f_bar(f, ctx) == norm

    # every element of S divisible by f is N(f) times an element of S
    s = norm * (ctx.h(2 * e) + Polynomial.one(ctx.conductor))
    g = s.exact_div(f)
    assert (g % f_bar(f, ctx)).is_zero()
    assert is_in_S(s.exact_div(norm), ctx)

    eta_f = eta(f, ctx)
    for l in range(4):
        for D in (norm.top + e, norm.top + 2 * e):
            assert pi_hlS_dim(f, ctx, l, D) == norm.top // e
        for D in (norm.top + 2 * e, norm.top + 3 * e):
            assert coker_psi_dim(f, ctx, l, D) - coker_psi_dim(f, ctx, l, D - e) == 1
            assert coker_psi_dim(f, ctx, l, D) == len(range(l, D + f.top + 1, e)) + eta_f


roots = st.lists(st.integers(min_value=-3, max_value=3), min_size=2, max_size=6)
tails = st.lists(st.integers(min_value=-5, max_value=5), min_size=2, max_size=6)


@hsettings(max_examples=10, deadline=None)
@given(st.one_of(roots.map(lambda rs: ("roots", rs)), tails.map(lambda cs: ("coeffs", cs))))
def test_gldim_follows_the_gcd_criterion(data):
    h = sympy.Symbol("h")
    kind, values = data
    if kind == "roots":
        poly = sympy.Poly(sympy.prod([h - root for root in values]), h)
    else:
        poly = sympy.Poly([1, *values], h)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    actx = AlgebraContext(Polynomial(coeffs), RingContext(QSpec.parse("2")))
    squarefree = sympy.degree(sympy.gcd(poly, poly.diff(h)), h) == 0
    assert (gldim(actx) is GlobalDimension.FINITE_2) == squarefree
