#!/usr/bin/env python3
"""
Tests for normal-form arithmetic in A(a, q), B and B-bar.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings as hsettings, strategies as st

# Add project root to path
sys.path.append(str(Path(__file__).parent))

from src.algebra.polyring import Polynomial, apply_sigma
from src.algebra.weyl import (
    AlgebraContext,
    AlgebraKind,
    BracketConvention,
    basis_monomials,
    commutator,
    component_polynomial,
    omega,
    phi_iso,
    project_pi,
    weight_component_coords,
    weight_decompose,
)
from src.errors import InvalidAlgebraError, PreconditionError

A, B, BBAR = AlgebraKind.A, AlgebraKind.B, AlgebraKind.BBAR

CONTEXTS = {
    "nonroot": AlgebraContext.parse("h^2 - 1", "2"),
    "cube": AlgebraContext.parse("(h-1)^2*(h+2)", "-1/3"),
    "sign": AlgebraContext.parse("h^2 + 1", "-1"),
    "zeta3": AlgebraContext.parse("h^2 + z*h + 1", "zeta:3"),
}


def elements(kind):
    monomials = list(basis_monomials(kind, 2))
    return st.lists(
        st.tuples(st.sampled_from(monomials), st.integers(min_value=-3, max_value=3)),
        min_size=1,
        max_size=3,
    )


def build(actx, kind, spec):
    out = actx.zero(kind)
    for m, c in spec:
        out = out + actx.monomial(kind, *m, c)
    return out


@pytest.mark.parametrize("name", list(CONTEXTS))
def test_defining_relations(name):
    actx = CONTEXTS[name]
    y, h, x = (actx.gen(A, letter) for letter in "yhx")
    q = actx.ring.q_power(1)
    assert x * h == (h * x).scale(q)
    assert h * y == (y * h).scale(q)
    assert y * x == actx.poly(A, actx.a)
    assert x * y == actx.poly(A, apply_sigma(actx.a, actx.ring))


@pytest.mark.parametrize("name", list(CONTEXTS))
def test_smith_algebra_relations(name):
    actx = CONTEXTS[name]
    Y, H, X = (actx.gen(B, letter) for letter in "yhx")
    assert X * Y - Y * X == actx.poly(B, actx.l)
    big_omega = omega(actx)
    for g in (Y, H, X):
        assert big_omega * g == g * big_omega
    Yb, Xb = actx.gen(BBAR, "y"), actx.gen(BBAR, "x")
    assert Xb * Yb == Yb * Xb


@hsettings(max_examples=40, deadline=None)
@given(elements(A), elements(A), elements(A))
def test_associativity_in_A(u, v, w):
    actx = CONTEXTS["cube"]
    a, b, c = (build(actx, A, spec) for spec in (u, v, w))
    assert (a * b) * c == a * (b * c)


@hsettings(max_examples=30, deadline=None)
@given(elements(B), elements(B), elements(B))
def test_associativity_in_B(u, v, w):
    actx = CONTEXTS["zeta3"]
    a, b, c = (build(actx, B, spec) for spec in (u, v, w))
    assert (a * b) * c == a * (b * c)


@hsettings(max_examples=30, deadline=None)
@given(elements(B), elements(B))
def test_projection_is_a_homomorphism(u, v):
    actx = CONTEXTS["nonroot"]
    a, b = build(actx, B, u), build(actx, B, v)
    assert project_pi(a * b) == project_pi(a) * project_pi(b)


def test_projection_kills_omega():
    for actx in CONTEXTS.values():
        assert project_pi(omega(actx)).is_zero()
        assert project_pi(omega(actx) * actx.gen(B, "x")).is_zero()


@hsettings(max_examples=30, deadline=None)
@given(elements(A), elements(A))
def test_mirror_isomorphism_is_multiplicative(u, v):
    actx = CONTEXTS["sign"]
    a, b = build(actx, A, u), build(actx, A, v)
    assert phi_iso(a * b) == phi_iso(a) * phi_iso(b)


def test_mirror_swaps_generators():
    actx = CONTEXTS["nonroot"]
    mirror = actx.mirror()
    assert phi_iso(actx.gen(A, "y")) == mirror.gen(A, "x")
    assert mirror.q.inverse() == actx.q
    assert mirror.a == apply_sigma(actx.a, actx.ring)


def test_commutator_conventions():
    actx = CONTEXTS["nonroot"]
    y, h = actx.gen(A, "y"), actx.gen(A, "h")
    assert commutator(h, y, BracketConvention.Q_LEFT).is_zero()
    assert commutator(y, h, BracketConvention.Q_RIGHT).is_zero()
    assert commutator(h, y) == (y * h).scale(actx.ring.q_power(1) - 1)


def test_weight_components():
    actx = CONTEXTS["sign"]
    p = Polynomial.parse("h^2 + 3")
    u = weight_component_coords(-2, p, actx)
    assert u.weights() == [-2]
    assert component_polynomial(u, -2) == p
    mixed = u + weight_component_coords(1, p, actx)
    assert sorted(weight_decompose(mixed)) == [-2, 1]
    with pytest.raises(PreconditionError):
        component_polynomial(mixed, 1)


def test_invalid_inputs():
    with pytest.raises(InvalidAlgebraError):
        AlgebraContext.parse("h + 1", "2")
    actx = CONTEXTS["nonroot"]
    with pytest.raises(PreconditionError):
        actx.monomial(A, 1, 0, 1)
    with pytest.raises(PreconditionError):
        actx.gen(A, "x") + actx.gen(B, "x")
