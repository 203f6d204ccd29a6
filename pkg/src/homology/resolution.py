"""Bimodule resolutions: the Smith complexes over B and B-bar, the contraction
of the B-bar complex, the comparison maps over B | - | A, and the double
complex A | wedge V | A with its row differential d and column differential delta.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List

from src.algebra.polyring import integral_pairs
from src.algebra.weyl import (
    AlgebraContext,
    AlgebraElement,
    AlgebraKind,
    basis_monomials,
    omega,
    project_pi,
)
from src.errors import PreconditionError
from src.homology.checks import IdentityReport
from src.homology.wedge import (
    BimoduleChain,
    Wedge,
    column_generator_image,
    expand_generator_map,
    row_generator_image,
)

logger = logging.getLogger(__name__)

A, B, BBAR = AlgebraKind.A, AlgebraKind.B, AlgebraKind.BBAR


@dataclass(frozen=True)
class SmithComplex:
    """The Koszul-type complex of B-bimodules over B (kind B) or B-bar (kind BBAR)."""

    ctx: AlgebraContext
    kind: AlgebraKind = BBAR

    def d(self, chain: BimoduleChain) -> BimoduleChain:
        return expand_generator_map(
            chain,
            lambda w: row_generator_image(self.ctx, self.kind, self.kind, w, self.kind is B),
            self.kind,
            self.kind,
        )

    def mu(self, chain: BimoduleChain) -> AlgebraElement:
        """Multiplication on the degree-0 part."""
        out = self.ctx.zero(self.kind)
        for (w, lm, rm), c in chain.terms.items():
            if w is not Wedge.ONE:
                raise PreconditionError("mu is only defined in exterior degree 0")
            out = out + (self.ctx.monomial(self.kind, *lm) * self.ctx.monomial(self.kind, *rm)).scale(c)
        return out

    def s_minus1(self, b: AlgebraElement) -> BimoduleChain:
        return BimoduleChain.pure(b, Wedge.ONE, self.ctx.one(self.kind))

    def s(self, chain: BimoduleChain) -> BimoduleChain:
        """The left-linear contracting homotopy of the B-bar complex."""
        if self.kind is not BBAR:
            raise PreconditionError("the contraction is defined on the B-bar complex")
        out = BimoduleChain.zero(self.ctx, BBAR, BBAR)
        for (w, lm, rm), c in chain.terms.items():
            image = self._s_generator(w, rm)
            if image.is_zero():
                continue
            out = out + image.left_mul(self.ctx.monomial(BBAR, *lm)).scale(c)
        return out

    def _s_generator(self, wedge: Wedge, right) -> BimoduleChain:
        i, j, k = right
        ctx = self.ctx
        qp = ctx.ring.q_power
        out = BimoduleChain.zero(ctx, BBAR, BBAR)

        def term(coefficient, left, w, right_mono):
            nonlocal out
            out = out + BimoduleChain.pure(
                ctx.monomial(BBAR, *left), w, ctx.monomial(BBAR, *right_mono), coefficient
            )

        if wedge is Wedge.ONE:
            for s, t in integral_pairs(i):
                term(1, (s, 0, 0), Wedge.Y, (t, j, k))
            for s, t in integral_pairs(j):
                term(1, (i, s, 0), Wedge.H, (0, t, k))
            for s, t in integral_pairs(k):
                term(1, (i, j, s), Wedge.X, (0, 0, t))
        elif wedge is Wedge.H:
            for s, t in integral_pairs(i):
                term(qp(s), (s, 0, 0), Wedge.YH, (t, j, k))
        elif wedge is Wedge.X:
            for s, t in integral_pairs(i):
                term(1, (s, 0, 0), Wedge.YX, (t, j, k))
            for s, t in integral_pairs(j):
                term(qp(s), (i, s, 0), Wedge.HX, (0, t, k))
        elif wedge is Wedge.HX:
            for s, t in integral_pairs(i):
                term(qp(s), (s, 0, 0), Wedge.YHX, (t, j, k))
        return out


@dataclass(frozen=True)
class BimoduleTotalComplex:
    """A | wedge V | A with the row differential d and the column differential delta."""

    ctx: AlgebraContext

    def d(self, chain: BimoduleChain) -> BimoduleChain:
        return expand_generator_map(chain, lambda w: row_generator_image(self.ctx, A, A, w), A, A)

    def delta(self, chain: BimoduleChain) -> BimoduleChain:
        return expand_generator_map(chain, lambda w: column_generator_image(self.ctx, w), A, A)

    def total(self, chain: BimoduleChain) -> BimoduleChain:
        return self.d(chain) + self.delta(chain)

    def omega_cycle(self) -> BimoduleChain:
        """y|X|1 + 1|Y|x - sum alpha_i int_i h^s|H|h^t, the image of 1|1 under delta."""
        return column_generator_image(self.ctx, Wedge.ONE)


def build_smith_graded_complex(actx: AlgebraContext) -> SmithComplex:
    return SmithComplex(actx, BBAR)


def build_bimodule_total(actx: AlgebraContext) -> BimoduleTotalComplex:
    return BimoduleTotalComplex(actx)


def _test_chains(ctx: AlgebraContext, left_kind, right_kind, bound: int, wedges=None) -> List[BimoduleChain]:
    chains = []
    for wedge in wedges or list(Wedge):
        for lm in basis_monomials(left_kind, min(bound, 1)):
            for rm in basis_monomials(right_kind, bound):
                chains.append(
                    BimoduleChain.pure(ctx.monomial(left_kind, *lm), wedge, ctx.monomial(right_kind, *rm))
                )
    return chains


def validate_bimodule_total(actx: AlgebraContext, exp_bound: int) -> List[IdentityReport]:
    """d^2 = 0, delta^2 = 0, d delta + delta d = 0 on a | w | b, plus the omega cycle."""
    complex_ = build_bimodule_total(actx)
    reports = {name: IdentityReport(f"bimodule:{name}") for name in ("d^2", "delta^2", "anticommute", "D^2")}
    for chain in _test_chains(actx, A, A, exp_bound):
        dd = complex_.d(complex_.d(chain))
        reports["d^2"].record(dd.is_zero(), f"d^2({chain}) = {dd}")
        ee = complex_.delta(complex_.delta(chain))
        reports["delta^2"].record(ee.is_zero(), f"delta^2({chain}) = {ee}")
        mixed = complex_.d(complex_.delta(chain)) + complex_.delta(complex_.d(chain))
        reports["anticommute"].record(mixed.is_zero(), f"(d delta + delta d)({chain}) = {mixed}")
        total = complex_.total(complex_.total(chain))
        reports["D^2"].record(total.is_zero(), f"D^2({chain}) = {total}")
    cycle = IdentityReport("bimodule:omega-cycle")
    generator = BimoduleChain.generator(actx, A, A, Wedge.ONE)
    image = complex_.delta(generator)
    cycle.record(image == complex_.omega_cycle(), f"delta(1|1) = {image}")
    boundary = complex_.d(complex_.omega_cycle())
    cycle.record(boundary.is_zero(), f"d(omega) = {boundary}")
    return list(reports.values()) + [cycle]


def validate_smith_complexes(actx: AlgebraContext, exp_bound: int) -> List[IdentityReport]:
    """d^2 = 0 over B and B-bar, and the contraction identities over B-bar."""
    reports = []
    for kind in (B, BBAR):
        complex_ = SmithComplex(actx, kind)
        report = IdentityReport(f"smith[{kind.value}]:d^2")
        for chain in _test_chains(actx, kind, kind, exp_bound):
            dd = complex_.d(complex_.d(chain))
            report.record(dd.is_zero(), f"d^2({chain}) = {dd}")
        reports.append(report)

    complex_ = build_smith_graded_complex(actx)
    unit = IdentityReport("smith[Bbar]:mu s_-1 = id")
    for m in basis_monomials(BBAR, exp_bound):
        b = actx.monomial(BBAR, *m)
        unit.record(complex_.mu(complex_.s_minus1(b)) == b, f"mu s_-1({b})")
    reports.append(unit)

    homotopy = IdentityReport("smith[Bbar]:ds + sd = id")
    zero_left = [Wedge.ONE]
    for chain in _test_chains(actx, BBAR, BBAR, exp_bound, zero_left):
        value = complex_.d(complex_.s(chain)) + complex_.s_minus1(complex_.mu(chain))
        homotopy.record(value == chain, f"(d s + s mu)({chain}) = {value}")
    for chain in _test_chains(actx, BBAR, BBAR, exp_bound, [w for w in Wedge if w.degree >= 1]):
        value = complex_.d(complex_.s(chain)) + complex_.s(complex_.d(chain))
        homotopy.record(value == chain, f"(d s + s d)({chain}) = {value}")
    reports.append(homotopy)
    return reports


# Comparison maps between the resolution over B | - | A and the one over A | - | A.

def _f1_unit(actx: AlgebraContext) -> BimoduleChain:
    """f_1(1) = -Y|X|1 - 1|Y|x + sum alpha_i int_i H^s|H|h^t."""
    out = BimoduleChain.pure(actx.gen(B, "y"), Wedge.X, actx.one(A), -1)
    out = out + BimoduleChain.pure(actx.one(B), Wedge.Y, actx.gen(A, "x"), -1)
    for i, alpha in actx.alphas:
        for s, t in integral_pairs(i):
            out = out + BimoduleChain.pure(actx.monomial(B, 0, s, 0), Wedge.H, actx.monomial(A, 0, t, 0), alpha)
    return out


def f0(actx: AlgebraContext, b: AlgebraElement) -> BimoduleChain:
    return BimoduleChain.pure(b, Wedge.ONE, actx.one(A))


def f1(actx: AlgebraContext, b: AlgebraElement) -> BimoduleChain:
    return _f1_unit(actx).left_mul(b)


def mu_ba(actx: AlgebraContext, chain: BimoduleChain) -> AlgebraElement:
    out = actx.zero(A)
    for (w, lm, rm), c in chain.terms.items():
        if w is not Wedge.ONE:
            raise PreconditionError("mu is only defined in exterior degree 0")
        out = out + (project_pi(actx.monomial(B, *lm)) * actx.monomial(A, *rm)).scale(c)
    return out


def g0(actx: AlgebraContext, chain: BimoduleChain) -> AlgebraElement:
    """Left B-linear; 1|y^i h^j -> Y^i H^j and 1|h^j x^k -> H^j X^k."""
    out = actx.zero(B)
    for (w, lm, rm), c in chain.terms.items():
        if w is not Wedge.ONE:
            raise PreconditionError("g0 is only defined in exterior degree 0")
        out = out + (actx.monomial(B, *lm) * actx.monomial(B, *rm)).scale(c)
    return out


def g1(actx: AlgebraContext, chain: BimoduleChain) -> AlgebraElement:
    """Left B-linear; 1|Y|h^j x^(k+1) -> -q^-j H^j X^k, 1|X|y^(i+1) h^j -> -Y^i H^j, else 0."""
    out = actx.zero(B)
    for (w, lm, (i, j, k)), c in chain.terms.items():
        if w.degree != 1:
            raise PreconditionError("g1 is only defined in exterior degree 1")
        if w is Wedge.Y and k >= 1:
            value = actx.monomial(B, 0, j, k - 1, -actx.ring.q_power(-j))
        elif w is Wedge.X and i >= 1:
            value = actx.monomial(B, i - 1, j, 0, -1)
        else:
            continue
        out = out + (actx.monomial(B, *lm) * value).scale(c)
    return out


def d_ba(actx: AlgebraContext, chain: BimoduleChain) -> BimoduleChain:
    return expand_generator_map(chain, lambda w: row_generator_image(actx, B, A, w), B, A)


def validate_comparison_maps(actx: AlgebraContext, exp_bound: int) -> List[IdentityReport]:
    """mu f0 = pi, d f1 = f0 Omega, pi g0 = mu and g0 d = Omega g1 on basis monomials."""
    big_omega = omega(actx)
    mu_f0 = IdentityReport("comparison:mu f0 = pi")
    d_f1 = IdentityReport("comparison:d f1 = f0 Omega")
    for m in basis_monomials(B, exp_bound):
        b = actx.monomial(B, *m)
        mu_f0.record(mu_ba(actx, f0(actx, b)) == project_pi(b), f"b = {b}")
        lhs = d_ba(actx, f1(actx, b))
        rhs = f0(actx, b * big_omega)
        d_f1.record(lhs == rhs, f"b = {b}: {lhs} != {rhs}")

    pi_g0 = IdentityReport("comparison:pi g0 = mu")
    for chain in _test_chains(actx, B, A, exp_bound, [Wedge.ONE]):
        pi_g0.record(project_pi(g0(actx, chain)) == mu_ba(actx, chain), f"z = {chain}")

    g0_d = IdentityReport("comparison:g0 d = Omega g1")
    for chain in _test_chains(actx, B, A, exp_bound, [Wedge.Y, Wedge.H, Wedge.X]):
        lhs = g0(actx, d_ba(actx, chain))
        rhs = big_omega * g1(actx, chain)
        g0_d.record(lhs == rhs, f"z = {chain}: {lhs} != {rhs}")

    d_squared = IdentityReport("comparison:d^2 over B|-|A")
    for chain in _test_chains(actx, B, A, exp_bound):
        dd = d_ba(actx, d_ba(actx, chain))
        d_squared.record(dd.is_zero(), f"d^2({chain}) = {dd}")
    return [mu_f0, d_f1, pi_g0, g0_d, d_squared]
