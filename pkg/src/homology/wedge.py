"""Exterior monomials in Y, H, X and chains of the bimodules L | wedge V | R.

A bimodule chain is a combination of tensors a | w | b with a, b normal-form
monomials of the left and right algebras and w an exterior monomial; scalars
are carried by the term. The formulas below give the row differential d and
the column differential delta on the generators 1 | w | 1; every other value
follows by bimodule linearity.
"""

from __future__ import annotations

import logging
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from src.algebra.polyring import integral_pairs
from src.algebra.scalars import FieldElement
from src.algebra.weyl import AlgebraContext, AlgebraElement, AlgebraKind, Monomial, format_element
from src.errors import PreconditionError

logger = logging.getLogger(__name__)


class Wedge(str, Enum):
    """Basis of the exterior algebra on Y, H, X, in the order Y < H < X."""

    ONE = "1"
    Y = "Y"
    H = "H"
    X = "X"
    YH = "Y∧H"
    YX = "Y∧X"
    HX = "H∧X"
    YHX = "Y∧H∧X"

    @property
    def letters(self) -> Tuple[str, ...]:
        return () if self is Wedge.ONE else tuple(self.value.split("∧"))

    @property
    def degree(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum({"Y": 1, "H": 0, "X": -1}[letter] for letter in self.letters)

    @classmethod
    def of_degree(cls, m: int) -> List["Wedge"]:
        return [w for w in cls if w.degree == m]


Key = Tuple[Wedge, Monomial, Monomial]


class BimoduleChain:
    """Element of (left algebra) | wedge V | (right algebra)."""

    __slots__ = ("ctx", "left_kind", "right_kind", "terms")

    def __init__(
        self,
        ctx: AlgebraContext,
        left_kind: AlgebraKind,
        right_kind: AlgebraKind,
        terms: Optional[Dict[Key, FieldElement]] = None,
    ):
        self.ctx = ctx
        self.left_kind = left_kind
        self.right_kind = right_kind
        self.terms = {key: c for key, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def zero(cls, ctx: AlgebraContext, left_kind: AlgebraKind, right_kind: AlgebraKind) -> "BimoduleChain":
        return cls(ctx, left_kind, right_kind)

    @classmethod
    def pure(
        cls,
        left: AlgebraElement,
        wedge: Wedge,
        right: AlgebraElement,
        coefficient=1,
    ) -> "BimoduleChain":
        """left | wedge | right, expanded bilinearly."""
        ctx = left.ctx
        factor = ctx.scalar(coefficient)
        terms: Dict[Key, FieldElement] = {}
        for lm, lc in left.terms.items():
            for rm, rc in right.terms.items():
                _add(terms, (wedge, lm, rm), factor * lc * rc)
        return cls(ctx, left.kind, right.kind, terms)

    @classmethod
    def generator(cls, ctx: AlgebraContext, left_kind: AlgebraKind, right_kind: AlgebraKind, wedge: Wedge) -> "BimoduleChain":
        return cls.pure(ctx.one(left_kind), wedge, ctx.one(right_kind))

    def _same(self, other: "BimoduleChain") -> None:
        if (other.left_kind, other.right_kind) != (self.left_kind, self.right_kind):
            raise PreconditionError("bimodule chains over different algebras")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BimoduleChain") -> "BimoduleChain":
        self._same(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            _add(terms, key, c)
        return BimoduleChain(self.ctx, self.left_kind, self.right_kind, terms)

    def __neg__(self) -> "BimoduleChain":
        return self.scale(-1)

    def __sub__(self, other: "BimoduleChain") -> "BimoduleChain":
        return self + (-other)

    def scale(self, factor) -> "BimoduleChain":
        factor = self.ctx.scalar(factor)
        return BimoduleChain(
            self.ctx, self.left_kind, self.right_kind, {key: c * factor for key, c in self.terms.items()}
        )

    def left_mul(self, a: AlgebraElement) -> "BimoduleChain":
        terms: Dict[Key, FieldElement] = {}
        for (w, lm, rm), c in self.terms.items():
            product = a * self.ctx.monomial(self.left_kind, *lm)
            for m, pc in product.terms.items():
                _add(terms, (w, m, rm), c * pc)
        return BimoduleChain(self.ctx, self.left_kind, self.right_kind, terms)

    def right_mul(self, b: AlgebraElement) -> "BimoduleChain":
        terms: Dict[Key, FieldElement] = {}
        for (w, lm, rm), c in self.terms.items():
            product = self.ctx.monomial(self.right_kind, *rm) * b
            for m, pc in product.terms.items():
                _add(terms, (w, lm, m), c * pc)
        return BimoduleChain(self.ctx, self.left_kind, self.right_kind, terms)

    def wedges(self) -> List[Wedge]:
        return sorted({w for w, _, _ in self.terms}, key=list(Wedge).index)

    def __eq__(self, other) -> bool:
        if isinstance(other, BimoduleChain):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (w, lm, rm), c in sorted(self.terms.items(), key=lambda item: (list(Wedge).index(item[0][0]), item[0][1:])):
            left = format_element(self.ctx.monomial(self.left_kind, *lm, coefficient=c))
            right = format_element(self.ctx.monomial(self.right_kind, *rm))
            parts.append(f"({left})|{w.value}|{right}")
        return " + ".join(parts)

    __repr__ = __str__


def _add(terms: Dict, key, c: FieldElement) -> None:
    updated = terms.get(key, 0) + c
    if updated:
        terms[key] = updated
    else:
        terms.pop(key, None)


def expand_generator_map(chain: BimoduleChain, image_of, left_kind: AlgebraKind, right_kind: AlgebraKind) -> BimoduleChain:
    """Extend a map given on generators 1 | w | 1 bimodule-linearly."""
    ctx = chain.ctx
    out = BimoduleChain.zero(ctx, left_kind, right_kind)
    for (w, lm, rm), c in chain.terms.items():
        image = image_of(w)
        if image.is_zero():
            continue
        image = image.left_mul(ctx.monomial(chain.left_kind, *lm)).right_mul(ctx.monomial(chain.right_kind, *rm))
        out = out + image.scale(c)
    return out


class _Builder:
    """Accumulates c * (left | w | right) terms for the generator formulas."""

    def __init__(self, ctx: AlgebraContext, left_kind: AlgebraKind, right_kind: AlgebraKind):
        self.ctx = ctx
        self.left_kind = left_kind
        self.right_kind = right_kind
        self.chain = BimoduleChain.zero(ctx, left_kind, right_kind)

    def L(self, letter: Optional[str] = None, power: int = 1) -> AlgebraElement:
        if letter is None:
            return self.ctx.one(self.left_kind)
        return self.ctx.gen(self.left_kind, letter) ** power

    def R(self, letter: Optional[str] = None, power: int = 1) -> AlgebraElement:
        if letter is None:
            return self.ctx.one(self.right_kind)
        return self.ctx.gen(self.right_kind, letter) ** power

    def add(self, coefficient, left: AlgebraElement, wedge: Wedge, right: AlgebraElement) -> None:
        self.chain = self.chain + BimoduleChain.pure(left, wedge, right, coefficient)

    def integral(self, coefficients, wedge: Wedge, weight) -> None:
        """sum_i c_i sum_{s+t+1=i} weight(i, s, t) h^s | wedge | h^t."""
        for i, c in coefficients:
            for s, t in integral_pairs(i):
                self.add(c * weight(i, s, t), self.L("h", s), wedge, self.R("h", t))


@lru_cache(maxsize=256)
def row_generator_image(
    ctx: AlgebraContext,
    left_kind: AlgebraKind,
    right_kind: AlgebraKind,
    wedge: Wedge,
    with_commutator: bool = True,
) -> BimoduleChain:
    """d(1 | w | 1) in the Koszul-type row complex."""
    b = _Builder(ctx, left_kind, right_kind)
    q = ctx.ring.q_power(1)
    one = ctx.scalar(1)
    if wedge in (Wedge.Y, Wedge.H, Wedge.X):
        letter = wedge.value.lower()
        b.add(1, b.L(), Wedge.ONE, b.R(letter))
        b.add(-1, b.L(letter), Wedge.ONE, b.R())
    elif wedge is Wedge.HX:
        b.add(1, b.L(), Wedge.X, b.R("h"))
        b.add(-q, b.L("h"), Wedge.X, b.R())
        b.add(-q, b.L(), Wedge.H, b.R("x"))
        b.add(1, b.L("x"), Wedge.H, b.R())
    elif wedge is Wedge.YX:
        b.add(1, b.L(), Wedge.X, b.R("y"))
        b.add(-1, b.L("y"), Wedge.X, b.R())
        b.add(-1, b.L(), Wedge.Y, b.R("x"))
        b.add(1, b.L("x"), Wedge.Y, b.R())
        if with_commutator:
            b.integral(ctx.lambdas, Wedge.H, lambda i, s, t: -one)
    elif wedge is Wedge.YH:
        b.add(1, b.L(), Wedge.H, b.R("y"))
        b.add(-q, b.L("y"), Wedge.H, b.R())
        b.add(-q, b.L(), Wedge.Y, b.R("h"))
        b.add(1, b.L("h"), Wedge.Y, b.R())
    elif wedge is Wedge.YHX:
        b.add(1, b.L(), Wedge.HX, b.R("y"))
        b.add(-q, b.L("y"), Wedge.HX, b.R())
        b.add(-q, b.L(), Wedge.YX, b.R("h"))
        b.add(q, b.L("h"), Wedge.YX, b.R())
        b.add(q, b.L(), Wedge.YH, b.R("x"))
        b.add(-1, b.L("x"), Wedge.YH, b.R())
    return b.chain


@lru_cache(maxsize=64)
def column_generator_image(ctx: AlgebraContext, wedge: Wedge) -> BimoduleChain:
    """delta(1 | w | 1) on A | wedge V | A; raises the exterior degree."""
    A = AlgebraKind.A
    b = _Builder(ctx, A, A)
    one = ctx.scalar(1)
    qp = ctx.ring.q_power
    if wedge is Wedge.ONE:
        b.add(1, b.L("y"), Wedge.X, b.R())
        b.add(1, b.L(), Wedge.Y, b.R("x"))
        b.integral(ctx.alphas, Wedge.H, lambda i, s, t: -one)
    elif wedge is Wedge.Y:
        b.add(-1, b.L("y"), Wedge.YX, b.R())
        b.integral(ctx.alphas, Wedge.YH, lambda i, s, t: qp(t))
    elif wedge is Wedge.H:
        b.add(1, b.L(), Wedge.YH, b.R("x"))
        b.add(-1, b.L("y"), Wedge.HX, b.R())
    elif wedge is Wedge.X:
        b.add(1, b.L(), Wedge.YX, b.R("x"))
        b.integral(ctx.alphas, Wedge.HX, lambda i, s, t: -qp(s))
    elif wedge is Wedge.YH:
        b.add(1, b.L("y"), Wedge.YHX, b.R())
    elif wedge is Wedge.YX:
        b.integral(ctx.alphas, Wedge.YHX, lambda i, s, t: qp(i - 1))
    elif wedge is Wedge.HX:
        b.add(1, b.L(), Wedge.YHX, b.R("x"))
    return b.chain


def generator_terms(chain: BimoduleChain) -> List[Tuple[FieldElement, AlgebraElement, Wedge, AlgebraElement]]:
    """Terms c, a, w, b of a chain, with a and b as algebra elements."""
    ctx = chain.ctx
    return [
        (c, ctx.monomial(chain.left_kind, *lm), w, ctx.monomial(chain.right_kind, *rm))
        for (w, lm, rm), c in chain.terms.items()
    ]
