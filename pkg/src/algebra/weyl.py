"""Quantum generalized Weyl algebras A(a, q) and the Smith algebras B, B-bar.

A(a, q) is generated by x, y, h with
    xh = q hx,  hy = q yh,  yx = a(h),  xy = a(qh),
and has the basis y^i h^j (i >= 0) together with h^j x^k (k >= 1).
B is generated by X, Y, H with HY = q YH, XH = q HX, XY - YX = l(H) where
l = sigma(a) - a; B-bar is the same with XY = YX. Both have basis Y^i H^j X^k.
Omega = YX - a(H) is central in B and A = B / Omega B.

Monomials are exponent triples (i, j, k) for y^i h^j x^k (resp. Y^i H^j X^k);
the weight of a monomial is i - k.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Tuple, Union

from src.algebra.polyring import Polynomial, RingContext, apply_sigma, derivative, q_integer
from src.algebra.scalars import FieldElement, QSpec, Rational
from src.errors import InvalidAlgebraError, PreconditionError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int]
Terms = Dict[Monomial, FieldElement]


class AlgebraKind(str, Enum):
    A = "A"
    B = "B"
    BBAR = "Bbar"


class BracketConvention(str, Enum):
    PLAIN = "plain"        # uv - vu
    Q_LEFT = "q_left"      # uv - q vu
    Q_RIGHT = "q_right"    # q uv - vu


@dataclass(frozen=True)
class AlgebraContext:
    """Defining data (a, q) of A(a, q) and of the associated Smith algebras."""

    a: Polynomial
    ring: RingContext

    def __post_init__(self):
        if self.a.is_zero() or self.a.top < 2:
            raise InvalidAlgebraError(f"a must have degree at least 2, got {self.a}")
        object.__setattr__(self, "a", self.a.embed(self.ring.conductor))

    @classmethod
    def create(cls, a: Polynomial, q: QSpec) -> "AlgebraContext":
        return cls(a, RingContext(q))

    @classmethod
    def parse(cls, a_text: str, q_text: str) -> "AlgebraContext":
        q = QSpec.parse(q_text)
        return cls(Polynomial.parse(a_text, q.conductor), RingContext(q))

    @property
    def q(self) -> QSpec:
        return self.ring.q

    @property
    def e(self) -> int:
        return self.ring.e

    @property
    def conductor(self) -> int:
        return self.ring.conductor

    @property
    def N(self) -> int:
        return self.a.top

    @cached_property
    def alphas(self) -> List[Tuple[int, FieldElement]]:
        return list(self.a.terms())

    @cached_property
    def l(self) -> Polynomial:
        """l = sigma(a) - a, the commutator [X, Y] in B."""
        return apply_sigma(self.a, self.ring) - self.a

    @cached_property
    def lambdas(self) -> List[Tuple[int, FieldElement]]:
        return list(self.l.terms())

    @cached_property
    def a_prime(self) -> Polynomial:
        return derivative(self.a)

    def mirror(self) -> "AlgebraContext":
        """The target A(sigma(a), q^-1) of the isomorphism that swaps x and y."""
        return AlgebraContext(apply_sigma(self.a, self.ring), RingContext(self.q.inverse()))

    # Element constructors

    def scalar(self, value: Union[FieldElement, Rational]) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        return self.ring.scalar(value)

    def monomial(self, kind: AlgebraKind, i: int, j: int, k: int, coefficient=1) -> "AlgebraElement":
        if kind is AlgebraKind.A and i and k:
            raise PreconditionError(f"y^{i} h^{j} x^{k} is not a basis monomial of A")
        return AlgebraElement(kind, self, {(i, j, k): self.scalar(coefficient)})

    def one(self, kind: AlgebraKind = AlgebraKind.A) -> "AlgebraElement":
        return self.monomial(kind, 0, 0, 0)

    def zero(self, kind: AlgebraKind = AlgebraKind.A) -> "AlgebraElement":
        return AlgebraElement(kind, self, {})

    def gen(self, kind: AlgebraKind, letter: str) -> "AlgebraElement":
        exponents = {"y": (1, 0, 0), "h": (0, 1, 0), "x": (0, 0, 1)}[letter.lower()]
        return self.monomial(kind, *exponents)

    def poly(self, kind: AlgebraKind, p: Polynomial) -> "AlgebraElement":
        """p(h) as an element."""
        p = p.embed(self.conductor)
        return AlgebraElement(kind, self, {(0, j, 0): c for j, c in p.terms()})

    def __str__(self) -> str:
        return f"A({self.a}, q={self.q})"


class AlgebraElement:
    """Finite linear combination of normal-form monomials."""

    __slots__ = ("kind", "ctx", "terms")

    def __init__(self, kind: AlgebraKind, ctx: AlgebraContext, terms: Optional[Terms] = None):
        self.kind = kind
        self.ctx = ctx
        self.terms: Terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    def _same(self, other: "AlgebraElement") -> None:
        if other.kind is not self.kind or (other.ctx is not self.ctx and other.ctx != self.ctx):
            raise PreconditionError(f"cannot combine elements of {self.kind.value} and {other.kind.value}")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.kind, self.ctx, _combine(self.terms, other.terms, 1))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.kind, self.ctx, _combine(self.terms, other.terms, -1))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.kind, self.ctx, {m: -c for m, c in self.terms.items()})

    def scale(self, factor) -> "AlgebraElement":
        factor = self.ctx.scalar(factor)
        if factor.is_zero():
            return AlgebraElement(self.kind, self.ctx, {})
        return AlgebraElement(self.kind, self.ctx, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "AlgebraElement":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "AlgebraElement":
        result = self.ctx.one(self.kind)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.kind is other.kind and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.kind, frozenset(self.terms.items())))

    def weights(self) -> List[int]:
        return sorted({i - k for i, _, k in self.terms})

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"AlgebraElement[{self.kind.value}]({self})"


def _combine(left: Terms, right: Terms, sign: int) -> Terms:
    out = dict(left)
    for m, c in right.items():
        updated = out.get(m, 0) + (c if sign > 0 else -c)
        if updated:
            out[m] = updated
        else:
            out.pop(m, None)
    return out


def _accumulate(out: Terms, m: Monomial, c: FieldElement) -> None:
    updated = out.get(m, 0) + c
    if updated:
        out[m] = updated
    else:
        out.pop(m, None)


def _letters(kind: AlgebraKind) -> Tuple[str, str, str]:
    return ("y", "h", "x") if kind is AlgebraKind.A else ("Y", "H", "X")


def format_element(u: AlgebraElement) -> str:
    if u.is_zero():
        return "0"
    ly, lh, lx = _letters(u.kind)
    parts = []
    for (i, j, k) in sorted(u.terms, key=lambda m: (-(m[0] - m[2]), m)):
        c = u.terms[(i, j, k)]
        factors = [
            f"{letter}^{n}" if n > 1 else letter
            for letter, n in ((ly, i), (lh, j), (lx, k))
            if n
        ]
        mono = "*".join(factors)
        if c.is_rational():
            value = c.to_fraction()
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            body = mono if (magnitude == 1 and mono) else (f"{magnitude}*{mono}" if mono else str(magnitude))
        else:
            sign = "+"
            body = f"({c})*{mono}" if mono else f"({c})"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# Generator actions on normal-form monomials (left multiplication).

def _act_y(kind: AlgebraKind, ctx: AlgebraContext, m: Monomial) -> List[Tuple[Monomial, FieldElement]]:
    i, j, k = m
    one = ctx.scalar(1)
    if kind is not AlgebraKind.A or k == 0:
        return [((i + 1, j, k), one)]
    # y h^j x^k = q^-j h^j a(h) x^(k-1)
    factor = ctx.ring.q_power(-j)
    return [((0, j + s, k - 1), factor * alpha) for s, alpha in ctx.alphas]


def _act_h(kind: AlgebraKind, ctx: AlgebraContext, b: int, m: Monomial) -> List[Tuple[Monomial, FieldElement]]:
    i, j, k = m
    return [((i, j + b, k), ctx.ring.q_power(b * i))]


def _act_x(kind: AlgebraKind, ctx: AlgebraContext, m: Monomial) -> List[Tuple[Monomial, FieldElement]]:
    i, j, k = m
    if kind is AlgebraKind.A:
        if i == 0:
            return [((0, j, k + 1), ctx.ring.q_power(j))]
        # x y^i h^j = y^(i-1) sigma^i(a) h^j
        return [((i - 1, j + s, 0), alpha * ctx.ring.q_power(i * s)) for s, alpha in ctx.alphas]
    out = [((i, j, k + 1), ctx.ring.q_power(j))]
    if kind is AlgebraKind.B and i:
        # X Y^i = Y^i X + Y^(i-1) sum_{t<i} l(q^t H)
        out.extend(((i - 1, j + s, k), c) for s, c in _commutator_tail(ctx, i))
    return out


@lru_cache(maxsize=4096)
def _commutator_tail(ctx: AlgebraContext, i: int) -> Tuple[Tuple[int, FieldElement], ...]:
    """Coefficients of L_i(H) = sum_s lambda_s (i)_{q^s} H^s."""
    out = []
    for s, lam in ctx.lambdas:
        c = lam * q_integer(i, ctx.ring.q_power(s))
        if not c.is_zero():
            out.append((s, c))
    return tuple(out)


def _apply(action, terms: Terms) -> Terms:
    out: Terms = {}
    for m, c in terms.items():
        for m2, c2 in action(m):
            _accumulate(out, m2, c * c2)
    return out


@lru_cache(maxsize=1 << 16)
def _monomial_product(kind: AlgebraKind, ctx: AlgebraContext, left: Monomial, right: Monomial) -> Tuple[Tuple[Monomial, FieldElement], ...]:
    i, j, k = left
    terms: Terms = {right: ctx.scalar(1)}
    for _ in range(k):
        terms = _apply(lambda m: _act_x(kind, ctx, m), terms)
    if j:
        terms = _apply(lambda m: _act_h(kind, ctx, j, m), terms)
    for _ in range(i):
        terms = _apply(lambda m: _act_y(kind, ctx, m), terms)
    return tuple(terms.items())


def multiply(u: AlgebraElement, v: AlgebraElement, actx: Optional[AlgebraContext] = None) -> AlgebraElement:
    """Product in normal form; the context defaults to the one carried by u."""
    u._same(v)
    ctx = actx or u.ctx
    out: Terms = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            coefficient = c1 * c2
            for m, c in _monomial_product(u.kind, ctx, m1, m2):
                _accumulate(out, m, coefficient * c)
    return AlgebraElement(u.kind, ctx, out)


def commutator(u: AlgebraElement, v: AlgebraElement, mode: BracketConvention = BracketConvention.PLAIN) -> AlgebraElement:
    q = u.ctx.ring.q_power(1)
    if mode is BracketConvention.PLAIN:
        return u * v - v * u
    if mode is BracketConvention.Q_LEFT:
        return u * v - (v * u).scale(q)
    return (u * v).scale(q) - v * u


def omega(actx: AlgebraContext) -> AlgebraElement:
    """Omega = YX - a(H) in B."""
    return actx.monomial(AlgebraKind.B, 1, 0, 1) - actx.poly(AlgebraKind.B, actx.a)


def project_pi(u: AlgebraElement) -> AlgebraElement:
    """pi: B -> A sending Y, H, X to y, h, x."""
    if u.kind is not AlgebraKind.B:
        raise PreconditionError("project_pi expects an element of B")
    ctx = u.ctx
    out = ctx.zero(AlgebraKind.A)
    for (i, j, k), c in u.terms.items():
        image = ctx.monomial(AlgebraKind.A, i, 0, 0) * ctx.monomial(AlgebraKind.A, 0, j, k)
        out = out + image.scale(c)
    return out


def phi_iso(u: AlgebraElement) -> AlgebraElement:
    """Phi: A(a, q) -> A(sigma(a), q^-1), x <-> y, h fixed."""
    if u.kind is not AlgebraKind.A:
        raise PreconditionError("phi_iso expects an element of A")
    target = u.ctx.mirror()
    out = target.zero(AlgebraKind.A)
    for (i, j, k), c in u.terms.items():
        image = (
            target.monomial(AlgebraKind.A, 0, 0, i)
            * target.monomial(AlgebraKind.A, 0, j, 0)
            * target.monomial(AlgebraKind.A, k, 0, 0)
        )
        out = out + image.scale(c)
    return out


def weight_decompose(u: AlgebraElement) -> Dict[int, AlgebraElement]:
    parts: Dict[int, Terms] = {}
    for (i, j, k), c in u.terms.items():
        parts.setdefault(i - k, {})[(i, j, k)] = c
    return {r: AlgebraElement(u.kind, u.ctx, terms) for r, terms in sorted(parts.items())}


def weight_component_coords(r: int, p: Polynomial, actx: AlgebraContext) -> AlgebraElement:
    """y^r p(h) for r >= 0 and p(h) x^-r for r < 0."""
    p = p.embed(actx.conductor)
    if r >= 0:
        terms = {(r, j, 0): c for j, c in p.terms()}
    else:
        terms = {(0, j, -r): c for j, c in p.terms()}
    return AlgebraElement(AlgebraKind.A, actx, terms)


def component_polynomial(u: AlgebraElement, r: int) -> Polynomial:
    """Inverse of weight_component_coords; u must be homogeneous of weight r."""
    coefficients: Dict[int, FieldElement] = {}
    for (i, j, k), c in u.terms.items():
        if i - k != r:
            raise PreconditionError(f"element {u} is not homogeneous of weight {r}")
        coefficients[j] = c
    if not coefficients:
        return Polynomial.zero(u.ctx.conductor)
    zero = u.ctx.scalar(0)
    return Polynomial._make(
        [coefficients.get(j, zero) for j in range(max(coefficients) + 1)], u.ctx.conductor
    )


def basis_monomials(kind: AlgebraKind, bound: int) -> Iterable[Monomial]:
    """Normal-form monomials with every exponent at most bound."""
    for i in range(bound + 1):
        for j in range(bound + 1):
            for k in range(bound + 1):
                if kind is AlgebraKind.A and i and k:
                    continue
                yield (i, j, k)
