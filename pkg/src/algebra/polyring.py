"""Polynomials in h over an exact field, and the sigma-operators on k[h].

sigma acts by sigma(p)(h) = p(q h). The invariant subring S = k[h]^sigma
is k[h^e] when q has finite order e, and k otherwise.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from src.algebra.linalg import rank_of_vectors
from src.algebra.scalars import FieldElement, QSpec, Rational
from src.errors import DivisionByZeroError, FieldMismatchError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

Scalar = Union[FieldElement, Rational]


class _NegativeInfinity:
    """Degree of the zero polynomial; smaller than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other) -> bool:
        return other is not self

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return other is self

    def __repr__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_NegativeInfinity, ())


NEG_INFINITY = _NegativeInfinity()


class Polynomial:
    """Univariate polynomial, coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("coeffs", "conductor")

    def __init__(self, coeffs: Sequence[Scalar] = (), conductor: Optional[int] = None):
        if conductor is None:
            conductor = next((c.conductor for c in coeffs if isinstance(c, FieldElement)), 1)
        values = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.conductor != conductor:
                    raise FieldMismatchError("polynomial coefficients from different fields")
                values.append(c)
            else:
                values.append(FieldElement.rational(c, conductor))
        while values and values[-1].is_zero():
            values.pop()
        self.coeffs: Tuple[FieldElement, ...] = tuple(values)
        self.conductor = conductor

    @classmethod
    def _make(cls, coeffs: List[FieldElement], conductor: int) -> "Polynomial":
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        poly = object.__new__(cls)
        poly.coeffs = tuple(coeffs)
        poly.conductor = conductor
        return poly

    @classmethod
    def zero(cls, conductor: int = 1) -> "Polynomial":
        return cls._make([], conductor)

    @classmethod
    def constant(cls, value: Scalar, conductor: int = 1) -> "Polynomial":
        if isinstance(value, FieldElement):
            return cls._make([value], value.conductor)
        return cls._make([FieldElement.rational(value, conductor)], conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "Polynomial":
        return cls.constant(1, conductor)

    @classmethod
    def monomial(cls, k: int, coefficient: Scalar = 1, conductor: int = 1) -> "Polynomial":
        if isinstance(coefficient, FieldElement):
            conductor = coefficient.conductor
        else:
            coefficient = FieldElement.rational(coefficient, conductor)
        zero = FieldElement.rational(0, conductor)
        return cls._make([zero] * k + [coefficient], conductor)

    @classmethod
    def parse(cls, text: str, conductor: int = 1) -> "Polynomial":
        return _PolynomialParser(text, conductor).parse()

    # Structure

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def top(self) -> int:
        """Degree as an integer, -1 for zero."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coefficient(self) -> FieldElement:
        if not self.coeffs:
            return FieldElement.rational(0, self.conductor)
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def coefficient(self, k: int) -> FieldElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return FieldElement.rational(0, self.conductor)

    def terms(self) -> Iterator[Tuple[int, FieldElement]]:
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield k, c

    def embed(self, conductor: int) -> "Polynomial":
        """View a rational polynomial inside Q(zeta_conductor)."""
        if conductor == self.conductor:
            return self
        if self.conductor != 1:
            raise FieldMismatchError(f"cannot move a polynomial over conductor {self.conductor} to {conductor}")
        return Polynomial._make(
            [FieldElement.rational(c.to_fraction(), conductor) for c in self.coeffs], conductor
        )

    def _check(self, other: "Polynomial") -> None:
        if other.conductor != self.conductor:
            raise FieldMismatchError(
                f"polynomials over conductors {self.conductor} and {other.conductor}"
            )

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (FieldElement, int, Fraction)):
            return Polynomial.constant(other, self.conductor)
        return NotImplemented

    # Arithmetic

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial._make(out, self.conductor)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._make([-c for c in self.coeffs], self.conductor)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.conductor)
        zero = FieldElement.rational(0, self.conductor)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Polynomial._make(out, self.conductor)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "Polynomial":
        if not isinstance(factor, FieldElement):
            factor = FieldElement.rational(factor, self.conductor)
        if factor.is_zero():
            return Polynomial.zero(self.conductor)
        return Polynomial._make([c * factor for c in self.coeffs], self.conductor)

    def shift(self, k: int) -> "Polynomial":
        """Multiply by h^k."""
        if not self.coeffs:
            return self
        zero = FieldElement.rational(0, self.conductor)
        return Polynomial._make([zero] * k + list(self.coeffs), self.conductor)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise PreconditionError("negative polynomial power")
        result = Polynomial.one(self.conductor)
        for _ in range(exponent):
            result = result * self
        return result

    def __divmod__(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        other = self._lift(other)
        if other.is_zero():
            raise DivisionByZeroError("polynomial division by zero")
        rem = list(self.coeffs)
        lead_inverse = other.coeffs[-1].inverse()
        zero = FieldElement.rational(0, self.conductor)
        quo = [zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        while len(rem) >= len(other.coeffs):
            shift = len(rem) - len(other.coeffs)
            factor = rem[-1] * lead_inverse
            quo[shift] = factor
            if not factor.is_zero():
                for i, c in enumerate(other.coeffs):
                    rem[i + shift] = rem[i + shift] - factor * c
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return Polynomial._make(quo, self.conductor), Polynomial._make(rem, self.conductor)

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise PreconditionError(f"{other} does not divide {self}")
        return quotient

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self.scale(self.coeffs[-1].inverse())

    def __call__(self, value: Scalar) -> FieldElement:
        result = FieldElement.rational(0, self.conductor)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def split_residues(self, e: int) -> List["Polynomial"]:
        """Components g_0..g_{e-1} with self = sum_rho h^rho g_rho(h^e)."""
        parts: List[List[FieldElement]] = [[] for _ in range(e)]
        zero = FieldElement.rational(0, self.conductor)
        for k, c in self.terms():
            rho, m = k % e, k // e
            bucket = parts[rho]
            bucket.extend([zero] * (m + 1 - len(bucket)))
            bucket[m] = c
        return [Polynomial._make(bucket, self.conductor) for bucket in parts]

    def coordinates(self) -> dict:
        return {k: c for k, c in self.terms()}

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs and (self.conductor == other.conductor or not self.coeffs)
        if isinstance(other, (FieldElement, int, Fraction)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __reduce__(self):
        return (Polynomial._make, (list(self.coeffs), self.conductor))

    def __str__(self) -> str:
        return format_polynomial(self, "h")

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def format_polynomial(p: Polynomial, var: str = "h") -> str:
    if p.is_zero():
        return "0"
    pieces: List[Tuple[str, str]] = []
    for k in range(p.top, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if c.is_rational():
            value = c.to_fraction()
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
        else:
            sign = "+"
            body = f"({c})" + (f"*{mono}" if mono else "")
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(\d+)|(h|z)|(\*\*|[-+*/^()]))")


class _PolynomialParser:
    """Recursive descent over + - * / ^ ( ) with the variable h.

    Inside Q(zeta_e) the letter z stands for zeta_e. Division is only by
    nonzero constants.
    """

    def __init__(self, text: str, conductor: int):
        self.text = text
        self.conductor = conductor
        self.tokens: List[str] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if not match:
                raise ParseError(f"unexpected character at position {pos} in {text!r}")
            self.tokens.append(match.group(1) or match.group(2) or ("^" if match.group(3) == "**" else match.group(3)))
            pos = match.end()
        self.index = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise ParseError(f"unexpected end of {self.text!r}")
        self.index += 1
        return token

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial")
        result = self.expression()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r} in {self.text!r}")
        return result

    def expression(self) -> Polynomial:
        result = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            token = self.peek()
            if token == "*":
                self.take()
                result = result * self.factor()
            elif token == "/":
                self.take()
                divisor = self.factor()
                if not divisor.is_constant() or divisor.is_zero():
                    raise ParseError(f"division by a non-constant or zero in {self.text!r}")
                result = result.scale(divisor.coeffs[0].inverse())
            elif token in ("h", "z", "(") or (token is not None and token.isdigit()):
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        token = self.peek()
        if token == "-":
            self.take()
            return -self.factor()
        if token == "+":
            self.take()
            return self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exponent = self.take()
            if not exponent.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** int(exponent)
        return base

    def atom(self) -> Polynomial:
        token = self.take()
        if token.isdigit():
            return Polynomial.constant(int(token), self.conductor)
        if token == "h":
            return Polynomial.monomial(1, 1, self.conductor)
        if token == "z":
            if self.conductor < 3:
                raise ParseError("z is only available over a cyclotomic field")
            return Polynomial.constant(FieldElement.zeta_power(self.conductor, 1))
        if token == "(":
            inner = self.expression()
            if self.take() != ")":
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        raise ParseError(f"unexpected {token!r} in {self.text!r}")


@dataclass(frozen=True)
class RingContext:
    """k[h] together with the automorphism sigma determined by q."""

    q: QSpec

    @property
    def e(self) -> int:
        return self.q.order_of_unity

    @property
    def conductor(self) -> int:
        return self.q.conductor

    def scalar(self, value: Rational) -> FieldElement:
        return self.q.scalar(value)

    def q_power(self, n: int) -> FieldElement:
        return self.q.power_of(n)

    def h(self, k: int = 1) -> Polynomial:
        return Polynomial.monomial(k, 1, self.conductor)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.conductor)

    def one(self) -> Polynomial:
        return Polynomial.one(self.conductor)

    def sigma(self, p: Polynomial, power: int = 1) -> Polynomial:
        return apply_sigma(p, self, power)

    def parse(self, text: str) -> Polynomial:
        return Polynomial.parse(text, self.conductor)


def q_integer(n: int, lam: FieldElement) -> FieldElement:
    """(n)_lam = 1 + lam + ... + lam^(n-1); (0)_lam = 0."""
    if n < 0:
        raise PreconditionError(f"q-integer of negative n={n}")
    total = FieldElement.rational(0, lam.conductor)
    power = FieldElement.rational(1, lam.conductor)
    for _ in range(n):
        total = total + power
        power = power * lam
    return total


def integral_pairs(i: int) -> Iterator[Tuple[int, int]]:
    """Pairs (s, t) with s + t + 1 = i and s, t >= 0."""
    for s in range(i):
        yield s, i - 1 - s


def apply_sigma(p: Polynomial, ctx: RingContext, power: int = 1) -> Polynomial:
    """sigma^power(p)(h) = p(q^power h)."""
    p = p.embed(ctx.conductor)
    if power == 0 or p.is_zero():
        return p
    return Polynomial._make(
        [c * ctx.q_power(k * power) for k, c in enumerate(p.coeffs)], p.conductor
    )


def derivative(p: Polynomial) -> Polynomial:
    return Polynomial._make([c * k for k, c in enumerate(p.coeffs)][1:], p.conductor)


def poly_gcd(p: Polynomial, t: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm."""
    if p.is_zero() and t.is_zero():
        raise PreconditionError("gcd of two zero polynomials")
    while not t.is_zero():
        p, t = t, p % t
    return p.monic()


def lcm_list(polys: Sequence[Polynomial]) -> Polynomial:
    """Monic least common multiple of nonzero polynomials."""
    if any(p.is_zero() for p in polys):
        raise PreconditionError("lcm of a zero polynomial")

    def lcm(p: Polynomial, t: Polynomial) -> Polynomial:
        return (p * t).exact_div(poly_gcd(p, t)).monic()

    return reduce(lcm, polys[1:], polys[0].monic()) if polys else Polynomial.one()


def _require_root_case(f: Polynomial, ctx: RingContext) -> None:
    if ctx.e == 0:
        raise PreconditionError("the sigma-norm is only defined when q is a root of unity")
    if f.is_zero() or f.coefficient(0).is_zero():
        raise PreconditionError(f"the sigma-norm needs f(0) != 0, got f = {f}")


def n_operator(f: Polynomial, ctx: RingContext) -> Polynomial:
    """N(f) = lcm(f, sigma(f), ..., sigma^(e-1)(f)), monic; lies in S."""
    _require_root_case(f, ctx)
    return lcm_list([apply_sigma(f, ctx, i).monic() for i in range(ctx.e)])


def f_bar(f: Polynomial, ctx: RingContext) -> Polynomial:
    return n_operator(f, ctx).exact_div(f.embed(ctx.conductor).monic())


def eta(f: Polynomial, ctx: RingContext) -> int:
    """deg f - deg N(f) / e."""
    norm_degree = n_operator(f, ctx).top
    if norm_degree % ctx.e:
        raise PreconditionError(f"deg N(f) = {norm_degree} is not divisible by e = {ctx.e}")
    return f.top - norm_degree // ctx.e


def is_in_S(f: Polynomial, ctx: RingContext, l: int = 0) -> bool:
    """f lies in h^l k[h^e]: every exponent is at least l and congruent to l mod e."""
    if ctx.e == 0:
        raise PreconditionError("S = k[h^e] needs q to be a root of unity")
    if l < 0:
        raise PreconditionError(f"l must be nonnegative, got {l}")
    return all(k >= l and (k - l) % ctx.e == 0 for k, _ in f.terms())


def pi_hlS_dim(f: Polynomial, ctx: RingContext, l: int, D: int) -> int:
    """dim of the image of h^l S_{<=D} in k[h]/(f), h^l S truncated at h-degree D."""
    _require_root_case(f, ctx)
    norm_degree = n_operator(f, ctx).top
    if D < norm_degree:
        raise PreconditionError(f"pi_hlS_dim needs D >= deg N(f) = {norm_degree}, got {D}")
    f = f.embed(ctx.conductor)
    step = ctx.e
    remainders = []
    k = l
    while k <= D:
        remainders.append((ctx.h(k) % f).coordinates())
        if step == 0:
            break
        k += step
    return rank_of_vectors(remainders)


def coker_psi_dim(f: Polynomial, ctx: RingContext, l: int, D: int) -> int:
    """dim of k[h]_{<= D + deg f} / im(p -> (sigma - q^l)(f p)), p of degree <= D."""
    _require_root_case(f, ctx)
    f = f.embed(ctx.conductor)
    shift = ctx.q_power(l)
    images = []
    for j in range(D + 1):
        g = f.shift(j)
        images.append((apply_sigma(g, ctx) - g.scale(shift)).coordinates())
    return D + f.top + 1 - rank_of_vectors(images)
