"""Exact scalars: the rational field and cyclotomic fields Q(zeta_e).

Elements of Q(zeta_e) are coefficient vectors in the power basis
1, z, ..., z^(phi(e)-1), reduced modulo the e-th cyclotomic polynomial.
The rational field uses conductor 1; roots of unity of order 2 live in Q.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from config.settings import get_settings
from src.errors import (
    DivisionByZeroError,
    FieldMismatchError,
    InvalidAlgebraError,
    ParseError,
    PreconditionError,
)

logger = logging.getLogger(__name__)
settings = get_settings()

Rational = Union[int, Fraction]


# Dense helpers on coefficient lists over Q, lowest degree first.

def _trim(coeffs: List[Fraction]) -> List[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    size = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(size)
    ]
    return _trim(out)


def _divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    rem = _trim([Fraction(c) for c in a])
    divisor = _trim([Fraction(c) for c in b])
    if not divisor:
        raise DivisionByZeroError("polynomial division by zero")
    lead = divisor[-1]
    quo = [Fraction(0)] * max(len(rem) - len(divisor) + 1, 0)
    while len(rem) >= len(divisor):
        shift = len(rem) - len(divisor)
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(divisor):
            rem[i + shift] -= factor * c
        _trim(rem)
    return _trim(quo), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> Tuple[int, ...]:
    """Integer coefficients of the e-th cyclotomic polynomial, lowest degree first."""
    if e < 1:
        raise PreconditionError(f"cyclotomic order must be positive, got {e}")
    if e > settings.max_cyclotomic_order:
        raise PreconditionError(
            f"cyclotomic order {e} exceeds the configured maximum {settings.max_cyclotomic_order}"
        )
    numerator: List[Fraction] = [Fraction(-1)] + [Fraction(0)] * (e - 1) + [Fraction(1)]
    for d in range(1, e):
        if e % d == 0:
            numerator, rem = _divmod(numerator, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not rem
    return tuple(int(c) for c in numerator)


def field_degree(conductor: int) -> int:
    if conductor == 1:
        return 1
    return len(cyclotomic_polynomial(conductor)) - 1


def _reduce(coeffs: Sequence[Fraction], conductor: int) -> Tuple[Fraction, ...]:
    """Reduce a coefficient list modulo the cyclotomic polynomial of the field."""
    size = field_degree(conductor)
    if conductor == 1:
        if len(coeffs) > 1:
            raise PreconditionError("rational elements take a single coefficient")
        return (Fraction(coeffs[0]) if coeffs else Fraction(0),)
    work = [Fraction(c) for c in coeffs]
    modulus = cyclotomic_polynomial(conductor)
    for top in range(len(work) - 1, size - 1, -1):
        factor = work[top]
        if factor == 0:
            continue
        shift = top - size
        for i, c in enumerate(modulus):
            if c:
                work[shift + i] -= factor * c
    work.extend([Fraction(0)] * (size - len(work)))
    return tuple(work[:size])


class FieldElement:
    """An element of Q (conductor 1) or of Q(zeta_e) (conductor e >= 3)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, coeffs: Union[Rational, Sequence[Rational]] = 0, conductor: int = 1):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        if conductor == 2 or conductor < 1:
            raise PreconditionError(f"invalid field conductor {conductor}")
        self.conductor = conductor
        self.coeffs = _reduce([Fraction(c) for c in coeffs] or [Fraction(0)], conductor)

    @classmethod
    def _make(cls, coeffs: Tuple[Fraction, ...], conductor: int) -> "FieldElement":
        element = object.__new__(cls)
        element.conductor = conductor
        element.coeffs = coeffs
        return element

    @classmethod
    def rational(cls, value: Rational, conductor: int = 1) -> "FieldElement":
        size = field_degree(conductor)
        return cls._make((Fraction(value),) + (Fraction(0),) * (size - 1), conductor)

    @classmethod
    def zeta_power(cls, e: int, k: int) -> "FieldElement":
        """zeta_e ** k; for e <= 2 this is the rational number (+-1)."""
        return _zeta_power(e, k % e)

    # Coercion

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.conductor != self.conductor:
                raise FieldMismatchError(
                    f"cannot combine elements of fields with conductors {self.conductor} and {other.conductor}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.rational(other, self.conductor)
        return NotImplemented

    # Arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement._make(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.conductor)

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement._make(tuple(-a for a in self.coeffs), self.conductor)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement._make(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.conductor)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.conductor == 1:
            return FieldElement._make((self.coeffs[0] * other.coeffs[0],), 1)
        product = _mul(self.coeffs, other.coeffs) or [Fraction(0)]
        return FieldElement._make(_reduce(product, self.conductor), self.conductor)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero")
        if self.conductor == 1:
            return FieldElement._make((1 / self.coeffs[0],), 1)
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0: List[Fraction] = []
        s1: List[Fraction] = [Fraction(1)]
        while r1:
            quo, rem = _divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _sub(s0, _mul(quo, s1))
        # r0 is a nonzero constant: the modulus is irreducible.
        scale = 1 / r0[0]
        return FieldElement._make(_reduce([c * scale for c in s0] or [Fraction(0)], self.conductor), self.conductor)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElement.rational(1, self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Predicates

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise PreconditionError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def height(self) -> int:
        """Bit size used to rank pivot candidates; zero has height 0."""
        return sum(
            max(abs(c.numerator), c.denominator).bit_length() for c in self.coeffs if c
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, FieldElement):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def __reduce__(self):
        return (FieldElement._make, (self.coeffs, self.conductor))

    # Text

    @property
    def is_compound(self) -> bool:
        """True when printing inside a product needs parentheses."""
        if self.is_rational():
            return False
        return sum(1 for c in self.coeffs if c) > 1 or any(
            c < 0 for c in self.coeffs if c
        )

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        parts: List[str] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            power = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not power:
                body = str(abs(c))
            elif abs(c) == 1:
                body = power
            else:
                body = f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"FieldElement({self}, conductor={self.conductor})"


@lru_cache(maxsize=None)
def _zeta_power(e: int, k: int) -> FieldElement:
    if e == 1:
        return FieldElement.rational(1)
    if e == 2:
        return FieldElement.rational(-1 if k % 2 else 1)
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[k] = Fraction(1)
    return FieldElement._make(_reduce(coeffs, e), e)


class QKind(str, Enum):
    RATIONAL = "rational"
    ROOT_OF_UNITY = "root_of_unity"


_ROOT_PATTERN = re.compile(r"^\s*zeta\s*:\s*(\d+)\s*(?:\^\s*(-?\d+)\s*)?$")


@dataclass(frozen=True)
class QSpec:
    """The parameter q: a rational number, or zeta_e^power with gcd(power, e) = 1.

    Rational -1 is stored as the root of unity of order 2.
    """

    kind: QKind
    value: Optional[Fraction] = None
    order: int = 0
    power: int = 1

    def __post_init__(self):
        if self.kind is QKind.RATIONAL:
            if self.value in (0, 1, -1):
                raise InvalidAlgebraError(f"q = {self.value} is not allowed as a rational parameter")
        else:
            if self.order < 2:
                raise InvalidAlgebraError("q must be a root of unity of order at least 2")
            if gcd(self.power, self.order) != 1:
                raise InvalidAlgebraError(f"zeta_{self.order}^{self.power} is not primitive")
            field_degree(self.conductor)

    @classmethod
    def rational(cls, value: Rational) -> "QSpec":
        value = Fraction(value)
        if value == -1:
            return cls(QKind.ROOT_OF_UNITY, order=2, power=1)
        return cls(QKind.RATIONAL, value=value)

    @classmethod
    def root_of_unity(cls, e: int, power: int = 1) -> "QSpec":
        return cls(QKind.ROOT_OF_UNITY, order=e, power=power % e if e else power)

    @classmethod
    def parse(cls, text: str) -> "QSpec":
        """Parse ``2``, ``-1/3``, ``zeta:5`` or ``zeta:5^2``."""
        match = _ROOT_PATTERN.match(text)
        if match:
            order = int(match.group(1))
            power = int(match.group(2)) if match.group(2) else 1
            if order < 2:
                raise ParseError(f"root of unity order must be at least 2 in {text!r}")
            return cls.root_of_unity(order, power)
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse q from {text!r}") from exc
        return cls.rational(value)

    @property
    def conductor(self) -> int:
        if self.kind is QKind.ROOT_OF_UNITY and self.order >= 3:
            return self.order
        return 1

    @property
    def order_of_unity(self) -> int:
        """e = multiplicative order of q, 0 when q is not a root of unity."""
        return self.order if self.kind is QKind.ROOT_OF_UNITY else 0

    def inverse(self) -> "QSpec":
        if self.kind is QKind.RATIONAL:
            return QSpec.rational(1 / self.value)
        return QSpec.root_of_unity(self.order, -self.power)

    def scalar(self, value: Rational) -> FieldElement:
        """Embed a rational number in the field of q."""
        return FieldElement.rational(value, self.conductor)

    def zero(self) -> FieldElement:
        return self.scalar(0)

    def one(self) -> FieldElement:
        return self.scalar(1)

    def element(self) -> FieldElement:
        return self.power_of(1)

    def power_of(self, n: int) -> FieldElement:
        if self.kind is QKind.RATIONAL:
            return FieldElement.rational(self.value ** n)
        return _zeta_power(self.order, (self.power * n) % self.order)

    def __str__(self) -> str:
        if self.kind is QKind.RATIONAL:
            return str(self.value)
        if self.order == 2:
            return "-1"
        return f"zeta:{self.order}" if self.power == 1 else f"zeta:{self.order}^{self.power}"


def order_of_unity(q: QSpec) -> int:
    return q.order_of_unity


def q_power(q: QSpec, n: int) -> FieldElement:
    return q.power_of(n)
