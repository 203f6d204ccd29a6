"""Closed-form Hochschild (co)homology of A(a, q), weight by weight.

Answers are S-modules, S = k[h^e], described by a DimensionSpec: a finite
dimensional part, torsion blocks k[h]/(c) and free summands h^s S. For
q not a root of unity (e = 0) only finite parts occur.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.algebra.polyring import eta, n_operator, poly_gcd
from src.algebra.weyl import AlgebraContext
from src.errors import HypothesisViolation

logger = logging.getLogger(__name__)


class WeightClass(str, Enum):
    ZERO = "zero"
    SINGULAR = "singular"
    REGULAR = "regular"


class GlobalDimension(str, Enum):
    FINITE_2 = "finite_2"
    INFINITE = "infinite"


@dataclass
class Invariants:
    """Numerical data the closed forms depend on."""

    N: int
    c: str
    M: int
    e: int
    eta_a: Optional[int] = None
    eta_c: Optional[int] = None
    eta_a_over_c: Optional[int] = None
    norm_a: Optional[str] = None
    norm_c: Optional[str] = None
    norm_a_over_c: Optional[str] = None
    a_bar_degree: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {key: value for key, value in self.__dict__.items() if value is not None}


@dataclass
class DimensionSpec:
    """finite_dim + sum of torsion dims + one copy of h^s S per entry of shifts.

    A shift of None means the summand is known only up to a shift in [0, e).
    """

    e: int = 0
    finite_dim: int = 0
    shifts: List[Optional[int]] = field(default_factory=list)
    torsion: List[int] = field(default_factory=list)

    @property
    def s_rank(self) -> int:
        return len(self.shifts)

    @property
    def is_zero(self) -> bool:
        return not self.finite_dim and not self.shifts and not any(self.torsion)

    @property
    def constant_part(self) -> int:
        return self.finite_dim + sum(self.torsion)

    def truncated_dim(self, D: int) -> Tuple[int, int]:
        return truncated_dim(self, D)

    def __str__(self) -> str:
        parts = []
        if self.finite_dim:
            parts.append(f"k^{self.finite_dim}" if self.finite_dim > 1 else "k")
        for dim in self.torsion:
            if dim:
                parts.append(f"k[h]/(c)[{dim}]")
        for shift in self.shifts:
            parts.append("S" if shift in (None, 0) else f"h^{shift}S")
            if shift is None:
                parts[-1] += "(shift?)"
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "text": str(self),
            "finite_dim": self.finite_dim,
            "s_rank": self.s_rank,
            "shifts": list(self.shifts),
            "torsion": list(self.torsion),
        }


def truncated_dim(spec: DimensionSpec, D: int) -> Tuple[int, int]:
    """Dimension of the part of spec living in h-degree <= D, as an interval (lo, hi).

    lo == hi exactly when every free summand has a known shift.
    """
    base = spec.constant_part
    lo = hi = base
    for shift in spec.shifts:
        if shift is None:
            lo += _summand_dim(D, spec.e - 1, spec.e)
            hi += _summand_dim(D, 0, spec.e)
        else:
            value = _summand_dim(D, shift, spec.e)
            lo += value
            hi += value
    return lo, hi


def _summand_dim(D: int, shift: int, e: int) -> int:
    if D < shift:
        return 0
    return (D - shift) // e + 1


def classify_weight(r: int, e: int) -> WeightClass:
    if r == 0:
        return WeightClass.ZERO
    if e > 0 and r % e == 0:
        return WeightClass.SINGULAR
    return WeightClass.REGULAR


def compute_invariants(actx: AlgebraContext) -> Invariants:
    a = actx.a
    if a.top < 2:
        raise HypothesisViolation(f"deg a = {a.top} < 2")
    if not a.is_monic():
        raise HypothesisViolation(f"closed forms need a monic polynomial a, got {a}")
    c = poly_gcd(a, actx.a_prime)
    invariants = Invariants(N=a.top, c=str(c), M=c.top, e=actx.e)
    if actx.e == 0:
        return invariants
    if a.coefficient(0).is_zero():
        raise HypothesisViolation("closed forms unavailable: a(0) = 0 at a root of unity")
    ring = actx.ring
    a_over_c = a.exact_div(c)
    norm_a = n_operator(a, ring)
    invariants.eta_a = eta(a, ring)
    invariants.eta_c = eta(c, ring)
    invariants.eta_a_over_c = eta(a_over_c, ring)
    invariants.norm_a = str(norm_a)
    invariants.norm_c = str(n_operator(c, ring))
    invariants.norm_a_over_c = str(n_operator(a_over_c, ring))
    invariants.a_bar_degree = norm_a.top - a.top
    logger.debug(f"Invariants of {actx}: {invariants.to_dict()}")
    return invariants


def gldim(actx: AlgebraContext) -> GlobalDimension:
    """Global dimension is 2 exactly when a has no repeated roots."""
    c = poly_gcd(actx.a, actx.a_prime)
    return GlobalDimension.FINITE_2 if c.is_constant() else GlobalDimension.INFINITE


def predict_homology(actx: AlgebraContext, p: int, r: int) -> DimensionSpec:
    inv = compute_invariants(actx)
    e = inv.e
    weight = classify_weight(r, e)
    if e == 0:
        if weight is WeightClass.ZERO:
            return DimensionSpec(finite_dim=inv.N if p == 0 else inv.M)
        return DimensionSpec(finite_dim=1 if p <= 1 else 0)
    spec = DimensionSpec(e=e)
    if weight is WeightClass.ZERO:
        if p == 0:
            # coker of f -> (sigma - 1)(a f) is S + k^eta(a)
            spec.finite_dim = inv.eta_a
            spec.shifts = [None]
        elif p == 1:
            spec.finite_dim = inv.eta_c
            spec.shifts = [e - 1, inv.a_bar_degree]
        elif p == 2:
            spec.shifts = [None]
            spec.torsion = [inv.M]
        else:
            spec.torsion = [inv.M]
    elif weight is WeightClass.SINGULAR:
        if p == 0:
            spec.shifts = [0]
        elif p == 1:
            spec.shifts = [0, e - 1]
        elif p == 2:
            spec.shifts = [e - 1]
    elif p <= 1:
        # y^r h k[h] lies in [h, A] when q^r != 1, so only the class of y^r survives in degree 0.
        spec.finite_dim = 1
    return spec


def predict_cohomology(actx: AlgebraContext, p: int, r: int) -> DimensionSpec:
    inv = compute_invariants(actx)
    e = inv.e
    weight = classify_weight(r, e)
    if e == 0:
        if weight is not WeightClass.ZERO:
            return DimensionSpec()
        if p <= 1:
            return DimensionSpec(finite_dim=1)
        if p == 2:
            if actx.a.coefficient(0).is_zero():
                raise HypothesisViolation("second cohomology needs a(0) != 0")
            return DimensionSpec(finite_dim=inv.N - inv.M, torsion=[inv.M])
        return DimensionSpec(torsion=[inv.M])
    spec = DimensionSpec(e=e)
    if weight is WeightClass.REGULAR:
        return spec
    if p == 0:
        spec.shifts = [0]
    elif p == 1:
        spec.shifts = [None, None]
    elif p == 2:
        spec.shifts = [None]
        if weight is WeightClass.ZERO:
            spec.finite_dim = inv.eta_a_over_c
            spec.torsion = [inv.M]
    elif weight is WeightClass.ZERO:
        spec.torsion = [inv.M]
    return spec
