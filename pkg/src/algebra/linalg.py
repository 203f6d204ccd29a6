"""Exact linear algebra on sympy's DomainMatrix: rank over Q(zeta) and Smith form over Q(zeta)[t].

Scalars are moved into sympy's QQ or a cyclotomic AlgebraicField whose
defining polynomial is the same cyclotomic polynomial the scalar layer
reduces by, so the two representations agree coefficient for coefficient.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from src.algebra.scalars import FieldElement, cyclotomic_polynomial
from src.errors import PreconditionError

if TYPE_CHECKING:
    from src.algebra.polyring import Polynomial

logger = logging.getLogger(__name__)

SparseVector = Dict[int, FieldElement]

_T = sympy.Symbol("t")


@lru_cache(maxsize=None)
def scalar_domain(conductor: int):
    """QQ, or Q(zeta_conductor) as a sympy AlgebraicField."""
    if conductor == 1:
        return QQ
    domain = QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / conductor))
    modulus = [int(c) for c in reversed(domain.ext.minpoly.all_coeffs())]
    if tuple(modulus) != tuple(cyclotomic_polynomial(conductor)):
        raise PreconditionError(f"sympy chose an unexpected modulus {modulus} for conductor {conductor}")
    return domain


@lru_cache(maxsize=None)
def polynomial_domain(conductor: int):
    """The PID k[t] over the scalar field of the given conductor."""
    return scalar_domain(conductor)[_T]


def to_domain(value: FieldElement):
    domain = scalar_domain(value.conductor)
    if value.conductor == 1:
        return QQ(value.coeffs[0].numerator, value.coeffs[0].denominator)
    return domain.new([QQ(c.numerator, c.denominator) for c in reversed(value.coeffs)])


def from_domain(value, conductor: int) -> FieldElement:
    if conductor == 1:
        return FieldElement.rational(Fraction(int(value.numerator), int(value.denominator)))
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(value.to_list())]
    return FieldElement(coeffs or [0], conductor)


def rank_of_vectors(vectors: Iterable[SparseVector]) -> int:
    rows: Dict[int, Dict[int, object]] = {}
    width = 0
    conductor: Optional[int] = None
    for vector in vectors:
        entries = {col: value for col, value in vector.items() if value}
        if not entries:
            continue
        if conductor is None:
            conductor = next(iter(entries.values())).conductor
        rows[len(rows)] = {col: to_domain(value) for col, value in entries.items()}
        width = max(width, max(entries) + 1)
    if not rows:
        return 0
    matrix = DomainMatrix(rows, (len(rows), width), scalar_domain(conductor))
    return matrix.rank()


@dataclass
class ExactMatrix:
    """Sparse matrix stored column by column; labels describe rows and columns."""

    row_labels: List[Hashable]
    col_labels: List[Hashable]
    columns: List[SparseVector] = field(default_factory=list)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @property
    def nnz(self) -> int:
        return sum(len(column) for column in self.columns)

    def rank(self) -> int:
        rank = rank_of_vectors(self.columns)
        logger.debug(f"rank of a {self.shape[0]}x{self.shape[1]} matrix with {self.nnz} entries: {rank}")
        return rank

    def restrict_rows(self, keep: Callable[[Hashable], bool]) -> "ExactMatrix":
        kept = [i for i, label in enumerate(self.row_labels) if keep(label)]
        index = {old: new for new, old in enumerate(kept)}
        columns = [
            {index[i]: value for i, value in column.items() if i in index}
            for column in self.columns
        ]
        return ExactMatrix([self.row_labels[i] for i in kept], list(self.col_labels), columns)

    def entry(self, i: int, j: int) -> Optional[FieldElement]:
        return self.columns[j].get(i)


def _to_poly_domain(p: "Polynomial", conductor: int):
    ring = polynomial_domain(conductor)
    return ring.ring.from_dict({(k,): to_domain(c) for k, c in p.embed(conductor).terms()})


def _from_poly_domain(value, conductor: int) -> "Polynomial":
    from src.algebra.polyring import Polynomial

    zero = FieldElement.rational(0, conductor)
    terms = {monom[0]: from_domain(c, conductor) for monom, c in value.terms()}
    coeffs = [terms.get(k, zero) for k in range(max(terms, default=-1) + 1)]
    return Polynomial._make(coeffs, conductor)


def smith_diagonal(rows: Sequence[Sequence["Polynomial"]]) -> List["Polynomial"]:
    """Nonzero invariant factors (monic, each dividing the next) of a matrix over k[t]."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if not m or not n:
        return []
    conductor = max(p.conductor for row in rows for p in row)
    dense = [[_to_poly_domain(p, conductor) for p in row] for row in rows]
    matrix = DomainMatrix(dense, (m, n), polynomial_domain(conductor))
    factors = [
        _from_poly_domain(factor, conductor).monic()
        for factor in invariant_factors(matrix)
        if factor
    ]
    logger.debug(f"Smith form of a {m}x{n} matrix has {len(factors)} nonzero invariant factors")
    return factors
