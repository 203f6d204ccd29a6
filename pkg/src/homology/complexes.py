"""Weight-r Hochschild chain and cochain complexes of A(a, q).

The total complex in degree n has one coordinate k[h] for every component
(q, w) with w an exterior monomial of degree n - 2q: the row index q counts
the periodic part of the resolution, w the Koszul part. Chains u | w carry
u in A of weight r - |w|; cochains carry u = phi(1 | w | 1) of weight r + |w|.

Two evaluators are available. The derived one pushes the bimodule formulas
for d and delta through A (x) - and Hom(-, A); the explicit one writes the
same maps with q-commutators. They agree exactly for the q_left bracket.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from config.settings import get_settings
from src.algebra.linalg import rank_of_vectors
from src.algebra.polyring import Polynomial, apply_sigma, integral_pairs, poly_gcd
from src.algebra.scalars import FieldElement
from src.algebra.weyl import (
    AlgebraContext,
    AlgebraElement,
    AlgebraKind,
    BracketConvention,
    commutator,
    component_polynomial,
    weight_component_coords,
)
from src.errors import PreconditionError, UnsupportedCaseError
from src.homology.checks import IdentityReport
from src.homology.wedge import Wedge, column_generator_image, generator_terms, row_generator_image

logger = logging.getLogger(__name__)
settings = get_settings()

A = AlgebraKind.A
Component = Tuple[int, Wedge]


class Direction(str, Enum):
    HOMOLOGY = "homology"
    COHOMOLOGY = "cohomology"


class DifferentialPart(str, Enum):
    TOTAL = "total"      # D = d + delta on the total complex
    ROW = "row"          # d only
    COLUMN = "column"    # delta only, rows ignored (first-page column complex)


class Evaluator(str, Enum):
    DERIVED = "derived"
    EXPLICIT = "explicit"


def total_components(n: int) -> List[Component]:
    if n < 0:
        return []
    return [(q, w) for q in range(n // 2 + 1) for w in Wedge.of_degree(n - 2 * q)]


def total_rank(n: int) -> int:
    """Number of k[h] coordinates in total degree n: 1, 3, 4, 4, ..."""
    return len(total_components(n))


@dataclass
class ChainVector:
    """A homogeneous (co)chain: one polynomial coordinate per component."""

    weight: int
    degree: int
    coords: Dict[Component, Polynomial] = field(default_factory=dict)

    def __post_init__(self):
        self.coords = {comp: p for comp, p in self.coords.items() if not p.is_zero()}

    def is_zero(self) -> bool:
        return not self.coords

    def coordinate(self, comp: Component) -> Polynomial:
        return self.coords.get(comp, Polynomial.zero())

    def max_h_degree(self) -> int:
        return max((p.top for p in self.coords.values()), default=-1)

    def __add__(self, other: "ChainVector") -> "ChainVector":
        coords = dict(self.coords)
        for comp, p in other.coords.items():
            coords[comp] = coords[comp] + p if comp in coords else p
        return ChainVector(self.weight, self.degree, coords)

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        return " + ".join(f"[{q}]({p})|{w.value}" for (q, w), p in sorted(self.coords.items(), key=_component_order))

    def to_dict(self) -> Dict:
        return {
            "weight": self.weight,
            "degree": self.degree,
            "coords": {f"{q}:{w.value}": str(p) for (q, w), p in sorted(self.coords.items(), key=_component_order)},
        }


def _component_order(item):
    (q, w), _ = item
    return q, list(Wedge).index(w)


@dataclass(frozen=True)
class ComplexHandle:
    """The weight-r (co)chain complex, together with how its differential is evaluated."""

    actx: AlgebraContext
    direction: Direction
    weight: int
    part: DifferentialPart = DifferentialPart.TOTAL
    evaluator: Evaluator = Evaluator.DERIVED
    convention: BracketConvention = BracketConvention.Q_LEFT

    @property
    def is_homology(self) -> bool:
        return self.direction is Direction.HOMOLOGY

    def components(self, n: int) -> List[Component]:
        if self.part is DifferentialPart.COLUMN:
            return [(0, w) for w in Wedge.of_degree(n)] if 0 <= n <= 3 else []
        return total_components(n)

    def out_degree(self, n: int) -> int:
        """Degree reached by the differential leaving degree n."""
        lowers = self.is_homology != (self.part is DifferentialPart.COLUMN)
        return n - 1 if lowers else n + 1

    def in_degree(self, n: int) -> int:
        """Degree whose differential lands in degree n."""
        return 2 * n - self.out_degree(n)

    def coefficient_weight(self, wedge: Wedge) -> int:
        return self.weight - wedge.weight if self.is_homology else self.weight + wedge.weight

    def element(self, wedge: Wedge, p: Polynomial) -> AlgebraElement:
        return weight_component_coords(self.coefficient_weight(wedge), p, self.actx)

    def column(self) -> "ComplexHandle":
        return replace(self, part=DifferentialPart.COLUMN)

    def with_part(self, part: DifferentialPart) -> "ComplexHandle":
        return replace(self, part=part)

    def basis_chain(self, n: int, comp: Component, j: int) -> ChainVector:
        return ChainVector(self.weight, n, {comp: Polynomial.monomial(j, 1, self.actx.conductor)})

    def apply(self, v: ChainVector) -> ChainVector:
        """The differential of this handle applied to v."""
        out: Dict[Component, AlgebraElement] = {}
        for (q, w), p in v.coords.items():
            u = self.element(w, p)
            for target, value in self._push(q, w, u):
                out[target] = out[target] + value if target in out else value
        coords = {}
        for (q, w), value in out.items():
            try:
                coords[(q, w)] = component_polynomial(value, self.coefficient_weight(w))
            except PreconditionError as exc:
                raise PreconditionError(f"differential left weight {self.weight} at {w.value}: {exc}") from exc
        return ChainVector(self.weight, self.out_degree(v.degree), coords)

    def _push(self, q: int, w: Wedge, u: AlgebraElement) -> Iterable[Tuple[Component, AlgebraElement]]:
        use_row = self.part in (DifferentialPart.TOTAL, DifferentialPart.ROW)
        use_column = self.part in (DifferentialPart.TOTAL, DifferentialPart.COLUMN)
        if self.part is DifferentialPart.COLUMN:
            column_row = q
        else:
            column_row = q - 1 if self.is_homology else q + 1
        if column_row < 0:
            use_column = False
        if self.evaluator is Evaluator.EXPLICIT:
            terms = _explicit_chain_terms if self.is_homology else _explicit_cochain_terms
            for is_row, target, value in terms(self.actx, w, u, self.convention):
                if is_row and use_row:
                    yield (q, target), value
                elif not is_row and use_column:
                    yield (column_row, target), value
            return
        if self.is_homology:
            if use_row:
                for c, a, target, b in _row_terms(self.actx, w):
                    yield (q, target), (b * u * a).scale(c)
            if use_column:
                for c, a, target, b in _column_terms(self.actx, w):
                    yield (column_row, target), (b * u * a).scale(c)
        else:
            if use_row:
                for target, c, a, b in _row_preimages(self.actx, w):
                    yield (q, target), (a * u * b).scale(c)
            if use_column:
                for target, c, a, b in _column_preimages(self.actx, w):
                    yield (column_row, target), (a * u * b).scale(c)


@lru_cache(maxsize=256)
def _row_terms(actx: AlgebraContext, w: Wedge):
    return tuple(generator_terms(row_generator_image(actx, A, A, w)))


@lru_cache(maxsize=256)
def _column_terms(actx: AlgebraContext, w: Wedge):
    return tuple(generator_terms(column_generator_image(actx, w)))


@lru_cache(maxsize=256)
def _row_preimages(actx: AlgebraContext, w: Wedge):
    """Terms c a|w|b of d(1|w'|1), indexed by the w they contain; yields (w', c, a, b)."""
    return tuple(
        (source, c, a, b)
        for source in Wedge
        for c, a, target, b in _row_terms(actx, source)
        if target is w
    )


@lru_cache(maxsize=256)
def _column_preimages(actx: AlgebraContext, w: Wedge):
    return tuple(
        (source, c, a, b)
        for source in Wedge
        for c, a, target, b in _column_terms(actx, source)
        if target is w
    )


def _integral(actx: AlgebraContext, coefficients, u: AlgebraElement, weight, left_first: bool) -> AlgebraElement:
    """sum_i c_i sum_{s+t+1=i} weight(i, s, t) * (h^t u h^s, or h^s u h^t when left_first)."""
    out = actx.zero(A)
    for i, c in coefficients:
        for s, t in integral_pairs(i):
            left, right = (s, t) if left_first else (t, s)
            term = actx.monomial(A, 0, left, 0) * u * actx.monomial(A, 0, right, 0)
            out = out + term.scale(c * weight(i, s, t))
    return out


def _explicit_chain_terms(actx: AlgebraContext, w: Wedge, u: AlgebraElement, convention: BracketConvention):
    """(is_row, target, value) for the chain differentials written with brackets."""
    y, h, x = (actx.gen(A, letter) for letter in "yhx")
    plain = BracketConvention.PLAIN
    q = actx.ring.q_power(1)
    qp = actx.ring.q_power
    one = actx.scalar(1)
    br = commutator
    if w is Wedge.ONE:
        return [
            (False, Wedge.X, u * y),
            (False, Wedge.Y, x * u),
            (False, Wedge.H, -_integral(actx, actx.alphas, u, lambda i, s, t: one, False)),
        ]
    if w is Wedge.Y:
        return [
            (True, Wedge.ONE, br(y, u, plain)),
            (False, Wedge.YX, -(u * y)),
            (False, Wedge.YH, _integral(actx, actx.alphas, u, lambda i, s, t: qp(t), False)),
        ]
    if w is Wedge.H:
        return [(True, Wedge.ONE, br(h, u, plain)), (False, Wedge.YH, x * u), (False, Wedge.HX, -(u * y))]
    if w is Wedge.X:
        return [
            (True, Wedge.ONE, br(x, u, plain)),
            (False, Wedge.YX, x * u),
            (False, Wedge.HX, -_integral(actx, actx.alphas, u, lambda i, s, t: qp(s), False)),
        ]
    if w is Wedge.YH:
        return [(True, Wedge.H, br(y, u, convention)), (True, Wedge.Y, br(u, h, convention)), (False, Wedge.YHX, u * y)]
    if w is Wedge.YX:
        return [
            (True, Wedge.X, br(y, u, plain)),
            (True, Wedge.Y, br(u, x, plain)),
            (True, Wedge.H, -_integral(actx, actx.lambdas, u, lambda i, s, t: one, False)),
            (False, Wedge.YHX, _integral(actx, actx.alphas, u, lambda i, s, t: qp(i - 1), False)),
        ]
    if w is Wedge.HX:
        return [(True, Wedge.X, br(h, u, convention)), (True, Wedge.H, br(u, x, convention)), (False, Wedge.YHX, x * u)]
    return [
        (True, Wedge.HX, br(y, u, convention)),
        (True, Wedge.YX, br(u, h, plain).scale(q)),
        (True, Wedge.YH, -br(u, x, convention)),
    ]


def _explicit_cochain_terms(actx: AlgebraContext, w: Wedge, u: AlgebraElement, convention: BracketConvention):
    """(is_row, target, value) for the cochain differentials written with brackets."""
    y, h, x = (actx.gen(A, letter) for letter in "yhx")
    plain = BracketConvention.PLAIN
    q = actx.ring.q_power(1)
    qp = actx.ring.q_power
    one = actx.scalar(1)
    br = commutator
    if w is Wedge.ONE:
        return [(True, Wedge.Y, br(u, y, plain)), (True, Wedge.H, br(u, h, plain)), (True, Wedge.X, br(u, x, plain))]
    if w is Wedge.Y:
        return [
            (True, Wedge.YH, br(h, u, convention)),
            (True, Wedge.YX, -br(u, x, plain)),
            (False, Wedge.ONE, u * x),
        ]
    if w is Wedge.H:
        return [
            (True, Wedge.HX, br(x, u, convention)),
            (True, Wedge.YX, -_integral(actx, actx.lambdas, u, lambda i, s, t: one, True)),
            (True, Wedge.YH, br(u, y, convention)),
            (False, Wedge.ONE, -_integral(actx, actx.alphas, u, lambda i, s, t: one, True)),
        ]
    if w is Wedge.X:
        return [(True, Wedge.HX, br(u, h, convention)), (True, Wedge.YX, br(u, y, plain)), (False, Wedge.ONE, y * u)]
    if w is Wedge.YH:
        return [
            (True, Wedge.YHX, -br(x, u, convention)),
            (False, Wedge.Y, _integral(actx, actx.alphas, u, lambda i, s, t: qp(t), True)),
            (False, Wedge.H, u * x),
        ]
    if w is Wedge.YX:
        return [(True, Wedge.YHX, br(h, u, plain).scale(q)), (False, Wedge.X, u * x), (False, Wedge.Y, -(y * u))]
    if w is Wedge.HX:
        return [
            (True, Wedge.YHX, br(u, y, convention)),
            (False, Wedge.H, -(y * u)),
            (False, Wedge.X, -_integral(actx, actx.alphas, u, lambda i, s, t: qp(s), True)),
        ]
    return [
        (False, Wedge.HX, u * x),
        (False, Wedge.YX, _integral(actx, actx.alphas, u, lambda i, s, t: qp(i - 1), True)),
        (False, Wedge.YH, y * u),
    ]


def build_hochschild_complex(
    actx: AlgebraContext,
    direction: Direction,
    r: int,
    evaluator: Evaluator = Evaluator.DERIVED,
    convention: BracketConvention = BracketConvention.Q_LEFT,
) -> ComplexHandle:
    return ComplexHandle(actx, Direction(direction), r, DifferentialPart.TOTAL, evaluator, convention)


def basis_chains(handle: ComplexHandle, n: int, h_deg_bound: int) -> Iterable[ChainVector]:
    for comp in handle.components(n):
        for j in range(h_deg_bound + 1):
            yield handle.basis_chain(n, comp, j)


def validate_identities(handle: ComplexHandle, h_deg_bound: int, degree_bound: int) -> List[IdentityReport]:
    """Square-zero and anticommutation identities, and derived/explicit agreement.

    Every basis chain h^j in a single component, j <= h_deg_bound, of every
    degree n <= degree_bound is checked.
    """
    label = f"{handle.direction.value}[r={handle.weight}]"
    total = handle.with_part(DifferentialPart.TOTAL)
    row = handle.with_part(DifferentialPart.ROW)
    derived = replace(total, evaluator=Evaluator.DERIVED)
    explicit = replace(total, evaluator=Evaluator.EXPLICIT)
    reports = {
        name: IdentityReport(f"{label}:{name}")
        for name in ("D^2", "d^2", "delta^2", "anticommute", "derived=explicit")
    }

    def column_part(v: ChainVector) -> ChainVector:
        return _difference(total.apply(v), row.apply(v))

    for n in range(degree_bound + 1):
        for v in basis_chains(handle, n, h_deg_bound):
            try:
                dv = total.apply(v)
                value = total.apply(dv)
                reports["D^2"].record(value.is_zero(), f"D^2({v}) = {value}")
                rv = row.apply(v)
                value = row.apply(rv)
                reports["d^2"].record(value.is_zero(), f"d^2({v}) = {value}")
                cv = column_part(v)
                value = column_part(cv)
                reports["delta^2"].record(value.is_zero(), f"delta^2({v}) = {value}")
                value = column_part(rv) + row.apply(cv)
                reports["anticommute"].record(value.is_zero(), f"(d delta + delta d)({v}) = {value}")
                a, b = derived.apply(v), explicit.apply(v)
                diff = _difference(a, b)
                reports["derived=explicit"].record(diff.is_zero(), f"{v}: derived {a} vs explicit {b}")
            except PreconditionError as exc:
                reports["D^2"].record(False, f"{v}: {exc}")
    logger.debug(f"{label}: checked {reports['D^2'].checked} basis chains")
    return list(reports.values())


def _difference(a: ChainVector, b: ChainVector) -> ChainVector:
    coords = dict(a.coords)
    for comp, p in b.coords.items():
        coords[comp] = coords[comp] - p if comp in coords else -p
    return ChainVector(a.weight, a.degree, coords)


# First-page representatives.

def _gcd_data(actx: AlgebraContext):
    c = poly_gcd(actx.a, actx.a_prime)
    return c, actx.a.exact_div(c), actx.a_prime.exact_div(c)


def first_page_representatives(actx: AlgebraContext, side: Direction, p: int, r: int) -> List[ChainVector]:
    """Column-complex cycles whose classes give a basis of the weight-0 first page, one per h^k, k < deg c.

    Supported: homology p in {2, 3}; cohomology p in {0, 1}; weight 0.
    """
    side = Direction(side)
    if r != 0 or (side, p) not in {
        (Direction.HOMOLOGY, 2),
        (Direction.HOMOLOGY, 3),
        (Direction.COHOMOLOGY, 0),
        (Direction.COHOMOLOGY, 1),
    }:
        raise UnsupportedCaseError(f"no closed-form representatives for {side.value} p={p} r={r}")
    c, a_over_c, a_prime_over_c = _gcd_data(actx)
    ring = actx.ring
    vectors = []
    for k in range(c.top):
        hk = ring.h(k)
        if side is Direction.HOMOLOGY and p == 2:
            coords = {
                (0, Wedge.YX): apply_sigma(a_over_c, ring) * hk,
                (0, Wedge.HX): -(hk * apply_sigma(a_prime_over_c, ring)),
            }
        elif side is Direction.HOMOLOGY:
            coords = {(0, Wedge.YHX): hk}
        elif p == 1:
            coords = {
                (0, Wedge.H): a_over_c * hk,
                (0, Wedge.X): apply_sigma(a_prime_over_c * hk, ring),
            }
        else:
            coords = {(0, Wedge.ONE): hk}
        vectors.append(ChainVector(0, p, coords))
    return vectors


def validate_first_page(actx: AlgebraContext, side: Direction, p: int) -> IdentityReport:
    """The representatives are column cycles, independent modulo column boundaries."""
    handle = ComplexHandle(actx, Direction(side), 0, DifferentialPart.COLUMN)
    report = IdentityReport(f"first-page:{handle.direction.value}:p={p}")
    reps = first_page_representatives(actx, side, p, 0)
    for v in reps:
        image = handle.apply(v)
        report.record(image.is_zero(), f"{v} is not a column cycle: {image}")
    if not reps:
        return report
    window = max(v.max_h_degree() for v in reps) + settings.boundary_margin(actx.N, actx.e)
    source = handle.in_degree(p)
    index: Dict[Tuple[Component, int], int] = {}

    def sparse(v: ChainVector) -> Dict[int, FieldElement]:
        out = {}
        for comp, poly in v.coords.items():
            for j, c in poly.terms():
                out[index.setdefault((comp, j), len(index))] = c
        return out

    boundaries = [
        sparse(handle.apply(handle.basis_chain(source, comp, j)))
        for comp in handle.components(source)
        for j in range(window + 1)
    ]
    before = rank_of_vectors(boundaries)
    independent = rank_of_vectors(boundaries + [sparse(v) for v in reps]) - before
    report.record(independent == len(reps), f"{independent} of {len(reps)} representatives independent modulo boundaries")
    return report
