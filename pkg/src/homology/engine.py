"""Exact homology of the weight-r complexes on finite h-degree windows.

A chain of degree n is truncated at h-degree D. The filtered homology

    F_D H_n = (Z_n ∩ F_D) / (B_n ∩ F_D)

is computed with cycles taken on the window <= D (the outgoing map lands in
<= D + N) and boundaries taken from preimages of degree <= D + K, keeping
only those images with no coordinate above D. For e > 0 the same complex is
free over S = k[h^e] and its homology is also read off a Smith form.
"""

import asyncio
import logging
import os
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config.settings import get_settings
from src.algebra.linalg import ExactMatrix, smith_diagonal
from src.algebra.polyring import Polynomial
from src.algebra.weyl import AlgebraContext
from src.errors import GWAError, PreconditionError
from src.homology.complexes import (
    ChainVector,
    ComplexHandle,
    Component,
    Direction,
    build_hochschild_complex,
)

logger = logging.getLogger(__name__)
settings = get_settings()

RowLabel = Tuple[Component, int]


@lru_cache(maxsize=65536)
def _basis_image(handle: ComplexHandle, n: int, comp: Component, j: int) -> ChainVector:
    return handle.apply(handle.basis_chain(n, comp, j))


def assemble(handle: ComplexHandle, n: int, D_dom: int, D_cod: int) -> ExactMatrix:
    """Matrix of the differential leaving degree n, domain h-degree <= D_dom, codomain <= D_cod."""
    if D_cod < D_dom + handle.actx.N:
        raise PreconditionError(f"codomain window {D_cod} is narrower than {D_dom} + deg a")
    target = handle.out_degree(n)
    row_labels: List[RowLabel] = [(comp, j) for comp in handle.components(target) for j in range(D_cod + 1)]
    index = {label: i for i, label in enumerate(row_labels)}
    col_labels: List[RowLabel] = []
    columns = []
    for comp in handle.components(n):
        for j in range(D_dom + 1):
            image = _basis_image(handle, n, comp, j)
            column = {}
            for out_comp, poly in image.coords.items():
                for k, c in poly.terms():
                    row = index.get((out_comp, k))
                    if row is None:
                        raise PreconditionError(
                            f"image of h^{j}|{comp[1].value} reaches h^{k} outside window {D_cod}"
                        )
                    column[row] = c
            col_labels.append((comp, j))
            columns.append(column)
    return ExactMatrix(row_labels, col_labels, columns)


def homology_dim(handle: ComplexHandle, n: int, D: int) -> int:
    """dim of the filtered piece F_D of the degree-n homology of handle."""
    N = handle.actx.N
    margin = settings.boundary_margin(N, handle.actx.e)
    chains = len(handle.components(n)) * (D + 1)
    if chains == 0:
        return 0
    cycles = chains - assemble(handle, n, D, D + N).rank()
    source = handle.in_degree(n)
    if not handle.components(source):
        return cycles
    incoming = assemble(handle, source, D + margin, D + margin + N)
    boundaries = incoming.rank() - incoming.restrict_rows(lambda label: label[1] > D).rank()
    dim = cycles - boundaries
    if dim < 0:
        raise PreconditionError(f"negative homology dimension {dim} at n={n}, D={D}")
    return dim


def column_homology_dim(handle: ComplexHandle, m: int, D: int) -> int:
    """Homology of the column complex (delta only) in Koszul degree m."""
    return homology_dim(handle.column(), m, D)


@dataclass
class DimProfile:
    """Dimensions at increasing truncations and a linear fit dim = slope * (D // period) + constant."""

    samples: List[Tuple[int, int]] = field(default_factory=list)
    period: int = 1
    slope: Optional[int] = None
    constant: Optional[int] = None
    stabilized: bool = False
    note: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "samples": [{"D": D, "dim": dim} for D, dim in self.samples],
            "period": self.period,
            "slope": self.slope,
            "constant": self.constant,
            "stabilized": self.stabilized,
            "note": self.note,
        }


def fit_profile(samples: Sequence[Tuple[int, int]], period: int, windows: Optional[int] = None) -> DimProfile:
    windows = windows or settings.stabilization_windows
    profile = DimProfile(samples=list(samples), period=period)
    tail = list(samples)[-windows:]
    if len(tail) < 2:
        if tail:
            profile.slope, profile.constant = 0, tail[-1][1]
        return profile
    xs = [D // period for D, _ in tail]
    if len(set(xs)) < len(xs):
        profile.note = "truncations collide modulo the period"
        return profile
    points = [(x, dim) for x, (_, dim) in zip(xs, tail)]
    slopes = {Fraction(d1 - d0, x1 - x0) for (x0, d0), (x1, d1) in zip(points, points[1:])}
    if len(slopes) != 1:
        return profile
    slope = slopes.pop()
    if slope.denominator != 1:
        return profile
    profile.slope = int(slope)
    profile.constant = tail[-1][1] - profile.slope * xs[-1]
    profile.stabilized = len(tail) >= windows
    return profile


def dim_profile(handle: ComplexHandle, n: int, D_list: Sequence[int]) -> DimProfile:
    D_list = sorted(D_list)
    period = handle.actx.e or 1
    samples = [(D, homology_dim(handle, n, D)) for D in D_list]
    profile = fit_profile(samples, period)
    if D_list and abs(handle.weight) > D_list[0]:
        profile.note = "insufficient truncation"
        profile.stabilized = False
    return profile


@dataclass
class SModuleInvariants:
    free_rank: int
    torsion_dims: List[int] = field(default_factory=list)

    @property
    def torsion_total(self) -> int:
        return sum(self.torsion_dims)

    def to_dict(self) -> Dict[str, Any]:
        return {"free_rank": self.free_rank, "torsion_dims": self.torsion_dims, "torsion_total": self.torsion_total}


def _s_matrix(handle: ComplexHandle, n: int) -> List[List[Polynomial]]:
    """The differential leaving degree n over S: basis h^rho in every component, rho < e."""
    e = handle.actx.e
    conductor = handle.actx.conductor
    targets = [(comp, rho) for comp in handle.components(handle.out_degree(n)) for rho in range(e)]
    index = {label: i for i, label in enumerate(targets)}
    rows = [[Polynomial.zero(conductor) for _ in range(len(handle.components(n)) * e)] for _ in targets]
    column = 0
    for comp in handle.components(n):
        for rho in range(e):
            image = _basis_image(handle, n, comp, rho)
            for out_comp, poly in image.coords.items():
                for sigma_rho, part in enumerate(poly.split_residues(e)):
                    if not part.is_zero():
                        rows[index[(out_comp, sigma_rho)]][column] = part
            column += 1
    return rows


def smodule_invariants(handle: ComplexHandle, n: int) -> SModuleInvariants:
    """Free rank and torsion of H_n as a module over S = k[t], t = h^e."""
    e = handle.actx.e
    if e == 0:
        raise PreconditionError("S-module invariants need q to be a root of unity")
    rank_n = len(handle.components(n)) * e
    outgoing = smith_diagonal(_s_matrix(handle, n)) if handle.components(handle.out_degree(n)) else []
    source = handle.in_degree(n)
    incoming = smith_diagonal(_s_matrix(handle, source)) if handle.components(source) else []
    free_rank = rank_n - len(outgoing) - len(incoming)
    torsion = [factor.top for factor in incoming if not factor.is_constant()]
    return SModuleInvariants(free_rank=free_rank, torsion_dims=torsion)


@dataclass(frozen=True)
class CellJob:
    actx: AlgebraContext
    direction: Direction
    r: int
    p: int
    truncations: Tuple[int, ...]


@dataclass
class CellResult:
    job: CellJob
    profile: Optional[DimProfile] = None
    error: Optional[str] = None
    elapsed: float = 0.0


def compute_cell(job: CellJob) -> CellResult:
    """Top-level so process pools can pickle it."""
    started = time.perf_counter()
    handle = build_hochschild_complex(job.actx, job.direction, job.r)
    try:
        profile = dim_profile(handle, job.p, job.truncations)
    except GWAError as exc:
        return CellResult(job, error=str(exc), elapsed=time.perf_counter() - started)
    return CellResult(job, profile=profile, elapsed=time.perf_counter() - started)


def worker_count(jobs: Optional[int]) -> int:
    """Explicit jobs, else the configured default, else the available CPUs."""
    for candidate in (jobs, settings.default_jobs):
        if candidate is not None:
            return max(1, candidate)
    return os.cpu_count() or 1


def _executor(jobs: Optional[int]) -> Executor:
    jobs = worker_count(jobs)
    if jobs and jobs > 1:
        return ProcessPoolExecutor(max_workers=jobs)
    return ThreadPoolExecutor(max_workers=1)


async def hochschild_table_async(
    actx: AlgebraContext,
    weights: Sequence[int],
    degrees: Sequence[int],
    truncations: Sequence[int],
    direction: Direction,
    jobs: Optional[int] = None,
) -> Dict[Tuple[int, int], CellResult]:
    """Evaluate every (r, p) cell; cells are independent and run in an executor."""
    cells = [
        CellJob(actx, Direction(direction), r, p, tuple(sorted(truncations)))
        for r in weights
        for p in degrees
    ]
    if not cells:
        return {}
    loop = asyncio.get_running_loop()
    with _executor(jobs) as executor:
        futures = [loop.run_in_executor(executor, compute_cell, cell) for cell in cells]
        outcomes = await asyncio.gather(*futures, return_exceptions=True)
    table: Dict[Tuple[int, int], CellResult] = {}
    for cell, outcome in zip(cells, outcomes):
        if isinstance(outcome, BaseException):
            logger.error(f"Cell {cell.direction.value} r={cell.r} p={cell.p} failed: {outcome}")
            outcome = CellResult(cell, error=str(outcome))
        elif outcome.error:
            logger.warning(f"Cell {cell.direction.value} r={cell.r} p={cell.p}: {outcome.error}")
        else:
            logger.debug(f"Cell {cell.direction.value} r={cell.r} p={cell.p} done in {outcome.elapsed:.2f}s")
        table[(cell.r, cell.p)] = outcome
    logger.info(f"Computed {len(table)} {Direction(direction).value} cells for {actx}")
    return table


def hochschild_table(
    actx: AlgebraContext,
    r_range: Sequence[int],
    p_max: int,
    D: Sequence[int],
    direction: Direction,
    jobs: Optional[int] = None,
) -> Dict[Tuple[int, int], DimProfile]:
    """Synchronous wrapper: (r, p) -> DimProfile for p = 0..p_max."""
    results = asyncio.run(hochschild_table_async(actx, list(r_range), range(p_max + 1), D, direction, jobs))
    table = {}
    for key, result in results.items():
        if result.error:
            raise PreconditionError(f"cell {key}: {result.error}")
        table[key] = result.profile
    return table
