"""Command-line jobs: predict, compute, verify, identities and gldim."""

import argparse
import asyncio
import logging
import time
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from config.settings import get_settings
from src.algebra.polyring import poly_gcd
from src.algebra.weyl import AlgebraContext
from src.errors import (
    GWAError,
    HypothesisViolation,
    InvalidAlgebraError,
    ParseError,
    PreconditionError,
    UnsupportedCaseError,
    UsageError,
)
from src.homology.complexes import Direction, build_hochschild_complex, validate_first_page, validate_identities
from src.homology.engine import CellResult, hochschild_table_async, smodule_invariants
from src.homology.resolution import validate_bimodule_total, validate_comparison_maps, validate_smith_complexes
from src.cli.report import CellRecord, Report, Verdict, judge, oracle_disagreements
from src.theory.closedform import compute_invariants, gldim, predict_cohomology, predict_homology

logger = logging.getLogger(__name__)
settings = get_settings()

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3

COMMANDS = ("predict", "compute", "verify", "identities", "gldim")


def parse_int_range(text: str) -> Tuple[int, int]:
    """``lo..hi`` (inclusive) or a single integer."""
    lo, sep, hi = text.strip().partition("..")
    try:
        if not sep:
            return int(lo), int(lo)
        return int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"bad integer range {text!r}") from exc


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(value) for value in text.split(",") if value.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


class JobConfig(BaseModel):
    """One CLI invocation."""

    command: Literal["predict", "compute", "verify", "identities", "gldim"]
    a: str
    q: str
    weights: Tuple[int, int] = settings.default_weights_range
    degrees: Tuple[int, int] = settings.default_degrees_range
    truncations: Optional[List[int]] = None
    direction: Literal["hom", "coh", "both"] = "both"
    format: Literal["json", "csv"] = "json"
    jobs: Optional[int] = None
    exp_bound: int = settings.identity_exponent_bound
    mirror_check: bool = False

    @field_validator("weights", "degrees")
    @classmethod
    def range_not_empty(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if value[0] > value[1]:
            raise ValueError(f"empty range {value[0]}..{value[1]}")
        return value

    @field_validator("truncations")
    @classmethod
    def truncations_ascending(cls, value: Optional[List[int]]) -> Optional[List[int]]:
        if value is not None:
            if not value or any(D < 0 for D in value):
                raise ValueError("truncations must be nonnegative integers")
            if any(b <= a for a, b in zip(value, value[1:])):
                raise ValueError("truncations must be strictly ascending")
        return value

    @model_validator(mode="after")
    def degrees_nonnegative(self) -> "JobConfig":
        if self.degrees[0] < 0:
            raise ValueError("homological degrees start at 0")
        return self

    @property
    def weight_list(self) -> List[int]:
        return list(range(self.weights[0], self.weights[1] + 1))

    @property
    def degree_list(self) -> List[int]:
        return list(range(self.degrees[0], self.degrees[1] + 1))

    @property
    def directions(self) -> List[Direction]:
        if self.direction == "hom":
            return [Direction.HOMOLOGY]
        if self.direction == "coh":
            return [Direction.COHOMOLOGY]
        return [Direction.HOMOLOGY, Direction.COHOMOLOGY]

    def truncations_for(self, e: int) -> List[int]:
        """Explicit truncations, or three windows spaced by e (by 4 when e = 0)."""
        if self.truncations:
            return list(self.truncations)
        if e == 0:
            return settings.default_truncations_list
        start = settings.default_truncations_list[0]
        return [start + k * e for k in range(settings.stabilization_windows)]


class _RaisingParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _RaisingParser(
        prog="gwa-hh",
        description="Hochschild (co)homology of quantum generalized Weyl algebras A(a, q)",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--a", required=True, help="defining polynomial in h, e.g. 'h^2+1'")
    parser.add_argument("--q", required=True, help="q as a rational ('2', '-1/3') or 'zeta:e[^k]'")
    parser.add_argument("--weights", default=settings.default_weights, help="weight range lo..hi (write --weights=-3..3)")
    parser.add_argument("--degrees", default=settings.default_degrees, help="degree range lo..hi")
    parser.add_argument("--truncations", default=None, help="comma-separated h-degree windows")
    parser.add_argument("--direction", default="both", choices=("hom", "coh", "both"))
    parser.add_argument("--format", default="json", choices=("json", "csv"))
    parser.add_argument("--jobs", type=int, default=None, help="worker processes for table cells")
    parser.add_argument("--exp-bound", type=int, default=settings.identity_exponent_bound,
                        help="exponent bound for the identity suite")
    parser.add_argument("--mirror-check", action="store_true",
                        help="also compare every computed cell with the mirror algebra at weight -r")
    return parser


def parse_config(argv: Sequence[str]) -> JobConfig:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        raise UsageError("help requested" if exc.code == 0 else "invalid arguments") from exc
    try:
        return JobConfig(
            command=args.command,
            a=args.a,
            q=args.q,
            weights=parse_int_range(args.weights),
            degrees=parse_int_range(args.degrees),
            truncations=parse_int_list(args.truncations) if args.truncations else None,
            direction=args.direction,
            format=args.format,
            jobs=args.jobs,
            exp_bound=args.exp_bound,
            mirror_check=args.mirror_check,
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc


def _predict(actx: AlgebraContext, direction: Direction, p: int, r: int):
    if direction is Direction.HOMOLOGY:
        return predict_homology(actx, p, r)
    return predict_cohomology(actx, p, r)


def _metadata(actx: AlgebraContext, config: JobConfig) -> Dict:
    metadata = {
        "a": str(actx.a),
        "q": str(actx.q),
        "e": actx.e,
        "N": actx.N,
        "M": poly_gcd(actx.a, actx.a_prime).top,
        "gldim": gldim(actx).value,
    }
    try:
        invariants = compute_invariants(actx)
        metadata["invariants"] = invariants.to_dict()
    except HypothesisViolation as exc:
        metadata["hypothesis_violation"] = str(exc)
    mirror = actx.mirror()
    metadata["mirror"] = {"a": str(mirror.a), "q": str(mirror.q)}
    if config.command in ("compute", "verify"):
        metadata["truncations"] = config.truncations_for(actx.e)
    return metadata


def run(config: JobConfig) -> Tuple[Report, int]:
    """Run one job; the exit code is 1 on a mismatch or identity failure, 3 when closed forms are unavailable."""
    started = time.perf_counter()
    actx = AlgebraContext.parse(config.a, config.q)
    report = Report(command=config.command, metadata=_metadata(actx, config))
    logger.info(f"Running {config.command} for {actx}")
    if config.command == "gldim":
        code = EXIT_OK
    elif config.command == "identities":
        code = _run_identities(actx, config, report)
    elif config.command == "predict":
        code = _run_predict(actx, config, report)
    else:
        code = _run_tables(actx, config, report)
    report.metadata["elapsed_seconds"] = round(time.perf_counter() - started, 3)
    logger.info(f"{config.command} finished with exit code {code}: {report.summary()}")
    return report, code


def _run_predict(actx: AlgebraContext, config: JobConfig, report: Report) -> int:
    try:
        for direction in config.directions:
            for r in config.weight_list:
                for p in config.degree_list:
                    report.records.append(CellRecord(direction.value, r, p, predicted=_predict(actx, direction, p, r)))
    except HypothesisViolation as exc:
        logger.error(f"Closed forms unavailable for {actx}: {exc}")
        report.metadata["hypothesis_violation"] = str(exc)
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _run_tables(actx: AlgebraContext, config: JobConfig, report: Report) -> int:
    verify = config.command == "verify"
    omitted = 0
    if verify and "hypothesis_violation" in report.metadata:
        logger.error(f"Cannot verify {actx}: {report.metadata['hypothesis_violation']}")
        return EXIT_HYPOTHESIS
    truncations = config.truncations_for(actx.e)
    for direction in config.directions:
        table = asyncio.run(
            hochschild_table_async(actx, config.weight_list, config.degree_list, truncations, direction, config.jobs)
        )
        mirror_table = {}
        if config.mirror_check:
            mirror_table = asyncio.run(
                hochschild_table_async(
                    actx.mirror(), [-r for r in config.weight_list], config.degree_list,
                    truncations, direction, config.jobs,
                )
            )
        for (r, p), result in table.items():
            record = CellRecord(direction.value, r, p, computed=result.profile, error=result.error)
            if result.profile is not None and result.profile.note:
                record.notes.append(result.profile.note)
            try:
                record.predicted = _predict(actx, direction, p, r)
            except HypothesisViolation as exc:
                record.notes.append(f"prediction omitted: {exc}")
                omitted += 1
            if verify:
                _attach_oracle(actx, direction, record)
                record.verdict = judge(record.predicted, record.computed, record.s_invariants)
                if record.verdict is Verdict.INCONCLUSIVE:
                    logger.warning(f"Inconclusive {direction.value} cell r={r} p={p}")
            if mirror_table:
                _compare_mirror(record, result, mirror_table.get((-r, p)))
            report.records.append(record)
    return table_exit_code(report, verify, omitted)


def table_exit_code(report: Report, verify: bool, omitted: int = 0) -> int:
    """0 only when no cell errored and, for verify, every verdict is a match."""
    if report.has_mismatch:
        return EXIT_MISMATCH
    if verify and omitted:
        logger.error(f"{omitted} cells could not be verified against closed forms")
        return EXIT_HYPOTHESIS
    if report.has_error:
        logger.error("Some cells failed to compute")
        return EXIT_MISMATCH
    if verify and not report.all_matched:
        logger.error(f"Not every cell matched: {report.summary()}")
        return EXIT_MISMATCH
    return EXIT_OK


def exit_code_for(exc: GWAError) -> int:
    """Exit status for an error that escaped a job."""
    if isinstance(exc, HypothesisViolation):
        return EXIT_HYPOTHESIS
    if isinstance(exc, (UsageError, ParseError, InvalidAlgebraError, PreconditionError, UnsupportedCaseError)):
        return EXIT_USAGE
    return EXIT_MISMATCH


def _attach_oracle(actx: AlgebraContext, direction: Direction, record: CellRecord) -> None:
    if actx.e == 0:
        return
    handle = build_hochschild_complex(actx, direction, record.r)
    try:
        record.s_invariants = smodule_invariants(handle, record.p)
    except GWAError as exc:
        record.notes.append(f"S-module oracle failed: {exc}")
        return
    if record.predicted is not None and record.computed is not None:
        record.notes.extend(oracle_disagreements(record.predicted, record.computed, record.s_invariants))


def _compare_mirror(record: CellRecord, result: CellResult, mirrored: Optional[CellResult]) -> None:
    if mirrored is None or mirrored.profile is None or result.profile is None:
        record.notes.append("mirror comparison unavailable")
        return
    if mirrored.profile.samples != result.profile.samples:
        record.notes.append(f"mirror disagrees: {mirrored.profile.samples}")
        record.verdict = Verdict.MISMATCH


def _run_identities(actx: AlgebraContext, config: JobConfig, report: Report) -> int:
    bound = config.exp_bound
    for direction in config.directions:
        for r in config.weight_list:
            handle = build_hochschild_complex(actx, direction, r)
            report.identities.extend(
                validate_identities(handle, settings.identity_h_degree_bound, settings.identity_degree_bound)
            )
    report.identities.extend(validate_bimodule_total(actx, bound))
    report.identities.extend(validate_smith_complexes(actx, bound))
    report.identities.extend(validate_comparison_maps(actx, bound))
    if report.metadata["M"] == 0:
        logger.info("a has no repeated roots; the first page vanishes and has no representatives")
        side_cases = ()
    else:
        side_cases = ((Direction.HOMOLOGY, 2), (Direction.HOMOLOGY, 3), (Direction.COHOMOLOGY, 0), (Direction.COHOMOLOGY, 1))
    for side, p in side_cases:
        try:
            report.identities.append(validate_first_page(actx, side, p))
        except UnsupportedCaseError as exc:
            logger.warning(f"Skipping first page {side.value} p={p}: {exc}")
    failed = [identity.name for identity in report.identities if not identity.passed]
    if failed:
        logger.error(f"Identity failures: {', '.join(failed)}")
        return EXIT_MISMATCH
    return EXIT_OK
