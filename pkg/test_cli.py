#!/usr/bin/env python3
"""
Tests for the command-line jobs: argument validation, exit codes and the
JSON/CSV reports.
"""

import json
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.append(str(Path(__file__).parent))

from src.cli.jobs import (
    EXIT_HYPOTHESIS,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    exit_code_for,
    parse_config,
    parse_int_range,
    run,
    table_exit_code,
)
from src.cli.report import CSV_COLUMNS, CellRecord, Report, Verdict, emit, judge
from src.errors import FieldMismatchError, HypothesisViolation, PreconditionError, UsageError
from src.homology.engine import DimProfile
from src.main import main
from src.theory.closedform import DimensionSpec


def test_parse_int_range():
    assert parse_int_range("-3..3") == (-3, 3)
    assert parse_int_range("2") == (2, 2)
    with pytest.raises(UsageError):
        parse_int_range("a..b")


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus", "--a", "h^2+1", "--q", "2"],
        ["predict", "--q", "2"],
        ["predict", "--a", "h^2+1", "--q", "2", "--degrees", "-1..2"],
        ["predict", "--a", "h^2+1", "--q", "2", "--weights=3..1"],
        ["compute", "--a", "h^2+1", "--q", "2", "--truncations", "8,6"],
    ],
)
def test_bad_arguments_are_usage_errors(argv):
    with pytest.raises(UsageError):
        parse_config(argv)


def test_truncations_follow_the_period():
    config = parse_config(["compute", "--a", "h^2+1", "--q", "-1"])
    assert config.truncations_for(2) == [16, 18, 20]
    assert config.truncations_for(0) == [16, 20, 24]


def test_gldim_report():
    report, code = run(parse_config(["gldim", "--a", "(h-1)^2*(h+2)", "--q", "2"]))
    assert code == EXIT_OK
    assert report.metadata["gldim"] == "infinite"
    assert report.metadata["M"] == 1


def test_predict_table():
    config = parse_config(["predict", "--a", "h^2-1", "--q", "2", "--weights=0..1", "--degrees", "0..2",
                           "--direction", "hom"])
    report, code = run(config)
    assert code == EXIT_OK
    assert len(report.records) == 6
    data = json.loads(emit(report))
    assert data["schema"] == "gwa-hh/1"
    assert data["records"][0]["predicted"]["finite_dim"] == 2


def test_predict_root_case_without_closed_forms():
    report, code = run(parse_config(["predict", "--a", "h^2+h", "--q", "-1"]))
    assert code == EXIT_HYPOTHESIS
    assert "hypothesis_violation" in report.metadata


def test_csv_header():
    report, _ = run(parse_config(["predict", "--a", "h^2+1", "--q", "-1", "--weights=0..0", "--degrees", "0..1",
                                  "--format", "csv"]))
    lines = emit(report, "csv").splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 2 * 2


def test_judge():
    predicted = DimensionSpec(e=2, finite_dim=1, shifts=[1])
    profile = DimProfile(samples=[(16, 9), (18, 10), (20, 11)], period=2, slope=1, constant=1, stabilized=True)
    assert judge(predicted, profile) is Verdict.MATCH
    profile.slope = 2
    assert judge(predicted, profile) is Verdict.MISMATCH
    profile.stabilized = False
    assert judge(predicted, profile) is Verdict.INCONCLUSIVE
    assert judge(None, profile) is Verdict.INCONCLUSIVE


def test_main_exit_codes(capsys):
    assert main(["predict", "--a", "h^2+", "--q", "2"]) == EXIT_USAGE
    assert main(["gldim", "--a", "h^2-1", "--q", "2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["metadata"]["gldim"] == "finite_2"


@pytest.mark.slow
def test_verify_nonroot_matches():
    config = parse_config(["verify", "--a", "h^2-1", "--q", "2", "--weights=-1..1", "--degrees", "0..2",
                           "--truncations", "8,12,16"])
    report, code = run(config)
    assert code == EXIT_OK
    assert not report.has_mismatch


def test_verify_fails_on_an_inconclusive_cell():
    # a single window cannot show stabilization
    config = parse_config(["verify", "--a", "h^2-1", "--q", "2", "--weights=0..0", "--degrees", "0..0",
                           "--direction", "hom", "--truncations", "8", "--jobs", "1"])
    report, code = run(config)
    assert [record.verdict for record in report.records] == [Verdict.INCONCLUSIVE]
    assert not report.has_mismatch
    assert code == EXIT_MISMATCH


def test_table_exit_code():
    report = Report(command="compute", records=[CellRecord("homology", 0, 0)])
    assert table_exit_code(report, verify=False) == EXIT_OK
    report.records.append(CellRecord("homology", 0, 1, error="PreconditionError: boom"))
    assert table_exit_code(report, verify=False) == EXIT_MISMATCH

    verified = Report(command="verify", records=[CellRecord("homology", 0, 0, verdict=Verdict.MATCH)])
    assert table_exit_code(verified, verify=True) == EXIT_OK
    assert table_exit_code(verified, verify=True, omitted=1) == EXIT_HYPOTHESIS
    verified.records.append(CellRecord("homology", 0, 1, verdict=Verdict.INCONCLUSIVE))
    assert table_exit_code(verified, verify=True) == EXIT_MISMATCH


def test_exit_code_for_errors():
    assert exit_code_for(HypothesisViolation("a(0) = 0")) == EXIT_HYPOTHESIS
    assert exit_code_for(PreconditionError("order too large")) == EXIT_USAGE
    assert exit_code_for(FieldMismatchError("Q(zeta_3) vs Q(zeta_4)")) == EXIT_MISMATCH


def test_main_maps_library_errors_to_exit_codes(capsys):
    # the cyclotomic order is capped by max_cyclotomic_order
    assert main(["gldim", "--a", "h^2+1", "--q", "zeta:100"]) == EXIT_USAGE
    assert capsys.readouterr().out == ""
