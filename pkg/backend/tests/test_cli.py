"""
Tests for the command-line surface: exit codes, headers and output formats.
"""
import json
import sys
from unittest.mock import patch

import pytest
from loguru import logger

from src.cli import build_parser, config_from_args, configure_logging, main
from src.constants import TOOL_VERSION
from src.models.enums import Command


@pytest.fixture(autouse=True)
def restore_logging():
    """main() swaps the loguru sinks; put the quiet test sink back afterwards."""
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


def _run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def _body(out: str) -> list[str]:
    return [line for line in out.splitlines() if not line.startswith("#")]


@pytest.mark.unit
def test_config_from_args():
    """Test that parsed arguments become a validated run config."""
    args = build_parser().parse_args(["spectrum", "--n", "3", "--b", "0.5"])
    config = config_from_args(args)
    assert config.command == Command.SPECTRUM
    assert config.b == "1/2"
    assert config.params().N == 6


@pytest.mark.integration
def test_lr_both_methods(capsys):
    """Test that both counters report 2 on the (4,3,2) / (3,2,1) / (2,1) triple."""
    code, out = _run(capsys, "lr", "--lambda", "4,3,2", "--mu", "3,2,1", "--nu", "2,1", "--threads", "1")
    assert code == 0
    assert _body(out) == ["method,coefficient", "tableaux,2", "hive,2"]


@pytest.mark.integration
def test_header_lines(capsys):
    """Test that every artifact opens with version, config echo and seed."""
    code, out = _run(capsys, "lr", "--lambda", "2,1", "--mu", "1", "--nu", "1,1", "--seed", "11")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"# tool_version={TOOL_VERSION}"
    assert lines[1].startswith("# config=")
    assert json.loads(lines[1][len("# config="):])["command"] == "lr"
    assert lines[2] == "# seed=11"


@pytest.mark.integration
def test_verify_spectrum_passes(capsys):
    """Test the exact spectrum against the numeric oracle on S_4."""
    code, out = _run(capsys, "verify-spectrum", "--n", "2", "--b", "1/2")
    assert code == 0
    assert "status,ok" in _body(out)
    assert "total_multiplicity,24" in _body(out)


@pytest.mark.integration
def test_spectrum_json(capsys):
    """Test the JSON document of the spectrum command."""
    code, out = _run(capsys, "spectrum", "--n", "2", "--b", "1/2", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert document["header"]["tool_version"] == TOOL_VERSION
    assert document["header"]["config"]["b"] == "1/2"
    assert sum(row["mult"] for row in document["rows"]) == 24


@pytest.mark.integration
def test_spectrum_csv_uses_semicolons(capsys):
    """Test that the spectrum CSV is ;-delimited so partition cells need no quoting."""
    code, out = _run(capsys, "spectrum", "--n", "2", "--b", "1/2")
    assert code == 0
    body = _body(out)
    assert body[0] == "lambda;mu;nu;eig_num;eig_den;mult"
    assert all(len(line.split(";")) == 6 for line in body)
    assert any(line.startswith("2,1,1;2;1,1;") for line in body)
    assert not any('"' in line for line in body)
    assert sum(int(line.split(";")[5]) for line in body[1:]) == 24


@pytest.mark.integration
def test_json_floats_match_csv_cells(capsys):
    """Test that a JSON float parses to the same double as its 17-digit CSV cell."""
    code, out = _run(capsys, "tv", "--n", "2", "--b", "1/2", "--t", "3")
    assert code == 0
    header, values = _body(out)[:2]
    csv_row = dict(zip(header.split(","), values.split(",")))

    code, out = _run(capsys, "tv", "--n", "2", "--b", "1/2", "--t", "3", "--format", "json")
    assert code == 0
    json_row = json.loads(out)["rows"][0]
    assert json_row["tv_exact"] == float(csv_row["tv_exact"])


@pytest.mark.integration
def test_zones_command(capsys):
    """Test the zone report for b = 1/2 in both formats."""
    code, out = _run(capsys, "zones", "--b", "1/2")
    assert code == 0
    assert "epsilon_valid,true" in _body(out)

    code, out = _run(capsys, "zones", "--b", "1/2", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert document["K_ij_negative"] is True
    assert all(fact["holds"] for fact in document["maxima"].values())


@pytest.mark.integration
def test_zones_with_deck(capsys):
    """Test that a deck adds zone sizes and slack reports."""
    code, out = _run(capsys, "zones", "--b", "1/2", "--n", "4", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert "zone_sizes" in document
    assert "q_r_slack" in document


@pytest.mark.integration
def test_moments_over_sizes(capsys):
    """Test one moments row per (n, p) pair."""
    code, out = _run(capsys, "moments", "--b", "1/2", "--ns", "3,4", "--ps", "1,2", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [(row["N"], row["p"]) for row in rows] == [(6, 1), (6, 2), (8, 1), (8, 2)]


@pytest.mark.integration
def test_tv_command(capsys):
    """Test that t = 0 puts the walk at distance 1 - 1/N! from uniform."""
    code, out = _run(capsys, "tv", "--n", "2", "--b", "1/2", "--t", "0", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["t"] == 0
    assert row["tv_exact"] == pytest.approx(23 / 24)


@pytest.mark.integration
@pytest.mark.parametrize("b", ["2", "0", "-0.5", "abc"])
def test_invalid_bias_exits_2(capsys, b):
    """Test that b outside (0, 1] is rejected as invalid input."""
    code, _ = _run(capsys, "spectrum", "--n", "2", "--b", b)
    assert code == 2


@pytest.mark.integration
def test_missing_deck_exits_2(capsys):
    """Test that a deck command without a deck is invalid input."""
    code, _ = _run(capsys, "spectrum", "--b", "1/2")
    assert code == 2


@pytest.mark.integration
def test_unbalanced_bias_exits_2(capsys):
    """Test that an unbalanced deck with b < 1 is refused."""
    code, _ = _run(capsys, "spectrum", "--na", "2", "--nb", "3", "--b", "1/2")
    assert code == 2


@pytest.mark.integration
def test_resource_guard_exits_3(capsys):
    """Test that a deck beyond the spectrum guard exits with 3."""
    code, _ = _run(capsys, "spectrum", "--n", "21", "--b", "1")
    assert code == 3


@pytest.mark.integration
def test_fixpoints_reproducible(capsys):
    """Test that the same seed gives byte-identical output."""
    argv = ["fixpoints", "--n", "5", "--b", "1/2", "--samples", "2000", "--seed", "7", "--threads", "2"]
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    assert _body(first[1])[0] == "k,count,empirical_p,poisson_p"


@pytest.mark.integration
def test_output_file(tmp_path, capsys):
    """Test that --output writes the artifact to a file instead of stdout."""
    target = tmp_path / "lr.csv"
    code, out = _run(capsys, "lr", "--lambda", "2,1", "--mu", "1", "--nu", "1,1", "--output", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().splitlines()[-1] == "hive,1"


@pytest.mark.unit
def test_configure_logging_adds_file_sink():
    """Test that BRT_LOG_FILE adds a second sink at the chosen level."""
    with patch("src.cli.LOG_FILE", "run.log"), patch("src.cli.logger") as mock_logger:
        configure_logging(verbose=True)
    mock_logger.remove.assert_called_once()
    assert mock_logger.add.call_count == 2
    assert mock_logger.add.call_args.args == ("run.log",)
    assert mock_logger.add.call_args.kwargs == {"level": "DEBUG"}


@pytest.mark.unit
def test_configure_logging_stderr_only():
    """Test that without a log file only stderr receives records."""
    with patch("src.cli.LOG_FILE", None), patch("src.cli.logger") as mock_logger:
        configure_logging(verbose=False)
    mock_logger.add.assert_called_once()
