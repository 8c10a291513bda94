"""
Tests for the ncideals command-line interface.
"""

import json
from pathlib import Path

import pytest

from ncideals.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, main, parse_args


class TestParseArgs:
    """Tests for argument parsing."""

    def test_shared_options(self) -> None:
        """--vars, --bound and --jobs are available on every subcommand."""
        args = parse_args(["verify-tideal", "--vars", "4", "--bound", "7", "--jobs", "2", "--drop", "t[2,1]"])
        assert (args.command, args.n, args.bound, args.jobs) == ("verify-tideal", 4, 7, 2)
        assert args.drop == ["t[2,1]"]

    def test_basis_choices(self) -> None:
        """Unknown basis names are rejected by argparse."""
        with pytest.raises(SystemExit):
            parse_args(["reduce", "x1", "--basis", "other"])

    def test_command_required(self) -> None:
        """A subcommand must be given."""
        with pytest.raises(SystemExit):
            parse_args([])


class TestMain:
    """Tests for main exit codes and output."""

    def test_reduce_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--json prints the reduction report."""
        assert main(["reduce", "[[x2,x1],x1]", "--json"]) == EXIT_PASS
        data = json.loads(capsys.readouterr().out)
        assert data["normal_form"] == "0"
        assert data["in_ideal"] is True
        assert data["trace"][0]["generator"] == "f'[2,1]"

    def test_reduce_table(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Without --json a table and the result line are printed."""
        assert main(["reduce", "x2*x1", "--basis", "none"]) == EXIT_PASS
        assert "x2*x1 -> x2*x1" in capsys.readouterr().out

    def test_verify_pass(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Two variables to degree 4 pass."""
        assert main(["verify-gamma3", "--vars", "2", "--bound", "4", "--jobs", "1"]) == EXIT_PASS
        assert "verify-gamma3" in capsys.readouterr().out

    def test_verify_fail(self) -> None:
        """Dropping h exits with the failure code."""
        assert main(["verify-gamma3", "--vars", "3", "--bound", "4", "--drop", "h", "--jobs", "1"]) == EXIT_FAIL

    def test_bijection_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """psi of 1,2,(2,1) is x1x2x1x2."""
        assert main(["bijection", "psi", "1,2,(2,1)", "--json"]) == EXIT_PASS
        assert json.loads(capsys.readouterr().out)["word"] == [1, 2, 1, 2]

    @pytest.mark.parametrize("argv", [
        ["verify-gamma3", "--vars", "1"],
        ["verify-gamma3", "--vars", "0"],
        ["verify-tideal", "--vars", "3", "--semigroup", '{"kind": "affine"}'],
        ["reduce", "x1 +"],
        ["bijection", "theta", "x2x2x1"],
        ["verify-tideal", "--vars", "3", "--bound", "6", "--drop", "t[2,9]", "--jobs", "1"],
    ])
    def test_invalid_input(self, argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
        """Invalid input exits with 2 and an error on stderr."""
        assert main(argv) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_out_writes_report(self, tmp_path: Path) -> None:
        """--out writes the JSON report."""
        path = tmp_path / "report.json"
        assert main(["normal-words", "--vars", "2", "--bound", "3", "--out", str(path)]) == EXIT_PASS
        assert json.loads(path.read_text())["by_degree"] == [1, 2, 4, 6]
