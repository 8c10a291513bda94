"""
Tests for the verification workflows.
"""

import json
from pathlib import Path

import pytest

from ncideals.config import Settings
from ncideals.errors import PolynomialSyntaxError, PreconditionError
from ncideals.families import PBWIndex
from ncideals.schemas import Verdict
from ncideals.workflows import BasisSelector, VerificationRunner, parse_pbw_index, parse_word, select_basis


@pytest.fixture
def runner() -> VerificationRunner:
    """Runner with field-default settings and a single worker."""
    return VerificationRunner(Settings(), jobs=1)


class TestVerifyGamma3:
    """Tests for VerificationRunner.verify_gamma3."""

    def test_two_variables(self, runner: VerificationRunner) -> None:
        """Two variables pass and note the empty h family."""
        report = runner.verify_gamma3(n=2, bound=4)
        assert report.verdict is Verdict.PASS
        assert report.name == "verify-gamma3"
        assert "h family is empty for n = 2" in report.notes
        assert report.checks["orbit_initial_ideal"]

    def test_three_variables(self, runner: VerificationRunner) -> None:
        """Three variables pass to degree 6 with every composition resolved."""
        report = runner.verify_gamma3(n=3, bound=6)
        assert report.passed
        assert report.compositions is not None and report.compositions.checked > 0
        assert report.rows[0].multidegree == [0, 0, 0]

    def test_dropping_h_fails(self, runner: VerificationRunner) -> None:
        """Without h the dimension rows and the orbit comparison both fail."""
        report = runner.verify_gamma3(n=3, bound=4, drop=["h"])
        assert report.verdict is Verdict.FAIL
        assert [row.multidegree for row in report.failed_rows()] == [[1, 1, 2]]
        assert not report.checks["orbit_initial_ideal"]
        assert "dropped: h" in report.notes

    def test_oracle_column(self, runner: VerificationRunner) -> None:
        """Rows up to oracle_bound carry the oracle value and the seed reduces."""
        report = runner.verify_gamma3(n=3, bound=5)
        assert all(row.oracle == row.words - row.normal for row in report.rows)
        assert report.checks["seed_reduces"]

    def test_oracle_disabled(self) -> None:
        """oracle_bound 0 leaves the column empty."""
        runner = VerificationRunner(Settings(oracle_bound=0), jobs=1)
        report = runner.verify_gamma3(n=2, bound=4)
        assert all(row.oracle is None for row in report.rows)
        assert "seed_reduces" not in report.checks


class TestVerifyTideal:
    """Tests for VerificationRunner.verify_tideal."""

    def test_three_variables(self, runner: VerificationRunner) -> None:
        """The truncated basis passes every check to degree 6."""
        report = runner.verify_tideal(n=3, bound=6)
        assert report.passed
        assert {"minimal", "orbit_initial_ideal", "identities_reduce"} <= set(report.checks)
        assert report.minimality is not None
        assert any(note.startswith("basis has") for note in report.notes)

    def test_oracle_column(self) -> None:
        """Monomial closure of [x1,x2,x3] fills rows up to oracle_bound."""
        runner = VerificationRunner(Settings(oracle_bound=5), jobs=1)
        report = runner.verify_tideal(n=3, bound=6)
        assert report.passed
        for row in report.rows:
            if sum(row.multidegree) <= 5:
                assert row.oracle == row.words - row.normal
            else:
                assert row.oracle is None

    def test_dropping_t_fails(self, runner: VerificationRunner) -> None:
        """Without t[2,1] the Grassmann counts are exceeded."""
        report = runner.verify_tideal(n=3, bound=6, drop=["t[2,1]"])
        assert report.verdict is Verdict.FAIL
        assert report.failed_rows()

    def test_unknown_drop_rejected(self, runner: VerificationRunner) -> None:
        """A mistyped drop selector is an error, not a silent full-basis run."""
        with pytest.raises(PreconditionError):
            runner.verify_tideal(n=3, bound=6, drop=["t[2,9]"])


class TestSingleComputations:
    """Tests for reduce, normal_words, bijection and complete."""

    def test_reduce_generator(self, runner: VerificationRunner) -> None:
        """[[x2,x1],x1] reduces to 0 in one step."""
        result = runner.reduce("[[x2,x1],x1]")
        assert result.in_ideal
        assert result.basis == "gamma3"
        assert len(result.trace) == 1
        step = result.trace[0]
        assert (step.word, step.generator, step.left, step.right) == ("x2*x1*x1", "f'[2,1]", "1", "1")

    def test_reduce_identity_modulo_tideal(self, runner: VerificationRunner) -> None:
        """[x1,x2][x1,x3] lies in the T-ideal but (x2x1)^2 - (x1x2)^2 does not."""
        assert runner.reduce("[x1,x2]*[x1,x3]", basis="tideal").in_ideal
        assert not runner.reduce("(x2*x1)^2 - (x1*x2)^2", basis=BasisSelector.TIDEAL).in_ideal

    def test_reduce_without_basis(self, runner: VerificationRunner) -> None:
        """The empty basis leaves the input unchanged."""
        result = runner.reduce("x2*x1", basis="none")
        assert result.normal_form == "x2*x1"
        assert result.trace == []

    def test_reduce_syntax_error(self, runner: VerificationRunner) -> None:
        """Malformed input propagates the parser error."""
        with pytest.raises(PolynomialSyntaxError):
            runner.reduce("x1 +")

    def test_normal_words(self, runner: VerificationRunner) -> None:
        """Counts by degree and per multidegree."""
        report = runner.normal_words("gamma3", n=2, bound=3)
        assert report.by_degree == [1, 2, 4, 6]
        assert report.rows[0].multidegree == [0, 0]
        assert sum(row.count for row in report.rows) == 13

    def test_psi(self, runner: VerificationRunner) -> None:
        """x1 x2 [x2,x1] goes to x1x2x1x2."""
        result = runner.bijection("psi", "1,2,(2,1)")
        assert result.word == [1, 2, 1, 2]
        assert result.factorization == "x1(x2x1)x2"

    def test_theta(self, runner: VerificationRunner) -> None:
        """x1x2x1x3 splits into letters 1, 3 and the pair (2,1)."""
        result = runner.bijection("theta", "x1x2x1x3")
        assert result.letters == [1, 3]
        assert result.pairs == [(2, 1)]
        assert result.factorization == "x1(x2x1)x3"

    def test_bijection_errors(self, runner: VerificationRunner) -> None:
        """Non-normal words and unknown directions are rejected."""
        with pytest.raises(PreconditionError):
            runner.bijection("theta", "x2x2x1")
        with pytest.raises(ValueError):
            runner.bijection("phi", "")

    def test_complete_default_seed(self, runner: VerificationRunner) -> None:
        """The commutator seed in two variables completes to f' and f''."""
        result = runner.complete(n=2, bound=4)
        assert result.leading_words == ["x2*x1*x1", "x2*x2*x1"]

    def test_complete_user_seed(self, runner: VerificationRunner) -> None:
        """A single commutator is already complete."""
        result = runner.complete(n=2, bound=4, polynomials=["x2*x1 - x1*x2"])
        assert result.leading_words == ["x2*x1"]
        assert result.seed_size == 1

    def test_grassmann_check(self, runner: VerificationRunner) -> None:
        """The counterexample report passes."""
        report = runner.grassmann_check(samples=5)
        assert report.verdict is Verdict.PASS
        assert report.samples == 5


class TestSaveReport:
    """Tests for VerificationRunner.save_report."""

    def test_explicit_path(self, runner: VerificationRunner, tmp_path: Path) -> None:
        """Reports are written as indented JSON."""
        path = runner.save_report(runner.bijection("psi", "1,(2,1)"), tmp_path / "sub" / "report.json")
        data = json.loads(path.read_text())
        assert data["direction"] == "psi"
        assert data["word"] == [1, 2, 1]

    def test_report_dir_setting(self, tmp_path: Path) -> None:
        """Without a path the report goes to report_dir."""
        runner = VerificationRunner(Settings(report_dir=tmp_path), jobs=1)
        path = runner.save_report(runner.normal_words("none", n=2, bound=2))
        assert path == tmp_path / "latest_report.json"
        assert json.loads(path.read_text())["by_degree"] == [1, 2, 4]


class TestInputHelpers:
    """Tests for parse_word, parse_pbw_index and select_basis."""

    @pytest.mark.parametrize("text,expected", [
        ("x1x2x1", (1, 2, 1)),
        ("x1*x2", (1, 2)),
        ("1,2,1", (1, 2, 1)),
        ("", ()),
        ("1", ()),
    ])
    def test_parse_word(self, text: str, expected: tuple[int, ...]) -> None:
        """Several spellings of a word."""
        assert parse_word(text) == expected

    @pytest.mark.parametrize("text", ["x1y2", "a,b"])
    def test_parse_word_rejects(self, text: str) -> None:
        """Anything else is a syntax error."""
        with pytest.raises(PolynomialSyntaxError):
            parse_word(text)

    def test_parse_pbw_index(self) -> None:
        """Bare integers are letters, parenthesized pairs are commutators."""
        assert parse_pbw_index("1,2,2,(2,1),(3,1)") == PBWIndex((1, 2, 2), ((2, 1), (3, 1)))
        assert parse_pbw_index("") == PBWIndex()

    def test_select_basis(self) -> None:
        """Selectors name the two families and the empty set."""
        assert len(select_basis("gamma3", 3, 6)) == 9
        assert len(select_basis(BasisSelector.TIDEAL, 2, 6)) == 3
        assert len(select_basis("none", 3, 6)) == 0
