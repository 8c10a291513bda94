"""
Tests for ncideals Pydantic schemas.
"""

import json

import pytest
from pydantic import ValidationError

from ncideals.schemas import (
    Command,
    CompositionSummary,
    DimensionRow,
    FailedComposition,
    GrassmannCheckReport,
    OrderPreservingSpec,
    ReductionResult,
    RunConfig,
    TIdealSpec,
    VerificationReport,
    Verdict,
    parse_semigroup_spec,
)


class TestDimensionRow:
    """Tests for DimensionRow model."""

    def test_matching_row(self) -> None:
        """Equal normal and reference counts match."""
        row = DimensionRow(multidegree=[2, 1], words=3, normal=2, reference=2)
        assert row.matches

    def test_mismatched_reference(self) -> None:
        """A different reference count does not match."""
        row = DimensionRow(multidegree=[2, 2], words=6, normal=5, reference=4)
        assert not row.matches

    def test_oracle_column(self) -> None:
        """With an oracle, words must split into normal plus ideal."""
        assert DimensionRow(multidegree=[2, 1], words=3, normal=2, reference=2, oracle=1).matches
        assert not DimensionRow(multidegree=[2, 1], words=3, normal=2, reference=2, oracle=2).matches

    def test_negative_counts_rejected(self) -> None:
        """Counts are nonnegative."""
        with pytest.raises(ValidationError):
            DimensionRow(multidegree=[1], words=-1, normal=0, reference=0)


class TestVerificationReport:
    """Tests for VerificationReport model."""

    def test_empty_report_passes(self) -> None:
        """Nothing to compare is a pass."""
        report = VerificationReport(n=2, bound=0)
        assert report.verdict is Verdict.PASS
        assert report.rows == []

    def test_add_check(self) -> None:
        """A failed named check fails the verdict."""
        report = VerificationReport(n=3, bound=6)
        report.add_check("orbit_initial_ideal", True)
        assert report.passed
        report.add_check("minimal", False)
        assert report.verdict is Verdict.FAIL

    def test_failed_composition(self) -> None:
        """A nonzero S-polynomial fails the verdict."""
        failure = FailedComposition(first="a", second="b", kind="overlap", word="x2x1x1", remainder="x1")
        report = VerificationReport(n=2, bound=4, compositions=CompositionSummary(bound=4, checked=3, failed=[failure]))
        assert not report.compositions.passed
        assert report.verdict is Verdict.FAIL

    def test_merge(self) -> None:
        """Rows are unioned in deg-lex order and the bound is the smaller one."""
        first = VerificationReport(
            name="a", n=2, bound=6,
            rows=[DimensionRow(multidegree=[2, 1], words=3, normal=2, reference=2)],
            notes=["first"],
        )
        second = VerificationReport(
            n=2, bound=4,
            rows=[
                DimensionRow(multidegree=[1, 1], words=2, normal=2, reference=2),
                DimensionRow(multidegree=[2, 1], words=3, normal=3, reference=2),
            ],
            checks={"minimal": True},
            notes=["second"],
        )
        merged = first.merge(second)
        assert [row.multidegree for row in merged.rows] == [[1, 1], [2, 1]]
        assert merged.rows[1].normal == 3
        assert merged.bound == 4
        assert merged.name == "a"
        assert merged.notes == ["first", "second"]
        assert merged.checks == {"minimal": True}
        assert merged.verdict is Verdict.FAIL

    def test_get_summary(self) -> None:
        """Summary names the workflow, the verdict and the mismatches."""
        report = VerificationReport(
            name="verify-gamma3", n=3, bound=4,
            rows=[DimensionRow(multidegree=[2, 2, 0], words=6, normal=5, reference=4)],
            checks={"orbit_initial_ideal": False},
        )
        summary = report.get_summary()
        assert "verify-gamma3 n=3 bound=4: fail" in summary
        assert "1 rows (1 mismatched)" in summary
        assert "failed checks: orbit_initial_ideal" in summary

    def test_json_has_verdict(self) -> None:
        """Computed fields are serialized."""
        data = json.loads(VerificationReport(n=2, bound=3).model_dump_json())
        assert data["verdict"] == "pass"
        assert data["schema_version"] == 1


class TestSemigroupSpec:
    """Tests for the semigroup descriptions."""

    def test_parse_order_preserving(self) -> None:
        """The kind field selects the model."""
        spec = parse_semigroup_spec('{"kind": "order_preserving", "k": 3, "n": 5}')
        assert spec == OrderPreservingSpec(k=3, n=5)

    def test_parse_tideal_default(self) -> None:
        """x5_bound defaults to 2."""
        spec = parse_semigroup_spec('{"kind": "tideal", "n": 4}')
        assert isinstance(spec, TIdealSpec)
        assert spec.x5_bound == 2

    @pytest.mark.parametrize("text", [
        '{"kind": "affine", "n": 3}',
        '{"kind": "order_preserving", "k": 0, "n": 3}',
        '{"kind": "tideal", "n": 3, "x5_bound": -1}',
        "not json",
    ])
    def test_invalid(self, text: str) -> None:
        """Unknown kinds, bad ranges and malformed JSON are rejected."""
        with pytest.raises(ValidationError):
            parse_semigroup_spec(text)


class TestRunConfig:
    """Tests for RunConfig model."""

    def test_defaults(self) -> None:
        """Three variables to degree 6."""
        config = RunConfig(command=Command.VERIFY_GAMMA3)
        assert (config.n, config.bound, config.jobs, config.drop) == (3, 6, None, [])

    def test_command_from_string(self) -> None:
        """Subcommand names validate into the enum."""
        assert RunConfig(command="verify-tideal").command is Command.VERIFY_TIDEAL

    def test_bounds(self) -> None:
        """n, bound and jobs must be positive."""
        with pytest.raises(ValidationError):
            RunConfig(command=Command.REDUCE, n=0)
        with pytest.raises(ValidationError):
            RunConfig(command=Command.REDUCE, jobs=0)

    def test_semigroup_field(self) -> None:
        """A nested semigroup dict is discriminated by kind."""
        config = RunConfig(command="verify-tideal", semigroup={"kind": "tideal", "n": 3, "x5_bound": 1})
        assert isinstance(config.semigroup, TIdealSpec)


class TestResults:
    """Tests for the smaller result models."""

    def test_reduction_in_ideal(self) -> None:
        """Normal form 0 means membership."""
        assert ReductionResult(polynomial="x1", basis="gamma3", normal_form="0").in_ideal
        assert not ReductionResult(polynomial="x1", basis="gamma3", normal_form="x1").in_ideal

    def test_grassmann_verdict(self) -> None:
        """A zero witness or a non-vanishing generator fails."""
        ok = GrassmannCheckReport(
            polynomial="p", witness="-4*e1*e2", normal_form="x2*x1", basis_n=2, basis_bound=6,
            vanishing={"t[2,1]": True},
        )
        assert ok.verdict is Verdict.PASS
        zero = ok.model_copy(update={"witness": "0"})
        assert zero.verdict is Verdict.FAIL and zero.in_tideal
        bad = ok.model_copy(update={"vanishing": {"t[2,1]": False}})
        assert bad.verdict is Verdict.FAIL
