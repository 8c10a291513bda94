"""
Pydantic models for ncideals runs and reports.

This module defines the configuration objects accepted by the workflows and
the JSON reports they produce. Reports carry no timestamps, so the same
configuration always serializes to the same bytes.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter, computed_field

SCHEMA_VERSION = 1


class Verdict(str, Enum):
    """Overall outcome of a verification."""
    PASS = "pass"
    FAIL = "fail"


class Command(str, Enum):
    """CLI subcommands."""
    VERIFY_GAMMA3 = "verify-gamma3"
    VERIFY_TIDEAL = "verify-tideal"
    REDUCE = "reduce"
    NORMAL_WORDS = "normal-words"
    BIJECTION = "bijection"
    GRASSMANN_CHECK = "grassmann-check"
    COMPLETE = "complete"


# ============================================================================
# Semigroups and run configuration
# ============================================================================

class OrderPreservingSpec(BaseModel):
    """Variable maps that send x1..xk strictly increasingly into x1..xn.

    Attributes:
        kind: Discriminator, always ``order_preserving``.
        k: Largest variable index allowed in the S-basis.
        n: Ambient variable count.
    """
    kind: Literal["order_preserving"] = "order_preserving"
    k: int = Field(..., ge=1)
    n: int = Field(..., ge=1)

    class Config:
        """Pydantic model configuration."""
        json_schema_extra = {"example": {"kind": "order_preserving", "k": 3, "n": 5}}


class TIdealSpec(BaseModel):
    """Maps sending x1..x4 to variables and x5 to an ascending monomial.

    Attributes:
        kind: Discriminator, always ``tideal``.
        n: Ambient variable count.
        x5_bound: Largest degree of the image of x5.
    """
    kind: Literal["tideal"] = "tideal"
    n: int = Field(..., ge=1)
    x5_bound: int = Field(default=2, ge=0)

    class Config:
        """Pydantic model configuration."""
        json_schema_extra = {"example": {"kind": "tideal", "n": 4, "x5_bound": 3}}


SemigroupSpec = Annotated[Union[OrderPreservingSpec, TIdealSpec], Field(discriminator="kind")]

_SEMIGROUP_ADAPTER: TypeAdapter[Union[OrderPreservingSpec, TIdealSpec]] = TypeAdapter(SemigroupSpec)


def parse_semigroup_spec(text: str) -> Union[OrderPreservingSpec, TIdealSpec]:
    """Validate a JSON semigroup description.

    Raises:
        pydantic.ValidationError: On unknown ``kind`` or bad fields.
    """
    return _SEMIGROUP_ADAPTER.validate_json(text)


class RunConfig(BaseModel):
    """One CLI invocation.

    Attributes:
        command: Subcommand to run.
        n: Number of variables.
        bound: Total degree bound.
        semigroup: Optional semigroup used for the orbit comparison.
        out: Where to write the JSON report.
        jobs: Worker cap for per-multidegree rows (``None`` = all cores).
        drop: Generator ids or family names removed before verifying.
    """
    command: Command
    n: int = Field(default=3, ge=1)
    bound: int = Field(default=6, ge=1)
    semigroup: Optional[SemigroupSpec] = None
    out: Optional[Path] = None
    jobs: Optional[int] = Field(default=None, ge=1)
    drop: list[str] = Field(default_factory=list)


# ============================================================================
# Verification reports
# ============================================================================

class DimensionRow(BaseModel):
    """One multihomogeneous component of the quotient.

    Attributes:
        multidegree: Exponent of each variable.
        words: Number of all words of this multidegree.
        normal: Normal words with respect to the generators under test.
        reference: Size of the reference basis (PBW or Grassmann).
        oracle: Dimension of the ideal component by linear algebra, if computed.
    """
    multidegree: list[int]
    words: int = Field(..., ge=0)
    normal: int = Field(..., ge=0)
    reference: int = Field(..., ge=0)
    oracle: Optional[int] = Field(default=None, ge=0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def matches(self) -> bool:
        if self.normal != self.reference:
            return False
        return self.oracle is None or self.words == self.normal + self.oracle


class FailedComposition(BaseModel):
    """An S-polynomial that did not reduce to zero."""
    first: str
    second: str
    kind: str
    word: str
    remainder: str


class CompositionSummary(BaseModel):
    """Composition check over all obstructions up to a degree.

    Attributes:
        bound: Degree bound of the superpositions considered.
        checked: Number of S-polynomials formed.
        failed: The ones with a nonzero normal form.
    """
    bound: int = Field(default=0, ge=0)
    checked: int = Field(default=0, ge=0)
    failed: list[FailedComposition] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failed


class MinimalityEntry(BaseModel):
    gid: str
    redundant: bool


class VerificationReport(BaseModel):
    """Outcome of a dimension comparison plus auxiliary checks.

    Attributes:
        schema_version: Version of this report layout.
        name: Workflow that produced the report.
        n: Number of variables.
        bound: Total degree bound every statement is quantified over.
        rows: Per-multidegree comparison, deg-lex ordered.
        compositions: Composition check, when run.
        checks: Named boolean checks (orbit comparison, minimality, ...).
        minimality: Per-generator redundancy flags, when run.
        notes: Free-form remarks for human readers.
    """
    schema_version: int = Field(default=SCHEMA_VERSION)
    name: str = Field(default="")
    n: int = Field(..., ge=1)
    bound: int = Field(..., ge=0)
    rows: list[DimensionRow] = Field(default_factory=list)
    compositions: Optional[CompositionSummary] = Field(default=None)
    checks: dict[str, bool] = Field(default_factory=dict)
    minimality: Optional[list[MinimalityEntry]] = Field(default=None)
    notes: list[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def verdict(self) -> Verdict:
        rows_ok = all(row.matches for row in self.rows)
        compositions_ok = self.compositions is None or self.compositions.passed
        if rows_ok and compositions_ok and all(self.checks.values()):
            return Verdict.PASS
        return Verdict.FAIL

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def failed_rows(self) -> list[DimensionRow]:
        return [row for row in self.rows if not row.matches]

    def add_check(self, name: str, ok: bool) -> None:
        """Record a named boolean check.

        Args:
            name: Check name, e.g. ``orbit_initial_ideal``.
            ok: Whether the check passed.
        """
        self.checks[name] = ok

    def add_note(self, note: str) -> None:
        self.notes.append(note)

    def merge(self, other: VerificationReport) -> VerificationReport:
        """Combine two reports over the same ``n``.

        Rows are unioned (``other`` wins on a repeated multidegree), checks
        and notes concatenated, composition failures pooled. The bound of the
        result is the smaller one, since only that range is covered by both.
        """
        by_md = {tuple(row.multidegree): row for row in self.rows}
        by_md.update({tuple(row.multidegree): row for row in other.rows})
        rows = [by_md[md] for md in sorted(by_md, key=lambda md: (sum(md), md))]

        compositions = self.compositions
        if other.compositions is not None:
            if compositions is None:
                compositions = other.compositions
            else:
                compositions = CompositionSummary(
                    bound=min(compositions.bound, other.compositions.bound),
                    checked=compositions.checked + other.compositions.checked,
                    failed=[*compositions.failed, *other.compositions.failed],
                )

        minimality = None
        if self.minimality is not None or other.minimality is not None:
            minimality = [*(self.minimality or []), *(other.minimality or [])]

        return VerificationReport(
            name=self.name or other.name,
            n=self.n,
            bound=min(self.bound, other.bound),
            rows=rows,
            compositions=compositions,
            checks={**self.checks, **other.checks},
            minimality=minimality,
            notes=[*self.notes, *other.notes],
        )

    def get_summary(self) -> str:
        """Generate a one-line summary of the report.

        Returns:
            Formatted summary string.
        """
        failed = self.failed_rows()
        parts = [
            f"{self.name or 'verification'} n={self.n} bound={self.bound}: {self.verdict.value}",
            f"{len(self.rows)} rows ({len(failed)} mismatched)",
        ]
        if self.compositions is not None:
            parts.append(
                f"{self.compositions.checked} compositions ({len(self.compositions.failed)} failed)"
            )
        bad = [name for name, ok in self.checks.items() if not ok]
        if bad:
            parts.append(f"failed checks: {', '.join(bad)}")
        return "; ".join(parts)


# ============================================================================
# Other workflow results
# ============================================================================

class TraceStep(BaseModel):
    word: str
    generator: str
    left: str
    right: str
    coefficient: str


class ReductionResult(BaseModel):
    """Normal form of one polynomial.

    Attributes:
        polynomial: Input as parsed and reprinted.
        basis: Basis selector that was used.
        normal_form: The fully reduced polynomial.
        trace: Rewrites in the order they were applied.
    """
    schema_version: int = Field(default=SCHEMA_VERSION)
    polynomial: str
    basis: str
    normal_form: str
    trace: list[TraceStep] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def in_ideal(self) -> bool:
        return self.normal_form == "0"


class NormalWordRow(BaseModel):
    multidegree: list[int]
    count: int = Field(..., ge=0)


class NormalWordReport(BaseModel):
    """Normal-word census for a basis selector."""
    schema_version: int = Field(default=SCHEMA_VERSION)
    basis: str
    n: int = Field(..., ge=1)
    bound: int = Field(..., ge=0)
    by_degree: list[int] = Field(default_factory=list)
    rows: list[NormalWordRow] = Field(default_factory=list)


class BijectionResult(BaseModel):
    """Output of ``psi`` or ``theta`` on one input.

    Attributes:
        direction: ``psi`` (PBW index to word) or ``theta`` (word to PBW index).
        letters: Ascending letters of the PBW index.
        pairs: Commutator pairs ``(j, k)`` with ``j > k``.
        word: The normal word.
        factorization: Canonical factorization of ``word``.
    """
    schema_version: int = Field(default=SCHEMA_VERSION)
    direction: Literal["psi", "theta"]
    letters: list[int] = Field(default_factory=list)
    pairs: list[tuple[int, int]] = Field(default_factory=list)
    word: list[int] = Field(default_factory=list)
    factorization: str = Field(default="")


class GrassmannCheckReport(BaseModel):
    """Two independent proofs that a polynomial lies outside the T-ideal.

    Attributes:
        polynomial: The polynomial under test.
        assignment: Variable to Grassmann element, as text.
        witness: Value of the polynomial under ``assignment``.
        normal_form: Its normal form modulo the T-ideal basis.
        basis_n: Variables of the T-ideal basis used for the normal form.
        basis_bound: Degree bound of that basis.
        samples: Random assignments tried per generator.
        vanishing: Generator id to whether every sample evaluated to zero.
    """
    schema_version: int = Field(default=SCHEMA_VERSION)
    polynomial: str
    assignment: dict[str, str] = Field(default_factory=dict)
    witness: str
    normal_form: str
    basis_n: int = Field(..., ge=1)
    basis_bound: int = Field(..., ge=1)
    samples: int = Field(default=0, ge=0)
    vanishing: dict[str, bool] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def in_tideal(self) -> bool:
        return self.witness == "0"

    @computed_field  # type: ignore[prop-decorator]
    @property
    def verdict(self) -> Verdict:
        consistent = self.witness != "0" and self.normal_form != "0"
        if consistent and all(self.vanishing.values()):
            return Verdict.PASS
        return Verdict.FAIL


class CompletionResult(BaseModel):
    """Degree-truncated completion output.

    Attributes:
        n: Number of variables of the seed.
        bound: Degree bound of the completion.
        seed_size: Number of seed polynomials.
        rounds: Completion rounds until no composition was left.
        generators: Completed basis, printed.
        leading_words: Leading words of the completed basis.
    """
    schema_version: int = Field(default=SCHEMA_VERSION)
    n: int = Field(..., ge=1)
    bound: int = Field(..., ge=1)
    seed_size: int = Field(default=0, ge=0)
    rounds: int = Field(default=0, ge=0)
    generators: list[str] = Field(default_factory=list)
    leading_words: list[str] = Field(default_factory=list)
