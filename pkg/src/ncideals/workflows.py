"""
Verification workflows for ncideals.

This module wires the algebra modules into the end-to-end checks exposed by
the CLI. Each workflow returns a pydantic report; ``save_report`` writes it
as JSON.

Usage:
    python -m ncideals.workflows
"""

from __future__ import annotations

import logging
import re
from collections.abc import Sequence
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import BaseModel

from ncideals.algebra.core import Polynomial, Word, format_word
from ncideals.algebra.endo import enumerate_semigroup_images
from ncideals.algebra.groebner import (
    ClosureKind,
    check_compositions,
    check_minimality,
    complete,
    gamma3_commutator_seed,
    initial_ideals_agree,
    tideal_commutator_seed,
    verify_by_dimension,
)
from ncideals.algebra.grassmann import bml_counterexample
from ncideals.algebra.parsing import parse_polynomial
from ncideals.algebra.rewrite import GeneratorSet, enumerate_normal_words, normal_form, reduce
from ncideals.config import Settings, get_settings
from ncideals.errors import PolynomialSyntaxError
from ncideals.families import (
    PBWIndex,
    canonical_factorization,
    gamma3_basis,
    grassmann_count,
    latyshev_identities,
    pbw_count,
    psi,
    sbasis_gamma3,
    sbasis_tideal,
    theta,
    tideal_basis,
)
from ncideals.schemas import (
    BijectionResult,
    CompletionResult,
    GrassmannCheckReport,
    NormalWordReport,
    NormalWordRow,
    OrderPreservingSpec,
    ReductionResult,
    TIdealSpec,
    TraceStep,
    VerificationReport,
)

logger = logging.getLogger(__name__)

AnySemigroupSpec = Union[OrderPreservingSpec, TIdealSpec]


class BasisSelector(str, Enum):
    """Named generator sets accepted by ``reduce`` and ``normal-words``."""
    GAMMA3 = "gamma3"
    TIDEAL = "tideal"
    NONE = "none"


def select_basis(selector: Union[BasisSelector, str], n: int, bound: int) -> GeneratorSet:
    selector = BasisSelector(selector)
    if selector is BasisSelector.GAMMA3:
        return gamma3_basis(n)
    if selector is BasisSelector.TIDEAL:
        return tideal_basis(n, bound)
    return GeneratorSet()


# ============================================================================
# Input helpers
# ============================================================================

_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_VARIABLE = re.compile(r"x(\d+)")


def parse_word(text: str) -> Word:
    """Read ``x1x2x1``, ``x1*x2*x1`` or ``1,2,1``; blank text is the empty word."""
    text = text.strip()
    if not text or text == "1":
        return ()
    if text.startswith("x"):
        letters = _VARIABLE.findall(text)
        if "".join(f"x{i}" for i in letters) != text.replace("*", "").replace(" ", ""):
            raise PolynomialSyntaxError("not a word", text, 0)
        return tuple(int(i) for i in letters)
    try:
        return tuple(int(part) for part in re.split(r"[,\s]+", text.strip("()")) if part)
    except ValueError:
        raise PolynomialSyntaxError("not a word", text, 0) from None


def parse_pbw_index(text: str) -> PBWIndex:
    """Read ``1,2,2,(2,1),(3,1)``: bare integers are letters, parenthesized pairs are commutators."""
    pairs = tuple((int(j), int(k)) for j, k in _PAIR.findall(text))
    rest = _PAIR.sub(" ", text)
    try:
        letters = tuple(int(part) for part in re.split(r"[,\s]+", rest.strip("()[] ")) if part)
    except ValueError:
        raise PolynomialSyntaxError("not a PBW index", text, 0) from None
    return PBWIndex(letters, pairs)


# ============================================================================
# Runner
# ============================================================================

class VerificationRunner:
    """Runs the verification workflows with shared settings.

    Attributes:
        settings: Defaults for bounds, oracle guard and random checks.
        jobs: Worker cap for per-multidegree rows.
    """

    def __init__(self, settings: Optional[Settings] = None, jobs: Optional[int] = None) -> None:
        """Initialize the runner.

        Args:
            settings: Settings to use; defaults to ``get_settings()``.
            jobs: Worker cap overriding ``settings.jobs``.
        """
        self.settings = settings or get_settings()
        self.jobs = jobs or self.settings.jobs

    def _oracle_options(self, seed: list[Polynomial], closure: ClosureKind, bound: int) -> dict[str, Any]:
        oracle_bound = min(bound, self.settings.oracle_bound)
        if oracle_bound <= 0:
            return {}
        return {
            "oracle_seed": seed,
            "oracle_closure": closure,
            "oracle_bound": oracle_bound,
            "max_words": self.settings.oracle_max_words,
        }

    # ------------------------------------------------------------------ gamma3

    def verify_gamma3(
        self,
        n: Optional[int] = None,
        bound: Optional[int] = None,
        drop: Sequence[str] = (),
        semigroup: Optional[AnySemigroupSpec] = None,
    ) -> VerificationReport:
        """Check the gamma3 basis three ways.

        Normal-word counts are compared with the PBW basis, every composition
        up to ``bound`` is reduced, and the order-preserving orbit of the
        five-element S-basis is compared with the basis by initial ideals.
        Rows up to ``settings.oracle_bound`` also carry the oracle dimension of
        the ideal generated by all ``[[x_i, x_j], x_k]``.

        Args:
            n: Number of variables.
            bound: Total degree bound.
            drop: Generator ids or family names removed first.
            semigroup: Semigroup for the orbit comparison.

        Returns:
            The merged report.
        """
        n = n or self.settings.default_vars
        bound = bound or self.settings.gamma3_bound
        generators = gamma3_basis(n).without(*drop)
        logger.info("verifying gamma3 basis: n=%d bound=%d, %d generators", n, bound, len(generators))

        report = verify_by_dimension(
            generators, pbw_count, n, bound, jobs=self.jobs,
            **self._oracle_options(gamma3_commutator_seed(n).polynomials(), ClosureKind.NONE, bound),
        )
        report.name = "verify-gamma3"
        report.compositions = check_compositions(generators, bound)

        spec = semigroup or OrderPreservingSpec(k=3, n=n)
        orbit = enumerate_semigroup_images(spec, sbasis_gamma3(), bound)
        report.add_check("orbit_initial_ideal", initial_ideals_agree(orbit, generators, n, bound))

        if n < 3:
            report.add_note(f"h family is empty for n = {n}")
        if drop:
            report.add_note(f"dropped: {', '.join(drop)}")
        logger.info(report.get_summary())
        return report

    # ------------------------------------------------------------------ T-ideal

    def verify_tideal(
        self,
        n: Optional[int] = None,
        bound: Optional[int] = None,
        drop: Sequence[str] = (),
        semigroup: Optional[AnySemigroupSpec] = None,
    ) -> VerificationReport:
        """Check the T-ideal basis against the Grassmann basis of the quotient.

        Besides the dimension rows this runs the minimality check, compares
        the orbit of the two-element S-basis by initial ideals, and reduces
        every instance of the known identities of degree at most ``bound``.
        The oracle column comes from ``[x1, x2, x3]`` closed under monomial
        substitutions.
        """
        n = n or self.settings.default_vars
        bound = bound or self.settings.tideal_bound
        generators = tideal_basis(n, bound).without(*drop)
        logger.info("verifying T-ideal basis: n=%d bound=%d, %d generators", n, bound, len(generators))

        report = verify_by_dimension(
            generators, grassmann_count, n, bound, jobs=self.jobs,
            **self._oracle_options(tideal_commutator_seed(), ClosureKind.MONOMIALS, bound),
        )
        report.name = "verify-tideal"

        report.minimality = check_minimality(generators, n, bound)
        report.add_check("minimal", not any(entry.redundant for entry in report.minimality))

        spec = semigroup or TIdealSpec(n=n, x5_bound=max(bound - 4, 0))
        orbit = enumerate_semigroup_images(spec, sbasis_tideal(), bound)
        report.add_check("orbit_initial_ideal", initial_ideals_agree(orbit, generators, n, bound))

        identities = [p for p in latyshev_identities(n) if p.degree <= bound]
        report.add_check("identities_reduce", all(not reduce(p, generators) for p in identities))

        report.add_note(f"basis has {len(generators)} generators")
        if drop:
            report.add_note(f"dropped: {', '.join(drop)}")
        logger.info(report.get_summary())
        return report

    # ------------------------------------------------------------------ single computations

    def reduce(
        self,
        text: str,
        basis: Union[BasisSelector, str] = BasisSelector.GAMMA3,
        n: Optional[int] = None,
        bound: Optional[int] = None,
    ) -> ReductionResult:
        """Normal form of a textual polynomial modulo a named basis.

        The basis uses at least as many variables as the polynomial mentions.
        """
        poly = parse_polynomial(text)
        n = max(n or self.settings.default_vars, poly.max_variable(), 2)
        bound = bound or max(poly.degree, self.settings.tideal_bound)
        generators = select_basis(basis, n, bound)
        remainder, trace = normal_form(poly, generators)
        return ReductionResult(
            polynomial=str(poly),
            basis=BasisSelector(basis).value,
            normal_form=str(remainder),
            trace=[
                TraceStep(
                    word=format_word(step.word),
                    generator=step.gid,
                    left=format_word(step.left),
                    right=format_word(step.right),
                    coefficient=str(step.coefficient),
                )
                for step in trace
            ],
        )

    def normal_words(
        self,
        basis: Union[BasisSelector, str] = BasisSelector.GAMMA3,
        n: Optional[int] = None,
        bound: Optional[int] = None,
    ) -> NormalWordReport:
        n = n or self.settings.default_vars
        bound = bound if bound is not None else self.settings.gamma3_bound
        census = enumerate_normal_words(select_basis(basis, n, bound), n, bound)
        rows = [
            NormalWordRow(multidegree=list(md), count=count)
            for md, count in sorted(census.counts.items(), key=lambda item: (sum(item[0]), item[0]))
        ]
        return NormalWordReport(
            basis=BasisSelector(basis).value, n=n, bound=bound, by_degree=census.by_degree, rows=rows,
        )

    def bijection(self, direction: str, text: str) -> BijectionResult:
        """Apply ``psi`` to a PBW index or ``theta`` to a normal word.

        Raises:
            ValueError: On an unknown direction.
            PreconditionError: If the input is outside the domain.
        """
        if direction == "psi":
            index = parse_pbw_index(text)
            word = psi(index)
        elif direction == "theta":
            word = parse_word(text)
            index = theta(word)
        else:
            raise ValueError(f"unknown direction {direction!r}; use 'psi' or 'theta'")
        return BijectionResult(
            direction=direction,
            letters=list(index.letters),
            pairs=list(index.pairs),
            word=list(word),
            factorization=str(canonical_factorization(word)),
        )

    def grassmann_check(self, samples: Optional[int] = None) -> GrassmannCheckReport:
        return bml_counterexample(
            samples=samples or self.settings.grassmann_samples,
            seed=self.settings.random_seed,
            generators=self.settings.grassmann_generators,
        )

    def complete(
        self,
        n: Optional[int] = None,
        bound: int = 4,
        polynomials: Optional[Sequence[str]] = None,
    ) -> CompletionResult:
        """Complete user polynomials, or the gamma3 commutator seed, up to ``bound``."""
        n = n or self.settings.default_vars
        if polynomials:
            seed: list[Polynomial] = [parse_polynomial(text) for text in polynomials]
        else:
            seed = gamma3_commutator_seed(n).polynomials()
        result = complete(seed, bound)
        return CompletionResult(
            n=n,
            bound=bound,
            seed_size=len(seed),
            rounds=result.rounds,
            generators=[str(g.polynomial) for g in result.generators],
            leading_words=[format_word(g.lead) for g in result.generators],
        )

    # ------------------------------------------------------------------ output

    def save_report(self, result: BaseModel, output_path: Optional[Path] = None) -> Path:
        """Save a report as JSON.

        Args:
            result: Any report model.
            output_path: Optional custom output path.

        Returns:
            Path to the saved report file.
        """
        if output_path is None:
            reports_dir = self.settings.report_dir or Path.cwd() / "reports"
            reports_dir.mkdir(parents=True, exist_ok=True)
            output_path = reports_dir / "latest_report.json"
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(result.model_dump_json(indent=2, exclude_none=True))
        logger.info("report written to %s", output_path)
        return output_path


def run_default() -> None:
    """Entry point for ``python -m ncideals.workflows``: both verifications with default settings."""
    runner = VerificationRunner()
    for report in (runner.verify_gamma3(), runner.verify_tideal()):
        print(report.get_summary())


if __name__ == "__main__":
    run_default()
