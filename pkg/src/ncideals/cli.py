"""
Command-line interface for ncideals.

Every subcommand prints a rich table (or, with ``--json``, the JSON report)
on stdout and can write the JSON report to ``--out``. Exit status is 0 when
the verdict is pass, 1 when it is fail, and 2 on invalid input.

Usage:
    ncideals verify-gamma3 --vars 3 --bound 6
    ncideals verify-tideal --vars 3 --bound 8 --drop "t[2,1]"
    ncideals reduce "[x1,x2]*x3 - x3*[x1,x2]" --basis tideal
    ncideals bijection psi "1,2,(2,1)"
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from ncideals import __version__
from ncideals.config import get_settings
from ncideals.errors import NCIdealsError
from ncideals.schemas import (
    BijectionResult,
    Command,
    CompletionResult,
    GrassmannCheckReport,
    NormalWordReport,
    ReductionResult,
    RunConfig,
    VerificationReport,
    Verdict,
    parse_semigroup_spec,
)
from ncideals.workflows import BasisSelector, VerificationRunner

logger = logging.getLogger("ncideals")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", dest="n", type=int, default=None, help="number of variables")
    common.add_argument("--bound", type=int, default=None, help="total degree bound")
    common.add_argument("--out", type=Path, default=None, help="write the JSON report here")
    common.add_argument("--jobs", type=int, default=None, help="worker threads for verification rows")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="ncideals",
        description="Groebner bases and S-bases for the gamma3 ideal and the Grassmann T-ideal.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for command, text in (
        (Command.VERIFY_GAMMA3, "check the gamma3 basis against the PBW basis"),
        (Command.VERIFY_TIDEAL, "check the T-ideal basis against the Grassmann basis"),
    ):
        p = sub.add_parser(command.value, parents=[common], help=text)
        p.add_argument("--drop", action="append", default=[], help="generator id or family to remove")
        p.add_argument("--semigroup", default=None, help='JSON, e.g. {"kind":"order_preserving","k":3,"n":4}')

    p = sub.add_parser(Command.REDUCE.value, parents=[common], help="normal form of a polynomial")
    p.add_argument("polynomial")
    p.add_argument("--basis", choices=[b.value for b in BasisSelector], default=BasisSelector.GAMMA3.value)

    p = sub.add_parser(Command.NORMAL_WORDS.value, parents=[common], help="count normal words")
    p.add_argument("--basis", choices=[b.value for b in BasisSelector], default=BasisSelector.GAMMA3.value)

    p = sub.add_parser(Command.BIJECTION.value, parents=[common], help="PBW index <-> normal word")
    p.add_argument("direction", choices=["psi", "theta"])
    p.add_argument("sequence", nargs="?", default="")

    p = sub.add_parser(Command.GRASSMANN_CHECK.value, parents=[common], help="(x2x1)^2 - (x1x2)^2 is not in T")
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser(Command.COMPLETE.value, parents=[common], help="truncated Groebner completion")
    p.add_argument("polynomials", nargs="?", default=None, help="';'-separated seed; default gamma3 commutators")

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


# ============================================================================
# Rendering
# ============================================================================

def _verification_table(report: VerificationReport) -> Table:
    table = Table(title=f"{report.name} n={report.n} bound={report.bound}: {report.verdict.value}")
    table.add_column("multidegree")
    table.add_column("words", justify="right")
    table.add_column("normal", justify="right")
    table.add_column("reference", justify="right")
    table.add_column("ideal", justify="right")
    table.add_column("", justify="center")
    for row in report.rows:
        mark = "[green]ok[/green]" if row.matches else "[red]MISMATCH[/red]"
        oracle = "-" if row.oracle is None else str(row.oracle)
        table.add_row(str(tuple(row.multidegree)), str(row.words), str(row.normal), str(row.reference), oracle, mark)
    return table


def render(console: Console, result: BaseModel) -> None:
    """Print a human-readable view of any workflow result."""
    if isinstance(result, VerificationReport):
        console.print(_verification_table(result))
        if result.compositions is not None:
            comp = result.compositions
            console.print(f"compositions up to degree {comp.bound}: {comp.checked} checked, {len(comp.failed)} failed")
            for failure in comp.failed:
                console.print(escape(f"  {failure.first} / {failure.second} ({failure.kind}) at {failure.word}: {failure.remainder}"))
        for name, ok in result.checks.items():
            console.print(f"{name}: {'[green]pass[/green]' if ok else '[red]fail[/red]'}")
        for entry in result.minimality or []:
            if entry.redundant:
                console.print(f"[yellow]redundant[/yellow] {escape(entry.gid)}")
        for note in result.notes:
            console.print(f"note: {escape(note)}")
    elif isinstance(result, ReductionResult):
        table = Table(title=f"reduce modulo {result.basis}")
        for column in ("word", "generator", "left", "right", "coefficient"):
            table.add_column(column)
        for step in result.trace:
            table.add_row(*(escape(cell) for cell in (step.word, step.generator, step.left, step.right, step.coefficient)))
        console.print(table)
        console.print(escape(f"{result.polynomial} -> {result.normal_form}"))
    elif isinstance(result, NormalWordReport):
        table = Table(title=f"normal words modulo {result.basis}, n={result.n}")
        table.add_column("degree", justify="right")
        table.add_column("count", justify="right")
        for degree, count in enumerate(result.by_degree):
            table.add_row(str(degree), str(count))
        console.print(table)
    elif isinstance(result, BijectionResult):
        pairs = ",".join(f"({j},{k})" for j, k in result.pairs)
        console.print(escape(f"letters: {result.letters}  pairs: {pairs or '-'}"))
        console.print(escape(f"word: {result.word}"))
        console.print(escape(f"factorization: {result.factorization or '1'}"))
    elif isinstance(result, GrassmannCheckReport):
        console.print(escape(f"{result.polynomial} at {', '.join(f'{k}->{v}' for k, v in result.assignment.items())}"))
        console.print(escape(f"value: {result.witness}"))
        console.print(escape(f"normal form modulo tideal_basis({result.basis_n}, {result.basis_bound}): {result.normal_form}"))
        bad = [gid for gid, ok in result.vanishing.items() if not ok]
        console.print(escape(f"basis vanishing on {result.samples} samples: {'all' if not bad else 'not ' + ', '.join(bad)}"))
        console.print(f"verdict: {result.verdict.value}")
    elif isinstance(result, CompletionResult):
        table = Table(title=f"completion n={result.n} bound={result.bound} ({result.rounds} rounds)")
        table.add_column("lead")
        table.add_column("polynomial")
        for lead, poly in zip(result.leading_words, result.generators):
            table.add_row(escape(lead), escape(poly))
        console.print(table)
    else:
        console.print_json(result.model_dump_json(exclude_none=True))


def exit_code(result: BaseModel) -> int:
    if isinstance(result, (VerificationReport, GrassmannCheckReport)):
        return EXIT_PASS if result.verdict is Verdict.PASS else EXIT_FAIL
    return EXIT_PASS


# ============================================================================
# Dispatch
# ============================================================================

def run(args: argparse.Namespace, runner: VerificationRunner) -> BaseModel:
    command = Command(args.command)
    logger.debug("running %s", command.value)
    if command in (Command.VERIFY_GAMMA3, Command.VERIFY_TIDEAL):
        settings = runner.settings
        default_bound = settings.gamma3_bound if command is Command.VERIFY_GAMMA3 else settings.tideal_bound
        config = RunConfig(
            command=command,
            n=args.n if args.n is not None else settings.default_vars,
            bound=args.bound if args.bound is not None else default_bound,
            semigroup=parse_semigroup_spec(args.semigroup) if args.semigroup else None,
            out=args.out,
            jobs=args.jobs,
            drop=args.drop,
        )
        verify = runner.verify_gamma3 if command is Command.VERIFY_GAMMA3 else runner.verify_tideal
        return verify(config.n, config.bound, config.drop, config.semigroup)
    if command is Command.REDUCE:
        return runner.reduce(args.polynomial, args.basis, args.n, args.bound)
    if command is Command.NORMAL_WORDS:
        return runner.normal_words(args.basis, args.n, args.bound)
    if command is Command.BIJECTION:
        return runner.bijection(args.direction, args.sequence)
    if command is Command.GRASSMANN_CHECK:
        return runner.grassmann_check(args.samples)
    texts = [t for t in (args.polynomials or "").split(";") if t.strip()]
    return runner.complete(args.n, args.bound or 4, texts or None)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point for the ``ncideals`` console script."""
    args = parse_args(argv)
    console = Console()
    try:
        settings = get_settings()
        setup_logging(args.log_level or settings.log_level)
        runner = VerificationRunner(settings, jobs=args.jobs)
        result = run(args, runner)
    except (NCIdealsError, ValidationError, ValueError) as e:
        Console(stderr=True).print(f"[red]error:[/red] {escape(str(e))}")
        return EXIT_ERROR

    if args.json:
        print(result.model_dump_json(indent=2, exclude_none=True))
    else:
        render(console, result)
    if args.out is not None:
        runner.save_report(result, args.out)
    return exit_code(result)


if __name__ == "__main__":
    sys.exit(main())
