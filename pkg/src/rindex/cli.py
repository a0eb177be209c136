"""
Command-line interface for rindex.

Usage:
    rindex compute papers.csv reviews.csv --as-of 2024-06-01
    rindex validate papers.csv reviews.csv
    rindex simulate --seed 42 --researchers 20 --out sim/
    rindex check-conservation sim/papers.csv sim/reviews.csv

Exit codes: 0 success, 1 data or I/O failure, 2 bad flags. Reports go to
stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import asdict
from datetime import date
from fractions import Fraction

import click

from .engine import EngineError, closedness_violations, compute_all
from .ingest import IngestReport, load_dataset, write_dataset
from .model import EditorialMode, EvaluationConfig
from .render import FORMATS, exact, render
from .simulate import InfeasibleConfigError, SimConfig, generate_community

__all__ = ["cli"]

_DATE = click.DateTime(formats=["%Y-%m-%d"])
_MODES = {"round": EditorialMode.PER_ROUND, "paper": EditorialMode.PER_PAPER}


def _fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _input_format(papers_file: str, given: str | None) -> str:
    if given:
        return given
    return "json" if papers_file.lower().endswith(".json") else "csv"


def _load(papers_file: str, reviews_file: str, fmt: str | None) -> IngestReport:
    try:
        return load_dataset(papers_file, reviews_file, _input_format(papers_file, fmt))
    except OSError as exc:
        _fail(f"cannot read {exc.filename or papers_file}: {exc.strerror or exc}")
    except UnicodeDecodeError as exc:
        _fail(f"input is not valid UTF-8: {exc}")


def _load_or_exit(papers_file, reviews_file, fmt):
    report = _load(papers_file, reviews_file, fmt)
    for w in report.warnings:
        click.echo(f"warning: {w}", err=True)
    if report.errors:
        for e in report.errors:
            click.echo(f"error: {e}", err=True)
        sys.exit(1)
    return report.dataset


_input_format_option = click.option(
    "--input-format",
    type=click.Choice(["csv", "json"]),
    default=None,
    help="Ledger format; inferred from the papers file extension when omitted.",
)


@click.group()
def cli():
    """Peer-review balance (R-Index) from publication and review ledgers."""


@cli.command()
@click.argument("papers_file", type=click.Path(dir_okay=False))
@click.argument("reviews_file", type=click.Path(dir_okay=False))
@click.option("--as-of", "as_of", type=_DATE, required=True, help="Evaluation date (YYYY-MM-DD).")
@click.option("--window-start", type=_DATE, default=None, help="Ignore papers and reviews dated before this.")
@click.option("--lag-months", type=click.IntRange(min=0), default=24, show_default=True)
@click.option("--editorial-mode", type=click.Choice(sorted(_MODES)), default="round", show_default=True)
@click.option("--no-exclusions", is_flag=True, help="Count reviews that editors flagged as excluded.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True)
@click.option("--researcher", "researchers", multiple=True, help="Only report these researcher ids.")
@_input_format_option
def compute(papers_file, reviews_file, as_of, window_start, lag_months, editorial_mode,
            no_exclusions, fmt, researchers, input_format):
    """Compute the R-Index of every researcher in the ledgers."""
    try:
        config = EvaluationConfig(
            as_of=as_of.date(),
            window_start=window_start.date() if window_start else None,
            lag_months=lag_months,
            editorial_mode=_MODES[editorial_mode],
            honor_exclusions=not no_exclusions,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))

    dataset = _load_or_exit(papers_file, reviews_file, input_format)
    try:
        reports = compute_all(dataset, config)
    except EngineError as exc:
        _fail(str(exc))
    if researchers:
        wanted = set(researchers)
        reports = [r for r in reports if r.researcher in wanted]
    click.echo(render(reports, fmt), nl=False)


@cli.command()
@click.argument("papers_file", type=click.Path(dir_okay=False))
@click.argument("reviews_file", type=click.Path(dir_okay=False))
@_input_format_option
def validate(papers_file, reviews_file, input_format):
    """Check ledgers for errors and review-count mismatches."""
    report = _load(papers_file, reviews_file, input_format)
    for e in report.errors:
        click.echo(f"error: {e}", err=True)
    for w in report.warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)")
    sys.exit(1 if report.errors else 0)


@cli.command()
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), required=True)
@click.option("--researchers", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--papers-per-researcher", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--min-authors", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--max-authors", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--mean", type=float, default=SimConfig.review_count_mean, show_default=True)
@click.option("--sd", type=click.FloatRange(min=0), default=SimConfig.review_count_sd, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True)
def simulate(seed, researchers, papers_per_researcher, min_authors, max_authors, mean, sd, out):
    """Write a synthetic closed community as papers.csv and reviews.csv."""
    try:
        config = SimConfig(
            seed=seed,
            n_researchers=researchers,
            papers_per_researcher=papers_per_researcher,
            min_authors=min_authors,
            max_authors=max_authors,
            review_count_mean=mean,
            review_count_sd=sd,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        dataset = generate_community(config)
    except InfeasibleConfigError as exc:
        _fail(str(exc))

    manifest = {k: (v.isoformat() if isinstance(v, date) else v) for k, v in asdict(config).items()}
    manifest.update(papers=len(dataset.papers), reviews=len(dataset.events))
    try:
        papers_path, reviews_path = write_dataset(dataset, out, "csv")
        with open(os.path.join(out, "manifest.json"), "w", encoding="utf-8", newline="\n") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        _fail(f"cannot write to {exc.filename or out}: {exc.strerror or exc}")
    click.echo(f"wrote {len(dataset.papers)} papers to {papers_path}")
    click.echo(f"wrote {len(dataset.events)} review events to {reviews_path}")


@cli.command("check-conservation")
@click.argument("papers_file", type=click.Path(dir_okay=False))
@click.argument("reviews_file", type=click.Path(dir_okay=False))
@click.option("--no-exclusions", is_flag=True, help="Count reviews that editors flagged as excluded.")
@_input_format_option
def check_conservation(papers_file, reviews_file, no_exclusions, input_format):
    """Verify that R-Indices of a closed community sum to zero (no lag, no window)."""
    dataset = _load_or_exit(papers_file, reviews_file, input_format)
    config = EvaluationConfig(as_of=date.max, lag_months=0, honor_exclusions=not no_exclusions)
    try:
        total = sum((r.r_index for r in compute_all(dataset, config)), Fraction(0))
    except EngineError as exc:
        _fail(str(exc))
    click.echo(exact(total))
    reasons = closedness_violations(dataset)
    for reason in reasons:
        click.echo(f"not closed: {reason}", err=True)
    if total != 0:
        click.echo(f"error: R-Index sum is {exact(total)}, expected 0", err=True)
    sys.exit(0 if total == 0 and not reasons else 1)


if __name__ == "__main__":
    cli()
