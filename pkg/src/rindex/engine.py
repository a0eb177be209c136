"""R-Index computation.

The index for a researcher is::

    r_index = completed_total - sum(reviews_received(p) / n_authors(p))

over the researcher's eligible papers ``p``. Positive means the researcher has
reviewed more than their publications consumed. All values are exact
`fractions.Fraction`; decimal rendering happens only in `rindex.render`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import date
from fractions import Fraction
from typing import Optional

from dateutil.relativedelta import relativedelta

from .model import Dataset, EditorialMode, EvaluationConfig, EventKind, PaperRecord, ReviewEvent

__all__ = [
    "EngineError",
    "RIndexReport",
    "Discrepancy",
    "add_months",
    "review_responsibility",
    "paper_is_eligible",
    "responsibility_total",
    "completed_total",
    "r_index",
    "compute_all",
    "conservation_residual",
    "cross_check_review_counts",
    "closedness_violations",
]


class EngineError(ValueError):
    """Raised when a dataset cannot be evaluated under the given config."""

    def __init__(self, message: str, researcher: Optional[str] = None):
        self.researcher = researcher
        if researcher is not None:
            message = f"researcher {researcher}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class RIndexReport:
    researcher: str
    responsibility_total: Fraction
    completed_total: int
    r_index: Fraction
    per_paper_shares: tuple[tuple[str, Fraction], ...] = ()
    counted_events: tuple[str, ...] = ()
    excluded_events: tuple[str, ...] = ()
    lagged_out_papers: tuple[str, ...] = ()


@dataclass(frozen=True)
class Discrepancy:
    paper_id: str
    declared: int
    observed: int


def add_months(d: date, months: int) -> date:
    """Shift ``d`` by whole calendar months, clamping the day to month end.

    >>> add_months(date(2022, 2, 28), 24)
    datetime.date(2024, 2, 28)
    >>> add_months(date(2020, 2, 29), 12)
    datetime.date(2021, 2, 28)
    """
    return d + relativedelta(months=months)


def review_responsibility(paper: PaperRecord) -> Fraction:
    """Per-author share of the reviews a paper received (equal split)."""
    return Fraction(paper.reviews_received, len(paper.authors))


def _lag_elapsed(paper: PaperRecord, config: EvaluationConfig) -> bool:
    return add_months(paper.publication_date, config.lag_months) <= config.as_of


def _in_window(d: date, config: EvaluationConfig) -> bool:
    if config.window_start is not None and d < config.window_start:
        return False
    return d <= config.as_of


def paper_is_eligible(paper: PaperRecord, researcher: str, config: EvaluationConfig) -> bool:
    if researcher not in paper.authors:
        return False
    if config.window_start is not None and paper.publication_date < config.window_start:
        return False
    return _lag_elapsed(paper, config)


def _shares(researcher: str, dataset: Dataset, config: EvaluationConfig):
    shares: list[tuple[str, Fraction]] = []
    lagged: list[str] = []
    for p in dataset.papers_by_author.get(researcher, ()):
        if paper_is_eligible(p, researcher, config):
            shares.append((p.paper_id, review_responsibility(p)))
        elif _in_window(p.publication_date, config):
            # published inside the window but its lag has not yet run out
            lagged.append(p.paper_id)
    return shares, lagged


def responsibility_total(researcher: str, dataset: Dataset, config: EvaluationConfig) -> Fraction:
    shares, _ = _shares(researcher, dataset, config)
    return sum((s for _, s in shares), Fraction(0))


def _count(events: tuple[ReviewEvent, ...], config: EvaluationConfig):
    """Return ``(completed, counted_ids, excluded_ids)`` for one reviewer's events.

    Under per-paper editorial mode every event of a collapsed editorial-round
    group is listed in ``counted_ids`` although the group adds one unit.
    """
    completed = 0
    counted: list[str] = []
    excluded: list[str] = []
    round_groups: set[str] = set()
    for e in events:
        if not _in_window(e.event_date, config):
            continue
        if e.kind is EventKind.MANUSCRIPT_REVIEW:
            if e.excluded and config.honor_exclusions:
                excluded.append(e.event_id)
                continue
            completed += 1
        elif e.kind is EventKind.EDITORIAL_ROUND and config.editorial_mode is EditorialMode.PER_PAPER:
            if e.paper_id is None:
                raise EngineError(
                    f"editorial round requires paper linkage for per-paper collapsing (event {e.event_id})"
                )
            if e.paper_id not in round_groups:
                round_groups.add(e.paper_id)
                completed += 1
        else:
            completed += 1
        counted.append(e.event_id)
    return completed, counted, excluded


def completed_total(researcher: str, dataset: Dataset, config: EvaluationConfig) -> int:
    completed, _, _ = _count(dataset.events_by_reviewer.get(researcher, ()), config)
    return completed


def r_index(researcher: str, dataset: Dataset, config: EvaluationConfig) -> RIndexReport:
    shares, lagged = _shares(researcher, dataset, config)
    completed, counted, excluded = _count(dataset.events_by_reviewer.get(researcher, ()), config)
    responsibility = sum((s for _, s in shares), Fraction(0))
    return RIndexReport(
        researcher=researcher,
        responsibility_total=responsibility,
        completed_total=completed,
        r_index=completed - responsibility,
        per_paper_shares=tuple(shares),
        counted_events=tuple(counted),
        excluded_events=tuple(excluded),
        lagged_out_papers=tuple(lagged),
    )


def compute_all(dataset: Dataset, config: EvaluationConfig) -> list[RIndexReport]:
    """One report per researcher, ordered by researcher id."""
    reports = []
    for researcher in sorted(dataset.researchers):
        try:
            reports.append(r_index(researcher, dataset, config))
        except EngineError as exc:
            if exc.researcher is not None:
                raise
            raise EngineError(str(exc), researcher) from exc
    return reports


def conservation_residual(dataset: Dataset, config: EvaluationConfig) -> Fraction:
    """Sum of all R-Indices minus (counted units - reviews received by eligible papers).

    The second term is tallied straight from the records rather than from the
    per-researcher reports, so a nonzero result signals an engine defect.
    """
    total = sum((rep.r_index for rep in compute_all(dataset, config)), Fraction(0))

    counted = 0
    collapsed: set[tuple[str, str]] = set()
    for e in dataset.events:
        if not _in_window(e.event_date, config):
            continue
        if e.kind is EventKind.MANUSCRIPT_REVIEW and e.excluded and config.honor_exclusions:
            continue
        if e.kind is EventKind.EDITORIAL_ROUND and config.editorial_mode is EditorialMode.PER_PAPER:
            key = (e.reviewer, e.paper_id)
            if key in collapsed:
                continue
            collapsed.add(key)
        counted += 1

    received = 0
    for p in dataset.papers:
        in_window = config.window_start is None or p.publication_date >= config.window_start
        if in_window and _lag_elapsed(p, config):
            received += p.reviews_received
    return total - (counted - received)


def cross_check_review_counts(dataset: Dataset) -> list[Discrepancy]:
    """Compare declared review totals to linked manuscript-review events.

    Papers with no linked events are skipped; their declared total stands.
    """
    observed = Counter(
        e.paper_id
        for e in dataset.events
        if e.kind is EventKind.MANUSCRIPT_REVIEW and e.paper_id is not None
    )
    return [
        Discrepancy(p.paper_id, p.reviews_received, observed[p.paper_id])
        for p in dataset.papers
        if observed[p.paper_id] and observed[p.paper_id] != p.reviews_received
    ]


def closedness_violations(dataset: Dataset) -> list[str]:
    """Reasons the dataset is not a closed community; empty when it is.

    Closed means: no editorial events, every manuscript review links to an
    in-dataset paper, and every paper's declared review total equals its
    linked review events (including papers with none).
    """
    reasons = []
    observed: Counter = Counter()
    for e in dataset.events:
        if e.kind is not EventKind.MANUSCRIPT_REVIEW:
            reasons.append(f"event {e.event_id} is an editorial event")
        elif e.paper_id is None:
            reasons.append(f"event {e.event_id} is not linked to a paper")
        else:
            observed[e.paper_id] += 1
    for p in dataset.papers:
        if observed[p.paper_id] != p.reviews_received:
            reasons.append(
                f"paper {p.paper_id} declares {p.reviews_received} reviews, {observed[p.paper_id]} linked"
            )
    return reasons
