"""Domain records for review-balance accounting and the dataset validator."""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from datetime import date
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

__all__ = [
    "EventKind",
    "EditorialMode",
    "PaperRecord",
    "ReviewEvent",
    "EvaluationConfig",
    "Issue",
    "Dataset",
    "DatasetValidationError",
    "check_records",
    "validate_dataset",
    "DEFAULT_LAG_MONTHS",
]

DEFAULT_LAG_MONTHS = 24


class EventKind(str, enum.Enum):
    MANUSCRIPT_REVIEW = "manuscript_review"
    EDITORIAL_ROUND = "editorial_round"
    EDITORIAL_PAPER = "editorial_paper"


class EditorialMode(str, enum.Enum):
    PER_ROUND = "per_round"
    PER_PAPER = "per_paper"


@dataclass(frozen=True)
class PaperRecord:
    """One publication.

    Construction does not enforce invariants; `validate_dataset` does, so that
    every violation in a batch can be reported at once.
    """

    paper_id: str
    publication_date: date
    authors: tuple[str, ...]
    reviews_received: int

    def __post_init__(self):
        if not isinstance(self.authors, tuple):
            object.__setattr__(self, "authors", tuple(self.authors))


@dataclass(frozen=True)
class ReviewEvent:
    event_id: str
    reviewer: str
    event_date: date
    kind: EventKind
    excluded: bool = False
    paper_id: Optional[str] = None
    exclusion_reason: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.kind, EventKind):
            object.__setattr__(self, "kind", EventKind(self.kind))


@dataclass(frozen=True)
class EvaluationConfig:
    """Policy knobs for one evaluation.

    Papers accrue responsibility only once ``lag_months`` calendar months have
    elapsed since publication. Completed reviews are never lagged.
    """

    as_of: date
    window_start: Optional[date] = None
    lag_months: int = DEFAULT_LAG_MONTHS
    editorial_mode: EditorialMode = EditorialMode.PER_ROUND
    honor_exclusions: bool = True

    def __post_init__(self):
        if not isinstance(self.editorial_mode, EditorialMode):
            object.__setattr__(self, "editorial_mode", EditorialMode(self.editorial_mode))
        if self.lag_months < 0:
            raise ValueError(f"lag_months must be non-negative, got {self.lag_months}")
        if self.window_start is not None and self.window_start > self.as_of:
            raise ValueError(
                f"window_start {self.window_start} is after as_of {self.as_of}"
            )


@dataclass(frozen=True)
class Issue:
    """A validation error or warning tied to one input record.

    ``record`` is ``"paper"`` or ``"event"``; ``index`` is the position of the
    offending record in the list that was validated.
    """

    record: str
    index: int
    record_id: str
    message: str

    def __str__(self):
        return f"{self.record} {self.record_id!r}: {self.message}"


class DatasetValidationError(ValueError):
    def __init__(self, errors: Sequence[Issue]):
        self.errors = list(errors)
        lines = "\n".join(f"  {e}" for e in self.errors)
        super().__init__(f"{len(self.errors)} validation error(s):\n{lines}")


@dataclass(frozen=True)
class Dataset:
    """Validated, immutable collection of papers and review events.

    Records are stored sorted by id, so two datasets built from the same
    records in any order compare equal.
    """

    papers: tuple[PaperRecord, ...] = ()
    events: tuple[ReviewEvent, ...] = ()
    warnings: tuple[Issue, ...] = field(default=(), compare=False, repr=False)

    @cached_property
    def paper_index(self) -> Mapping[str, PaperRecord]:
        return {p.paper_id: p for p in self.papers}

    @cached_property
    def researchers(self) -> frozenset[str]:
        ids = {a for p in self.papers for a in p.authors}
        ids.update(e.reviewer for e in self.events)
        return frozenset(ids)

    @cached_property
    def papers_by_author(self) -> Mapping[str, tuple[PaperRecord, ...]]:
        out: dict[str, list[PaperRecord]] = defaultdict(list)
        for p in self.papers:
            for a in p.authors:
                out[a].append(p)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def events_by_reviewer(self) -> Mapping[str, tuple[ReviewEvent, ...]]:
        out: dict[str, list[ReviewEvent]] = defaultdict(list)
        for e in self.events:
            out[e.reviewer].append(e)
        return {k: tuple(v) for k, v in out.items()}


def _blank(s) -> bool:
    return not isinstance(s, str) or not s.strip()


def check_records(
    papers: Sequence[PaperRecord], events: Sequence[ReviewEvent]
) -> tuple[list[Issue], list[Issue]]:
    """Return ``(errors, warnings)`` for a batch of records.

    Every independent violation yields exactly one error.
    """
    errors: list[Issue] = []
    warnings: list[Issue] = []

    seen_papers: set[str] = set()
    for i, p in enumerate(papers):
        err = lambda msg: errors.append(Issue("paper", i, p.paper_id, msg))  # noqa: E731
        if _blank(p.paper_id):
            err("empty paper_id")
        elif p.paper_id in seen_papers:
            err("duplicate paper_id")
        seen_papers.add(p.paper_id)
        if not p.authors:
            err("empty author list")
        else:
            if any(_blank(a) for a in p.authors):
                err("empty researcher id in author list")
            dupes = sorted(a for a, n in Counter(p.authors).items() if n > 1)
            if dupes:
                err(f"duplicate author {', '.join(dupes)}")
        if p.reviews_received < 0:
            err(f"negative reviews_received ({p.reviews_received})")

    paper_authors = {p.paper_id: set(p.authors) for p in papers}
    seen_events: set[str] = set()
    # (reviewer, paper_id) -> kinds seen, for the double-role warning
    roles: dict[tuple[str, str], set[EventKind]] = defaultdict(set)
    for i, e in enumerate(events):
        err = lambda msg: errors.append(Issue("event", i, e.event_id, msg))  # noqa: E731
        if _blank(e.event_id):
            err("empty event_id")
        elif e.event_id in seen_events:
            err("duplicate event_id")
        seen_events.add(e.event_id)
        if _blank(e.reviewer):
            err("empty reviewer id")
        if e.excluded and e.kind is not EventKind.MANUSCRIPT_REVIEW:
            err("exclusion flag invalid for editorial events")
        if e.paper_id is not None:
            if e.paper_id not in paper_authors:
                err(f"dangling paper reference {e.paper_id!r}")
                continue
            if e.reviewer in paper_authors[e.paper_id]:
                warnings.append(
                    Issue("event", i, e.event_id, f"reviewer {e.reviewer} is an author of {e.paper_id}")
                )
            kinds = roles[(e.reviewer, e.paper_id)]
            editorial = {EventKind.EDITORIAL_ROUND, EventKind.EDITORIAL_PAPER}
            if (e.kind is EventKind.MANUSCRIPT_REVIEW and kinds & editorial) or (
                e.kind in editorial and EventKind.MANUSCRIPT_REVIEW in kinds
            ):
                warnings.append(
                    Issue(
                        "event", i, e.event_id,
                        f"{e.reviewer} has both editorial and manuscript-review events on {e.paper_id}",
                    )
                )
            kinds.add(e.kind)
    return errors, warnings


def validate_dataset(
    papers: Iterable[PaperRecord], events: Iterable[ReviewEvent] = ()
) -> Dataset:
    """Build a `Dataset`, raising `DatasetValidationError` listing every violation."""
    papers = list(papers)
    events = list(events)
    errors, warnings = check_records(papers, events)
    if errors:
        raise DatasetValidationError(errors)
    return Dataset(
        papers=tuple(sorted(papers, key=lambda p: p.paper_id)),
        events=tuple(sorted(events, key=lambda e: e.event_id)),
        warnings=tuple(warnings),
    )
