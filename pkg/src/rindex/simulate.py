"""Seeded generator of closed research communities.

In a closed community every review a paper receives is written by another
member and recorded as a linked ``manuscript_review`` event, so with no lag,
window or exclusions the members' R-Indices sum to exactly zero.

Generation procedure (one SplitMix64 stream, consumed in this order):

1. Researchers are ``r0001`` .. ``rNNNN``.
2. ``n_researchers * papers_per_researcher`` papers are created. Paper ``i``
   is led by researcher ``i mod n_researchers``; its author count is
   ``min + below(max - min + 1)`` and the co-authors are a partial
   Fisher-Yates draw from the remaining members.
3. The publication date is ``start_date + below(span_days + 1)``.
4. The review count is one Box-Muller normal draw, rounded half-up and
   clamped at zero.
5. Each review picks a reviewer uniformly (with replacement) among the
   paper's non-authors and a date uniformly in the six calendar months after
   publication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date, timedelta

from .engine import add_months
from .model import Dataset, EventKind, PaperRecord, ReviewEvent, validate_dataset
from .prng import MASK64, next_below, next_normal

__all__ = [
    "REVIEWS_PER_PAPER_MEAN",
    "REVIEWS_PER_PAPER_SD",
    "SimConfig",
    "InfeasibleConfigError",
    "draw_normal",
    "draw_review_count",
    "generate_community",
    "expected_burden",
]

# reviews per published paper, mean and standard deviation
REVIEWS_PER_PAPER_MEAN = 3.49
REVIEWS_PER_PAPER_SD = 1.45

REVIEW_WINDOW_MONTHS = 6


class InfeasibleConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    n_researchers: int = 20
    papers_per_researcher: int = 3
    min_authors: int = 1
    max_authors: int = 3
    review_count_mean: float = REVIEWS_PER_PAPER_MEAN
    review_count_sd: float = REVIEWS_PER_PAPER_SD
    start_date: date = date(2015, 1, 1)
    end_date: date = date(2022, 12, 31)

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.n_researchers < 1:
            raise ValueError("n_researchers must be positive")
        if self.papers_per_researcher < 0:
            raise ValueError("papers_per_researcher must be non-negative")
        if not 1 <= self.min_authors <= self.max_authors:
            raise ValueError(
                f"need 1 <= min_authors <= max_authors, got {self.min_authors}..{self.max_authors}"
            )
        if self.review_count_sd < 0:
            raise ValueError("review_count_sd must be non-negative")
        if self.start_date > self.end_date:
            raise ValueError("start_date is after end_date")

    def check_feasible(self):
        # every paper needs at least one non-author to review it
        if self.n_researchers < self.max_authors + 1:
            raise InfeasibleConfigError(
                f"infeasible: {self.n_researchers} researchers cannot supply a non-author "
                f"reviewer for papers with up to {self.max_authors} authors"
            )


def draw_normal(state: int, mean: float = REVIEWS_PER_PAPER_MEAN, sd: float = REVIEWS_PER_PAPER_SD):
    """Pre-rounding review-count draw; returns ``(value, new_state)``."""
    return next_normal(state, mean, sd)


def draw_review_count(
    state: int, mean: float = REVIEWS_PER_PAPER_MEAN, sd: float = REVIEWS_PER_PAPER_SD
) -> tuple[int, int]:
    """Normal draw rounded half-up to an integer and clamped below at zero."""
    x, state = next_normal(state, mean, sd)
    return max(0, math.floor(x + 0.5)), state


def _ids(prefix: str, n: int, width: int) -> list[str]:
    width = max(width, len(str(n)))
    return [f"{prefix}{i:0{width}d}" for i in range(1, n + 1)]


def generate_community(config: SimConfig) -> Dataset:
    config.check_feasible()
    s = config.seed
    members = _ids("r", config.n_researchers, 4)
    n_papers = config.n_researchers * config.papers_per_researcher
    paper_ids = _ids("p", n_papers, 6)
    span = (config.end_date - config.start_date).days

    papers: list[PaperRecord] = []
    reviews: list[tuple[str, date, str]] = []
    for i, pid in enumerate(paper_ids):
        lead = i % config.n_researchers
        k, s = next_below(s, config.max_authors - config.min_authors + 1)
        n_authors = config.min_authors + k
        pool = [j for j in range(config.n_researchers) if j != lead]
        for slot in range(n_authors - 1):
            pick, s = next_below(s, len(pool) - slot)
            pool[slot], pool[slot + pick] = pool[slot + pick], pool[slot]
        author_idx = [lead] + pool[: n_authors - 1]
        authors = tuple(members[j] for j in author_idx)

        offset, s = next_below(s, span + 1)
        published = config.start_date + timedelta(days=offset)
        n_reviews, s = draw_review_count(s, config.review_count_mean, config.review_count_sd)
        papers.append(PaperRecord(pid, published, authors, n_reviews))

        taken = set(author_idx)
        reviewers = [j for j in range(config.n_researchers) if j not in taken]
        review_span = (add_months(published, REVIEW_WINDOW_MONTHS) - published).days
        for _ in range(n_reviews):
            r, s = next_below(s, len(reviewers))
            d, s = next_below(s, review_span + 1)
            reviews.append((members[reviewers[r]], published + timedelta(days=d), pid))

    events = [
        ReviewEvent(eid, who, when, EventKind.MANUSCRIPT_REVIEW, paper_id=pid)
        for eid, (who, when, pid) in zip(_ids("e", len(reviews), 7), reviews)
    ]
    return validate_dataset(papers, events)


def expected_burden(n_papers: int) -> tuple[float, float, float]:
    """Expected reviews consumed by ``n_papers`` papers: ``(mean, mean - sd, mean + sd)``.

    Values are scaled from the per-paper constants and rounded to 10 decimals
    to strip binary-float noise (e.g. 5 * 3.49 = 17.450000000000003).
    """
    if n_papers < 1:
        raise ValueError(f"n_papers must be at least 1, got {n_papers}")
    mean, sd = REVIEWS_PER_PAPER_MEAN, REVIEWS_PER_PAPER_SD
    return (
        round(n_papers * mean, 10),
        round(n_papers * (mean - sd), 10),
        round(n_papers * (mean + sd), 10),
    )
