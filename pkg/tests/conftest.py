import random
from datetime import date, timedelta

import pytest

from rindex.model import EventKind, PaperRecord, ReviewEvent, validate_dataset

KINDS = [EventKind.MANUSCRIPT_REVIEW] * 6 + [EventKind.EDITORIAL_ROUND] * 3 + [EventKind.EDITORIAL_PAPER]


def random_records(rng: random.Random, max_researchers=10, max_papers=20, max_events=40):
    """Small valid ledgers with every event kind, exclusions and odd dates."""
    people = [f"a{i:02d}" for i in range(rng.randint(1, max_researchers))]
    base = date(2015, 1, 1)
    papers = []
    for i in range(rng.randint(0, max_papers)):
        k = rng.randint(1, len(people))
        papers.append(
            PaperRecord(
                f"p{i:02d}",
                base + timedelta(days=rng.randint(0, 3650)),
                tuple(rng.sample(people, k)),
                rng.randint(0, 8),
            )
        )
    events = []
    for i in range(rng.randint(0, max_events)):
        kind = rng.choice(KINDS)
        linked = rng.choice(papers).paper_id if papers and (kind is not EventKind.MANUSCRIPT_REVIEW or rng.random() < 0.6) else None
        if kind is EventKind.EDITORIAL_ROUND and linked is None:
            kind = EventKind.MANUSCRIPT_REVIEW
        events.append(
            ReviewEvent(
                f"e{i:03d}",
                rng.choice(people),
                base + timedelta(days=rng.randint(0, 3650)),
                kind,
                excluded=kind is EventKind.MANUSCRIPT_REVIEW and rng.random() < 0.2,
                paper_id=linked,
            )
        )
    return papers, events


def random_config_kwargs(rng: random.Random) -> dict:
    as_of = date(2015, 1, 1) + timedelta(days=rng.randint(0, 4000))
    window = None
    if rng.random() < 0.5:
        window = as_of - timedelta(days=rng.randint(0, 3000))
    return dict(
        as_of=as_of,
        window_start=window,
        lag=rng.choice([0, 0, 6, 12, 24, 36]),
        per_paper=rng.random() < 0.5,
        honor_exclusions=rng.random() < 0.7,
    )


def as_tuples(dataset):
    papers = [(p.paper_id, p.publication_date, p.authors, p.reviews_received) for p in dataset.papers]
    events = [
        (e.event_id, e.reviewer, e.event_date, e.kind.value, e.excluded, e.paper_id)
        for e in dataset.events
    ]
    return papers, events


@pytest.fixture
def four_author_paper():
    return PaperRecord("p1", date(2021, 6, 1), ("a1", "a2", "a3", "a4"), 6)


@pytest.fixture
def section3_dataset(four_author_paper):
    """4-author paper with 6 reviews; each author completed 2 unlinked reviews."""
    events = [
        ReviewEvent(f"e{a}{j}", a, date(2022, 3, 1 + j), EventKind.MANUSCRIPT_REVIEW)
        for a in four_author_paper.authors
        for j in range(2)
    ]
    return validate_dataset([four_author_paper], events)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _criteria[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_criteria.items()):
        terminalreporter.write_line(f"{outcome}  {name}")
