"""Read and write the publication and review ledgers.

Two formats are supported, with identical field names:

papers
    ``paper_id,publication_date,authors,reviews_received``; authors are
    ``;``-separated in CSV and a list in JSON.
reviews
    ``event_id,reviewer_id,event_date,kind,excluded,paper_id``; ``excluded`` is
    ``true``/``false`` and ``paper_id`` may be empty (an unlinked review).

Headers are fixed. Unknown or missing columns are errors.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
from dataclasses import dataclass, field
from datetime import date
from typing import BinaryIO, Optional, Union

from .engine import cross_check_review_counts
from .model import Dataset, EventKind, Issue, PaperRecord, ReviewEvent, check_records, validate_dataset

__all__ = [
    "PAPER_COLUMNS",
    "REVIEW_COLUMNS",
    "IngestIssue",
    "IngestReport",
    "ParseResult",
    "parse_papers",
    "parse_reviews",
    "load_dataset",
    "papers_to_csv",
    "reviews_to_csv",
    "papers_to_json",
    "reviews_to_json",
    "write_dataset",
]

PAPER_COLUMNS = ("paper_id", "publication_date", "authors", "reviews_received")
REVIEW_COLUMNS = ("event_id", "reviewer_id", "event_date", "kind", "excluded", "paper_id")

Source = Union[str, os.PathLike, bytes, BinaryIO]

_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}")
_INT_RE = re.compile(r"[+-]?\d+")


@dataclass(frozen=True)
class IngestIssue:
    file: str
    location: str  # "line N" for CSV, "[i]" for JSON
    message: str

    def __str__(self):
        return f"{self.file}:{self.location}: {self.message}"


@dataclass
class ParseResult:
    """Records parsed from one file, each paired with where it came from."""

    records: list = field(default_factory=list)
    locations: list[str] = field(default_factory=list)
    errors: list[IngestIssue] = field(default_factory=list)


@dataclass
class IngestReport:
    dataset: Optional[Dataset]
    errors: list[IngestIssue] = field(default_factory=list)
    warnings: list[IngestIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


class _RowError(ValueError):
    def __init__(self, problems):
        self.problems = [problems] if isinstance(problems, str) else list(problems)
        super().__init__("; ".join(self.problems))


def _read(source: Source) -> tuple[str, str]:
    """Return ``(name, text)``; raises OSError for unreadable paths."""
    if isinstance(source, (str, os.PathLike)):
        name = os.fspath(source)
        with open(name, "rb") as fh:
            raw = fh.read()
    elif isinstance(source, (bytes, bytearray)):
        name, raw = "<bytes>", bytes(source)
    else:
        name, raw = getattr(source, "name", "<stream>"), source.read()
    if isinstance(raw, str):
        return str(name), raw.lstrip("\ufeff")
    return str(name), raw.decode("utf-8-sig")


def _parse_date(value, column: str) -> date:
    if not isinstance(value, str) or not _DATE_RE.fullmatch(value.strip()):
        raise _RowError(f"unparseable date in {column}: {value!r}")
    try:
        return date.fromisoformat(value.strip())
    except ValueError:
        raise _RowError(f"unparseable date in {column}: {value!r}") from None


def _paper_from_fields(row: dict) -> PaperRecord:
    problems = []
    paper_id = row["paper_id"]
    if not isinstance(paper_id, str) or not paper_id.strip():
        problems.append("empty paper_id")

    try:
        pub = _parse_date(row["publication_date"], "publication_date")
    except _RowError as exc:
        problems.append(str(exc))

    authors = row["authors"]
    if isinstance(authors, str):
        authors = [a.strip() for a in authors.split(";")] if authors.strip() else []
    if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
        problems.append("authors must be a list of researcher ids")
    elif not authors:
        problems.append("empty authors")
    elif any(not a.strip() for a in authors):
        problems.append("empty researcher id in authors")

    n = row["reviews_received"]
    if isinstance(n, str) and _INT_RE.fullmatch(n.strip()):
        n = int(n)
    if isinstance(n, bool) or not isinstance(n, int):
        problems.append(f"non-integer reviews_received: {row['reviews_received']!r}")
    elif n < 0:
        problems.append(f"negative reviews_received: {n}")

    if problems:
        raise _RowError(problems)
    return PaperRecord(paper_id.strip(), pub, tuple(authors), n)


def _review_from_fields(row: dict, csv_mode: bool) -> ReviewEvent:
    problems = []
    event_id, reviewer = row["event_id"], row["reviewer_id"]
    if not isinstance(event_id, str) or not event_id.strip():
        problems.append("empty event_id")
    if not isinstance(reviewer, str) or not reviewer.strip():
        problems.append("empty reviewer_id")

    try:
        when = _parse_date(row["event_date"], "event_date")
    except _RowError as exc:
        problems.append(str(exc))

    kind = None
    try:
        kind = EventKind(row["kind"].strip() if isinstance(row["kind"], str) else row["kind"])
    except ValueError:
        problems.append(f"unknown kind: {row['kind']!r}")

    excluded = row["excluded"]
    if csv_mode:
        excluded = {"true": True, "false": False}.get(excluded.strip() if isinstance(excluded, str) else excluded, excluded)
    if not isinstance(excluded, bool):
        problems.append(f"bad boolean in excluded: {row['excluded']!r}")
    elif excluded and kind is not None and kind is not EventKind.MANUSCRIPT_REVIEW:
        problems.append("exclusion flag invalid for editorial events")

    paper_id = row["paper_id"]
    if isinstance(paper_id, str):
        paper_id = paper_id.strip() or None
    elif paper_id is not None:
        problems.append(f"paper_id must be a string or empty: {paper_id!r}")

    if problems:
        raise _RowError(problems)
    return ReviewEvent(event_id.strip(), reviewer.strip(), when, kind, excluded, paper_id)


def _parse_csv(name: str, text: str, columns: tuple[str, ...], build) -> ParseResult:
    result = ParseResult()
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None:
        result.errors.append(IngestIssue(name, "line 1", "missing header row"))
        return result
    header = [h.strip() for h in header]
    if tuple(header) != columns:
        missing = [c for c in columns if c not in header]
        extra = [h for h in header if h not in columns]
        detail = []
        if missing:
            detail.append(f"missing column(s) {', '.join(missing)}")
        if extra:
            detail.append(f"unexpected column(s) {', '.join(extra)}")
        if not detail:
            detail.append(f"columns out of order, expected {','.join(columns)}")
        result.errors.append(IngestIssue(name, "line 1", "; ".join(detail)))
        return result

    for row in reader:
        loc = f"line {reader.line_num}"
        if not row or row == [""]:
            continue
        if len(row) != len(columns):
            result.errors.append(
                IngestIssue(name, loc, f"expected {len(columns)} fields, found {len(row)}")
            )
            continue
        try:
            result.records.append(build(dict(zip(columns, row))))
            result.locations.append(loc)
        except _RowError as exc:
            result.errors.extend(IngestIssue(name, loc, p) for p in exc.problems)
    return result


def _parse_json(name: str, text: str, columns: tuple[str, ...], build) -> ParseResult:
    result = ParseResult()
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        result.errors.append(IngestIssue(name, f"line {exc.lineno}", f"invalid JSON: {exc.msg}"))
        return result
    if not isinstance(items, list):
        result.errors.append(IngestIssue(name, "$", "top level must be an array"))
        return result
    for i, item in enumerate(items):
        loc = f"[{i}]"
        if not isinstance(item, dict):
            result.errors.append(IngestIssue(name, loc, "element must be an object"))
            continue
        missing = [c for c in columns if c not in item]
        extra = [k for k in item if k not in columns]
        if missing or extra:
            detail = []
            if missing:
                detail.append(f"missing field(s) {', '.join(missing)}")
            if extra:
                detail.append(f"unexpected field(s) {', '.join(extra)}")
            result.errors.append(IngestIssue(name, loc, "; ".join(detail)))
            continue
        try:
            result.records.append(build(item))
            result.locations.append(loc)
        except _RowError as exc:
            result.errors.extend(IngestIssue(name, loc, p) for p in exc.problems)
    return result


def _parse(source: Source, fmt: str, columns, build_csv, build_json) -> ParseResult:
    name, text = _read(source)
    if fmt == "csv":
        return _parse_csv(name, text, columns, build_csv)
    if fmt == "json":
        return _parse_json(name, text, columns, build_json)
    raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'json'")


def parse_papers(source: Source, fmt: str = "csv") -> ParseResult:
    return _parse(source, fmt, PAPER_COLUMNS, _paper_from_fields, _paper_from_fields)


def parse_reviews(source: Source, fmt: str = "csv") -> ParseResult:
    return _parse(
        source,
        fmt,
        REVIEW_COLUMNS,
        lambda row: _review_from_fields(row, csv_mode=True),
        lambda row: _review_from_fields(row, csv_mode=False),
    )


def _locate(issue: Issue, papers: ParseResult, reviews: ParseResult, names) -> IngestIssue:
    parsed = papers if issue.record == "paper" else reviews
    return IngestIssue(names[issue.record], parsed.locations[issue.index], issue.message)


def load_dataset(papers_source: Source, reviews_source: Source, fmt: str = "csv") -> IngestReport:
    """Parse both ledgers, validate, and cross-check review counts.

    Errors from every stage are collected; the dataset is returned only when
    there are none. Declared-vs-linked review count mismatches are warnings.
    """
    papers = parse_papers(papers_source, fmt)
    reviews = parse_reviews(reviews_source, fmt)
    names = {
        "paper": _source_name(papers_source),
        "event": _source_name(reviews_source),
    }
    errors = papers.errors + reviews.errors
    record_errors, record_warnings = check_records(papers.records, reviews.records)
    errors += [_locate(i, papers, reviews, names) for i in record_errors]
    warnings = [_locate(i, papers, reviews, names) for i in record_warnings]
    if errors:
        return IngestReport(None, errors, warnings)

    dataset = validate_dataset(papers.records, reviews.records)
    paper_loc = dict(zip((p.paper_id for p in papers.records), papers.locations))
    for d in cross_check_review_counts(dataset):
        warnings.append(
            IngestIssue(
                names["paper"],
                paper_loc[d.paper_id],
                f"paper {d.paper_id} declares {d.declared} reviews but {d.observed} linked review events exist",
            )
        )
    return IngestReport(dataset, [], warnings)


def _source_name(source: Source) -> str:
    if isinstance(source, (str, os.PathLike)):
        return os.fspath(source)
    if isinstance(source, (bytes, bytearray)):
        return "<bytes>"
    return str(getattr(source, "name", "<stream>"))


# serialization: LF endings, header first, records sorted by id


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def papers_to_csv(dataset: Dataset) -> str:
    rows = (
        (p.paper_id, p.publication_date.isoformat(), ";".join(p.authors), p.reviews_received)
        for p in sorted(dataset.papers, key=lambda p: p.paper_id)
    )
    return _csv_text(PAPER_COLUMNS, rows)


def reviews_to_csv(dataset: Dataset) -> str:
    rows = (
        (
            e.event_id,
            e.reviewer,
            e.event_date.isoformat(),
            e.kind.value,
            "true" if e.excluded else "false",
            e.paper_id or "",
        )
        for e in sorted(dataset.events, key=lambda e: e.event_id)
    )
    return _csv_text(REVIEW_COLUMNS, rows)


def papers_to_json(dataset: Dataset) -> str:
    items = [
        {
            "paper_id": p.paper_id,
            "publication_date": p.publication_date.isoformat(),
            "authors": list(p.authors),
            "reviews_received": p.reviews_received,
        }
        for p in sorted(dataset.papers, key=lambda p: p.paper_id)
    ]
    return json.dumps(items, indent=2) + "\n"


def reviews_to_json(dataset: Dataset) -> str:
    items = [
        {
            "event_id": e.event_id,
            "reviewer_id": e.reviewer,
            "event_date": e.event_date.isoformat(),
            "kind": e.kind.value,
            "excluded": e.excluded,
            "paper_id": e.paper_id,
        }
        for e in sorted(dataset.events, key=lambda e: e.event_id)
    ]
    return json.dumps(items, indent=2) + "\n"


def write_dataset(dataset: Dataset, directory, fmt: str = "csv") -> tuple[str, str]:
    """Write ``papers.<fmt>`` and ``reviews.<fmt>`` into ``directory``."""
    os.makedirs(directory, exist_ok=True)
    if fmt == "csv":
        texts = papers_to_csv(dataset), reviews_to_csv(dataset)
    elif fmt == "json":
        texts = papers_to_json(dataset), reviews_to_json(dataset)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    paths = (os.path.join(directory, f"papers.{fmt}"), os.path.join(directory, f"reviews.{fmt}"))
    for path, text in zip(paths, texts):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return paths
