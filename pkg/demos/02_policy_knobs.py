# The evaluation config carries three policy knobs: a publication lag,
# editor-flagged exclusions, and how editorial rounds are counted.
from datetime import date

from rindex import (
    EditorialMode,
    EvaluationConfig,
    EventKind,
    PaperRecord,
    ReviewEvent,
    completed_total,
    r_index,
    validate_dataset,
)

papers = [
    PaperRecord("old", date(2020, 3, 1), ("eve", "sam"), 4),
    PaperRecord("new", date(2023, 9, 1), ("eve",), 3),
    PaperRecord("ext", date(2021, 1, 1), ("kim",), 2),
]
events = [
    ReviewEvent("r1", "eve", date(2023, 1, 10), EventKind.MANUSCRIPT_REVIEW, paper_id="ext"),
    ReviewEvent("r2", "eve", date(2023, 2, 10), EventKind.MANUSCRIPT_REVIEW, excluded=True,
                exclusion_reason="two-line report"),
    # eve also edited "ext" through three revision rounds
    ReviewEvent("ed1", "eve", date(2021, 2, 1), EventKind.EDITORIAL_ROUND, paper_id="ext"),
    ReviewEvent("ed2", "eve", date(2021, 4, 1), EventKind.EDITORIAL_ROUND, paper_id="ext"),
    ReviewEvent("ed3", "eve", date(2021, 6, 1), EventKind.EDITORIAL_ROUND, paper_id="ext"),
]
ds = validate_dataset(papers, events)
as_of = date(2024, 6, 1)

# Lag: "new" is nine months old, so under the default 24-month lag it has not
# yet accrued responsibility. Completed reviews are never lagged.
for lag in (24, 0):
    rep = r_index("eve", ds, EvaluationConfig(as_of=as_of, lag_months=lag))
    print(f"lag {lag:2d}: responsibility {rep.responsibility_total}, lagged out {rep.lagged_out_papers}")

# Exclusions: r2 was flagged by an editor.
for honor in (True, False):
    cfg = EvaluationConfig(as_of=as_of, honor_exclusions=honor)
    print(f"honor_exclusions={honor}: completed {completed_total('eve', ds, cfg)}")

# Editorial counting: three rounds on one paper count 3 or 1.
for mode in EditorialMode:
    cfg = EvaluationConfig(as_of=as_of, editorial_mode=mode)
    print(f"{mode.value:9s}: completed {completed_total('eve', ds, cfg)}")
