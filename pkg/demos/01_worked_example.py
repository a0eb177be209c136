# Four co-authors share a paper that drew six reviews.
# Each of them owes 6 / 4 = 1.5 reviews back to the community.
from datetime import date

from rindex import EvaluationConfig, EventKind, PaperRecord, ReviewEvent, compute_all, render, validate_dataset

authors = ("ana", "ben", "chen", "dara")
paper = PaperRecord("p1", date(2021, 6, 1), authors, reviews_received=6)

# ana and ben reviewed twice, chen once, dara never
done = {"ana": 2, "ben": 2, "chen": 1, "dara": 0}
events = [
    ReviewEvent(f"{who}-{i}", who, date(2022, 3, 1), EventKind.MANUSCRIPT_REVIEW)
    for who, n in done.items()
    for i in range(n)
]
dataset = validate_dataset([paper], events)

# lag 0 evaluates the bare formula: completed - sum of shares
reports = compute_all(dataset, EvaluationConfig(as_of=date(2024, 1, 1), lag_months=0))
print(render(reports, "table"))

# positive: gave back more than taken; negative: still owes reviews
for r in reports:
    status = "ahead" if r.r_index > 0 else "behind" if r.r_index < 0 else "balanced"
    print(f"{r.researcher:5s} {status}")
