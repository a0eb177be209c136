# A synthetic closed community: every review a paper receives is written by
# another member. With no lag the R-Indices of all members cancel exactly.
from datetime import date
from fractions import Fraction

from rindex import EvaluationConfig, SimConfig, compute_all, expected_burden, generate_community
from rindex.engine import cross_check_review_counts

community = generate_community(SimConfig(seed=42, n_researchers=30, papers_per_researcher=4))
counts = [p.reviews_received for p in community.papers]
print(f"{len(community.papers)} papers, {len(community.events)} reviews, "
      f"mean {sum(counts) / len(counts):.3f} reviews per paper")
print("count discrepancies:", cross_check_review_counts(community))


def total(cfg):
    return sum((r.r_index for r in compute_all(community, cfg)), Fraction(0))


# papers run to end of 2022 and their reviews to mid-2023
print("sum, no lag:  ", total(EvaluationConfig(as_of=date(2024, 1, 1), lag_months=0)))
# the lag defers recent papers' responsibility, so the sum turns positive
print("sum, 24-month lag:", total(EvaluationConfig(as_of=date(2024, 1, 1), lag_months=24)))

# five papers a year consume roughly this many reviews
mean, low, high = expected_burden(5)
print(f"5 papers: about {mean} reviews (one-SD band {low} to {high})")
