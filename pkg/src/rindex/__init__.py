"""Peer-review balance accounting.

A researcher's R-Index is the number of reviews they completed minus the
review responsibility their publications accrued, where each paper's
received reviews are split equally among its authors.
"""

from .engine import (
    Discrepancy,
    EngineError,
    RIndexReport,
    closedness_violations,
    completed_total,
    compute_all,
    conservation_residual,
    cross_check_review_counts,
    paper_is_eligible,
    r_index,
    responsibility_total,
    review_responsibility,
)
from .ingest import IngestIssue, IngestReport, load_dataset, parse_papers, parse_reviews, write_dataset
from .model import (
    Dataset,
    DatasetValidationError,
    EditorialMode,
    EvaluationConfig,
    EventKind,
    Issue,
    PaperRecord,
    ReviewEvent,
    validate_dataset,
)
from .render import render
from .simulate import SimConfig, draw_review_count, expected_burden, generate_community

__version__ = "0.1.0"
