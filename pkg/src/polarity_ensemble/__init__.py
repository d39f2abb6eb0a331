"""Three-class polarity ensemble for team communication."""

__version__ = "0.1.0"

from .core import (
    EnsembleResult,
    Polarity,
    SessionReport,
    Statement,
    ToolVote,
    VoteSet,
    compare,
    format_label,
    parse_label,
    session_summary,
)
from .ensemble import RaterLabels, aggregate_human, combine_session, majority_vote, median_star

__all__ = [
    "EnsembleResult", "Polarity", "SessionReport", "Statement", "ToolVote", "VoteSet",
    "compare", "format_label", "parse_label", "session_summary", "RaterLabels",
    "aggregate_human", "combine_session", "majority_vote", "median_star",
]
