"""Combining several polarity labels into one.

The quartet rule (``median_star``) takes the ordinal median of four votes and
falls back to neutral whenever the two middle votes differ, so a polar label
is only returned when at least three tools agree on it.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import QUARTET_SIZE, EnsembleResult, Polarity, Statement, VoteSet


@dataclass(frozen=True)
class RaterLabels:
    statement_id: int
    labels: tuple[Polarity, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError(f"statement {self.statement_id} has no rater labels")


def _middle_rule(votes: Sequence[Polarity]) -> Polarity:
    ordered = sorted(votes, key=lambda p: p.rank)
    n = len(ordered)
    if n % 2:
        return ordered[n // 2]
    lo, hi = ordered[n // 2 - 1], ordered[n // 2]
    return lo if lo is hi else Polarity.NEUTRAL


def median_star(votes: Sequence[Polarity]) -> Polarity:
    if len(votes) != QUARTET_SIZE:
        raise ValueError(f"median_star takes exactly {QUARTET_SIZE} votes, got {len(votes)}")
    return _middle_rule(votes)


def majority_vote(votes: Sequence[Polarity], seed: int) -> Polarity:
    """Plurality label; ties are broken uniformly at random with ``seed``."""
    if len(votes) != QUARTET_SIZE:
        raise ValueError(f"majority_vote takes exactly {QUARTET_SIZE} votes, got {len(votes)}")
    tally = Counter(votes)
    top = max(tally.values())
    tied = sorted((p for p, c in tally.items() if c == top), key=lambda p: p.rank)
    if len(tied) == 1:
        return tied[0]
    return random.Random(seed).choice(tied)


def aggregate_human(labels: RaterLabels | Sequence[Polarity]) -> Polarity:
    """Median label of any number of raters, neutral on a split middle pair."""
    if isinstance(labels, RaterLabels):
        labels = labels.labels
    if not labels:
        raise ValueError("aggregate_human needs at least one label")
    return _middle_rule(labels)


def combine_session(
    statements: Sequence[Statement], votesets: Sequence[VoteSet]
) -> list[EnsembleResult]:
    if len(statements) != len(votesets):
        raise ValueError(
            f"{len(statements)} statements but {len(votesets)} vote sets"
        )
    return [
        EnsembleResult(statement=s, votes=v, combined=median_star(v.labels))
        for s, v in zip(statements, votesets)
    ]
