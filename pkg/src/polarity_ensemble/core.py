"""Ordinal polarity scale and the value types shared by the pipeline."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from functools import total_ordering
from typing import Iterable, Literal, Optional

Source = Literal["csv", "live", "audio"]
SOURCES: tuple[str, ...] = ("csv", "live", "audio")
QUARTET_SIZE = 4


class UnknownLabelError(ValueError):
    """A label string outside the three-class vocabulary."""

    def __init__(self, label: str, row: Optional[int] = None):
        self.label = label
        self.row = row
        where = f" (row {row})" if row is not None else ""
        super().__init__(f"unknown polarity label {label!r}{where}")


@total_ordering
class Polarity(Enum):
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    POSITIVE = "positive"

    @property
    def rank(self) -> int:
        return _RANKS[self]

    @classmethod
    def from_rank(cls, rank: int) -> "Polarity":
        try:
            return _BY_RANK[rank]
        except KeyError:
            raise ValueError(f"rank must be -1, 0 or 1, got {rank!r}") from None

    def mirror(self) -> "Polarity":
        """Swap positive and negative; neutral is fixed."""
        return Polarity.from_rank(-self.rank)

    def __lt__(self, other):
        if not isinstance(other, Polarity):
            return NotImplemented
        return self.rank < other.rank

    def __str__(self) -> str:
        return self.value


_RANKS = {Polarity.NEGATIVE: -1, Polarity.NEUTRAL: 0, Polarity.POSITIVE: 1}
_BY_RANK = {v: k for k, v in _RANKS.items()}

# rank order; used as the row/column order of every matrix in the package
POLARITIES: tuple[Polarity, ...] = (Polarity.NEGATIVE, Polarity.NEUTRAL, Polarity.POSITIVE)

_LABEL_LOOKUP = {p.value: p for p in Polarity} | {str(p.rank): p for p in Polarity}
_LABEL_LOOKUP["+1"] = Polarity.POSITIVE


def round_half_up(x: float, places: int = 3) -> float:
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


def format_percent(share: float) -> str:
    """Share in [0, 1] as a percentage with one decimal, rounded half-up."""
    return f"{round_half_up(share, 3) * 100:.1f}%"


def compare(a: Polarity, b: Polarity) -> int:
    """Three-way comparison: -1 if a < b, 0 if equal, 1 if a > b."""
    return (a.rank > b.rank) - (a.rank < b.rank)


def parse_label(s: str, row: Optional[int] = None) -> Polarity:
    try:
        return _LABEL_LOOKUP[s.strip().lower()]
    except (KeyError, AttributeError):
        raise UnknownLabelError(s, row) from None


def format_label(p: Polarity) -> str:
    return p.value


@dataclass(frozen=True)
class Statement:
    id: int
    text: str
    source: Source = "csv"
    start_time: Optional[float] = None

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"statement id must be non-negative, got {self.id}")
        if not self.text.strip():
            raise ValueError("statement text must be non-empty")
        if self.source not in SOURCES:
            raise ValueError(f"unknown statement source {self.source!r}")
        if self.start_time is not None and self.source == "csv":
            raise ValueError("csv statements carry no start time")


@dataclass(frozen=True)
class ToolVote:
    tool: str
    label: Polarity
    raw: Optional[float] = None

    def __post_init__(self):
        if self.raw is not None and not (-1.0 <= self.raw <= 1.0):
            raise ValueError(f"raw score {self.raw} of {self.tool} outside [-1, 1]")


@dataclass(frozen=True)
class VoteSet:
    votes: tuple[ToolVote, ...]

    def __post_init__(self):
        object.__setattr__(self, "votes", tuple(self.votes))
        if len(self.votes) != QUARTET_SIZE:
            raise ValueError(f"a vote set holds exactly {QUARTET_SIZE} votes, got {len(self.votes)}")
        tools = [v.tool for v in self.votes]
        if len(set(tools)) != len(tools):
            raise ValueError(f"duplicate tool identifiers in vote set: {tools}")

    @property
    def labels(self) -> tuple[Polarity, ...]:
        return tuple(v.label for v in self.votes)

    def __iter__(self):
        return iter(self.votes)

    def __len__(self):
        return len(self.votes)

    def __getitem__(self, i):
        return self.votes[i]


@dataclass(frozen=True)
class EnsembleResult:
    statement: Statement
    votes: VoteSet
    combined: Polarity

    def __post_init__(self):
        from .ensemble import median_star

        expected = median_star(self.votes.labels)
        if self.combined is not expected:
            raise ValueError(
                f"combined label {self.combined} disagrees with median* {expected} "
                f"for statement {self.statement.id}"
            )


@dataclass(frozen=True)
class SessionReport:
    counts: dict[Polarity, int] = field(default_factory=dict)
    shares: dict[Polarity, float] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __post_init__(self):
        if set(self.counts) != set(POLARITIES) or set(self.shares) != set(POLARITIES):
            raise ValueError("session report must carry all three classes")
        if self.total > 0 and not math.isclose(sum(self.shares.values()), 1.0, abs_tol=1e-9):
            raise ValueError("shares must sum to 1")

    def lines(self) -> list[str]:
        return [
            f"{p.value:<9} {self.counts[p]:>6} ({format_percent(self.shares[p])})"
            for p in reversed(POLARITIES)
        ]


def session_summary(results: Iterable[EnsembleResult]) -> SessionReport:
    tally = Counter(r.combined for r in results)
    total = sum(tally.values())
    counts = {p: tally.get(p, 0) for p in POLARITIES}
    shares = {p: (counts[p] / total if total else 0.0) for p in POLARITIES}
    return SessionReport(counts=counts, shares=shares)
