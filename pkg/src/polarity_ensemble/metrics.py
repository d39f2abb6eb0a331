"""Agreement and classification statistics over polarity labels.

All matrices are indexed ``[true, predicted]`` in rank order
(negative, neutral, positive).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .core import POLARITIES, Polarity, format_percent, round_half_up

_INDEX = {p: i for i, p in enumerate(POLARITIES)}


def _fmt(x: float, places: int = 3) -> str:
    return f"{round_half_up(x, places):.{places}f}"


def _check_pair(gold: Sequence, pred: Sequence) -> None:
    if len(gold) != len(pred):
        raise ValueError(f"label sequences differ in length: {len(gold)} vs {len(pred)}")
    if not gold:
        raise ValueError("label sequences are empty")


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int64)
        if cells.shape != (3, 3):
            raise ValueError(f"confusion matrix must be 3x3, got {cells.shape}")
        if (cells < 0).any():
            raise ValueError("confusion matrix cells must be non-negative")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def n(self) -> int:
        return int(self.cells.sum())

    def cell(self, true: Polarity, pred: Polarity) -> int:
        return int(self.cells[_INDEX[true], _INDEX[pred]])

    @property
    def diagonal(self) -> int:
        return int(np.trace(self.cells))

    def transpose(self) -> "ConfusionMatrix":
        return ConfusionMatrix(self.cells.T)

    def __eq__(self, other):
        return isinstance(other, ConfusionMatrix) and np.array_equal(self.cells, other.cells)


def confusion(gold: Sequence[Polarity], pred: Sequence[Polarity]) -> ConfusionMatrix:
    _check_pair(gold, pred)
    cells = np.zeros((3, 3), dtype=np.int64)
    for t, p in zip(gold, pred):
        cells[_INDEX[t], _INDEX[p]] += 1
    return ConfusionMatrix(cells)


class AgreementSplit(NamedTuple):
    matches: int
    mild: int
    severe: int
    accuracy: float


def split_counts(matches: int, mild: int, severe: int) -> dict[str, float]:
    n = matches + mild + severe
    return {"matches": matches / n, "mild": mild / n, "severe": severe / n}


def accuracy_and_split(gold: Sequence[Polarity], pred: Sequence[Polarity]) -> AgreementSplit:
    """Exact matches, neutral-involving misses (mild) and polar flips (severe)."""
    _check_pair(gold, pred)
    matches = severe = 0
    for t, p in zip(gold, pred):
        if t is p:
            matches += 1
        elif abs(t.rank - p.rank) == 2:
            severe += 1
    mild = len(gold) - matches - severe
    return AgreementSplit(matches, mild, severe, matches / len(gold))


def _kappa(observed: float, expected: float) -> tuple[float, bool]:
    if math.isclose(expected, 1.0, rel_tol=0, abs_tol=1e-12):
        return (1.0 if math.isclose(observed, 1.0, rel_tol=0, abs_tol=1e-12) else 0.0), True
    return (observed - expected) / (1.0 - expected), False


def chance_agreement(cm: ConfusionMatrix) -> float:
    n = cm.n
    rows = cm.cells.sum(axis=1) / n
    cols = cm.cells.sum(axis=0) / n
    return float(np.dot(rows, cols))


def cohen_kappa_detail(cm: ConfusionMatrix) -> tuple[float, bool]:
    """Cohen's kappa and whether the degenerate p_e = 1 convention applied."""
    if cm.n == 0:
        raise ValueError("empty confusion matrix")
    return _kappa(cm.diagonal / cm.n, chance_agreement(cm))


def cohen_kappa(cm: ConfusionMatrix) -> float:
    return cohen_kappa_detail(cm)[0]


def ratings_from_labels(items: Sequence[Sequence[Polarity]]) -> np.ndarray:
    """Per-item category counts (items x 3) from per-item rater labels."""
    out = np.zeros((len(items), 3), dtype=np.int64)
    for i, labels in enumerate(items):
        for label in labels:
            out[i, _INDEX[label]] += 1
    return out


def fleiss_kappa_detail(ratings, raters_per_item: int | None = None) -> tuple[float, bool]:
    ratings = np.asarray(ratings, dtype=np.int64)
    if ratings.ndim != 2 or ratings.shape[0] == 0:
        raise ValueError("ratings must be a non-empty items x categories matrix")
    if (ratings < 0).any():
        raise ValueError("rating counts must be non-negative")
    per_item = ratings.sum(axis=1)
    m = int(per_item[0]) if raters_per_item is None else raters_per_item
    if (per_item != m).any():
        bad = int(np.flatnonzero(per_item != m)[0])
        raise ValueError(f"item {bad} has {per_item[bad]} ratings, expected {m} for every item")
    if m < 2:
        raise ValueError("Fleiss' kappa needs at least two raters per item")
    n_items = ratings.shape[0]
    p_item = (np.sum(ratings * ratings, axis=1) - m) / (m * (m - 1))
    p_bar = float(p_item.mean())
    p_cat = ratings.sum(axis=0) / (n_items * m)
    p_e = float(np.sum(p_cat ** 2))
    return _kappa(p_bar, p_e)


def fleiss_kappa(ratings, raters_per_item: int | None = None) -> float:
    return fleiss_kappa_detail(ratings, raters_per_item)[0]


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class PRF:
    per_class: dict[Polarity, ClassScores]
    micro_f1: float
    macro: ClassScores
    flags: tuple[str, ...] = ()


def prf(cm: ConfusionMatrix) -> PRF:
    if cm.n == 0:
        raise ValueError("empty confusion matrix")
    tp = np.diag(cm.cells)
    predicted = cm.cells.sum(axis=0)
    actual = cm.cells.sum(axis=1)
    per_class = {}
    flags = []
    for k, p in enumerate(POLARITIES):
        if predicted[k] == 0:
            flags.append(f"{p.value}: never predicted, precision set to 0")
        if actual[k] == 0:
            flags.append(f"{p.value}: absent from the reference labels, recall set to 0")
        precision = tp[k] / predicted[k] if predicted[k] else 0.0
        recall = tp[k] / actual[k] if actual[k] else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[p] = ClassScores(float(precision), float(recall), float(f1))
    macro = ClassScores(
        *(float(np.mean([getattr(s, f) for s in per_class.values()])) for f in ("precision", "recall", "f1"))
    )
    return PRF(per_class, cm.diagonal / cm.n, macro, tuple(flags))


@dataclass(frozen=True)
class VennPartition:
    all_three: int
    only_ab: int
    only_ac: int
    only_bc: int
    none_agree: int

    @property
    def total(self) -> int:
        return self.all_three + self.only_ab + self.only_ac + self.only_bc + self.none_agree

    @property
    def at_least_two(self) -> int:
        return self.total - self.none_agree

    def pair_matches(self) -> dict[str, int]:
        return {
            "ab": self.all_three + self.only_ab,
            "ac": self.all_three + self.only_ac,
            "bc": self.all_three + self.only_bc,
        }


def venn3(a: Sequence[Polarity], b: Sequence[Polarity], c: Sequence[Polarity]) -> VennPartition:
    _check_pair(a, b)
    _check_pair(a, c)
    counts = dict(all_three=0, only_ab=0, only_ac=0, only_bc=0, none_agree=0)
    for x, y, z in zip(a, b, c):
        if x is y is z:
            counts["all_three"] += 1
        elif x is y:
            counts["only_ab"] += 1
        elif x is z:
            counts["only_ac"] += 1
        elif y is z:
            counts["only_bc"] += 1
        else:
            counts["none_agree"] += 1
    return VennPartition(**counts)


@dataclass(frozen=True)
class MetricsReport:
    n: int
    accuracy: float
    cohen_kappa: float
    per_class: dict[Polarity, ClassScores]
    micro_f1: float
    macro: ClassScores
    matches: int
    mild: int
    severe: int
    confusion: ConfusionMatrix
    flags: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "accuracy": self.accuracy,
            "cohen_kappa": self.cohen_kappa,
            "matches": self.matches,
            "mild": self.mild,
            "severe": self.severe,
            "shares": split_counts(self.matches, self.mild, self.severe),
            "per_class": {
                p.value: {"precision": s.precision, "recall": s.recall, "f1": s.f1}
                for p, s in self.per_class.items()
            },
            "micro_f1": self.micro_f1,
            "macro": {"precision": self.macro.precision, "recall": self.macro.recall, "f1": self.macro.f1},
            "confusion": {
                "labels": [p.value for p in POLARITIES],
                "cells": self.confusion.cells.tolist(),
            },
            "flags": list(self.flags),
        }

    def format_table(self) -> str:
        shares = split_counts(self.matches, self.mild, self.severe)
        lines = [
            f"statements          {self.n}",
            f"matches (accuracy)  {self.matches} ({format_percent(shares['matches'])})",
            f"mild disagreement   {self.mild} ({format_percent(shares['mild'])})",
            f"severe disagreement {self.severe} ({format_percent(shares['severe'])})",
            f"Cohen's kappa       {_fmt(self.cohen_kappa)}",
            "",
            f"{'class':<10} {'P':>6} {'R':>6} {'F1':>6}",
        ]
        for p in reversed(POLARITIES):
            s = self.per_class[p]
            lines.append(f"{p.value:<10} {_fmt(s.precision):>6} {_fmt(s.recall):>6} {_fmt(s.f1):>6}")
        lines.append(f"{'micro':<10} {'-':>6} {'-':>6} {_fmt(self.micro_f1):>6}")
        m = self.macro
        lines.append(f"{'macro':<10} {_fmt(m.precision):>6} {_fmt(m.recall):>6} {_fmt(m.f1):>6}")
        for flag in self.flags:
            lines.append(f"note: {flag}")
        return "\n".join(lines)


def evaluate(gold: Sequence[Polarity], pred: Sequence[Polarity]) -> MetricsReport:
    cm = confusion(gold, pred)
    split = accuracy_and_split(gold, pred)
    kappa, degenerate = cohen_kappa_detail(cm)
    scores = prf(cm)
    flags = list(scores.flags)
    if degenerate:
        flags.insert(0, "cohen_kappa: all labels in a single class, degenerate convention applied")
    return MetricsReport(
        n=cm.n,
        accuracy=split.accuracy,
        cohen_kappa=kappa,
        per_class=scores.per_class,
        micro_f1=scores.micro_f1,
        macro=scores.macro,
        matches=split.matches,
        mild=split.mild,
        severe=split.severe,
        confusion=cm,
        flags=tuple(flags),
    )
