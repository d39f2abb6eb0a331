"""Native lexicon scorers used as reference classifier slots."""

from __future__ import annotations

from typing import Sequence

from ..core import Polarity, ToolVote
from .lexicon import Lexicon, tokenize

NEGATION_WINDOW = 2
STRENGTH_BOOST = 1
EXCLAMATION_FACTOR = 1.25
DEFAULT_EPSILON = 0.05


def _clamp(x: float, lo: float = -1.0, hi: float = 1.0) -> float:
    return max(lo, min(hi, x))


def map_valence(v: float, epsilon: float = DEFAULT_EPSILON) -> Polarity:
    if not -1.0 <= v <= 1.0:
        raise ValueError(f"valence {v} outside [-1, 1]")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if v > epsilon:
        return Polarity.POSITIVE
    if v < -epsilon:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL


def _negated(tokens: Sequence[str], start: int, lexicon: Lexicon) -> bool:
    for tok in tokens[max(0, start - NEGATION_WINDOW):start]:
        entry = lexicon.get(tok)
        if entry is not None and entry.negator:
            return True
    return False


def score_strength(text: str, lexicon: Lexicon) -> tuple[int, int]:
    """Dual positive/negative strength, (1, -1) when nothing scores.

    A booster raises the magnitude of the next scored term by one (max 5); a
    negator among the two tokens before a term flips its sign.
    """
    tokens = tokenize(text)
    pos, neg = 1, -1
    boost = 0
    for i, tok in enumerate(tokens):
        entry = lexicon.get(tok)
        if entry is None or entry.negator:
            continue
        if entry.booster is not None:
            boost += STRENGTH_BOOST
            continue
        s = int(entry.value)
        if boost:
            s = (1 if s > 0 else -1) * min(5, abs(s) + boost)
            boost = 0
        if _negated(tokens, i, lexicon):
            s = -s
        if s > 0:
            pos = max(pos, s)
        else:
            neg = min(neg, s)
    return pos, neg


def strength_to_polarity(pos: int, neg: int) -> Polarity:
    if not (1 <= pos <= 5 and -5 <= neg <= -1):
        raise ValueError(f"strength pair ({pos}, {neg}) out of range")
    if pos > -neg:
        return Polarity.POSITIVE
    if pos < -neg:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL


def _term_values(tokens: Sequence[str], lexicon: Lexicon) -> list[float]:
    # Greedy longest-phrase match; single-token lexicons degrade to lookups.
    values = []
    mult = 1.0
    i = 0
    while i < len(tokens):
        entry, width = None, 1
        for n in range(min(lexicon.max_phrase, len(tokens) - i), 0, -1):
            entry = lexicon.get(" ".join(tokens[i:i + n]))
            if entry is not None:
                width = n
                break
        if entry is None or entry.negator:
            i += width
            continue
        if entry.booster is not None:
            mult *= entry.booster
            i += width
            continue
        v = entry.value * mult
        mult = 1.0
        if _negated(tokens, i, lexicon):
            v = -v
        values.append(v)
        i += width
    return values


def score_valence(text: str, lexicon: Lexicon) -> float:
    """Mean valence of scored terms, clamped to [-1, 1]; 0.0 if none score."""
    values = _term_values(tokenize(text), lexicon)
    if not values:
        return 0.0
    score = _clamp(sum(values) / len(values))
    if text.rstrip().endswith("!"):
        score = _clamp(score * EXCLAMATION_FACTOR)
    return score


def score_pattern(text: str, lexicon: Lexicon) -> float:
    """Mean valence of matched phrase patterns, clamped to [-1, 1]."""
    values = _term_values(tokenize(text), lexicon)
    if not values:
        return 0.0
    return _clamp(sum(values) / len(values))


class StrengthClassifier:
    kind = "strength"

    def __init__(self, name: str, lexicon: Lexicon):
        if not lexicon:
            raise ValueError(f"strength lexicon for {name} is empty")
        self.name = name
        self.lexicon = lexicon

    def vote(self, text: str) -> ToolVote:
        pos, neg = score_strength(text, self.lexicon)
        return ToolVote(self.name, strength_to_polarity(pos, neg))

    def classify_batch(self, statements) -> list[ToolVote]:
        return [self.vote(s.text) for s in statements]


class ValenceClassifier:
    kind = "valence"
    _score = staticmethod(score_valence)

    def __init__(self, name: str, lexicon: Lexicon, epsilon: float = DEFAULT_EPSILON):
        self.name = name
        self.lexicon = lexicon
        self.epsilon = epsilon

    def vote(self, text: str) -> ToolVote:
        raw = self._score(text, self.lexicon)
        return ToolVote(self.name, map_valence(raw, self.epsilon), raw=raw)

    def classify_batch(self, statements) -> list[ToolVote]:
        return [self.vote(s.text) for s in statements]


class PatternClassifier(ValenceClassifier):
    kind = "pattern"
    _score = staticmethod(score_pattern)
