"""Classifier slots and the quartet entry points."""

from __future__ import annotations

from typing import Sequence

from ..core import Polarity, Statement, VoteSet
from .config import (
    ClassifierConfig,
    ConfigError,
    SlotSpec,
    default_config,
    load_config,
    load_quartet,
)
from .external import ExternalClassifier, ExternalClassifierError, classify_external
from .lexicon import Lexicon, LexiconEntry, LexiconError, tokenize
from .scorers import (
    PatternClassifier,
    StrengthClassifier,
    ValenceClassifier,
    map_valence,
    score_pattern,
    score_strength,
    score_valence,
    strength_to_polarity,
)

__all__ = [
    "ClassifierConfig", "ConfigError", "SlotSpec", "default_config", "load_config",
    "load_quartet", "ExternalClassifier", "ExternalClassifierError", "classify_external",
    "Lexicon", "LexiconEntry", "LexiconError", "tokenize", "PatternClassifier",
    "StrengthClassifier", "ValenceClassifier", "map_valence", "score_pattern",
    "score_strength", "score_valence", "strength_to_polarity", "classify_all",
    "classify_batch", "classify_slots", "realtime_label",
]


def classify_slots(
    statements: Sequence[Statement], config: ClassifierConfig, slots: Sequence[int]
) -> dict[int, list]:
    """Run only the given slot indices; returns slot index -> votes per statement."""
    quartet = load_quartet(config)
    return {i: quartet[i].classify_batch(statements) for i in slots}


def classify_batch(statements: Sequence[Statement], config: ClassifierConfig) -> list[VoteSet]:
    """Votes for many statements; external slots see the whole batch at once."""
    if not statements:
        return []
    per_slot = classify_slots(statements, config, range(len(config.slots)))
    return [
        VoteSet(tuple(per_slot[i][j] for i in range(len(config.slots))))
        for j in range(len(statements))
    ]


def classify_all(statement: Statement, config: ClassifierConfig) -> VoteSet:
    return classify_batch([statement], config)[0]


def realtime_label(statement: Statement, config: ClassifierConfig) -> Polarity:
    slot = config.realtime_slot
    return classify_slots([statement], config, [slot])[slot][0].label
