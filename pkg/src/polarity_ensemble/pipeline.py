"""End-to-end sessions: statements in, ensemble results out."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .classify import ClassifierConfig, ExternalClassifierError, classify_batch, classify_slots
from .core import EnsembleResult, Statement, ToolVote, VoteSet
from .ensemble import combine_session
from .ingest import (
    AudioClip,
    Dictionary,
    TranscriptionError,
    VadConfig,
    normalize_spelling,
    segment_audio,
    transcribe_segments,
)

log = logging.getLogger(__name__)


def analyze(statements: Sequence[Statement], config: ClassifierConfig) -> list[EnsembleResult]:
    return combine_session(statements, classify_batch(statements, config))


@dataclass
class AudioSession:
    results: list[EnsembleResult] = field(default_factory=list)
    segments: int = 0
    dropped: int = 0
    errors: list[TranscriptionError] = field(default_factory=list)


def analyze_audio(
    clip: AudioClip,
    transcriber,
    config: ClassifierConfig,
    vad: VadConfig = VadConfig(),
    dictionary: Optional[Dictionary] = None,
    max_workers: int = 4,
) -> AudioSession:
    segments = segment_audio(clip, vad)

    def normalize(text: str) -> str:
        return normalize_spelling(text, dictionary, config.language)

    batch = transcribe_segments(clip, segments, transcriber, normalize=normalize,
                                max_workers=max_workers)
    return AudioSession(
        results=analyze(batch.statements, config),
        segments=len(segments),
        dropped=batch.dropped,
        errors=batch.errors,
    )


def complete_votes(
    statements: Sequence[Statement],
    realtime_votes: Sequence[ToolVote],
    config: ClassifierConfig,
) -> tuple[list[EnsembleResult], list[tuple[Statement, Exception]]]:
    """Run the non-real-time slots on collected statements and combine.

    The real-time vote already computed per statement is reused. When a batch
    adapter call fails the statements are retried one by one so that a single
    bad statement is skipped rather than the whole session.
    """
    rest = [i for i in range(len(config.slots)) if i != config.realtime_slot]
    failures: list[tuple[Statement, Exception]] = []
    try:
        per_slot = classify_slots(statements, config, rest)
        kept = list(range(len(statements)))
    except ExternalClassifierError as exc:
        log.warning("batch classification failed (%s); retrying per statement", exc)
        per_slot = {i: [] for i in rest}
        kept = []
        for j, st in enumerate(statements):
            try:
                single = classify_slots([st], config, rest)
            except ExternalClassifierError as err:
                failures.append((st, err))
                continue
            kept.append(j)
            for i in rest:
                per_slot[i].extend(single[i])
    kept_statements = [statements[j] for j in kept]
    votesets = []
    for k, j in enumerate(kept):
        votes = [
            realtime_votes[j] if i == config.realtime_slot else per_slot[i][k]
            for i in range(len(config.slots))
        ]
        votesets.append(VoteSet(tuple(votes)))
    return combine_session(kept_statements, votesets), failures
