"""External speech-to-text adapter.

The adapter is invoked as ``<command...> <segment.wav>`` and prints the
transcription on stdout, exiting 0. Empty output means nothing intelligible
was said and the segment is dropped.
"""

from __future__ import annotations

import logging
import os
import subprocess
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from ..classify.external import as_argv
from ..core import Statement
from .audio import AudioClip, UtteranceSegment, write_wav

log = logging.getLogger(__name__)


class TranscriptionError(RuntimeError):
    def __init__(self, segment: UtteranceSegment, message: str):
        self.segment = segment
        super().__init__(
            f"segment {segment.start_time:.2f}-{segment.end_time:.2f}s: {message}"
        )


def transcribe(
    clip: AudioClip,
    segment: UtteranceSegment,
    adapter: str | Sequence[str],
    timeout: Optional[float] = None,
) -> str:
    argv = as_argv(adapter)
    if not argv:
        raise TranscriptionError(segment, "empty transcriber command")
    fd, path = tempfile.mkstemp(suffix=".wav", prefix="segment-")
    try:
        with os.fdopen(fd, "wb") as fh:
            write_wav(clip.slice(segment.start_sample, segment.end_sample), fh)
        try:
            proc = subprocess.run(
                argv + [path], capture_output=True, text=True, encoding="utf-8", timeout=timeout
            )
        except (OSError, subprocess.SubprocessError) as exc:
            raise TranscriptionError(segment, f"failed to run {argv[0]}: {exc}") from exc
    finally:
        os.unlink(path)
    if proc.returncode != 0:
        raise TranscriptionError(segment, f"{argv[0]} exited with status {proc.returncode}")
    return proc.stdout.rstrip("\r\n")


@dataclass
class TranscriptionBatch:
    statements: list[Statement] = field(default_factory=list)
    errors: list[TranscriptionError] = field(default_factory=list)
    dropped: int = 0


def transcribe_segments(
    clip: AudioClip,
    segments: Sequence[UtteranceSegment],
    adapter: str | Sequence[str],
    normalize: Optional[Callable[[str], str]] = None,
    start_id: int = 0,
    max_workers: int = 4,
) -> TranscriptionBatch:
    """Transcribe every segment; failures are recorded and skipped."""

    def one(seg):
        try:
            return transcribe(clip, seg, adapter)
        except TranscriptionError as exc:
            return exc

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        outputs = list(pool.map(one, segments))

    batch = TranscriptionBatch()
    for seg, out in zip(segments, outputs):
        if isinstance(out, TranscriptionError):
            log.error("%s", out)
            batch.errors.append(out)
            continue
        text = normalize(out) if normalize and out.strip() else out
        if not text.strip():
            batch.dropped += 1
            continue
        batch.statements.append(
            Statement(id=start_id + len(batch.statements), text=text.strip(),
                      source="audio", start_time=seg.start_time)
        )
    return batch
