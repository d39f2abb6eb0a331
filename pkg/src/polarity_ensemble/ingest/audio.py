"""16 kHz mono PCM16 audio and energy-based utterance segmentation."""

from __future__ import annotations

import wave
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO

import numpy as np

SAMPLE_RATE = 16000
CHANNELS = 1
SAMPLE_WIDTH = 2
FULL_SCALE = 32768.0


class AudioFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AudioClip:
    samples: np.ndarray
    sample_rate: int = SAMPLE_RATE
    channels: int = CHANNELS

    def __post_init__(self):
        if self.sample_rate != SAMPLE_RATE:
            raise AudioFormatError(f"sample_rate must be {SAMPLE_RATE} Hz, got {self.sample_rate}")
        if self.channels != CHANNELS:
            raise AudioFormatError(f"channels must be {CHANNELS}, got {self.channels}")
        samples = np.asarray(self.samples)
        if samples.ndim != 1:
            raise AudioFormatError("samples must be a 1-D sequence")
        if samples.dtype != np.int16:
            if samples.size and (samples.min() < -32768 or samples.max() > 32767):
                raise AudioFormatError("samples exceed the signed 16-bit range")
            samples = samples.astype(np.int16)
        object.__setattr__(self, "samples", samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate

    def normalized(self) -> np.ndarray:
        return self.samples.astype(np.float64) / FULL_SCALE

    def slice(self, start: int, end: int) -> "AudioClip":
        return AudioClip(self.samples[start:end])


def read_wav(source: str | Path | BinaryIO) -> AudioClip:
    try:
        with wave.open(str(source) if isinstance(source, Path) else source, "rb") as wf:
            if wf.getcomptype() != "NONE":
                raise AudioFormatError(f"compression must be PCM, got {wf.getcomptype()}")
            if wf.getsampwidth() != SAMPLE_WIDTH:
                raise AudioFormatError(f"sample width must be 16 bit, got {8 * wf.getsampwidth()} bit")
            if wf.getnchannels() != CHANNELS:
                raise AudioFormatError(f"channels must be 1, got {wf.getnchannels()}")
            if wf.getframerate() != SAMPLE_RATE:
                raise AudioFormatError(f"sample rate must be {SAMPLE_RATE} Hz, got {wf.getframerate()}")
            data = wf.readframes(wf.getnframes())
    except (wave.Error, EOFError) as exc:
        raise AudioFormatError(f"not a PCM WAV file: {exc}") from exc
    return AudioClip(np.frombuffer(data, dtype="<i2").astype(np.int16))


def write_wav(clip: AudioClip, target: str | Path | BinaryIO) -> None:
    with wave.open(str(target) if isinstance(target, Path) else target, "wb") as wf:
        wf.setnchannels(CHANNELS)
        wf.setsampwidth(SAMPLE_WIDTH)
        wf.setframerate(SAMPLE_RATE)
        wf.writeframes(clip.samples.astype("<i2").tobytes())


@dataclass(frozen=True)
class UtteranceSegment:
    start_sample: int
    end_sample: int

    def __post_init__(self):
        if not 0 <= self.start_sample < self.end_sample:
            raise ValueError(f"invalid segment [{self.start_sample}, {self.end_sample})")

    @property
    def start_time(self) -> float:
        return self.start_sample / SAMPLE_RATE

    @property
    def end_time(self) -> float:
        return self.end_sample / SAMPLE_RATE


@dataclass(frozen=True)
class VadConfig:
    frame_ms: int = 30
    energy_threshold: float = 0.02
    hangover_frames: int = 10
    min_speech_frames: int = 5

    def __post_init__(self):
        if self.frame_ms not in (10, 20, 30):
            raise ValueError("frame_ms must be 10, 20 or 30")
        if self.energy_threshold <= 0 or self.hangover_frames <= 0 or self.min_speech_frames <= 0:
            raise ValueError("VAD parameters must be positive")

    @property
    def frame_len(self) -> int:
        return SAMPLE_RATE * self.frame_ms // 1000


def frame_rms(clip: AudioClip, frame_len: int) -> np.ndarray:
    """RMS of each complete frame; a trailing partial frame is ignored."""
    n = len(clip.samples) // frame_len
    frames = clip.normalized()[: n * frame_len].reshape(n, frame_len)
    return np.sqrt(np.mean(frames ** 2, axis=1))


def segment_audio(clip: AudioClip, cfg: VadConfig = VadConfig()) -> list[UtteranceSegment]:
    """Split a clip into utterances at runs of low-energy frames.

    A segment opens once ``min_speech_frames`` consecutive frames exceed the
    RMS threshold (starting at the first of them) and closes at the end of
    the last speech frame once ``hangover_frames`` quiet frames follow it.
    """
    speech = frame_rms(clip, cfg.frame_len) > cfg.energy_threshold
    flen = cfg.frame_len
    segments: list[UtteranceSegment] = []

    run_start = None      # first frame of the current speech run (not yet open)
    open_start = None     # first frame of the open segment
    last_speech = -1
    quiet = 0

    def close():
        if last_speech + 1 - open_start >= cfg.min_speech_frames:
            segments.append(UtteranceSegment(open_start * flen, (last_speech + 1) * flen))

    for i, is_speech in enumerate(speech):
        if open_start is None:
            if is_speech:
                if run_start is None:
                    run_start = i
                if i - run_start + 1 >= cfg.min_speech_frames:
                    open_start, last_speech, quiet = run_start, i, 0
            else:
                run_start = None
        elif is_speech:
            last_speech, quiet = i, 0
        else:
            quiet += 1
            if quiet >= cfg.hangover_frames:
                close()
                open_start = run_start = None
    if open_start is not None:
        close()
    return segments
