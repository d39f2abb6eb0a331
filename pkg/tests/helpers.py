"""Test-only generators and oracles, kept independent of the package logic."""

from __future__ import annotations

import itertools
import math
import shlex
import sys
import textwrap
from pathlib import Path

import numpy as np

RATE = 16000
LABELS = ("negative", "neutral", "positive")


def tone(seconds: float, amplitude: float = 1.0, freq: float = 440.0) -> np.ndarray:
    t = np.arange(int(round(seconds * RATE))) / RATE
    return np.round(amplitude * 32767 * np.sin(2 * math.pi * freq * t)).astype(np.int16)


def silence(seconds: float) -> np.ndarray:
    return np.zeros(int(round(seconds * RATE)), dtype=np.int16)


def three_bursts() -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Three 1 s full-scale bursts with 1 s of digital silence between them."""
    parts = [silence(0.5), tone(1.0), silence(1.0), tone(1.0), silence(1.0), tone(1.0), silence(0.5)]
    bursts, pos = [], 0
    for p in parts:
        if p.any():
            bursts.append((pos, pos + len(p)))
        pos += len(p)
    return np.concatenate(parts), bursts


def frame_rms_oracle(samples: np.ndarray, frame_len: int) -> list[float]:
    out = []
    for start in range(0, len(samples) - frame_len + 1, frame_len):
        frame = samples[start:start + frame_len]
        out.append(math.sqrt(sum((int(s) / 32768.0) ** 2 for s in frame) / frame_len))
    return out


def median_star_oracle(votes) -> str:
    """At least three equal polar votes win; anything else is neutral."""
    for label in ("negative", "positive"):
        if sum(1 for v in votes if v == label) >= 3:
            return label
    return "neutral"


def all_vote_tuples():
    return list(itertools.product(LABELS, repeat=4))


def make_script(tmp_path: Path, name: str, body: str) -> str:
    """Write a Python script and return a shell command string running it."""
    path = tmp_path / name
    path.write_text(textwrap.dedent(body), encoding="utf-8")
    return f"{shlex.quote(sys.executable)} {shlex.quote(str(path))}"
