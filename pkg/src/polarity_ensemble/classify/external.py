"""Adapter for classifiers that run as a separate process.

Protocol: the child reads RFC-4180 CSV with a header ``id,text`` on stdin,
writes exactly one label per input row to stdout (``negative``/``neutral``/
``positive`` or ``-1``/``0``/``1``) and exits with status 0.
"""

from __future__ import annotations

import csv
import io
import shlex
import subprocess
import threading
from typing import Optional, Sequence

from ..core import Polarity, Statement, ToolVote, UnknownLabelError, parse_label


class ExternalClassifierError(RuntimeError):
    def __init__(self, adapter: str, message: str):
        self.adapter = adapter
        super().__init__(f"external classifier {adapter!r}: {message}")


def as_argv(command: str | Sequence[str]) -> list[str]:
    if isinstance(command, str):
        return shlex.split(command)
    return list(command)


def _encode(statements: Sequence[Statement]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["id", "text"])
    for s in statements:
        writer.writerow([s.id, s.text])
    return buf.getvalue()


def classify_external(
    command: str | Sequence[str],
    statements: Sequence[Statement],
    name: Optional[str] = None,
    timeout: Optional[float] = None,
) -> list[Polarity]:
    argv = as_argv(command)
    name = name or (argv[0] if argv else "<empty>")
    if not argv:
        raise ExternalClassifierError(name, "empty command")
    try:
        proc = subprocess.run(
            argv,
            input=_encode(statements),
            capture_output=True,
            text=True,
            encoding="utf-8",
            timeout=timeout,
        )
    except (OSError, subprocess.SubprocessError) as exc:
        raise ExternalClassifierError(name, f"failed to run: {exc}") from exc
    if proc.returncode != 0:
        detail = proc.stderr.strip().splitlines()[-1:] or [""]
        raise ExternalClassifierError(name, f"exited with status {proc.returncode} {detail[0]}".rstrip())

    lines = proc.stdout.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < len(statements):
        raise ExternalClassifierError(name, f"short output: {len(lines)} labels for {len(statements)} statements")
    if len(lines) > len(statements):
        raise ExternalClassifierError(name, f"overlong output: {len(lines)} labels for {len(statements)} statements")
    labels = []
    for row, line in enumerate(lines, start=1):
        try:
            labels.append(parse_label(line, row=row))
        except UnknownLabelError as exc:
            raise ExternalClassifierError(name, str(exc)) from exc
    return labels


class ExternalClassifier:
    kind = "external"

    def __init__(self, name: str, command: str | Sequence[str], timeout: Optional[float] = None):
        self.name = name
        self.argv = as_argv(command)
        self.timeout = timeout
        # one in-flight batch per adapter
        self._lock = threading.Lock()

    def classify_batch(self, statements: Sequence[Statement]) -> list[ToolVote]:
        if not statements:
            return []
        with self._lock:
            labels = classify_external(self.argv, statements, name=self.name, timeout=self.timeout)
        return [ToolVote(self.name, label) for label in labels]
