"""Line-oriented live input: one statement per non-empty line."""

from __future__ import annotations

import logging
import time
from typing import Callable, Iterator, TextIO

from ..core import Statement

log = logging.getLogger(__name__)


def read_live(
    stream: TextIO,
    start_id: int = 0,
    clock: Callable[[], float] = time.monotonic,
) -> Iterator[Statement]:
    """Yield statements as lines arrive, stamped with seconds since the start.

    A read failure ends the stream; statements already yielded stay valid.
    """
    t0 = clock()
    next_id = start_id
    while True:
        try:
            line = stream.readline()
        except (OSError, ValueError) as exc:
            log.error("live input failed: %s", exc)
            return
        if not line:
            return
        text = line.strip()
        if not text:
            continue
        yield Statement(id=next_id, text=text, source="live", start_time=clock() - t0)
        next_id += 1
