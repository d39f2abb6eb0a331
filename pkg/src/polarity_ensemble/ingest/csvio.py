"""CSV statement input, label columns, and the results file."""

from __future__ import annotations

import csv
import logging
import os
import tempfile
from pathlib import Path
from typing import Iterable, Optional, Sequence

from ..core import (
    EnsembleResult,
    Polarity,
    Statement,
    ToolVote,
    VoteSet,
    format_label,
    parse_label,
)
from ..ensemble import median_star

log = logging.getLogger(__name__)

TEXT_COLUMN = "Text"
LABEL_COLUMN = "Polarity"
RESULT_HEADER = ("id", "text", "tool1", "tool2", "tool3", "tool4", "combined")
TOOL_COLUMNS = RESULT_HEADER[2:6]


class SchemaError(ValueError):
    pass


class CsvParseError(ValueError):
    def __init__(self, path, row: int, message: str):
        self.row = row
        super().__init__(f"{path}: row {row}: {message}")


def _find_column(header: Sequence[str], wanted: str) -> Optional[int]:
    if wanted in header:
        return header.index(wanted)
    folded = [h.strip().lower() for h in header]
    if wanted.lower() in folded:
        return folded.index(wanted.lower())
    return None


def _rows(path: str | Path) -> tuple[list[str], Iterable[tuple[int, list[str]]]]:
    """Header and (row number, fields) pairs; row 1 is the header."""
    fh = open(path, newline="", encoding="utf-8-sig")
    reader = csv.reader(fh, strict=True)
    try:
        header = next(reader)
    except StopIteration:
        fh.close()
        raise SchemaError(f"{path}: empty file, header row required") from None
    except csv.Error as exc:
        fh.close()
        raise CsvParseError(path, 1, str(exc)) from exc

    def body():
        with fh:
            row = 1
            while True:
                try:
                    fields = next(reader)
                except StopIteration:
                    return
                except csv.Error as exc:
                    raise CsvParseError(path, row + 1, str(exc)) from exc
                row += 1
                if not fields:
                    continue
                if len(fields) != len(header):
                    raise CsvParseError(path, row, f"expected {len(header)} fields, got {len(fields)}")
                yield row, fields

    return header, body()


def read_csv(path: str | Path, start_id: int = 0, column: str = TEXT_COLUMN) -> list[Statement]:
    header, rows = _rows(path)
    col = _find_column(header, column)
    if col is None:
        rows.close()
        raise SchemaError(f"{path}: no {column!r} column; available columns: {', '.join(header) or '(none)'}")
    statements = []
    skipped = 0
    for _, fields in rows:
        text = fields[col]
        if not text.strip():
            skipped += 1
            continue
        statements.append(Statement(id=start_id + len(statements), text=text, source="csv"))
    if skipped:
        log.warning("%s: skipped %d row(s) with empty text", path, skipped)
    return statements


def read_labels(path: str | Path, column: Optional[str] = None,
                candidates: Sequence[str] = (LABEL_COLUMN, "combined", "label")) -> list[Polarity]:
    """Every data row's label from ``column`` (or the first candidate present)."""
    header, rows = _rows(path)
    names = [column] if column else list(candidates)
    col = next((c for c in (_find_column(header, n) for n in names) if c is not None), None)
    if col is None:
        rows.close()
        raise SchemaError(
            f"{path}: none of the label columns {names} found; available columns: {', '.join(header)}"
        )
    return [parse_label(fields[col], row=row) for row, fields in rows]


def _atomic_write(path: str | Path, write_rows) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            write_rows(csv.writer(fh))
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_results(results: Sequence[EnsembleResult], path: str | Path) -> None:
    def rows(writer):
        writer.writerow(RESULT_HEADER)
        for r in results:
            writer.writerow(
                [r.statement.id, r.statement.text]
                + [format_label(v.label) for v in r.votes]
                + [format_label(r.combined)]
            )

    _atomic_write(path, rows)


def read_results(path: str | Path) -> list[EnsembleResult]:
    """Load a results file written by :func:`write_results`.

    Tool identifiers come back as the positional column names and raw scores
    are not stored, so only ids, text and labels survive the round trip.
    """
    header, rows = _rows(path)
    if tuple(header) != RESULT_HEADER:
        rows.close()
        raise SchemaError(f"{path}: expected header {','.join(RESULT_HEADER)}, got {','.join(header)}")
    out = []
    for row, fields in rows:
        try:
            sid = int(fields[0])
        except ValueError:
            raise CsvParseError(path, row, f"id {fields[0]!r} is not an integer") from None
        votes = VoteSet(tuple(
            ToolVote(tool, parse_label(label, row=row))
            for tool, label in zip(TOOL_COLUMNS, fields[2:6])
        ))
        combined = parse_label(fields[6], row=row)
        if combined is not median_star(votes.labels):
            raise CsvParseError(path, row, "combined label does not follow from the four tool labels")
        out.append(EnsembleResult(Statement(sid, fields[1], "csv"), votes, combined))
    return out
