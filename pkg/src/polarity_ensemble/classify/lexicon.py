"""Tab-separated sentiment lexicons and the shared tokenizer.

File format, one entry per line (``#`` starts a comment line)::

    term<TAB>value[<TAB>booster|negator]

``value`` is an integer strength in [-5, -1] or [1, 5] for strength lexicons
and a decimal valence in [-1, 1] for valence/pattern lexicons. On a
``booster`` line of a valence lexicon the value is the multiplier applied to
the next scored term; strength boosters always add one step, so their value
column is ignored, as is the value of ``negator`` lines. Pattern lexicon terms
may be multi-word phrases separated by single spaces.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Literal, Mapping, Optional

LexiconKind = Literal["strength", "valence"]
FLAGS = ("booster", "negator")

_STRIP = string.punctuation + "“”„‘’«»…–—"


class LexiconError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    """Whitespace split, outer punctuation stripped, lowercased."""
    tokens = []
    for raw in text.split():
        tok = raw.strip(_STRIP).lower()
        if tok:
            tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class LexiconEntry:
    term: str
    value: float
    booster: Optional[float] = None
    negator: bool = False

    @property
    def scored(self) -> bool:
        return self.booster is None and not self.negator


class Lexicon(Mapping[str, LexiconEntry]):
    def __init__(self, entries: Mapping[str, LexiconEntry], kind: LexiconKind, name: str = ""):
        self.kind = kind
        self.name = name
        self._entries = dict(entries)
        self.max_phrase = max((len(t.split(" ")) for t in self._entries), default=1)

    def __getitem__(self, term: str) -> LexiconEntry:
        return self._entries[term]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"Lexicon({self.name!r}, kind={self.kind}, {len(self)} entries)"

    @classmethod
    def from_lines(cls, lines, kind: LexiconKind, name: str = "") -> "Lexicon":
        entries: dict[str, LexiconEntry] = {}
        for lineno, line in enumerate(lines, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise LexiconError(f"{name}:{lineno}: expected term<TAB>value[<TAB>flag]")
            term = " ".join(tokenize(parts[0]))
            if not term:
                raise LexiconError(f"{name}:{lineno}: empty term")
            if term in entries:
                raise LexiconError(f"{name}:{lineno}: duplicate term {term!r}")
            flag = parts[2].strip() if len(parts) == 3 else ""
            if flag and flag not in FLAGS:
                raise LexiconError(f"{name}:{lineno}: unknown flag {flag!r}")
            entries[term] = _make_entry(term, parts[1].strip(), flag, kind, f"{name}:{lineno}")
        return cls(entries, kind, name)

    @classmethod
    def load(cls, path: str | Path, kind: LexiconKind) -> "Lexicon":
        path = Path(path)
        with path.open(encoding="utf-8") as fh:
            return cls.from_lines(fh, kind, name=path.name)


def _make_entry(term: str, value: str, flag: str, kind: LexiconKind, where: str) -> LexiconEntry:
    try:
        number = float(value)
    except ValueError:
        raise LexiconError(f"{where}: value {value!r} is not a number") from None
    if flag == "negator":
        return LexiconEntry(term, 0.0, negator=True)
    if flag == "booster":
        if kind == "valence" and number <= 0:
            raise LexiconError(f"{where}: booster multiplier must be positive")
        return LexiconEntry(term, 0.0, booster=number if kind == "valence" else 1.0)
    if kind == "strength":
        if not number.is_integer() or not 1 <= abs(number) <= 5:
            raise LexiconError(f"{where}: strength must be an integer in [-5,-1] or [1,5]")
        return LexiconEntry(term, int(number))
    if not -1.0 <= number <= 1.0:
        raise LexiconError(f"{where}: valence must lie in [-1, 1]")
    return LexiconEntry(term, number)
