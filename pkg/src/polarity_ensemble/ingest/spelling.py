"""Dictionary spelling correction and capitalization for transcripts."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Mapping, Optional

DEFAULT_MIN_FREQUENCY = 5

_TOKEN = re.compile(r"^(\W*)(.*?)(\W*)$", re.DOTALL)
_SPACE = re.compile(r"(\s+)")


@dataclass
class Dictionary:
    frequencies: dict[str, int] = field(default_factory=dict)
    nouns: frozenset[str] = frozenset()

    def __post_init__(self):
        self._alphabet = "".join(sorted({c for w in self.frequencies for c in w}))

    def __contains__(self, word: str) -> bool:
        return word in self.frequencies

    def __len__(self) -> int:
        return len(self.frequencies)

    @classmethod
    def load(cls, path: str | Path) -> "Dictionary":
        freqs: dict[str, int] = {}
        nouns = set()
        with Path(path).open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\r\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) < 2:
                    raise ValueError(f"{path}:{lineno}: expected word<TAB>frequency[<TAB>noun]")
                word = parts[0].strip().lower()
                freqs[word] = int(parts[1])
                if len(parts) > 2 and parts[2].strip() == "noun":
                    nouns.add(word)
        return cls(freqs, frozenset(nouns))

    def edits1(self, word: str) -> set[str]:
        """Dictionary words one deletion, insertion, substitution or swap away."""
        letters = self._alphabet
        splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
        deletes = {a + b[1:] for a, b in splits if b}
        swaps = {a + b[1] + b[0] + b[2:] for a, b in splits if len(b) > 1 and b[0] != b[1]}
        replaces = {a + c + b[1:] for a, b in splits if b for c in letters if c != b[0]}
        inserts = {a + c + b for a, b in splits for c in letters}
        return {w for w in deletes | swaps | replaces | inserts if w in self.frequencies and w != word}


def _match_case(template: str, word: str) -> str:
    if len(template) > 1 and template.isupper():
        return word.upper()
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def normalize_spelling(
    text: str,
    dictionary: Optional[Dictionary] = None,
    lang: Literal["en", "de"] = "en",
    min_frequency: int = DEFAULT_MIN_FREQUENCY,
) -> str:
    """Correct unknown words, capitalize German nouns and the first letter.

    An out-of-dictionary word is replaced only when exactly one dictionary
    word lies at edit distance 1 and its frequency exceeds ``min_frequency``.
    """
    dictionary = dictionary or Dictionary()
    out = []
    for k, raw in enumerate(_SPACE.split(text)):
        if k % 2:
            out.append(raw)
            continue
        lead, core, trail = _TOKEN.match(raw).groups()
        if core and core.isalpha() and len(dictionary):
            lower = core.lower()
            if lower not in dictionary:
                candidates = dictionary.edits1(lower)
                if len(candidates) == 1:
                    (best,) = candidates
                    if dictionary.frequencies[best] > min_frequency:
                        core = _match_case(core, best)
                        lower = best
            if lang == "de" and lower in dictionary.nouns:
                core = core[:1].upper() + core[1:]
        out.append(lead + core + trail)
    result = "".join(out)
    for i, ch in enumerate(result):
        if ch.isalpha():
            return result[:i] + ch.upper() + result[i + 1:]
    return result


def load_dictionary(lang: str) -> Dictionary:
    from ..classify.config import data_path

    return Dictionary.load(data_path(f"{lang}_dictionary.tsv"))
