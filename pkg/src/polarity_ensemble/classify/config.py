"""Classifier quartet configuration.

A config file is TOML::

    language = "en"          # en | de
    realtime_slot = 3        # 0-based index of the fast slot
    valence_epsilon = 0.05

    [[slot]]
    name = "se-strength"
    kind = "strength"        # strength | valence | pattern | external
    lexicon = "builtin:en_strength_se.tsv"

    [[slot]]
    name = "my-tool"
    kind = "external"
    command = ["python3", "my_tool.py"]

Lexicon paths are resolved against the config file's directory; the
``builtin:`` prefix refers to the lexicons shipped with the package.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Literal, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..core import QUARTET_SIZE
from .external import ExternalClassifier, as_argv
from .lexicon import Lexicon
from .scorers import DEFAULT_EPSILON, PatternClassifier, StrengthClassifier, ValenceClassifier

SlotKind = Literal["strength", "valence", "pattern", "external"]
Language = Literal["en", "de"]
KINDS = ("strength", "valence", "pattern", "external")
LANGUAGES = ("en", "de")
BUILTIN = "builtin:"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SlotSpec:
    name: str
    kind: SlotKind
    lexicon: Optional[str] = None
    command: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"slot {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == "external":
            if not self.command:
                raise ConfigError(f"slot {self.name!r}: external slots need a command")
        elif not self.lexicon:
            raise ConfigError(f"slot {self.name!r}: {self.kind} slots need a lexicon")


@dataclass(frozen=True)
class ClassifierConfig:
    slots: tuple[SlotSpec, ...]
    realtime_slot: int = 3
    language: Language = "en"
    valence_epsilon: float = DEFAULT_EPSILON
    base_dir: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        if len(self.slots) != QUARTET_SIZE:
            raise ConfigError(f"exactly {QUARTET_SIZE} classifier slots required, got {len(self.slots)}")
        names = [s.name for s in self.slots]
        if len(set(names)) != len(names):
            raise ConfigError(f"slot names must be distinct: {names}")
        if not 0 <= self.realtime_slot < QUARTET_SIZE:
            raise ConfigError(f"realtime_slot {self.realtime_slot} is not a valid slot index")
        if self.language not in LANGUAGES:
            raise ConfigError(f"unsupported language {self.language!r}")
        if not self.valence_epsilon > 0:
            raise ConfigError("valence_epsilon must be positive")

    def with_slot(self, index: int, slot: SlotSpec) -> "ClassifierConfig":
        slots = list(self.slots)
        slots[index] = slot
        return ClassifierConfig(tuple(slots), self.realtime_slot, self.language,
                                self.valence_epsilon, self.base_dir)


def data_path(name: str) -> Path:
    return Path(str(resources.files("polarity_ensemble") / "data" / name))


_DEFAULT_SLOTS = {
    "en": (
        SlotSpec("se-strength", "strength", BUILTIN + "en_strength_se.tsv"),
        SlotSpec("strength", "strength", BUILTIN + "en_strength.tsv"),
        SlotSpec("pattern", "pattern", BUILTIN + "en_patterns.tsv"),
        SlotSpec("valence", "valence", BUILTIN + "en_valence.tsv"),
    ),
    "de": (
        SlotSpec("pattern", "pattern", BUILTIN + "de_patterns.tsv"),
        SlotSpec("valence-rules", "valence", BUILTIN + "de_valence_rules.tsv"),
        SlotSpec("strength", "strength", BUILTIN + "de_strength.tsv"),
        SlotSpec("valence", "valence", BUILTIN + "de_valence.tsv"),
    ),
}


def default_config(language: Language = "en") -> ClassifierConfig:
    if language not in _DEFAULT_SLOTS:
        raise ConfigError(f"unsupported language {language!r}")
    return ClassifierConfig(_DEFAULT_SLOTS[language], realtime_slot=3, language=language)


def load_config(path: str | Path) -> ClassifierConfig:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    slots = []
    for i, raw in enumerate(doc.get("slot", [])):
        command = raw.get("command", ())
        slots.append(SlotSpec(
            name=raw.get("name", f"tool{i + 1}"),
            kind=raw.get("kind", ""),
            lexicon=raw.get("lexicon"),
            command=tuple(as_argv(command)),
        ))
    return ClassifierConfig(
        slots=tuple(slots),
        realtime_slot=int(doc.get("realtime_slot", 3)),
        language=doc.get("language", "en"),
        valence_epsilon=float(doc.get("valence_epsilon", DEFAULT_EPSILON)),
        base_dir=str(path.resolve().parent),
    )


def resolve_lexicon(ref: str, base_dir: Optional[str]) -> Path:
    if ref.startswith(BUILTIN):
        return data_path(ref[len(BUILTIN):])
    p = Path(ref)
    if not p.is_absolute() and base_dir:
        p = Path(base_dir) / p
    return p


def build_slot(spec: SlotSpec, config: ClassifierConfig):
    if spec.kind == "external":
        return ExternalClassifier(spec.name, spec.command)
    path = resolve_lexicon(spec.lexicon, config.base_dir)
    try:
        lexicon = Lexicon.load(path, "strength" if spec.kind == "strength" else "valence")
    except OSError as exc:
        raise ConfigError(f"slot {spec.name!r}: cannot read lexicon {path}: {exc}") from exc
    if spec.kind == "strength":
        return StrengthClassifier(spec.name, lexicon)
    if spec.kind == "pattern":
        return PatternClassifier(spec.name, lexicon, config.valence_epsilon)
    return ValenceClassifier(spec.name, lexicon, config.valence_epsilon)


@lru_cache(maxsize=16)
def load_quartet(config: ClassifierConfig) -> tuple:
    return tuple(build_slot(spec, config) for spec in config.slots)
