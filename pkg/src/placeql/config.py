"""Configuration: data paths and mapping thresholds.

Defaults point at the bundled package data; a JSON config file or CLI flags
override individual fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path

from .errors import ConfigError


def _data_path(*parts) -> str:
    base = resources.files("placeql.data")
    for part in parts:
        base = base.joinpath(part)
    return str(base)


@dataclass
class Config:
    lexicon_dir: str = ""
    vectors_path: str = ""
    kb_path: str = ""
    relations_path: str = ""
    corpus_dir: str = ""
    label_threshold: float = 0.85
    glossary_threshold: float = 0.70
    ascii_logic: bool = False

    def __post_init__(self):
        self.lexicon_dir = self.lexicon_dir or _data_path("lexicons")
        self.vectors_path = self.vectors_path or _data_path("vectors.tsv")
        self.kb_path = self.kb_path or _data_path("toykb.tsv")
        self.relations_path = self.relations_path or _data_path("relations.tsv")
        self.corpus_dir = self.corpus_dir or _data_path("corpus")

    @classmethod
    def load(cls, path) -> "Config":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError("cannot read config %s: %s" % (path, exc)) from exc
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError("unknown config keys: %s" % sorted(unknown))
        return cls(**raw)
