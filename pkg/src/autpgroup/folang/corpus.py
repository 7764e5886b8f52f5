"""Loader for the shipped formula corpus."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .parser import parse


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    file: str
    params: tuple[str, ...]
    source: str
    primitives: tuple[str, ...]
    guards: tuple[str, ...]
    register: bool
    text: str

    @property
    def formula(self):
        return _parse_cached(self.text)


@lru_cache(maxsize=None)
def _parse_cached(text: str):
    return parse(text)


def _dir():
    return resources.files(__package__) / "corpus"


@lru_cache(maxsize=None)
def load_corpus() -> dict[str, CorpusEntry]:
    base = _dir()
    manifest = json.loads((base / "manifest.json").read_text(encoding="utf-8"))
    out = {}
    for d in manifest["formulas"]:
        text = (base / d["file"]).read_text(encoding="utf-8")
        out[d["name"]] = CorpusEntry(d["name"], d["file"], tuple(d["params"]), d["source"],
                                     tuple(d["primitives"]), tuple(d["guards"]), d["register"], text)
    return out


def corpus_entry(name: str) -> CorpusEntry:
    try:
        return load_corpus()[name]
    except KeyError:
        raise KeyError(f"no corpus formula named {name!r}") from None
