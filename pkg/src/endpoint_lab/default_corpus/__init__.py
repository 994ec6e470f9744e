"""The default function corpus."""

from __future__ import annotations

from importlib import resources
import json

from endpoint_lab.corpus import Corpus, CorpusEntry

from .const import DEFAULT_ORDER, FunctionKey, FunctionName


def _load_entry(key: str) -> CorpusEntry:
    path = resources.files(__package__) / "functions" / f"{key}.json"
    text = path.read_text(encoding="utf-8")
    return CorpusEntry.from_json(json.loads(text))


default_corpus = Corpus("Default", [_load_entry(key) for key in DEFAULT_ORDER])

__all__ = [
    "FunctionKey",
    "FunctionName",
    "default_corpus",
]
