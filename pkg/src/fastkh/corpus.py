"""The bundled diagram corpus (prime knots up to 8 crossings and friends)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .planar import Diagram, build_diagram

__all__ = ["CorpusEntry", "load_corpus"]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str
    knot: str
    diagram: Diagram


@lru_cache(maxsize=1)
def load_corpus() -> tuple[CorpusEntry, ...]:
    text = resources.files("fastkh").joinpath("data/corpus.json").read_text()
    out = []
    for e in json.loads(text)["diagrams"]:
        d = build_diagram(e["pd"]["crossings"], e["pd"].get("loops", []))
        out.append(CorpusEntry(e["name"], e["kind"], e["knot"], d))
    return tuple(out)
