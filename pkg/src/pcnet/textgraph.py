"""Word co-occurrence networks and graph-based keyword extraction.

Documents arrive pre-processed: a ``<doc>.tokens`` file holds the filtered,
stemmed tokens in text order (whitespace separated) and an optional
``<doc>.gold`` file holds the gold keyword stems.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ensemble import PcConfig, TriggerPolicy, extract_trigger_set, pc_scores
from .errors import DegenerateInputError
from .graph import Graph
from .scoring import score

DEFAULT_WINDOW = 5


@dataclass
class TokenDocument:
    doc_id: str
    tokens: list[str]
    gold: set[str] | None = field(default=None)

    def __post_init__(self):
        if any(not t for t in self.tokens):
            raise ValueError(f"{self.doc_id}: empty token")


def build_cooccurrence_graph(doc: TokenDocument, window: int = DEFAULT_WINDOW) -> Graph:
    """One vertex per distinct token (numbered by first occurrence); edge weight counts
    the position pairs ``i < j < i + window`` holding the two terms."""
    if window < 2:
        raise ValueError("window must be >= 2")
    vocab: dict[str, int] = {}
    ids = [vocab.setdefault(t, len(vocab)) for t in doc.tokens]
    if len(vocab) < 2:
        raise DegenerateInputError(f"{doc.doc_id}: fewer than two distinct tokens")
    us, vs = [], []
    for i, a in enumerate(ids):
        for b in ids[i + 1 : i + window]:
            if a != b:
                us.append(a)
                vs.append(b)
    return Graph.from_arrays(len(vocab), us, vs, labels=list(vocab))


def extract_keywords(
    g: Graph,
    scorer: str,
    pc: PcConfig | None = None,
    policy: TriggerPolicy | None = None,
) -> set[str]:
    """Terms of the vertices selected from base scores, or P&C scores when ``pc`` is given.

    Default selection is the main core after ceiling for ``cu``/``cw`` and the
    top third for ``pr``.
    """
    if g.labels is None:
        raise ValueError("graph has no vertex labels")
    if policy is None:
        policy = TriggerPolicy.default_for(scorer, setting="keywords")
    if pc is None:
        s = score(g, scorer)
    else:
        s = pc_scores(g, PcConfig(pc.M, pc.perturb, scorer, pc.master_seed))
    return {g.labels[i] for i in extract_trigger_set(s, policy).tolist()}


# ---------------------------------------------------------------- corpus I/O


def read_tokens(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().split()


def load_corpus(directory) -> list[TokenDocument]:
    """All ``*.tokens`` files in ``directory`` (sorted by name) with their ``.gold`` sidecars."""
    d = Path(directory)
    docs = []
    for p in sorted(d.glob("*.tokens")):
        gold_path = p.with_suffix(".gold")
        gold = set(read_tokens(gold_path)) if gold_path.exists() else None
        docs.append(TokenDocument(p.stem, read_tokens(p), gold))
    if not docs:
        raise FileNotFoundError(f"no .tokens files in {d}")
    return docs


def write_keys(directory, doc_id: str, terms) -> None:
    os.makedirs(directory, exist_ok=True)
    with open(Path(directory) / f"{doc_id}.keys", "w", encoding="utf-8") as fh:
        for t in sorted(terms):
            fh.write(t + "\n")


def corpus_stats(graphs: list[Graph]) -> dict:
    return {
        "docs": len(graphs),
        "mean_n": float(np.mean([g.n for g in graphs])),
        "mean_m": float(np.mean([g.m for g in graphs])),
    }
