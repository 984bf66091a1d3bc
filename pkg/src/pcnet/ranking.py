from __future__ import annotations

import numpy as np


def rank_from_scores(scores) -> np.ndarray:
    """Vertex ids ordered best first: descending score, ties by ascending id."""
    values = np.asarray(getattr(scores, "values", scores), dtype=np.float64)
    if np.isnan(values).any():
        raise ValueError("scores contain NaN")
    # lexsort sorts by the last key first
    return np.lexsort((np.arange(values.size), -values))


def top_k(scores, k: int) -> np.ndarray:
    return rank_from_scores(scores)[:k]
