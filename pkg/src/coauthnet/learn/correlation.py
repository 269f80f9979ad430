"""Rank correlation with tie handling."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import DegenerateInput
from ..features import FeatureMatrix
from ..metrics import Missing, is_missing
from .result import AnalysisResult


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks; tied values share the mean of the ranks they span."""
    x = np.asarray(values, dtype=float)
    order = np.argsort(x, kind="mergesort")
    sorted_x = x[order]
    ranks = np.empty(len(x))
    start = 0
    n = len(x)
    while start < n:
        stop = start + 1
        while stop < n and sorted_x[stop] == sorted_x[start]:
            stop += 1
        ranks[order[start:stop]] = (start + stop + 1) / 2.0
        start = stop
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation of the average ranks of `x` and `y`."""
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if len(x) < 2:
        raise DegenerateInput("need at least two observations")
    rx = average_ranks(x)
    ry = average_ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    sxx = float(rx @ rx)
    syy = float(ry @ ry)
    if sxx == 0 or syy == 0:
        raise DegenerateInput("zero rank variance")
    r = float(rx @ ry) / np.sqrt(sxx * syy)
    return float(min(1.0, max(-1.0, r)))


def correlation_table(m: FeatureMatrix) -> AnalysisResult:
    """Spearman correlation of every feature with the ordinal class label,
    ordered by absolute value (undefined entries last)."""
    y = m.numeric_labels()
    scores: dict[str, float | Missing] = {}
    for j, name in enumerate(m.column_names):
        try:
            scores[name] = spearman(m.rows[:, j], y)
        except DegenerateInput:
            scores[name] = Missing("degenerate")
    order = sorted(
        scores,
        key=lambda k: (is_missing(scores[k]), -abs(scores[k]) if not is_missing(scores[k]) else 0.0),
    )
    return AnalysisResult("Spearman", {k: scores[k] for k in order}, classes=m.scheme.classes)
