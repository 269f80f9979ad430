"""Feature-subset selection: SFFS over mean conditional entropy, and
correlation-based subset merit searched best-first."""
from __future__ import annotations

import heapq
import math
from typing import Sequence

import numpy as np

from ..errors import DegenerateInput, EmptySubset
from ..features import FeatureMatrix
from .correlation import spearman
from .result import AnalysisResult

# criterion differences below this are treated as ties
EPS = 1e-12


def discretize(x: np.ndarray, bins: int = 3) -> np.ndarray:
    """Equal-width bin codes over [0, 1]; 1.0 falls in the top bin."""
    codes = np.floor(np.clip(x, 0.0, 1.0) * bins).astype(np.int64)
    return np.minimum(codes, bins - 1)


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _label_codes(labels: Sequence) -> np.ndarray:
    classes = sorted(set(labels), key=str)
    lookup = {c: i for i, c in enumerate(classes)}
    return np.array([lookup[y] for y in labels], dtype=np.int64)


def conditional_entropy(codes: np.ndarray, y: np.ndarray) -> float:
    """H(y | pattern) in bits for integer pattern columns `codes` (m x d).

    Per-pattern label counts are put in canonical order before summing, so
    two subsets inducing the same partition give bit-identical values.
    """
    m = len(y)
    if codes.shape[1] == 0:
        return _entropy(np.bincount(y))
    _, pattern = np.unique(codes, axis=0, return_inverse=True)
    pattern = pattern.reshape(-1)
    n_classes = int(y.max()) + 1
    table = np.zeros((int(pattern.max()) + 1, n_classes), dtype=np.int64)
    np.add.at(table, (pattern, y), 1)
    groups = sorted(tuple(sorted(row.tolist())) for row in table)
    return math.fsum(sum(g) / m * _entropy(np.array(g)) for g in groups)


def mean_conditional_entropy(m: FeatureMatrix, feature_subset: Sequence[str], bins: int = 3) -> float:
    """Entropy of the class given the joint bin pattern of the chosen features."""
    if not feature_subset:
        raise EmptySubset("mean conditional entropy needs at least one feature")
    idx = [m.column_names.index(f) for f in feature_subset]
    return conditional_entropy(discretize(m.rows[:, idx], bins), _label_codes(m.labels))


class _Criterion:
    """Cached criterion over column-index subsets (empty subset allowed)."""

    def __init__(self, x: np.ndarray, labels: Sequence, bins: int):
        self.codes = discretize(x, bins)
        self.y = _label_codes(labels)
        self.cache: dict[frozenset, float] = {}

    def __call__(self, subset) -> float:
        key = frozenset(subset)
        if key not in self.cache:
            cols = sorted(key)
            self.cache[key] = conditional_entropy(self.codes[:, cols], self.y)
        return self.cache[key]


def sffs_indices(x: np.ndarray, labels: Sequence, d_max: int, bins: int = 3) -> tuple[list[int], float]:
    """Sequential forward floating selection minimizing conditional entropy.

    Returns the best subset found over all visited sizes (smallest size
    among ties) and its criterion value.  Ties between candidate features
    go to the lowest column index.
    """
    n = x.shape[1]
    if not 0 <= d_max <= n:
        raise ValueError(f"d_max={d_max} outside [0, {n}]")
    crit = _Criterion(x, labels, bins)
    if d_max == 0:
        return [], crit(())
    best_j: dict[int, float] = {}
    best_s: dict[int, list[int]] = {}
    s: list[int] = []
    while len(s) < d_max:
        rest = [f for f in range(n) if f not in s]
        added = min(rest, key=lambda f: (crit(s + [f]), f))
        s = s + [added]
        k = len(s)
        if k not in best_j or crit(s) < best_j[k] - EPS:
            best_j[k], best_s[k] = crit(s), list(s)
        else:
            s = list(best_s[k])
        # conditional exclusion
        first = True
        while len(s) > 1:
            removed = min(s, key=lambda f: (crit([g for g in s if g != f]), f))
            if first and removed == added:
                break
            first = False
            reduced = [g for g in s if g != removed]
            if crit(reduced) < best_j[len(reduced)] - EPS:
                s = reduced
                best_j[len(s)], best_s[len(s)] = crit(s), list(s)
            else:
                break
    k_best = min(best_j, key=lambda k: (best_j[k], k))
    # prefer the smallest size whose value ties the best
    for k in sorted(best_j):
        if best_j[k] <= best_j[k_best] + EPS:
            k_best = k
            break
    return best_s[k_best], best_j[k_best]


def sffs(
    m: FeatureMatrix,
    d_max: int,
    folds: int = 10,
    seed: int = 0,
    bins: int = 3,
    stratified: bool = True,
) -> AnalysisResult:
    """SFFS on each training split of a k-fold partition plus the full data.

    The per-feature score is the fraction of folds whose selected subset
    contains the feature.
    """
    from .validation import make_folds

    names = m.column_names
    freq = np.zeros(len(names))
    n_folds = 0
    if d_max > 0:
        for test_idx in make_folds(m.labels, folds, seed, stratified):
            train = np.setdiff1d(np.arange(m.n_samples), test_idx)
            chosen, _ = sffs_indices(m.rows[train], [m.labels[i] for i in train], d_max, bins)
            freq[chosen] += 1
            n_folds += 1
    else:
        n_folds = folds
    chosen, value = sffs_indices(m.rows, m.labels, d_max, bins)
    return AnalysisResult(
        "SFFS",
        {name: float(freq[j] / n_folds) for j, name in enumerate(names)},
        selected_features=[names[j] for j in chosen],
        classes=m.scheme.classes,
        seed=seed,
        params={"d_max": d_max, "folds": folds, "bins": bins, "stratified": stratified},
        extra={"criterion": value},
    )


# --------------------------------------------------------------------------
# correlation-based subset selection


def symmetric_uncertainty(a: np.ndarray, b: np.ndarray) -> float:
    """2 * I(a; b) / (H(a) + H(b)) for integer-coded vectors."""
    ha = _entropy(np.unique(a, return_counts=True)[1])
    hb = _entropy(np.unique(b, return_counts=True)[1])
    if ha + hb == 0:
        return 0.0
    h_ab = conditional_entropy(a.reshape(-1, 1), b) + _entropy(np.unique(a, return_counts=True)[1])
    return 2.0 * (ha + hb - h_ab) / (ha + hb)


def correlation_matrices(
    m: FeatureMatrix, correlation: str = "spearman", bins: int = 3
) -> tuple[np.ndarray, np.ndarray]:
    """Absolute feature-class and feature-feature correlations.

    Undefined correlations (constant columns) count as 0.
    """
    n = len(m.column_names)
    r_cf = np.zeros(n)
    r_ff = np.eye(n)
    if correlation == "spearman":
        y = m.numeric_labels()

        def corr(a, b):
            try:
                return abs(spearman(a, b))
            except DegenerateInput:
                return 0.0

        cols = [m.rows[:, j] for j in range(n)]
    elif correlation == "symmetric_uncertainty":
        y = _label_codes(m.labels)
        corr = symmetric_uncertainty
        cols = [discretize(m.rows[:, j], bins) for j in range(n)]
    else:
        raise ValueError(f"unknown correlation {correlation!r}")
    for j in range(n):
        r_cf[j] = corr(cols[j], y)
        for k in range(j + 1, n):
            r_ff[j, k] = r_ff[k, j] = corr(cols[j], cols[k])
    return r_cf, r_ff


def cfs_merit(subset: Sequence[int], r_cf: np.ndarray, r_ff: np.ndarray) -> float:
    """k * mean(r_cf) / sqrt(k + k (k - 1) * mean(r_ff)) over `subset`."""
    k = len(subset)
    if k == 0:
        return 0.0
    idx = list(subset)
    mean_cf = float(np.mean(r_cf[idx]))
    if k == 1:
        mean_ff = 0.0
    else:
        block = r_ff[np.ix_(idx, idx)]
        mean_ff = float((block.sum() - np.trace(block)) / (k * (k - 1)))
    denom = math.sqrt(k + k * (k - 1) * mean_ff)
    return k * mean_cf / denom if denom > 0 else 0.0


def best_first_indices(r_cf: np.ndarray, r_ff: np.ndarray, stall_limit: int = 5) -> tuple[list[int], float]:
    """Forward best-first search over subsets, stopping after `stall_limit`
    consecutive expansions that fail to improve the best merit."""
    n = len(r_cf)
    start: tuple[int, ...] = ()
    heap = [(-0.0, 0, start)]
    visited = {frozenset()}
    best, best_merit = start, 0.0
    stall = 0
    while heap and stall < stall_limit:
        _, _, subset = heapq.heappop(heap)
        improved = False
        for f in range(n):
            if f in subset:
                continue
            cand = subset + (f,)
            key = frozenset(cand)
            if key in visited:
                continue
            visited.add(key)
            merit = cfs_merit(cand, r_cf, r_ff)
            heapq.heappush(heap, (-merit, len(cand), cand))
            if merit > best_merit + EPS:
                best, best_merit = cand, merit
                improved = True
        stall = 0 if improved else stall + 1
    return list(best), best_merit


def cfs_best_first(
    m: FeatureMatrix, stall_limit: int = 5, correlation: str = "spearman", bins: int = 3
) -> AnalysisResult:
    """Correlation-based feature subset selection with best-first search."""
    if not m.column_names:
        raise ValueError("at least one feature is required")
    r_cf, r_ff = correlation_matrices(m, correlation, bins)
    chosen, merit = best_first_indices(r_cf, r_ff, stall_limit)
    members = set(chosen)
    return AnalysisResult(
        "CFS",
        {name: float(j in members) for j, name in enumerate(m.column_names)},
        selected_features=[m.column_names[j] for j in chosen],
        classes=m.scheme.classes,
        params={"stall_limit": stall_limit, "correlation": correlation},
        extra={"merit": merit},
    )
