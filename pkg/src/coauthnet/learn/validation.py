"""k-fold cross-validation."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from ..errors import TooFewSamples
from ..features import FeatureMatrix
from .forest import RandomForest, confusion_matrix
from .result import AnalysisResult


def make_folds(labels: Sequence, k: int = 10, seed: int = 0, stratified: bool = True) -> list[np.ndarray]:
    """Seeded partition of sample indices into `k` test folds.

    Stratified folds deal each class's shuffled samples round-robin,
    continuing from where the previous class stopped, so both the fold
    sizes and every class's per-fold counts differ by at most one.
    """
    m = len(labels)
    if k < 2:
        raise ValueError("k must be >= 2")
    if m < k:
        raise TooFewSamples(f"{m} samples cannot fill {k} folds")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    if stratified:
        by_class: dict = {}
        for i, y in enumerate(labels):
            by_class.setdefault(y, []).append(i)
        offset = 0
        for y in sorted(by_class, key=str):
            idx = rng.permutation(by_class[y])
            for j, i in enumerate(idx):
                folds[(offset + j) % k].append(int(i))
            offset += len(idx)
    else:
        for j, i in enumerate(rng.permutation(m)):
            folds[j % k].append(int(i))
    return [np.array(sorted(f), dtype=np.int64) for f in folds]


def fold_seed(seed: int, fold: int) -> int:
    return int(np.random.SeedSequence([seed, fold]).generate_state(1)[0])


Learner = Callable[[int], object]


def forest_learner(trees: int = 100) -> Learner:
    """Factory producing a fresh :class:`RandomForest` for a given seed."""
    return lambda seed: RandomForest(trees, seed)


def cross_validate(
    m: FeatureMatrix,
    learner: Learner | None = None,
    k: int = 10,
    seed: int = 0,
    stratified: bool = True,
    n_jobs: int = 1,
) -> AnalysisResult:
    """Pooled k-fold accuracy and confusion matrix.

    `learner(seed)` must return an object with ``fit(x, labels)`` and
    ``predict(x)``; each fold gets a seed derived from `seed` and the fold
    number.
    """
    learner = learner or forest_learner()
    folds = make_folds(m.labels, k, seed, stratified)
    everything = np.arange(m.n_samples)

    def run(i: int):
        test = folds[i]
        train = np.setdiff1d(everything, test)
        model = learner(fold_seed(seed, i))
        model.fit(m.rows[train], [m.labels[j] for j in train])
        return test, model.predict(m.rows[test])

    if n_jobs > 1:
        with ThreadPoolExecutor(n_jobs) as pool:
            outcomes = list(pool.map(run, range(k)))
    else:
        outcomes = [run(i) for i in range(k)]

    predictions: list = [None] * m.n_samples
    for test, pred in outcomes:
        for j, p in zip(test, pred):
            predictions[j] = p
    classes = m.scheme.classes
    cm = confusion_matrix(m.labels, predictions, classes)
    return AnalysisResult(
        "RandomForest",
        {},
        accuracy=float(np.trace(cm) / cm.sum()),
        confusion=cm,
        classes=classes,
        seed=seed,
        params={"folds": k, "stratified": stratified},
        extra={"fold_sizes": [len(f) for f in folds], "predictions": predictions},
    )
