"""Random forest of Gini decision trees, written against numpy.

Feature importance is the share of split nodes (over the whole forest) that
test each feature.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from ..errors import SingleClassInput
from ..features import FeatureMatrix
from .result import AnalysisResult


def _gini_best_split(x: np.ndarray, onehot: np.ndarray) -> tuple[float, float] | None:
    """Best (weighted Gini, threshold) for one feature, or None if constant.

    Candidate thresholds are midpoints between consecutive distinct values;
    the lowest threshold wins ties.
    """
    order = np.argsort(x, kind="mergesort")
    xs = x[order]
    valid = np.nonzero(xs[1:] != xs[:-1])[0]
    if valid.size == 0:
        return None
    n = len(xs)
    left = np.cumsum(onehot[order], axis=0)[valid]
    total = onehot.sum(axis=0)
    right = total - left
    n_left = (valid + 1).astype(float)
    n_right = n - n_left
    gini_left = 1.0 - ((left / n_left[:, None]) ** 2).sum(axis=1)
    gini_right = 1.0 - ((right / n_right[:, None]) ** 2).sum(axis=1)
    weighted = (n_left * gini_left + n_right * gini_right) / n
    i = int(np.argmin(weighted))
    pos = valid[i]
    return float(weighted[i]), float((xs[pos] + xs[pos + 1]) / 2.0)


class DecisionTree:
    """Unpruned CART-style classification tree on integer class codes.

    Samples with ``x[feature] <= threshold`` go left.  Leaves predict the
    majority class, ties going to the lowest class code.
    """

    def __init__(self, max_features: int | None = None, rng: np.random.Generator | None = None):
        self.max_features = max_features
        self.rng = rng or np.random.default_rng(0)

    def fit(self, x: np.ndarray, y: np.ndarray, n_classes: int) -> "DecisionTree":
        self.n_classes = n_classes
        n_features = x.shape[1]
        mf = n_features if self.max_features is None else min(self.max_features, n_features)
        onehot = np.eye(n_classes, dtype=np.int64)[y]
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[int] = []

        def new_node(idx: np.ndarray) -> int:
            counts = np.bincount(y[idx], minlength=n_classes)
            self.feature.append(-1)
            self.threshold.append(0.0)
            self.left.append(-1)
            self.right.append(-1)
            self.value.append(int(np.argmax(counts)))
            return len(self.feature) - 1

        root = new_node(np.arange(len(y)))
        stack = [(root, np.arange(len(y)))]
        while stack:
            node, idx = stack.pop()
            if len(idx) < 2 or np.all(y[idx] == y[idx[0]]):
                continue
            best = None
            for f in self.rng.choice(n_features, size=mf, replace=False):
                found = _gini_best_split(x[idx, f], onehot[idx])
                if found is not None and (best is None or found[0] < best[0]):
                    best = (found[0], found[1], int(f))
            if best is None:
                continue
            _, thr, f = best
            go_left = x[idx, f] <= thr
            li, ri = idx[go_left], idx[~go_left]
            self.feature[node] = f
            self.threshold[node] = thr
            self.left[node] = new_node(li)
            self.right[node] = new_node(ri)
            stack.append((self.right[node], ri))
            stack.append((self.left[node], li))
        self._arrays = (
            np.array(self.feature),
            np.array(self.threshold),
            np.array(self.left),
            np.array(self.right),
            np.array(self.value),
        )
        return self

    def split_features(self) -> list[int]:
        return [f for f in self.feature if f >= 0]

    def predict_codes(self, x: np.ndarray) -> np.ndarray:
        feature, threshold, left, right, value = self._arrays
        node = np.zeros(len(x), dtype=np.int64)
        rows = np.arange(len(x))
        active = feature[node] >= 0
        while active.any():
            r = rows[active]
            nd = node[active]
            go_left = x[r, feature[nd]] <= threshold[nd]
            node[active] = np.where(go_left, left[nd], right[nd])
            active = feature[node] >= 0
        return value[node]


class RandomForest:
    """Bagged decision trees with ``ceil(sqrt(n_features))`` candidate
    features per split.

    Each tree draws its own generator from ``SeedSequence(seed)``, so the
    fitted forest does not depend on `n_jobs`.
    """

    def __init__(self, trees: int = 100, seed: int = 0, max_features: int | str = "sqrt", n_jobs: int = 1):
        self.trees = trees
        self.seed = seed
        self.max_features = max_features
        self.n_jobs = n_jobs

    def fit(self, x: np.ndarray, labels: Sequence) -> "RandomForest":
        x = np.asarray(x, dtype=float)
        self.classes_ = tuple(sorted(set(labels), key=str))
        if len(self.classes_) < 2:
            raise SingleClassInput("random forest needs at least two classes")
        lookup = {c: i for i, c in enumerate(self.classes_)}
        y = np.array([lookup[v] for v in labels], dtype=np.int64)
        m, n = x.shape
        self.n_features_ = n
        mf = math.ceil(math.sqrt(n)) if self.max_features == "sqrt" else int(self.max_features)
        seeds = np.random.SeedSequence(self.seed).spawn(self.trees)

        def grow(ss: np.random.SeedSequence) -> DecisionTree:
            rng = np.random.default_rng(ss)
            boot = rng.integers(0, m, size=m)
            return DecisionTree(mf, rng).fit(x[boot], y[boot], len(self.classes_))

        if self.n_jobs > 1:
            with ThreadPoolExecutor(self.n_jobs) as pool:
                self.estimators_ = list(pool.map(grow, seeds))
        else:
            self.estimators_ = [grow(ss) for ss in seeds]
        return self

    def predict(self, x: np.ndarray) -> list:
        x = np.asarray(x, dtype=float)
        votes = np.zeros((len(x), len(self.classes_)), dtype=np.int64)
        rows = np.arange(len(x))
        for tree in self.estimators_:
            np.add.at(votes, (rows, tree.predict_codes(x)), 1)
        # argmax returns the first maximum: the lexicographically smallest class
        return [self.classes_[i] for i in votes.argmax(axis=1)]

    def split_counts(self) -> np.ndarray:
        counts = np.zeros(self.n_features_, dtype=np.int64)
        for tree in self.estimators_:
            for f in tree.split_features():
                counts[f] += 1
        return counts

    def feature_importance(self) -> np.ndarray:
        counts = self.split_counts()
        total = counts.sum()
        return counts / total if total else np.zeros(len(counts))


def confusion_matrix(true: Sequence, pred: Sequence, classes: Sequence) -> np.ndarray:
    index = {c: i for i, c in enumerate(classes)}
    cm = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for t, p in zip(true, pred):
        cm[index[t], index[p]] += 1
    return cm


def random_forest(m: FeatureMatrix, trees: int = 100, seed: int = 0, n_jobs: int = 1) -> AnalysisResult:
    """Fit a forest on the whole matrix; report split-frequency importance and
    training accuracy."""
    model = RandomForest(trees, seed, n_jobs=n_jobs).fit(m.rows, m.labels)
    pred = model.predict(m.rows)
    classes = m.scheme.classes
    cm = confusion_matrix(m.labels, pred, classes)
    importance = model.feature_importance()
    return AnalysisResult(
        "RandomForest",
        {name: float(importance[j]) for j, name in enumerate(m.column_names)},
        accuracy=float(np.trace(cm) / cm.sum()),
        confusion=cm,
        classes=classes,
        seed=seed,
        params={"trees": trees, "max_features": "sqrt", "criterion": "gini"},
        extra={"evaluation": "training"},
    )
