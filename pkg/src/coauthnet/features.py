"""Labeled feature matrix: assembly, min-max scaling, class regrouping and
balanced subsets."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import EmptyInput, InvalidGrade
from .indexes import INDEX_FIELDS, AuthorOrderIndexes
from .metrics import METRIC_FIELDS, MetricReport, is_missing

FEATURE_COLUMNS = METRIC_FIELDS + INDEX_FIELDS


class ClassScheme(Enum):
    FIVE_CLASS = "5class"
    THREE_CLASS = "3class"

    @property
    def classes(self) -> tuple:
        if self is ClassScheme.FIVE_CLASS:
            return (3, 4, 5, 6, 7)
        return ("A", "B", "C")

    def numeric(self, label) -> float:
        """Ordinal value of a label (higher is better) for rank statistics."""
        if self is ClassScheme.FIVE_CLASS:
            return float(label)
        return {"C": 1.0, "B": 2.0, "A": 3.0}[label]


_THREE = {3: "C", 4: "C", 5: "B", 6: "A", 7: "A"}


@dataclass(frozen=True)
class FeatureMatrix:
    """`rows` is an ``(m, n)`` float array; `labels` has one class label per
    row and `sample_ids` one ``(program_id, period_label)`` pair per row.
    `program_names` is used to order samples alphabetically when building
    balanced subsets."""

    column_names: tuple[str, ...]
    rows: np.ndarray
    labels: tuple
    sample_ids: tuple[tuple[str, str], ...]
    program_names: tuple[str, ...] = ()
    scheme: ClassScheme = ClassScheme.FIVE_CLASS

    def __post_init__(self):
        m = len(self.labels)
        if self.rows.shape != (m, len(self.column_names)):
            raise ValueError(f"rows shape {self.rows.shape} does not match {m} x {len(self.column_names)}")
        if len(self.sample_ids) != m:
            raise ValueError("one sample id per row is required")
        if self.program_names and len(self.program_names) != m:
            raise ValueError("one program name per row is required")

    @property
    def n_samples(self) -> int:
        return len(self.labels)

    def numeric_labels(self) -> np.ndarray:
        return np.array([self.scheme.numeric(y) for y in self.labels])

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.column_names.index(name)]

    def take(self, idx: Sequence[int]) -> "FeatureMatrix":
        idx = list(idx)
        return replace(
            self,
            rows=self.rows[idx],
            labels=tuple(self.labels[i] for i in idx),
            sample_ids=tuple(self.sample_ids[i] for i in idx),
            program_names=tuple(self.program_names[i] for i in idx) if self.program_names else (),
        )

    def select(self, columns: Sequence[str]) -> "FeatureMatrix":
        idx = [self.column_names.index(c) for c in columns]
        return replace(self, column_names=tuple(columns), rows=self.rows[:, idx])


@dataclass(frozen=True)
class Sample:
    program_id: str
    period_label: str
    report: MetricReport
    indexes: AuthorOrderIndexes | None
    grade: int
    program_name: str = ""


def assemble_matrix(samples: Sequence[Sample]) -> FeatureMatrix:
    """One row per sample in input order; Missing cells (and absent index
    triples) become the mean of the column's defined cells."""
    if not samples:
        raise EmptyInput("no samples to assemble")
    raw = np.full((len(samples), len(FEATURE_COLUMNS)), np.nan)
    for i, s in enumerate(samples):
        values = list(s.report.as_dict().values())
        if s.indexes is not None:
            values += list(s.indexes.as_tuple())
        else:
            values += [None] * len(INDEX_FIELDS)
        for j, v in enumerate(values):
            if v is not None and not is_missing(v):
                raw[i, j] = float(v)
    for j in range(raw.shape[1]):
        col = raw[:, j]
        defined = ~np.isnan(col)
        fill = col[defined].mean() if defined.any() else 0.0
        col[~defined] = fill
    return FeatureMatrix(
        column_names=FEATURE_COLUMNS,
        rows=raw,
        labels=tuple(s.grade for s in samples),
        sample_ids=tuple((s.program_id, s.period_label) for s in samples),
        program_names=tuple(s.program_name or s.program_id for s in samples),
    )


def minmax_normalize(m: FeatureMatrix) -> FeatureMatrix:
    """Scale each column to [0, 1]; constant columns become all zeros."""
    if m.n_samples == 0:
        raise EmptyInput("cannot normalize an empty matrix")
    lo = m.rows.min(axis=0)
    span = m.rows.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    scaled = np.where(span > 0, (m.rows - lo) / safe, 0.0)
    return replace(m, rows=np.clip(scaled, 0.0, 1.0))


def regroup(labels: Sequence, scheme: ClassScheme) -> tuple:
    """Map grades 3..7 to the labels of `scheme` (C: 3-4, B: 5, A: 6-7)."""
    out = []
    for y in labels:
        if y not in _THREE:
            raise InvalidGrade(f"grade {y!r} outside 3..7")
        out.append(int(y) if scheme is ClassScheme.FIVE_CLASS else _THREE[y])
    return tuple(out)


def regroup_matrix(m: FeatureMatrix, scheme: ClassScheme) -> FeatureMatrix:
    return replace(m, labels=regroup(m.labels, scheme), scheme=scheme)


def balance_subsets(m: FeatureMatrix, subset_size: int = 15) -> list[FeatureMatrix]:
    """Split over-represented classes into alphabetical chunks.

    Samples of a class with more than `subset_size` members are sorted by
    program name (then period) and cut into consecutive chunks; subset ``i``
    combines chunk ``i`` of every over-represented class (shorter chunk
    lists are recycled) with all samples of the remaining classes.
    """
    if subset_size < 1:
        raise ValueError("subset_size must be >= 1")
    names = m.program_names or tuple(pid for pid, _ in m.sample_ids)
    by_class: dict = {}
    for i, y in enumerate(m.labels):
        by_class.setdefault(y, []).append(i)
    chunks: dict = {}
    rest: list[int] = []
    for y, idx in by_class.items():
        if len(idx) > subset_size:
            idx = sorted(idx, key=lambda i: (names[i], m.sample_ids[i][1], m.sample_ids[i][0]))
            chunks[y] = [idx[k : k + subset_size] for k in range(0, len(idx), subset_size)]
        else:
            rest += idx
    if not chunks:
        return [m]
    n_subsets = max(len(c) for c in chunks.values())
    subsets = []
    for k in range(n_subsets):
        idx = set(rest)
        for c in chunks.values():
            idx.update(c[k % len(c)])
        subsets.append(m.take(sorted(idx)))
    return subsets


# --------------------------------------------------------------------------
# export


def _cell(x: float) -> str:
    return f"{x:.12g}"


def matrix_to_csv(m: FeatureMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sample_id", "period", *m.column_names, "grade"])
    for (pid, period), row, y in zip(m.sample_ids, m.rows, m.labels):
        w.writerow([pid, period, *(_cell(x) for x in row), y])
    return buf.getvalue()


def write_matrix(m: FeatureMatrix, path: str | Path) -> None:
    Path(path).write_text(matrix_to_csv(m), encoding="utf-8")


def read_matrix(path: str | Path, scheme: ClassScheme | None = None) -> FeatureMatrix:
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header[:2] != ["sample_id", "period"] or header[-1] != "grade":
        raise ValueError(f"unexpected feature matrix header {header}")
    columns = tuple(header[2:-1])
    rows, labels, ids = [], [], []
    for r in reader:
        ids.append((r[0], r[1]))
        rows.append([float(x) for x in r[2:-1]])
        labels.append(r[-1])
    if scheme is None:
        scheme = ClassScheme.FIVE_CLASS if all(y.isdigit() for y in labels) else ClassScheme.THREE_CLASS
    if scheme is ClassScheme.FIVE_CLASS:
        labels = [int(y) for y in labels]
    return FeatureMatrix(
        columns,
        np.array(rows, dtype=float).reshape(len(ids), len(columns)),
        tuple(labels),
        tuple(ids),
        scheme=scheme,
    )
