from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..metrics import Missing

METHODS = ("Spearman", "RandomForest", "SFFS", "CFS")


@dataclass
class AnalysisResult:
    """Outcome of one analysis run.

    `confusion` rows are true classes and columns predicted classes, both in
    the order of `classes`.
    """

    method: str
    per_feature_score: dict[str, float | Missing]
    selected_features: list[str] = field(default_factory=list)
    accuracy: float | Missing = Missing("not_applicable")
    confusion: np.ndarray | None = None
    classes: tuple = ()
    seed: int | None = None
    params: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.confusion is not None:
            c = np.asarray(self.confusion)
            if c.shape != (len(self.classes), len(self.classes)):
                raise ValueError("confusion matrix must be square over the class list")
