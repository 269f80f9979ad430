"""The four analyses run on the feature matrix."""
from .correlation import average_ranks, correlation_table, spearman
from .forest import DecisionTree, RandomForest, confusion_matrix, random_forest
from .result import METHODS, AnalysisResult
from .selection import (
    best_first_indices,
    cfs_best_first,
    cfs_merit,
    correlation_matrices,
    mean_conditional_entropy,
    sffs,
    sffs_indices,
)
from .validation import cross_validate, forest_learner, make_folds

__all__ = [
    "METHODS",
    "AnalysisResult",
    "DecisionTree",
    "RandomForest",
    "average_ranks",
    "best_first_indices",
    "cfs_best_first",
    "cfs_merit",
    "confusion_matrix",
    "correlation_matrices",
    "correlation_table",
    "cross_validate",
    "forest_learner",
    "make_folds",
    "mean_conditional_entropy",
    "random_forest",
    "sffs",
    "sffs_indices",
    "spearman",
]
