"""Co-authorship network analysis of graduate programs.

Parse researcher résumés and program rosters, build one co-authorship graph
per program and evaluation period, measure it, and relate the measurements
to the program's evaluation grade.
"""
import logging

from .disambig import levenshtein, names_match, normalize_name, resolve_authors
from .features import ClassScheme, FeatureMatrix, assemble_matrix, minmax_normalize, regroup
from .graph import CoauthorshipGraph, build_graph, connected_components
from .indexes import AuthorOrderIndexes, program_indexes, researcher_indexes
from .ingest import (
    DEFAULT_PERIODS,
    EvaluationPeriod,
    ProgramRoster,
    Publication,
    ResumeRecord,
    filter_publications,
    parse_resume,
    parse_rosters,
)
from .metrics import Missing, MetricReport, compute_report
from .synth import DEFAULT_CORPUS_SEED, CorpusSpec, fixture_corpus_path, generate_corpus

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "DEFAULT_CORPUS_SEED",
    "DEFAULT_PERIODS",
    "AuthorOrderIndexes",
    "ClassScheme",
    "CoauthorshipGraph",
    "CorpusSpec",
    "EvaluationPeriod",
    "FeatureMatrix",
    "MetricReport",
    "Missing",
    "ProgramRoster",
    "Publication",
    "ResumeRecord",
    "assemble_matrix",
    "build_graph",
    "compute_report",
    "connected_components",
    "filter_publications",
    "fixture_corpus_path",
    "generate_corpus",
    "levenshtein",
    "minmax_normalize",
    "names_match",
    "normalize_name",
    "parse_resume",
    "parse_rosters",
    "program_indexes",
    "regroup",
    "researcher_indexes",
    "resolve_authors",
]
