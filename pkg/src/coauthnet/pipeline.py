"""End-to-end batch pipeline: corpus files in, graphs, tables and reports out."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import shutil
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import CoauthnetError, ConfigError, NoPublishingResearchers
from .features import (
    ClassScheme,
    FeatureMatrix,
    Sample,
    assemble_matrix,
    balance_subsets,
    matrix_to_csv,
    minmax_normalize,
    read_matrix,
    regroup,
    regroup_matrix,
)
from .graph import CoauthorshipGraph, build_graph, graph_to_dict, match_roster
from .indexes import INDEX_FIELDS, AuthorOrderIndexes, program_indexes, researcher_indexes
from .ingest import (
    DEFAULT_PERIODS,
    EvaluationPeriod,
    Modality,
    ProgramRoster,
    ResumeRecord,
    filter_publications,
    load_periods,
    load_resumes,
    parse_rosters,
)
from .learn import (
    AnalysisResult,
    cfs_best_first,
    correlation_table,
    cross_validate,
    forest_learner,
    random_forest,
    sffs,
)
from .metrics import METRIC_FIELDS, Missing, compute_report, format_value, is_missing

log = logging.getLogger(__name__)

STAGES = ("ingest", "graphs", "metrics", "features", "analyze")
ANALYSES = ("spearman", "rf", "sffs", "cfs")
_METHOD_OF = {"spearman": "Spearman", "rf": "RandomForest", "sffs": "SFFS", "cfs": "CFS"}
# tally columns, in display order
TALLY_COLUMNS = (("cfs", "Sel.Att"), ("rf", "RForest"), ("spearman", "Spearman"), ("sffs", "SFFS"))


class InputError(CoauthnetError):
    """Input corpus missing or unreadable."""


@dataclass
class RunConfig:
    input_dir: Path
    output_dir: Path
    periods: tuple[EvaluationPeriod, ...] | None = None
    class_scheme: ClassScheme = ClassScheme.FIVE_CLASS
    subset_size: int = 15
    seed: int = 0
    analyses: tuple[str, ...] = ANALYSES
    rich_club_k: int | None = None
    bins: int = 3
    trees: int = 100
    folds: int = 10
    d_max: int = 8
    stall_limit: int = 5
    tally_top: int = 10
    workers: int = 1
    area: str = "Computer Science"
    modality: Modality = Modality.ACADEMIC

    def validate(self) -> None:
        if not self.analyses:
            raise ConfigError("at least one analysis is required")
        unknown = set(self.analyses) - set(ANALYSES)
        if unknown:
            raise ConfigError(f"unknown analyses: {sorted(unknown)}")
        for name in ("subset_size", "bins", "trees", "workers", "stall_limit", "tally_top"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.folds < 2:
            raise ConfigError("folds must be >= 2")
        if self.d_max < 0:
            raise ConfigError("d_max must be >= 0")
        if self.rich_club_k is not None and self.rich_club_k < 1:
            raise ConfigError("rich-club k must be >= 1")

    def describe(self) -> dict:
        """Science parameters recorded in the manifest (no paths, no worker count)."""
        return {
            "periods": [p.as_dict() for p in self.periods] if self.periods else None,
            "class_scheme": self.class_scheme.value,
            "subset_size": self.subset_size,
            "seed": self.seed,
            "analyses": list(self.analyses),
            "rich_club_k": self.rich_club_k,
            "bins": self.bins,
            "trees": self.trees,
            "folds": self.folds,
            "d_max": self.d_max,
            "stall_limit": self.stall_limit,
            "tally_top": self.tally_top,
        }


# --------------------------------------------------------------------------
# stages


@dataclass
class Corpus:
    resumes: list[ResumeRecord]
    rosters: list[ProgramRoster]
    periods: tuple[EvaluationPeriod, ...]


def load_corpus(cfg: RunConfig) -> Corpus:
    root = Path(cfg.input_dir)
    roster_path = root / "roster.csv"
    resume_dir = root / "resumes"
    if not roster_path.is_file():
        raise InputError(f"roster table not found: {roster_path}")
    if not resume_dir.is_dir():
        raise InputError(f"résumé directory not found: {resume_dir}")
    rosters = parse_rosters(roster_path.read_bytes(), cfg.area, cfg.modality)
    resumes = load_resumes(resume_dir)
    if cfg.periods:
        periods = tuple(cfg.periods)
    elif (root / "periods.json").is_file():
        periods = tuple(load_periods(root / "periods.json"))
    else:
        periods = DEFAULT_PERIODS
    return Corpus(resumes, rosters, periods)


@dataclass
class ProgramPeriod:
    roster: ProgramRoster
    period: EvaluationPeriod
    graph: CoauthorshipGraph
    grade: int
    indexes: AuthorOrderIndexes | None = None
    report: object = None


def _program_period_indexes(
    roster: ProgramRoster, period: EvaluationPeriod, by_id: dict[str, ResumeRecord], resumes: Sequence[ResumeRecord]
) -> AuthorOrderIndexes | None:
    matched, _ = match_roster(roster.members(period.label), resumes)
    per = []
    for rid, _ in matched:
        rec = by_id[rid]
        per.append(researcher_indexes(filter_publications(rec.publications, period), rec.full_name))
    try:
        return program_indexes(roster, per)
    except NoPublishingResearchers:
        log.warning("program %s %s: nobody published; indexes imputed", roster.program_id, period.label)
        return None


def build_samples(corpus: Corpus, cfg: RunConfig, with_metrics: bool = True) -> list[ProgramPeriod]:
    """Graphs (and optionally reports and indexes) for every graded
    (program, period), ordered by program id then period start."""
    jobs = [
        (roster, period)
        for roster in sorted(corpus.rosters, key=lambda r: r.program_id)
        for period in sorted(corpus.periods)
        if period.label in roster.grades
    ]
    by_id = {r.researcher_id: r for r in corpus.resumes}

    def work(job):
        roster, period = job
        g = build_graph(roster, corpus.resumes, period)
        pp = ProgramPeriod(roster, period, g, roster.grades[period.label])
        if with_metrics:
            pp.report = compute_report(g, cfg.rich_club_k)
            pp.indexes = _program_period_indexes(roster, period, by_id, corpus.resumes)
        return pp

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            return list(pool.map(work, jobs))
    return [work(j) for j in jobs]


def to_feature_samples(pps: Sequence[ProgramPeriod]) -> list[Sample]:
    return [
        Sample(pp.roster.program_id, pp.period.label, pp.report, pp.indexes, pp.grade, pp.roster.program_name)
        for pp in pps
    ]


def _mean_scores(results: Sequence[AnalysisResult]) -> dict:
    out = {}
    for name in results[0].per_feature_score:
        vals = [r.per_feature_score[name] for r in results if not is_missing(r.per_feature_score[name])]
        out[name] = math.fsum(vals) / len(vals) if vals else Missing("degenerate")
    return out


def _majority(results: Sequence[AnalysisResult], columns: Sequence[str]) -> list[str]:
    counts = {c: sum(c in r.selected_features for r in results) for c in columns}
    return [c for c in columns if counts[c] * 2 >= len(results) and counts[c] > 0]


def run_analyses(m: FeatureMatrix, cfg: RunConfig) -> dict[str, AnalysisResult]:
    """Run the requested analyses on every balanced subset of the
    normalized, regrouped matrix and average the outcomes."""
    subsets = balance_subsets(m, cfg.subset_size)
    results: dict[str, AnalysisResult] = {}
    sizes = [s.n_samples for s in subsets]
    common = {"subsets": len(subsets), "subset_sizes": sizes}
    if "spearman" in cfg.analyses:
        runs = [correlation_table(s) for s in subsets]
        scores = _mean_scores(runs)
        order = sorted(scores, key=lambda k: (is_missing(scores[k]), -abs(scores[k]) if not is_missing(scores[k]) else 0))
        results["spearman"] = AnalysisResult(
            "Spearman", {k: scores[k] for k in order}, classes=m.scheme.classes, seed=cfg.seed, extra=common
        )
    if "rf" in cfg.analyses:
        cms, accs, imps = [], [], []
        for s in subsets:
            k = min(cfg.folds, s.n_samples)
            cv = cross_validate(s, forest_learner(cfg.trees), k=k, seed=cfg.seed, n_jobs=cfg.workers)
            cms.append(cv.confusion)
            accs.append(cv.accuracy)
            imps.append(random_forest(s, cfg.trees, cfg.seed, n_jobs=cfg.workers))
        cm = np.sum(cms, axis=0)
        results["rf"] = AnalysisResult(
            "RandomForest",
            _mean_scores(imps),
            accuracy=float(np.trace(cm) / cm.sum()),
            confusion=cm,
            classes=m.scheme.classes,
            seed=cfg.seed,
            params={"trees": cfg.trees, "folds": cfg.folds, "max_features": "sqrt", "criterion": "gini"},
            extra={**common, "subset_accuracy": accs, "mean_subset_accuracy": float(np.mean(accs))},
        )
    if "sffs" in cfg.analyses:
        d_max = min(cfg.d_max, len(m.column_names))
        runs = [
            sffs(s, d_max, folds=min(cfg.folds, s.n_samples), seed=cfg.seed, bins=cfg.bins) for s in subsets
        ]
        results["sffs"] = AnalysisResult(
            "SFFS",
            _mean_scores(runs),
            selected_features=_majority(runs, m.column_names),
            classes=m.scheme.classes,
            seed=cfg.seed,
            params={"d_max": d_max, "folds": cfg.folds, "bins": cfg.bins},
            extra={**common, "subset_selections": [r.selected_features for r in runs]},
        )
    if "cfs" in cfg.analyses:
        runs = [cfs_best_first(s, cfg.stall_limit) for s in subsets]
        results["cfs"] = AnalysisResult(
            "CFS",
            _mean_scores(runs),
            selected_features=_majority(runs, m.column_names),
            classes=m.scheme.classes,
            seed=cfg.seed,
            params={"stall_limit": cfg.stall_limit, "correlation": "spearman"},
            extra={**common, "subset_selections": [r.selected_features for r in runs]},
        )
    return results


def relevance_tally(results: dict[str, AnalysisResult], columns: Sequence[str], top: int = 10) -> list[dict]:
    """Y/N relevance per feature and method plus a total, Table-2 style.

    A feature is relevant for a method when it is among the method's `top`
    highest scores (absolute value for correlations) with a non-zero score.
    """
    flags: dict[str, set[str]] = {}
    for key, res in results.items():
        scored = [
            (abs(v), i, name)
            for i, (name, v) in enumerate(res.per_feature_score.items())
            if not is_missing(v) and abs(v) > 0
        ]
        scored.sort(key=lambda t: (-t[0], t[1]))
        flags[key] = {name for _, _, name in scored[:top]}
    rows = []
    for name in columns:
        row = {"metric": name}
        total = 0
        for key, label in TALLY_COLUMNS:
            if key in results:
                hit = name in flags[key]
                row[label] = "Y" if hit else "N"
                total += hit
        row["Total"] = total
        rows.append(row)
    return rows


def emit_index_summary(samples: Sequence[tuple[object, AuthorOrderIndexes | None]], classes: Sequence) -> list[dict]:
    """Mean author-order indexes per class label, in `classes` order.

    `samples` holds ``(label, indexes)`` pairs; samples without indexes are
    skipped and labels with no sample get no row.
    """
    rows = []
    for c in classes:
        vals = [ix for y, ix in samples if y == c and ix is not None]
        if not vals:
            continue
        row = {"class": c, "n_samples": len(vals)}
        for f in INDEX_FIELDS:
            row[f] = math.fsum(getattr(ix, f) for ix in vals) / len(vals)
        rows.append(row)
    return rows


def researchers_per_publication_by_class(samples: Sequence[tuple[object, object]], classes: Sequence) -> list[dict]:
    rows = []
    for c in classes:
        vals = [v for y, v in samples if y == c and not is_missing(v)]
        if vals:
            rows.append({"class": c, "n_samples": len(vals), "researchersPerPublication": math.fsum(vals) / len(vals)})
    return rows


# --------------------------------------------------------------------------
# serialization


def _csv(rows: Sequence[dict], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_value(r[h]) if isinstance(r[h], (float, Missing)) else r[h] for h in header])
    return buf.getvalue()


def metrics_table(pps: Sequence[ProgramPeriod]) -> str:
    header = ["program_id", "period_label", *METRIC_FIELDS, "publicationCount"]
    rows = []
    for pp in pps:
        row = {"program_id": pp.roster.program_id, "period_label": pp.period.label}
        row.update({k: format_value(v) for k, v in pp.report.as_dict().items()})
        row["publicationCount"] = pp.graph.publication_count
        rows.append(row)
    return _csv(rows, header)


def _json_value(v):
    if is_missing(v):
        return str(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def analysis_report(res: AnalysisResult) -> str:
    doc = {
        "method": res.method,
        "seed": res.seed,
        "parameters": res.params,
        "classes": list(res.classes),
        "per_feature_score": res.per_feature_score,
        "selected_features": res.selected_features,
        "accuracy": res.accuracy,
        "confusion": res.confusion,
        "details": {k: v for k, v in res.extra.items() if k != "predictions"},
    }
    return json.dumps(_json_value(doc), indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# orchestration


class _Artifacts:
    """Collects files in a staging directory and promotes them on success."""

    def __init__(self, output_dir: Path):
        self.output_dir = output_dir
        self.staging = output_dir / ".staging"
        if self.staging.exists():
            shutil.rmtree(self.staging)
        self.staging.mkdir(parents=True)
        self.entries: list[tuple[str, str]] = []

    def add(self, rel: str, content: str | bytes, kind: str) -> None:
        data = content.encode("utf-8") if isinstance(content, str) else content
        path = self.staging / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        self.entries.append((rel, kind))

    def manifest(self, cfg: RunConfig, stage: str) -> bytes:
        items = []
        for rel, kind in sorted(self.entries):
            data = (self.staging / rel).read_bytes()
            items.append({"path": rel, "kind": kind, "bytes": len(data), "sha256": hashlib.sha256(data).hexdigest()})
        doc = {"stage": stage, "seed": cfg.seed, "config": cfg.describe(), "artifacts": items}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")

    def commit(self, manifest: bytes) -> None:
        for rel, _ in self.entries:
            dest = self.output_dir / rel
            dest.parent.mkdir(parents=True, exist_ok=True)
            (self.staging / rel).replace(dest)
        (self.output_dir / "manifest.json").write_bytes(manifest)
        shutil.rmtree(self.staging)

    def abort(self) -> None:
        shutil.rmtree(self.staging, ignore_errors=True)


def _analysis_stage(art: _Artifacts, normalized: FeatureMatrix, cfg: RunConfig) -> None:
    labelled = regroup_matrix(normalized, cfg.class_scheme)
    results = run_analyses(labelled, cfg)
    for key in ANALYSES:
        if key in results:
            art.add(f"analyses/{key}.json", analysis_report(results[key]), "analysis")
    tally = relevance_tally(results, labelled.column_names, cfg.tally_top)
    header = ["metric"] + [label for key, label in TALLY_COLUMNS if key in results] + ["Total"]
    art.add("relevance_tally.csv", f"# seed={cfg.seed}\n" + _csv(tally, header), "tally")


def execute(cfg: RunConfig, stage: str = "analyze") -> dict:
    """Run the pipeline up to `stage` and write its artifacts.

    Raises on failure after removing partial outputs.
    """
    cfg.validate()
    if stage not in STAGES:
        raise ConfigError(f"unknown stage {stage!r}")
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    art = _Artifacts(out)
    try:
        src = Path(cfg.input_dir)
        if stage == "analyze" and src.is_file():
            # a previously exported normalized matrix
            try:
                m = read_matrix(src)
            except (OSError, ValueError, IndexError) as exc:
                raise InputError(f"cannot read feature matrix {src}: {exc}") from exc
            _analysis_stage(art, m, cfg)
            manifest = art.manifest(cfg, stage)
            art.commit(manifest)
            return json.loads(manifest)

        corpus = load_corpus(cfg)
        if stage == "ingest":
            summary = {
                "resumes": len(corpus.resumes),
                "publications": sum(len(r.publications) for r in corpus.resumes),
                "skipped_publications": sum(r.skipped for r in corpus.resumes),
                "programs": [
                    {"program_id": r.program_id, "program_name": r.program_name, "researchers": len(r.researcher_names),
                     "grades": r.grades}
                    for r in sorted(corpus.rosters, key=lambda r: r.program_id)
                ],
                "periods": [p.as_dict() for p in corpus.periods],
            }
            art.add("ingest_summary.json", json.dumps(summary, indent=2, ensure_ascii=False) + "\n", "ingest")
            manifest = art.manifest(cfg, stage)
            art.commit(manifest)
            return json.loads(manifest)

        pps = build_samples(corpus, cfg, with_metrics=stage != "graphs")
        if not pps:
            raise InputError("no graded (program, period) samples in the input")
        for pp in pps:
            art.add(
                f"graphs/{pp.roster.program_id}__{pp.period.label}.json",
                json.dumps(graph_to_dict(pp.graph), indent=1, ensure_ascii=False) + "\n",
                "graph",
            )
        if stage != "graphs":
            art.add("metrics.csv", metrics_table(pps), "metrics")
        if stage in ("features", "analyze"):
            samples = to_feature_samples(pps)
            raw = assemble_matrix(samples)
            normalized = minmax_normalize(raw)
            art.add("features_raw.csv", matrix_to_csv(raw), "features_raw")
            art.add("features_normalized.csv", matrix_to_csv(normalized), "features_normalized")
            _plot_data(art, pps)
        if stage == "analyze":
            _analysis_stage(art, normalized, cfg)
        manifest = art.manifest(cfg, stage)
        art.commit(manifest)
        return json.loads(manifest)
    except BaseException:
        art.abort()
        raise


def _plot_data(art: _Artifacts, pps: Sequence[ProgramPeriod]) -> None:
    grades = [pp.grade for pp in pps]
    for scheme in ClassScheme:
        labels = regroup(grades, scheme)
        rows = emit_index_summary(list(zip(labels, [pp.indexes for pp in pps])), scheme.classes)
        art.add(
            f"plots/index_summary_{scheme.value}.csv",
            _csv(rows, ["class", "n_samples", *INDEX_FIELDS]),
            "plot_data",
        )
        rpp = researchers_per_publication_by_class(
            list(zip(labels, [pp.report.researchersPerPublication for pp in pps])), scheme.classes
        )
        art.add(
            f"plots/researchers_per_publication_{scheme.value}.csv",
            _csv(rpp, ["class", "n_samples", "researchersPerPublication"]),
            "plot_data",
        )
