"""Per-program, per-period co-authorship graphs."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .disambig import normalize_name, resolve_authors, resolve_one
from .ingest import EvaluationPeriod, ProgramRoster, ResumeRecord, filter_publications

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoauthorshipGraph:
    """Undirected simple graph with integer edge weights.

    Edge keys are canonical ``(min_id, max_id)`` tuples.  `unmatched`
    lists roster names for which no résumé was found; their nodes are kept
    as isolated ``unmatched:<name>`` ids.
    """

    program_id: str
    period: EvaluationPeriod
    nodes: frozenset[str]
    edges: dict[tuple[str, str], int] = field(default_factory=dict)
    publication_count: int = 0
    unmatched: tuple[str, ...] = ()

    def __post_init__(self):
        for (u, v), w in self.edges.items():
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if not u < v:
                raise ValueError(f"edge ({u}, {v}) not stored canonically")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the node set")
            if w < 1:
                raise ValueError("edge weights must be >= 1")

    def adjacency(self) -> dict[str, set[str]]:
        """Unweighted neighbour sets, one entry per node."""
        adj: dict[str, set[str]] = {n: set() for n in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @classmethod
    def from_edges(
        cls,
        nodes: Iterable[str],
        edges: Iterable[tuple[str, str]],
        program_id: str = "",
        period: EvaluationPeriod | None = None,
    ) -> "CoauthorshipGraph":
        """Convenience constructor from plain node and edge lists (weight 1)."""
        weighted: dict[tuple[str, str], int] = {}
        for u, v in edges:
            key = (u, v) if u < v else (v, u)
            weighted[key] = weighted.get(key, 0) + 1
        return cls(
            program_id,
            period or EvaluationPeriod(0, 0, ""),
            frozenset(nodes),
            weighted,
        )


def match_roster(
    names: Sequence[str], resumes: Sequence[ResumeRecord]
) -> tuple[list[tuple[str, str]], list[str]]:
    """Pair roster names with résumé ids.

    Returns ``(matched, unmatched)`` where `matched` holds
    ``(researcher_id, roster_name)`` pairs in roster order.
    """
    by_norm: dict[str, list[ResumeRecord]] = {}
    for r in resumes:
        by_norm.setdefault(normalize_name(r.full_name), []).append(r)
    candidates = [(r.researcher_id, r.full_name) for r in resumes]
    matched: list[tuple[str, str]] = []
    unmatched: list[str] = []
    used: set[str] = set()
    for name in names:
        exact = by_norm.get(normalize_name(name), [])
        if len(exact) == 1:
            rid = exact[0].researcher_id
        else:
            ref = resolve_one(name, candidates)
            rid = ref.researcher_id
        if rid is None or rid in used:
            unmatched.append(name)
            continue
        used.add(rid)
        matched.append((rid, name))
    return matched, unmatched


def build_graph(
    roster: ProgramRoster, resumes: Sequence[ResumeRecord], period: EvaluationPeriod
) -> CoauthorshipGraph:
    """Build the co-authorship graph of one program in one period.

    Every roster member becomes a node.  Publications from the members'
    résumés are filtered to the period, deduplicated by (normalized title,
    year), and each pair of distinct internal authors on a publication adds
    1 to the weight of their edge.  Ambiguous and external authors add
    nothing.
    """
    names = roster.members(period.label)
    matched, unmatched = match_roster(names, resumes)
    if unmatched:
        log.warning(
            "program %s %s: %d roster names without a résumé", roster.program_id, period.label, len(unmatched)
        )
    by_id = {r.researcher_id: r for r in resumes}
    roster_names = [(rid, by_id[rid].full_name) for rid, _ in matched]
    nodes = {rid for rid, _ in matched} | {f"unmatched:{normalize_name(n)}" for n in unmatched}

    seen: dict[tuple[str, int], frozenset[str]] = {}
    for rid, _ in sorted(matched):
        for pub in filter_publications(by_id[rid].publications, period):
            key = (normalize_name(pub.title), pub.year)
            refs = resolve_authors(pub.authors, roster_names)
            internal = frozenset(r.researcher_id for r in refs if r.kind == "internal")
            seen[key] = seen.get(key, frozenset()) | internal

    edges: dict[tuple[str, str], int] = {}
    for members in seen.values():
        for u, v in combinations(sorted(members), 2):
            edges[(u, v)] = edges.get((u, v), 0) + 1
    return CoauthorshipGraph(
        roster.program_id,
        period,
        frozenset(nodes),
        edges,
        publication_count=sum(1 for members in seen.values() if members),
        unmatched=tuple(unmatched),
    )


def connected_components(g: CoauthorshipGraph) -> list[set[str]]:
    """Maximal connected node sets, largest first, ties by smallest member."""
    adj = g.adjacency()
    seen: set[str] = set()
    comps: list[set[str]] = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        comps.append(comp)
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps


# --------------------------------------------------------------------------
# export


def graph_to_dict(g: CoauthorshipGraph) -> dict:
    return {
        "program_id": g.program_id,
        "period": g.period.as_dict(),
        "nodes": sorted(g.nodes),
        "edges": [[u, v, w] for (u, v), w in sorted(g.edges.items())],
        "publication_count": g.publication_count,
        "unmatched": list(g.unmatched),
    }


def graph_from_dict(data: dict) -> CoauthorshipGraph:
    p = data["period"]
    return CoauthorshipGraph(
        data["program_id"],
        EvaluationPeriod(int(p["start_year"]), int(p["end_year"]), p["label"]),
        frozenset(data["nodes"]),
        {(u, v): int(w) for u, v, w in data["edges"]},
        int(data["publication_count"]),
        tuple(data.get("unmatched", ())),
    )


def write_graph(g: CoauthorshipGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(g), indent=1, ensure_ascii=False) + "\n", encoding="utf-8")


def read_graph(path: str | Path) -> CoauthorshipGraph:
    return graph_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
