"""Topological and vulnerability measurements of a co-authorship graph.

All measurements use the unweighted simple graph.  Values that are not
defined for a graph (no edges, zero variance, too few nodes...) are
reported as :class:`Missing` with a short reason code instead of NaN.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, fields

import numpy as np

from .errors import ConvergenceFailure, EmptyGraph, NoEdges
from .graph import CoauthorshipGraph, connected_components


@dataclass(frozen=True)
class Missing:
    """Placeholder for an undefined measurement."""

    reason: str

    def __str__(self) -> str:
        return f"NA:{self.reason}"


def is_missing(value) -> bool:
    return isinstance(value, Missing)


@dataclass(frozen=True)
class MetricReport:
    numberNodes: int
    numberEdges: int
    numberIsolatedNodes: int
    percIsolatedNodes: float | Missing
    avgDegreeCentrality: float | Missing
    coefficientVariation: float | Missing
    clusterCoefficient: float | Missing
    avgPathLength: float | Missing
    networkDiameter: int | Missing
    avgBetweennessCentrality: float | Missing
    eigenCentrality: float | Missing
    assortCoefficient: float | Missing
    richClubCoefficient: float | Missing
    swanConnectivityMin: float | Missing
    swanConnectivityMax: float | Missing
    researchersPerPublication: float | Missing

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


METRIC_FIELDS = tuple(f.name for f in fields(MetricReport))


def _ordered_adjacency(g: CoauthorshipGraph) -> dict[str, list[str]]:
    # sorted iteration keeps float accumulation independent of hash seeds
    return {n: sorted(nb) for n, nb in sorted(g.adjacency().items())}


def _require_nodes(g: CoauthorshipGraph) -> dict[str, list[str]]:
    if not g.nodes:
        raise EmptyGraph("graph has no nodes")
    return _ordered_adjacency(g)


def _bfs(adj: dict[str, list[str]], source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def degree_stats(g: CoauthorshipGraph) -> tuple[float, float | Missing]:
    """Mean degree and coefficient of variation (population std / mean)."""
    adj = _require_nodes(g)
    deg = np.array([len(adj[n]) for n in sorted(adj)], dtype=float)
    mean = float(deg.mean())
    if mean == 0:
        return mean, Missing("zero_mean_degree")
    return mean, float(deg.std() / mean)


def clustering_coefficient(g: CoauthorshipGraph) -> float:
    """Mean local clustering; nodes with fewer than two neighbours count 0."""
    adj = _require_nodes(g)
    sets = {u: set(nb) for u, nb in adj.items()}
    total = 0.0
    for u, nbrs in sets.items():
        k = len(nbrs)
        if k < 2:
            continue
        links = sum(len(sets[v] & nbrs) for v in adj[u]) / 2
        total += links / (k * (k - 1) / 2)
    return total / len(adj)


def path_metrics(g: CoauthorshipGraph) -> tuple[float | Missing, int | Missing]:
    """Average shortest-path length and diameter over connected pairs only."""
    adj = _require_nodes(g)
    total = 0
    pairs = 0
    diameter = 0
    for s in adj:
        for t, d in _bfs(adj, s).items():
            if t > s:
                total += d
                pairs += 1
                diameter = max(diameter, d)
    if pairs == 0:
        return Missing("no_connected_pairs"), Missing("no_connected_pairs")
    return total / pairs, diameter


def betweenness(g: CoauthorshipGraph) -> tuple[dict[str, float], float]:
    """Unnormalized betweenness per node and its mean over all nodes.

    Accumulates pair dependencies from every source (Brandes); each
    unordered pair is seen twice, hence the final halving.
    """
    adj = _require_nodes(g)
    bc = dict.fromkeys(adj, 0.0)
    for s in adj:
        stack = []
        preds: dict[str, list[str]] = {v: [] for v in adj}
        sigma = dict.fromkeys(adj, 0)
        sigma[s] = 1
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(adj, 0.0)
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1 + delta[w])
            if w != s:
                bc[w] += delta[w]
    bc = {v: x / 2 for v, x in bc.items()}
    return bc, math.fsum(bc.values()) / len(bc)


def eigenvector_scores(
    g: CoauthorshipGraph, tol: float = 1e-10, max_iter: int = 10_000
) -> dict[str, float] | Missing:
    """Principal-eigenvector centrality of the largest component, max entry 1.

    Power iteration runs on ``A + I`` so bipartite components (where ``A``
    has a ``-lambda`` eigenvalue of equal modulus) still converge.  The
    stopping rule bounds the remaining error, not only the last step: the
    step size is scaled by the observed contraction ratio ``r / (1 - r)``.
    """
    comps = connected_components(g)
    if not comps or len(comps[0]) < 2:
        return Missing("largest_component_too_small")
    comp = sorted(comps[0])
    index = {n: i for i, n in enumerate(comp)}
    n = len(comp)
    a = np.eye(n)
    for u, v in g.edges:
        if u in index and v in index:
            a[index[u], index[v]] = a[index[v], index[u]] = 1.0
    x = np.ones(n)
    prev_step = None
    for _ in range(max_iter):
        y = a @ x
        y /= y.max()
        step = float(np.abs(y - x).max())
        x = y
        if step == 0.0:
            break
        if prev_step is not None and prev_step > 0:
            ratio = min(step / prev_step, 1 - 1e-12)
            if step * ratio / (1 - ratio) < tol:
                break
        prev_step = step
    else:
        raise ConvergenceFailure(f"power iteration did not converge in {max_iter} steps")
    return {c: float(x[i]) for c, i in index.items()}


def eigen_centrality(g: CoauthorshipGraph) -> float | Missing:
    """Mean max-normalized eigenvector centrality over the largest component."""
    scores = eigenvector_scores(g)
    if is_missing(scores):
        return scores
    return float(np.mean([scores[k] for k in sorted(scores)]))


def assortativity(g: CoauthorshipGraph) -> float | Missing:
    """Pearson correlation of endpoint degrees over both edge orientations."""
    if not g.edges:
        raise NoEdges("assortativity needs at least one edge")
    adj = g.adjacency()
    x = []
    y = []
    for u, v in sorted(g.edges):
        du, dv = len(adj[u]), len(adj[v])
        x += [du, dv]
        y += [dv, du]
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    xc = x - x.mean()
    yc = y - y.mean()
    var = float(np.sqrt((xc @ xc) * (yc @ yc)))
    if var == 0:
        return Missing("zero_degree_variance")
    r = float((xc @ yc) / var)
    return min(1.0, max(-1.0, r))


def rich_club(g: CoauthorshipGraph, k: int) -> float | Missing:
    """Edge density among nodes whose degree exceeds `k`."""
    if k < 1:
        raise ValueError("rich-club degree threshold must be >= 1")
    adj = g.adjacency()
    rich = {n for n, nb in adj.items() if len(nb) > k}
    if len(rich) < 2:
        return Missing("rich_club_too_small")
    inside = sum(1 for u, v in g.edges if u in rich and v in rich)
    return 2 * inside / (len(rich) * (len(rich) - 1))


def default_rich_club_k(g: CoauthorshipGraph) -> int:
    adj = g.adjacency()
    if not adj:
        return 1
    mean = sum(len(nb) for nb in adj.values()) / len(adj)
    return max(1, math.floor(mean))


def _connected_pairs(adj: dict[str, list[str]], removed: str | None = None) -> int:
    seen: set[str] = set() if removed is None else {removed}
    total = 0
    for start in adj:
        if start in seen:
            continue
        size = 0
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            size += 1
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        total += size * (size - 1) // 2
    return total


def swan_connectivity(g: CoauthorshipGraph, v: str) -> float | Missing:
    """Fraction of connected pairs among the other nodes lost when `v` is removed."""
    adj = _ordered_adjacency(g)
    if v not in adj:
        raise KeyError(v)
    # pairs among V - {v} connected in G: components of G, shrunk by v
    before = 0
    for comp in connected_components(g):
        size = len(comp) - (v in comp)
        before += size * (size - 1) // 2
    if before == 0:
        return Missing("no_connected_pairs")
    after = _connected_pairs(adj, removed=v)
    return (before - after) / before


def swan_extremes(g: CoauthorshipGraph) -> tuple[float | Missing, float | Missing]:
    """Minimum and maximum per-node connectivity loss."""
    if len(g.nodes) < 3:
        return Missing("fewer_than_3_nodes"), Missing("fewer_than_3_nodes")
    losses = [swan_connectivity(g, v) for v in sorted(g.nodes)]
    defined = [x for x in losses if not is_missing(x)]
    if not defined:
        return Missing("no_connected_pairs"), Missing("no_connected_pairs")
    return min(defined), max(defined)


def compute_report(g: CoauthorshipGraph, rich_club_k: int | None = None) -> MetricReport:
    """Assemble every measurement of `g` into one report."""
    n = len(g.nodes)
    m = len(g.edges)
    if n == 0:
        empty = Missing("empty_graph")
        return MetricReport(0, 0, 0, *([empty] * 13))
    adj = g.adjacency()
    isolated = sum(1 for nb in adj.values() if not nb)
    avg_deg, cv = degree_stats(g)
    apl, diam = path_metrics(g)
    _, avg_bc = betweenness(g)
    try:
        eig = eigen_centrality(g)
    except ConvergenceFailure:
        eig = Missing("no_convergence")
    assort = assortativity(g) if m else Missing("no_edges")
    k = rich_club_k if rich_club_k is not None else default_rich_club_k(g)
    swan_min, swan_max = swan_extremes(g)
    return MetricReport(
        numberNodes=n,
        numberEdges=m,
        numberIsolatedNodes=isolated,
        percIsolatedNodes=isolated / n,
        avgDegreeCentrality=avg_deg,
        coefficientVariation=cv,
        clusterCoefficient=clustering_coefficient(g),
        avgPathLength=apl,
        networkDiameter=diam,
        avgBetweennessCentrality=avg_bc,
        eigenCentrality=eig,
        assortCoefficient=assort,
        richClubCoefficient=rich_club(g, k),
        swanConnectivityMin=swan_min,
        swanConnectivityMax=swan_max,
        researchersPerPublication=n / m if m else Missing("no_edges"),
    )


def format_value(value) -> str:
    """Cell text for a metric value: 12 significant digits or ``NA:<reason>``."""
    if is_missing(value):
        return str(value)
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.12g}"


def parse_value(text: str):
    text = text.strip()
    if text.startswith("NA:"):
        return Missing(text[3:])
    try:
        return int(text)
    except ValueError:
        return float(text)
