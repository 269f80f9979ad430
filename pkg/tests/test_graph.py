import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coauthnet.disambig import names_match, normalize_name
from coauthnet.graph import (
    CoauthorshipGraph,
    build_graph,
    connected_components,
    match_roster,
    read_graph,
    write_graph,
)
from coauthnet.ingest import (
    EvaluationPeriod,
    Kind,
    Modality,
    Nature,
    ProgramRoster,
    Publication,
    ResumeRecord,
    filter_publications,
    load_resumes,
    parse_rosters,
)

PERIOD = EvaluationPeriod(2010, 2012, "2010-2012")


def roster(*names):
    return ProgramRoster("P", "Prog", "Inst", "Computer Science", Modality.ACADEMIC, list(names), {PERIOD.label: 4})


def paper(title, *authors, year=2011):
    return Publication(title, year, Kind.EVENT, Nature.COMPLETE, tuple(authors))


def test_two_researchers_one_paper():
    rs = [ResumeRecord("A", "Ana Souza", (paper("x", "Ana Souza", "Bruno Lima"),)), ResumeRecord("B", "Bruno Lima")]
    g = build_graph(roster("Ana Souza", "Bruno Lima"), rs, PERIOD)
    assert g.nodes == {"A", "B"}
    assert g.edges == {("A", "B"): 1}
    assert g.publication_count == 1


def test_isolated_node_kept():
    rs = [ResumeRecord("A", "Ana Souza", (paper("x", "Ana Souza"),)), ResumeRecord("B", "Bruno Lima")]
    g = build_graph(roster("Ana Souza", "Bruno Lima"), rs, PERIOD)
    assert g.nodes == {"A", "B"} and g.edges == {}


def test_three_internal_authors_make_a_triangle():
    p = paper("t", "Ana Souza", "Bruno Lima", "Carla Dias", "Externo Total")
    rs = [ResumeRecord("A", "Ana Souza", (p,)), ResumeRecord("B", "Bruno Lima", (p,)), ResumeRecord("C", "Carla Dias")]
    g = build_graph(roster("Ana Souza", "Bruno Lima", "Carla Dias"), rs, PERIOD)
    assert g.edges == {("A", "B"): 1, ("A", "C"): 1, ("B", "C"): 1}
    assert g.publication_count == 1  # same title and year in two résumés


def test_weights_count_distinct_papers():
    p1, p2 = paper("One", "Ana Souza", "Bruno Lima"), paper("Two", "Bruno Lima", "Ana Sousa", year=2012)
    rs = [ResumeRecord("A", "Ana Souza", (p1, p2)), ResumeRecord("B", "Bruno Lima", (paper("one", "Ana Souza", "Bruno Lima"),))]
    g = build_graph(roster("Ana Souza", "Bruno Lima"), rs, PERIOD)
    assert g.edges == {("A", "B"): 2}


def test_ambiguous_author_adds_no_edge():
    p = paper("t", "Ana Sauza", "Bruno Lima")
    rs = [ResumeRecord("A", "Ana Souza"), ResumeRecord("S", "Ana Sousa"), ResumeRecord("B", "Bruno Lima", (p,))]
    g = build_graph(roster("Ana Souza", "Ana Sousa", "Bruno Lima"), rs, PERIOD)
    assert g.edges == {}
    assert g.publication_count == 1


def test_unmatched_roster_name_becomes_node():
    g = build_graph(roster("Ana Souza", "Zelda Quintino"), [ResumeRecord("A", "Ana Souza")], PERIOD)
    assert g.unmatched == ("Zelda Quintino",)
    assert "unmatched:zelda quintino" in g.nodes


def test_mini_program(mini_dir):
    (r,) = parse_rosters((mini_dir / "roster.csv").read_bytes())
    g = build_graph(r, load_resumes(mini_dir / "resumes"), PERIOD)
    assert g.edges == {("M0001", "M0002"): 1, ("M0001", "M0003"): 1, ("M0002", "M0003"): 1}
    assert g.publication_count == 5
    assert [len(c) for c in connected_components(g)] == [3, 1]


def _recount(roster_, resumes, period, g):
    """Edge weights by scanning every member résumé for each pair."""
    matched, _ = match_roster(roster_.members(period.label), resumes)
    by_id = {r.researcher_id: r for r in resumes}
    names = {rid: by_id[rid].full_name for rid, _ in matched}
    pubs = [p for rid in names for p in filter_publications(by_id[rid].publications, period)]
    expected = {}
    for u, v in itertools.combinations(sorted(names), 2):
        keys = {
            (normalize_name(p.title), p.year)
            for p in pubs
            if any(names_match(a, names[u]) for a in p.authors) and any(names_match(a, names[v]) for a in p.authors)
        }
        if keys:
            expected[(u, v)] = len(keys)
    return expected


def test_fixture_weights_match_brute_force_recount(fixture_dir):
    rosters = parse_rosters((fixture_dir / "roster.csv").read_bytes())
    resumes = load_resumes(fixture_dir / "resumes")
    periods = [EvaluationPeriod(2007, 2009, "2007-2009"), PERIOD, EvaluationPeriod(2013, 2016, "2013-2016")]
    checked = 0
    for r in rosters:
        for period in periods:
            g = build_graph(r, resumes, period)
            assert g.edges == _recount(r, resumes, period, g)
            checked += len(g.edges)
    assert checked > 50


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_permutation_invariant(fixture_dir, rnd):
    (r,) = [x for x in parse_rosters((fixture_dir / "roster.csv").read_bytes()) if x.program_id == "P001"]
    resumes = load_resumes(fixture_dir / "resumes")
    shuffled = list(resumes)
    rnd.shuffle(shuffled)
    assert build_graph(r, shuffled, PERIOD) == build_graph(r, resumes, PERIOD)


def test_components_examples():
    tri = CoauthorshipGraph.from_edges("abcd", [("a", "b"), ("b", "c"), ("a", "c")])
    assert connected_components(tri) == [{"a", "b", "c"}, {"d"}]
    assert connected_components(CoauthorshipGraph.from_edges([], [])) == []
    path = CoauthorshipGraph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    assert connected_components(path) == [set("abcd")]
    ties = CoauthorshipGraph.from_edges("abcd", [("c", "d"), ("a", "b")])
    assert connected_components(ties) == [{"a", "b"}, {"c", "d"}]


@given(st.integers(0, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=15))))
def test_component_sizes_partition_nodes(case):
    n, pairs = case
    nodes = [f"n{i}" for i in range(n)]
    edges = [(f"n{u}", f"n{v}") for u, v in pairs if u != v and n]
    g = CoauthorshipGraph.from_edges(nodes, edges)
    comps = connected_components(g)
    assert sum(len(c) for c in comps) == n
    assert set().union(*comps) == set(nodes) if comps else n == 0


@pytest.mark.parametrize(
    "edges",
    [{("a", "a"): 1}, {("b", "a"): 1}, {("a", "z"): 1}, {("a", "b"): 0}],
)
def test_invariants_enforced(edges):
    with pytest.raises(ValueError):
        CoauthorshipGraph("P", PERIOD, frozenset("ab"), edges)


def test_export_round_trip(tmp_path):
    g = CoauthorshipGraph("P", PERIOD, frozenset({"a", "b", "c"}), {("a", "b"): 3}, 7, ("x",))
    write_graph(g, tmp_path / "g.json")
    assert read_graph(tmp_path / "g.json") == g
    data = json.loads((tmp_path / "g.json").read_text())
    assert data["edges"] == [["a", "b", 3]] and data["publication_count"] == 7
