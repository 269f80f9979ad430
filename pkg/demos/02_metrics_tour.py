"""
A tour of the network measurements
==================================

Every field of a MetricReport on a few small graphs where the answers can be
checked by hand, then on a graph from the bundled corpus.
"""
from coauthnet import CoauthorshipGraph, compute_report, fixture_corpus_path, build_graph, DEFAULT_PERIODS
from coauthnet.ingest import load_resumes, parse_rosters
from coauthnet.metrics import METRIC_FIELDS, format_value, swan_connectivity

star = CoauthorshipGraph.from_edges("cxyz", [("c", "x"), ("c", "y"), ("c", "z")])
path = CoauthorshipGraph.from_edges("abc", [("a", "b"), ("b", "c")])
hubs = CoauthorshipGraph.from_edges(
    ["h1", "h2", "a", "b", "c", "d"],
    [("h1", "h2"), ("h1", "a"), ("h1", "b"), ("h2", "c"), ("h2", "d")],
)



def short(value):
    text = format_value(value)
    return "NA" if text.startswith("NA:") else text if isinstance(value, int) else f"{float(text):.4f}"


reports = {name: compute_report(g) for name, g in [("star", star), ("path", path), ("two hubs", hubs)]}
print(f"{'field':28s}" + "".join(f"{name:>14s}" for name in reports))
for field in METRIC_FIELDS:
    print(f"{field:28s}" + "".join(f"{short(getattr(r, field)):>14s}" for r in reports.values()))

# Missing values carry a reason (shown as NA above, e.g. NA:rich_club_too_small).  The star's rich club (k = floor(1.5) = 1)
# holds only the centre, so it is undefined.

# Removing the star's centre disconnects every leaf pair.
print("\nswan loss per star node:", {v: swan_connectivity(star, v) for v in sorted(star.nodes)})

# A real program graph
root = fixture_corpus_path()
roster = parse_rosters((root / "roster.csv").read_bytes())[-1]
g = build_graph(roster, load_resumes(root / "resumes"), DEFAULT_PERIODS[2])
print(f"\n{roster.program_id} ({roster.program_name}), {DEFAULT_PERIODS[2].label}")
for field, value in compute_report(g).as_dict().items():
    print(f"  {field:28s} {format_value(value)}")
