"""
Author-order indexes
====================

Where researchers sit in author lists: first (or sole), middle, or last.
The default synthetic corpus plants a seniority gradient across grades.
"""
from coauthnet import DEFAULT_CORPUS_SEED, generate_corpus
from coauthnet.indexes import researcher_indexes
from coauthnet.ingest import Kind, Nature, Publication
from coauthnet.pipeline import RunConfig, build_samples, emit_index_summary, load_corpus
import tempfile


def paper(*authors):
    return Publication("t", 2011, Kind.EVENT, Nature.COMPLETE, authors)


# A sole-authored paper counts as a first-author paper, so the three shares
# always sum to one.
mine = [paper("Ana Souza"), paper("Bruno Lima", "Ana Souza"), paper("Bruno Lima", "Ana Sousa", "Carla Dias")]
print("Ana Souza:", researcher_indexes(mine, "Ana Souza"))

with tempfile.TemporaryDirectory() as tmp:
    generate_corpus(DEFAULT_CORPUS_SEED).write(tmp)
    cfg = RunConfig(input_dir=tmp, output_dir=tmp)
    samples = build_samples(load_corpus(cfg), cfg)

print(f"\n{len(samples)} program-period samples; mean indexes per grade")
print(f"{'grade':>5s} {'n':>4s} {'first':>8s} {'middle':>8s} {'last':>8s}")
for row in emit_index_summary([(pp.grade, pp.indexes) for pp in samples], (3, 4, 5, 6, 7)):
    print(
        f"{row['class']:>5} {row['n_samples']:4d} {row['firstAuthorIndex']:8.3f} "
        f"{row['contributionIndex']:8.3f} {row['seniorityIndex']:8.3f}"
    )
