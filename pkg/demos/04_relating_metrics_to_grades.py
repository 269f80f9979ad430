"""
Relating network measurements to program grades
===============================================

Assemble the feature matrix for the default synthetic corpus, then run the
four analyses: rank correlation, a random forest under 10-fold CV, floating
forward selection and correlation-based subset search.
"""
import tempfile

import numpy as np

from coauthnet import DEFAULT_CORPUS_SEED, ClassScheme, assemble_matrix, generate_corpus, minmax_normalize
from coauthnet.features import balance_subsets, regroup_matrix
from coauthnet.learn import cfs_best_first, correlation_table, cross_validate, forest_learner, sffs
from coauthnet.pipeline import RunConfig, build_samples, load_corpus, to_feature_samples

with tempfile.TemporaryDirectory() as tmp:
    generate_corpus(DEFAULT_CORPUS_SEED).write(tmp)
    cfg = RunConfig(input_dir=tmp, output_dir=tmp)
    samples = build_samples(load_corpus(cfg), cfg)

m = minmax_normalize(assemble_matrix(to_feature_samples(samples)))
print("matrix:", m.rows.shape, "grades:", {g: m.labels.count(g) for g in sorted(set(m.labels))})

# Spearman against the grade
print("\nstrongest rank correlations with grade")
for name, rho in list(correlation_table(m).per_feature_score.items())[:6]:
    print(f"  {name:28s} {rho:+.3f}")

# Random forest on the three-class grouping (C: 3-4, B: 5, A: 6-7)
m3 = regroup_matrix(m, ClassScheme.THREE_CLASS)
cv = cross_validate(m3, forest_learner(100), k=10, seed=0)
print(f"\n3-class random forest, 10-fold CV accuracy {cv.accuracy:.3f}")
print("confusion (rows true, cols predicted, order A B C):")
print(cv.confusion)

# Grade 3 dominates, so the selection methods run on balanced subsets of
# at most 15 samples per over-represented class.
subsets = balance_subsets(m, 15)
print(f"\n{len(subsets)} balanced subsets of sizes {[s.n_samples for s in subsets]}")
freq = np.mean([[r for r in sffs(s, d_max=4, folds=5).per_feature_score.values()] for s in subsets], axis=0)
top = sorted(zip(freq, m.column_names), reverse=True)[:5]
print("SFFS selection frequency:", ", ".join(f"{n} {f:.2f}" for f, n in top))
print("CFS on the first subset:", cfs_best_first(subsets[0]).selected_features)
