import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coauthnet.errors import DegenerateInput, EmptySubset, SingleClassInput, TooFewSamples
from coauthnet.features import ClassScheme, FeatureMatrix
from coauthnet.learn import (
    AnalysisResult,
    RandomForest,
    average_ranks,
    best_first_indices,
    cfs_best_first,
    cfs_merit,
    correlation_matrices,
    correlation_table,
    cross_validate,
    forest_learner,
    make_folds,
    mean_conditional_entropy,
    random_forest,
    sffs,
    sffs_indices,
    spearman,
)
from coauthnet.metrics import is_missing
from oracles import entropy_by_table, exhaustive_minimum, naive_ranks, naive_spearman


def fm(rows, labels, names=None, scheme=ClassScheme.FIVE_CLASS):
    rows = np.asarray(rows, dtype=float)
    names = names or tuple(f"f{j}" for j in range(rows.shape[1]))
    return FeatureMatrix(tuple(names), rows, tuple(labels), tuple((f"P{i}", "p") for i in range(len(labels))), scheme=scheme)


# -------------------------------------------------------------- spearman


def test_spearman_examples():
    x = [1.0, 2.5, 3.0, 7.0, 9.0]
    assert spearman(x, x) == 1.0
    assert spearman(x, x[::-1]) == -1.0
    tied = [1, 1, 2, 3, 3, 3, 4]
    other = [5, 3, 3, 1, 2, 2, 0]
    assert spearman(tied, other) == pytest.approx(naive_spearman(tied, other), abs=1e-12)


def test_spearman_degenerate():
    with pytest.raises(DegenerateInput):
        spearman([1], [2])
    with pytest.raises(DegenerateInput):
        spearman([1, 1, 1], [1, 2, 3])


def test_average_ranks():
    assert average_ranks([10, 20, 20, 5]).tolist() == [2.0, 3.5, 3.5, 1.0] == naive_ranks([10, 20, 20, 5])


tied_vectors = st.integers(2, 25).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 4), min_size=n, max_size=n), st.lists(st.floats(-5, 5, allow_nan=False), min_size=n, max_size=n))
)


@given(tied_vectors)
def test_spearman_matches_oracle_and_properties(case):
    x, y = case
    try:
        r = spearman(x, y)
    except DegenerateInput:
        assert len(set(x)) < 2 or len(set(y)) < 2
        return
    assert abs(r - naive_spearman(x, y)) <= 1e-12
    assert -1 <= r <= 1
    assert r == spearman(y, x)
    assert abs(spearman([v**3 + 2 * v for v in x], [-8.0 * v for v in y]) + r) <= 1e-12
    assert abs(spearman([v**3 + 2 * v for v in x], [8.0 * v for v in y]) - r) <= 1e-12
    assert spearman(x, x) == pytest.approx(1.0, abs=1e-15)


def test_correlation_table():
    grades = [3, 4, 5, 6, 7, 3, 4]
    m = fm(np.column_stack([grades, [-g for g in grades], [1.0] * 7]), grades, ("same", "neg", "const"))
    res = correlation_table(m)
    assert list(res.per_feature_score) == ["same", "neg", "const"]
    assert res.per_feature_score["same"] == 1.0 and res.per_feature_score["neg"] == -1.0
    assert is_missing(res.per_feature_score["const"])


# ------------------------------------------------------- conditional entropy


def test_mce_hand_table():
    x = np.array([[0.1], [0.1], [0.1], [0.5], [0.5], [0.9], [0.9], [0.9]])
    labels = ["a", "a", "b", "b", "b", "a", "c", "c"]
    # bins 0,0,0 -> (a,a,b); 1,1 -> (b,b); 2,2,2 -> (a,c,c)
    # 3/8 * H(2/3,1/3) * 2 = 0.75 * (log2(3) - 2/3)
    want = 0.75 * (math.log2(3) - 2 / 3)
    assert mean_conditional_entropy(fm(x, labels, scheme=ClassScheme.THREE_CLASS), ["f0"]) == pytest.approx(want, abs=1e-15)


def test_mce_examples():
    labels = [3, 3, 5, 5, 7, 7]
    m = fm(np.column_stack([[0, 0.1, 0.5, 0.5, 1, 0.9], [0.3] * 6]), labels)
    assert mean_conditional_entropy(m, ["f0"]) == 0.0
    assert mean_conditional_entropy(m, ["f1"]) == pytest.approx(math.log2(3))
    with pytest.raises(EmptySubset):
        mean_conditional_entropy(m, [])


data = st.integers(4, 30).flatmap(
    lambda m: st.tuples(
        st.lists(st.lists(st.floats(0, 1), min_size=4, max_size=4), min_size=m, max_size=m),
        st.lists(st.sampled_from([3, 4, 5]), min_size=m, max_size=m),
    )
)


@given(data, st.sets(st.integers(0, 3), min_size=1, max_size=3), st.integers(0, 3))
def test_mce_monotone_bounded(case, subset, extra):
    rows, labels = case
    m = fm(rows, labels)
    names = [f"f{j}" for j in sorted(subset)]
    h = mean_conditional_entropy(m, names)
    assert -1e-12 <= h <= math.log2(len(set(labels))) + 1e-12
    assert mean_conditional_entropy(m, names + [f"f{extra}"]) <= h + 1e-12
    codes = np.minimum(np.floor(np.asarray(rows)[:, sorted(subset)] * 3).astype(int), 2)
    assert h == pytest.approx(entropy_by_table(codes, labels), abs=1e-12)


# ------------------------------------------------------------------ SFFS


def test_sffs_perfect_feature():
    rng = np.random.default_rng(0)
    labels = [3, 4, 5] * 10
    x = rng.random((30, 4))
    x[:, 2] = [{3: 0.1, 4: 0.5, 5: 0.9}[y] for y in labels]
    res = sffs(fm(x, labels), d_max=2, folds=5, seed=1)
    assert res.per_feature_score["f2"] == 1.0
    assert res.selected_features == ["f2"]


def test_sffs_xor_pair():
    rng = np.random.default_rng(4)
    a = rng.integers(0, 2, 200)
    b = rng.integers(0, 2, 200)
    labels = list(np.where(a ^ b, 5, 3))
    noise = rng.random((200, 4))
    x = np.column_stack([noise[:, 0], a * 0.9 + 0.05, noise[:, 1], b * 0.9 + 0.05, noise[:, 2:]])
    crit = [mean_conditional_entropy(fm(x, labels), [f"f{j}"]) for j in range(6)]
    assert min(crit) > 0.95  # no single feature says anything
    chosen, value = sffs_indices(x, labels, d_max=3)
    assert sorted(chosen) == [1, 3]
    assert value == exhaustive_minimum(x, labels, 3, 6) == 0.0


def test_sffs_zero_dmax():
    res = sffs(fm(np.random.default_rng(0).random((20, 3)), [3, 4] * 10), d_max=0)
    assert res.selected_features == [] and set(res.per_feature_score.values()) == {0.0}


@pytest.mark.parametrize("seed", range(10))
def test_sffs_reaches_exhaustive_optimum(seed):
    rng = np.random.default_rng(seed)
    x = rng.random((40, 6))
    labels = list(rng.integers(3, 6, 40))
    _, value = sffs_indices(x, labels, 6)
    assert value <= exhaustive_minimum(x, labels, 3, 6) + 1e-12


def test_sffs_deterministic():
    rng = np.random.default_rng(1)
    m = fm(rng.random((40, 5)), list(rng.integers(3, 6, 40)))
    a, b = sffs(m, 3, seed=2), sffs(m, 3, seed=2)
    assert a.per_feature_score == b.per_feature_score and a.selected_features == b.selected_features


# ------------------------------------------------------------------- CFS


def test_cfs_single_perfect_feature():
    labels = [3, 4, 5, 6, 7, 3, 5]
    rng = np.random.default_rng(0)
    m = fm(np.column_stack([labels, rng.random(7)]), labels)
    r_cf, r_ff = correlation_matrices(m)
    assert cfs_merit([0], r_cf, r_ff) == 1.0
    res = cfs_best_first(m)
    assert res.selected_features == ["f0"]
    assert res.per_feature_score == {"f0": 1.0, "f1": 0.0}


def test_cfs_duplicate_never_helps():
    rng = np.random.default_rng(2)
    labels = list(rng.integers(3, 8, 50))
    f = np.array(labels) + rng.normal(0, 2, 50)
    m = fm(np.column_stack([f, f, rng.random(50)]), labels)
    r_cf, r_ff = correlation_matrices(m)
    assert r_ff[0, 1] == 1.0
    assert cfs_merit([0, 1], r_cf, r_ff) <= cfs_merit([0], r_cf, r_ff) + 1e-15
    assert cfs_best_first(m).selected_features.count("f0") + cfs_best_first(m).selected_features.count("f1") == 1


def test_cfs_informative_among_noise():
    rng = np.random.default_rng(3)
    labels = list(rng.integers(3, 8, 80))
    noise = rng.random((80, 6))
    x = np.column_stack([noise[:, :3], np.array(labels) + rng.normal(0, 0.5, 80), noise[:, 3:]])
    m = fm(x, labels)
    res = cfs_best_first(m)
    r_cf, r_ff = correlation_matrices(m)
    assert "f3" in res.selected_features
    assert all(cfs_merit([3], r_cf, r_ff) > cfs_merit([j], r_cf, r_ff) for j in range(7) if j != 3)


def test_cfs_symmetric_uncertainty_option():
    labels = [3, 3, 5, 5, 7, 7]
    m = fm(np.column_stack([[0, 0.1, 0.5, 0.5, 1, 0.9], [0.3, 0.8, 0.3, 0.8, 0.3, 0.8]]), labels)
    res = cfs_best_first(m, correlation="symmetric_uncertainty")
    assert res.selected_features == ["f0"]


def test_best_first_stall_limit():
    r_cf = np.array([0.9, 0.1, 0.1])
    r_ff = np.eye(3)
    chosen, merit = best_first_indices(r_cf, r_ff, stall_limit=1)
    assert chosen == [0] and merit == pytest.approx(0.9)


# ---------------------------------------------------------------- forest


def separable(seed=0, m=40):
    rng = np.random.default_rng(seed)
    labels = [3, 5] * (m // 2)
    x = rng.random((m, 5))
    x[:, 1] = [0.2 if y == 3 else 0.8 for y in labels] + rng.normal(0, 0.01, m)
    return fm(x, labels)


def test_forest_perfect_feature():
    res = random_forest(separable(), trees=50, seed=3)
    assert res.accuracy == 1.0
    imp = res.per_feature_score
    assert imp["f1"] == max(imp.values()) and sorted(imp.values())[-2] < imp["f1"]
    assert sum(imp.values()) == pytest.approx(1.0)


def test_forest_constant_features():
    labels = [3, 3, 3, 4, 4]
    res = random_forest(fm(np.ones((5, 3)), labels), trees=10)
    assert res.accuracy == pytest.approx(0.6)
    assert set(res.per_feature_score.values()) == {0.0}


def test_forest_tie_goes_to_smallest_class():
    model = RandomForest(trees=5, seed=0).fit(np.ones((4, 2)), ["B", "A", "B", "A"])
    assert model.predict(np.ones((1, 2))) == ["A"]


def test_forest_deterministic_and_thread_independent():
    m = separable(seed=5)
    a = RandomForest(30, seed=9).fit(m.rows, m.labels)
    b = RandomForest(30, seed=9, n_jobs=4).fit(m.rows, m.labels)
    assert np.array_equal(a.split_counts(), b.split_counts())
    assert a.predict(m.rows) == b.predict(m.rows)


def test_forest_single_class():
    with pytest.raises(SingleClassInput):
        random_forest(fm(np.zeros((3, 1)), [3, 3, 3]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_importance_sums_to_one_or_zero(seed):
    rng = np.random.default_rng(seed)
    m = fm(rng.integers(0, 3, (12, 3)).astype(float), list(rng.integers(3, 5, 12)))
    if len(set(m.labels)) < 2:
        return
    total = sum(random_forest(m, trees=5, seed=seed).per_feature_score.values())
    assert total == pytest.approx(1.0) or total == 0.0


# ------------------------------------------------------ cross-validation


def test_folds_twenty_by_ten():
    folds = make_folds([3, 4] * 10, k=10, seed=0)
    assert [len(f) for f in folds] == [2] * 10
    assert sorted(np.concatenate(folds).tolist()) == list(range(20))
    assert all(np.array_equal(a, b) for a, b in zip(folds, make_folds([3, 4] * 10, k=10, seed=0)))


@given(st.lists(st.sampled_from("ABC"), min_size=10, max_size=60), st.integers(2, 10), st.integers(0, 99))
def test_folds_partition_and_stratify(labels, k, seed):
    folds = make_folds(labels, k, seed)
    flat = np.concatenate(folds).tolist()
    assert sorted(flat) == list(range(len(labels)))
    sizes = [len(f) for f in folds]
    assert max(sizes) - min(sizes) <= 1
    for c in set(labels):
        per = [sum(labels[i] == c for i in f) for f in folds]
        assert max(per) - min(per) <= 1


def test_too_few_samples():
    with pytest.raises(TooFewSamples):
        make_folds([3, 4, 5], k=10)


def test_cross_validate_consistency():
    m = separable(seed=2, m=60)
    res = cross_validate(m, forest_learner(20), k=10, seed=4)
    cm = res.confusion
    assert res.accuracy == pytest.approx(np.trace(cm) / cm.sum(), abs=1e-12)
    assert cm.sum() == 60 and res.classes == (3, 4, 5, 6, 7)
    again = cross_validate(m, forest_learner(20), k=10, seed=4, n_jobs=3)
    assert again.accuracy == res.accuracy and np.array_equal(again.confusion, cm)


def test_result_validation():
    with pytest.raises(ValueError):
        AnalysisResult("Bogus", {})
    with pytest.raises(ValueError):
        AnalysisResult("RandomForest", {}, confusion=np.zeros((2, 3)), classes=("A", "B"))
