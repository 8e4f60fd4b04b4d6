import numpy as np
import pytest

import oracles
from harboost.dataset import Dataset
from harboost.learners import Family, LearnerSpec, fit
from harboost.synthetic import make_activity_dataset


def test_single_class_prior_is_one():
    ds = Dataset(np.random.default_rng(0).uniform(-1, 1, (8, 2)),
                 np.full(8, 4), ("a", "b"))
    m = fit(LearnerSpec(Family.NAIVE_BAYES), ds)
    assert m.priors.tolist() == [1.0]
    assert m.class_ids.tolist() == [4]


def test_symmetric_means_boundary_at_zero():
    feats = np.concatenate([
        np.full(50, -1.0) + 0.1 * np.sin(np.arange(50)),
        np.full(50, 1.0) + 0.1 * np.sin(np.arange(50)),
    ])[:, None] / 2.0
    labels = np.array([1] * 50 + [2] * 50)
    ds = Dataset(feats, labels, ("f",))
    m = fit(LearnerSpec(Family.NAIVE_BAYES), ds)
    assert int(m.predict_batch(np.array([[-0.01]]))[0]) == 1
    assert int(m.predict_batch(np.array([[0.01]]))[0]) == 2


def test_prior_dominates_identical_likelihoods():
    # same feature distribution in both classes, 9:1 prior
    vals = np.tile(np.linspace(-0.5, 0.5, 10), 10)[:, None]
    labels = np.array([1] * 90 + [2] * 10)
    ds = Dataset(vals, labels, ("f",))
    w = np.ones(100)
    m = LearnerSpec(Family.NAIVE_BAYES).fit_weighted(ds, w)
    queries = np.linspace(-0.4, 0.4, 7)[:, None]
    assert (m.predict_batch(queries) == 1).all()


def test_variance_floor_keeps_constant_feature_finite():
    feats = np.column_stack([np.full(10, 0.25), np.linspace(-0.5, 0.5, 10)])
    labels = np.array([1] * 5 + [2] * 5)
    ds = Dataset(feats, labels, ("a", "b"))
    m = fit(LearnerSpec(Family.NAIVE_BAYES), ds)
    pred = m.predict_batch(np.array([[0.25, -0.3], [0.25, 0.3]]))
    assert pred.tolist() == [1, 2]


@pytest.mark.parametrize("seed", [0, 1])
def test_gaussian_nb_matches_posterior_oracle(seed, rng_queries):
    ds = make_activity_dataset(30, 2, 2, seed=seed, spread=0.4)
    g = np.random.default_rng(seed + 40)
    w = g.uniform(0.05, 1.0, ds.n_rows)
    m = LearnerSpec(Family.NAIVE_BAYES).fit_weighted(ds, w)
    queries = rng_queries(120, 2, seed=seed + 90)
    got = m.predict_batch(queries).tolist()
    want = [
        oracles.gaussian_nb_predict(q, ds.features, ds.labels, w)
        for q in queries
    ]
    assert got == want


@pytest.mark.parametrize("seed", [2, 3])
def test_kernel_nb_matches_kde_oracle(seed, rng_queries):
    ds = make_activity_dataset(40, 3, 2, seed=seed, spread=0.35)
    g = np.random.default_rng(seed + 41)
    w = g.uniform(0.05, 1.0, ds.n_rows)
    m = LearnerSpec(Family.KERNEL_NAIVE_BAYES).fit_weighted(ds, w)
    queries = rng_queries(120, 2, seed=seed + 91)
    got = m.predict_batch(queries).tolist()
    want = [
        oracles.kernel_nb_predict(q, ds.features, ds.labels, w)
        for q in queries
    ]
    assert got == want


def test_kernel_nb_bandwidths_floored():
    feats = np.column_stack([np.full(12, -0.5), np.linspace(-0.9, 0.9, 12)])
    labels = np.array([1] * 6 + [2] * 6)
    ds = Dataset(feats, labels, ("a", "b"))
    m = fit(LearnerSpec(Family.KERNEL_NAIVE_BAYES), ds)
    assert (m.bandwidths >= 1e-3).all()
    assert np.isfinite(
        m.predict_batch(np.array([[-0.5, 0.0]])).astype(float)
    ).all()
