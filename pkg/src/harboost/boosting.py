"""Multi-class AdaBoost (discrete SAMME) over any base learner.

The loop starts from uniform weights 1/N and, for round t = 1..T, fits
the base learner on the current distribution, measures its weighted
training error eps_t, and sets the vote weight

    alpha_t = ln((1 - eps_t) / eps_t) + ln(K - 1)

where K is the number of classes present in the training data. Weights
of misclassified rows are multiplied by exp(alpha_t) and the
distribution renormalized. A round with eps_t >= 1 - 1/K is discarded
and stops the loop (a first-round failure still yields a usable
single-model ensemble with alpha = ln(K - 1)); eps_t <= 1e-10 is
clamped to 1e-10, the round is kept, and the loop stops. Round t fits
with learner seed `seed XOR t`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import ActivityLabel, Dataset
from .learners import knn

#: Lower clamp on the weighted error, bounding alpha at ln(1e10) + ln(K-1).
EPSILON_CLAMP = 1e-10


def samme_alpha(epsilon: float, num_classes: int) -> float:
    """Vote weight for a round with weighted error epsilon."""
    return math.log((1.0 - epsilon) / epsilon) + math.log(num_classes - 1)


@dataclass(frozen=True)
class BoostRound:
    """One retained round; weight_sum/min_weight describe the updated
    distribution (None for rounds that stopped the loop)."""

    model: object
    alpha: float
    epsilon: float
    weight_sum: float | None = None
    min_weight: float | None = None


@dataclass(frozen=True)
class BoostedEnsemble:
    rounds: tuple[BoostRound, ...]
    num_classes: int
    class_ids: np.ndarray
    base_spec: object
    rounds_requested: int
    seed: int

    def predict_batch(self, X) -> np.ndarray:
        return boost_predict_batch(self, X)


def boost_fit(base_spec, ds: Dataset, rounds: int = 10, seed: int = 0) -> BoostedEnsemble:
    """Run the SAMME loop; base_spec is a LearnerSpec or any object with
    fit_weighted(ds, w, seed)."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    class_ids = np.unique(ds.labels)
    num_classes = len(class_ids)
    if num_classes < 2:
        raise ValueError("boosting needs at least 2 classes in the data")
    n = ds.n_rows
    labels = ds.labels
    w = np.full(n, 1.0 / n)
    kept: list[BoostRound] = []
    table = None  # k-NN: neighbor sets are weight-independent, cache them
    for t in range(1, rounds + 1):
        model = base_spec.fit_weighted(ds, w, seed=seed ^ t)
        if isinstance(model, knn.KnnModel):
            if table is None:
                table = knn.neighbor_table(model.rows, ds.features, model.k)
            pred = _knn_table_predictions(model, table)
        else:
            pred = model.predict_batch(ds.features)
        miss = pred != labels
        epsilon = float(w[miss].sum())
        if epsilon >= 1.0 - 1.0 / num_classes:
            if t == 1:
                kept.append(
                    BoostRound(model, math.log(num_classes - 1), epsilon)
                )
            break
        if epsilon <= EPSILON_CLAMP:
            kept.append(
                BoostRound(model, samme_alpha(EPSILON_CLAMP, num_classes),
                           EPSILON_CLAMP)
            )
            break
        alpha = samme_alpha(epsilon, num_classes)
        w = w * np.exp(alpha * miss)
        w = w / w.sum()
        kept.append(
            BoostRound(model, alpha, epsilon, float(w.sum()), float(w.min()))
        )
    return BoostedEnsemble(
        tuple(kept), num_classes, class_ids, base_spec, rounds, seed
    )


def _knn_table_predictions(model: knn.KnnModel, table: np.ndarray) -> np.ndarray:
    scores = knn.vote_scores(
        table, model.label_indices(), model.weights, len(model.class_ids)
    )
    return model.class_ids[scores.argmax(axis=1)]


def _round_predictions(ens: BoostedEnsemble, X: np.ndarray):
    """Yield (predictions, alpha) per round, sharing one neighbor table
    when every round is k-NN over the same stored rows."""
    models = [r.model for r in ens.rounds]
    first = models[0]
    if isinstance(first, knn.KnnModel) and all(
        isinstance(m, knn.KnnModel) and m.rows is first.rows and m.k == first.k
        for m in models
    ):
        table = knn.neighbor_table(first.rows, X, first.k)
        for r in ens.rounds:
            yield _knn_table_predictions(r.model, table), r.alpha
        return
    for r in ens.rounds:
        yield r.model.predict_batch(X), r.alpha


def boost_predict_batch(ens: BoostedEnsemble, X) -> np.ndarray:
    """Alpha-weighted vote over rounds; ties go to the lower class id."""
    X = np.asarray(X, dtype=np.float64)
    votes = np.zeros((X.shape[0], ens.num_classes))
    rows = np.arange(X.shape[0])
    for pred, alpha in _round_predictions(ens, X):
        votes[rows, np.searchsorted(ens.class_ids, pred)] += alpha
    return ens.class_ids[votes.argmax(axis=1)]


def boost_predict(ens: BoostedEnsemble, x) -> ActivityLabel:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("boost_predict expects a single feature vector")
    return ActivityLabel(int(boost_predict_batch(ens, x[None, :])[0]))
