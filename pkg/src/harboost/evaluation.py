"""Stratified cross-validation, confusion-matrix metrics, and the
multi-learner comparison harness.

Confusion matrices are oriented rows = predicted class, columns = true
class. For the 12-activity task the row/column order is the fixed
report order (REPORT_CLASS_ORDER); datasets covering fewer classes use
that order restricted to the classes present.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .boosting import boost_fit, boost_predict_batch
from .dataset import (
    REPORT_CLASS_ORDER,
    ActivityLabel,
    Dataset,
    FoldAssignment,
    stratified_folds,
)
from .learners import DISPLAY_NAMES, LearnerSpec
from .rng import derive_seed

#: Learners that appear in comparison reports as placeholders only.
PLACEHOLDER_LEARNERS = (
    "Artificial Neural Network",
    "Support Vector Machine",
    "Gradient Boosted Trees",
    "AutoMLP",
    "Deep Learning",
)


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """counts[i, j] = rows predicted labels[i] whose true class is labels[j]."""

    counts: np.ndarray
    labels: tuple[ActivityLabel, ...]

    def __eq__(self, other):
        if not isinstance(other, ConfusionMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(
            self.counts, other.counts
        )

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        k = len(self.labels)
        if counts.shape != (k, k):
            raise ValueError(f"counts shape {counts.shape} does not match {k} labels")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)
        object.__setattr__(
            self, "labels", tuple(ActivityLabel(int(l)) for l in self.labels)
        )

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def index_of(self, label) -> int:
        try:
            return self.labels.index(ActivityLabel(int(label)))
        except ValueError:
            raise ValueError(f"class {label!r} not covered by this matrix") from None


def report_order(labels) -> tuple[ActivityLabel, ...]:
    """The fixed 12-class report order restricted to the given labels."""
    present = {ActivityLabel(int(l)) for l in labels}
    return tuple(l for l in REPORT_CLASS_ORDER if l in present)


def confusion_from_predictions(true_ids, pred_ids, labels=None) -> ConfusionMatrix:
    true_ids = np.asarray(true_ids, dtype=np.int64)
    pred_ids = np.asarray(pred_ids, dtype=np.int64)
    if true_ids.shape != pred_ids.shape:
        raise ValueError("true/predicted length mismatch")
    if labels is None:
        labels = report_order(np.union1d(true_ids, pred_ids))
    labels = tuple(ActivityLabel(int(l)) for l in labels)
    pos = {int(l): i for i, l in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for t, p in zip(true_ids.tolist(), pred_ids.tolist()):
        counts[pos[p], pos[t]] += 1
    return ConfusionMatrix(counts, labels)


def accuracy_binary(tp: int, tn: int, fp: int, fn: int) -> float:
    """(tp + tn) / (tp + tn + fp + fn)."""
    if min(tp, tn, fp, fn) < 0:
        raise ValueError("counts must be non-negative")
    total = tp + tn + fp + fn
    if total == 0:
        raise ValueError("at least one count must be positive")
    return (tp + tn) / total


def overall_accuracy(cm: ConfusionMatrix) -> float:
    """Micro-average accuracy: trace / total."""
    if cm.total == 0:
        raise ValueError("empty confusion matrix")
    return float(np.trace(cm.counts)) / cm.total


def class_precision(cm: ConfusionMatrix, label) -> float | None:
    """Diagonal over predicted-row sum; None when the row is empty."""
    i = cm.index_of(label)
    row = int(cm.counts[i].sum())
    return None if row == 0 else int(cm.counts[i, i]) / row


def class_recall(cm: ConfusionMatrix, label) -> float | None:
    """Diagonal over true-column sum; None when the column is empty."""
    i = cm.index_of(label)
    col = int(cm.counts[:, i].sum())
    return None if col == 0 else int(cm.counts[i, i]) / col


@dataclass(frozen=True)
class CVResult:
    fold_accuracies: tuple[float, ...]
    mean_accuracy: float
    std_accuracy: float
    micro_accuracy: float
    aggregate: ConfusionMatrix
    learner: object
    folds: int
    rounds: int
    seed: int


def _fold_result(base_spec, ds, assignment, fold, rounds, seed, labels):
    train = ds.subset(assignment.train_rows(fold))
    test_rows = assignment.test_rows(fold)
    ens = boost_fit(base_spec, train, rounds=rounds, seed=derive_seed(seed, fold))
    pred = boost_predict_batch(ens, ds.features[test_rows])
    true = ds.labels[test_rows]
    cm = confusion_from_predictions(true, pred, labels)
    return float((pred == true).mean()), cm


def cross_validate(
    base_spec,
    ds: Dataset,
    folds: int = 10,
    rounds: int = 10,
    seed: int = 0,
    assignment: FoldAssignment | None = None,
    threads: int = 1,
) -> CVResult:
    """Boosted stratified k-fold cross-validation.

    Every row is predicted exactly once by the ensemble trained on its
    fold's complement. Fold f boosts with seed derive_seed(seed, f).
    The result is independent of the thread count.
    """
    if assignment is None:
        assignment = stratified_folds(ds, folds, seed)
    elif assignment.k != folds or assignment.fold_of_row.shape[0] != ds.n_rows:
        raise ValueError("fold assignment does not match dataset/fold count")
    labels = report_order(np.unique(ds.labels))
    args = [
        (base_spec, ds, assignment, f, rounds, seed, labels)
        for f in range(folds)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda a: _fold_result(*a), args))
    else:
        results = [_fold_result(*a) for a in args]
    fold_accuracies = tuple(acc for acc, _ in results)
    counts = sum(cm.counts for _, cm in results)
    aggregate = ConfusionMatrix(counts, labels)
    mean = sum(fold_accuracies) / folds
    var = sum((a - mean) ** 2 for a in fold_accuracies) / (folds - 1)
    return CVResult(
        fold_accuracies=fold_accuracies,
        mean_accuracy=mean,
        std_accuracy=math.sqrt(var),
        micro_accuracy=overall_accuracy(aggregate),
        aggregate=aggregate,
        learner=base_spec,
        folds=folds,
        rounds=rounds,
        seed=seed,
    )


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    spec: LearnerSpec | None
    result: CVResult | None

    @property
    def implemented(self) -> bool:
        return self.result is not None


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    folds: int
    rounds: int
    seed: int

    def measured(self) -> list[ComparisonRow]:
        return [r for r in self.rows if r.implemented]


def compare(
    specs,
    ds: Dataset,
    folds: int = 10,
    rounds: int = 10,
    seed: int = 0,
    threads: int = 1,
    include_placeholders: bool = True,
) -> ComparisonReport:
    """Cross-validate each spec on one shared fold assignment.

    Measured rows are sorted by descending micro-average accuracy (ties
    keep input order); placeholder rows for the unimplemented learners
    follow at the end.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("no learner specs given")
    assignment = stratified_folds(ds, folds, seed)
    measured = []
    for i, spec in enumerate(specs):
        result = cross_validate(
            spec, ds, folds=folds, rounds=rounds, seed=seed,
            assignment=assignment, threads=threads,
        )
        name = DISPLAY_NAMES.get(spec.family, str(spec.family)) \
            if isinstance(spec, LearnerSpec) else type(spec).__name__
        measured.append((i, ComparisonRow(name, spec, result)))
    measured.sort(key=lambda t: (-t[1].result.micro_accuracy, t[0]))
    rows = [row for _, row in measured]
    if include_placeholders:
        rows.extend(ComparisonRow(n, None, None) for n in PLACEHOLDER_LEARNERS)
    return ComparisonReport(tuple(rows), folds, rounds, seed)
