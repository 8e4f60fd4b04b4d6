"""Gaussian and kernel-density naive Bayes with weighted fitting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numerics import (
    LIKELIHOOD_FLOOR,
    VAR_FLOOR,
    gaussian_logpdf,
    silverman_bandwidth,
)

_BLOCK = 256


def _class_partition(ds, w):
    """Classes with positive weight mass, their priors, and row groups."""
    w = np.asarray(w, dtype=np.float64)
    total = w.sum()
    class_ids, priors, groups = [], [], []
    for label in np.unique(ds.labels):
        rows = np.flatnonzero(ds.labels == label)
        mass = w[rows].sum()
        if mass <= 0:
            continue
        class_ids.append(int(label))
        priors.append(mass / total)
        groups.append(rows)
    return np.array(class_ids, dtype=np.int64), np.array(priors), groups


@dataclass(frozen=True)
class GaussianNbModel:
    class_ids: np.ndarray
    priors: np.ndarray   # (K,)
    means: np.ndarray    # (K, d)
    variances: np.ndarray  # (K, d), floored

    @property
    def n_features(self) -> int:
        return self.means.shape[1]

    def predict_batch(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        scores = np.log(self.priors)[None, :] + gaussian_logpdf(
            X[:, None, :], self.means[None, :, :], self.variances[None, :, :]
        ).sum(axis=2)
        return self.class_ids[scores.argmax(axis=1)]

    def to_payload(self) -> dict:
        return {
            "family": "naive-bayes",
            "class_ids": self.class_ids.tolist(),
            "priors": self.priors.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
        }


def gaussian_nb_from_payload(p: dict) -> GaussianNbModel:
    return GaussianNbModel(
        np.array(p["class_ids"], dtype=np.int64),
        np.array(p["priors"]),
        np.array(p["means"]),
        np.array(p["variances"]),
    )


def fit_gaussian_nb(ds, w) -> GaussianNbModel:
    class_ids, priors, groups = _class_partition(ds, w)
    w = np.asarray(w, dtype=np.float64)
    means = np.empty((len(class_ids), ds.n_features))
    variances = np.empty_like(means)
    for i, rows in enumerate(groups):
        cw = w[rows]
        mu = cw @ ds.features[rows] / cw.sum()
        var = cw @ (ds.features[rows] - mu) ** 2 / cw.sum()
        means[i] = mu
        variances[i] = np.maximum(var, VAR_FLOOR)
    return GaussianNbModel(class_ids, priors, means, variances)


@dataclass(frozen=True)
class KernelNbModel:
    """Per-class per-feature weighted KDE with Silverman bandwidths.

    For class c and feature f the likelihood at x is
    sum_j w_j N(x; x_j, h_cf^2) / sum_j w_j, floored before the log.
    """

    class_ids: np.ndarray
    priors: np.ndarray
    samples: tuple        # per class: (n_c, d) sample matrix
    sample_weights: tuple  # per class: (n_c,) normalized weights
    bandwidths: np.ndarray  # (K, d)

    @property
    def n_features(self) -> int:
        return self.bandwidths.shape[1]

    def predict_batch(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        out = np.empty(X.shape[0], dtype=np.int64)
        for start in range(0, X.shape[0], _BLOCK):
            q = X[start:start + _BLOCK]
            scores = np.empty((q.shape[0], len(self.class_ids)))
            for c in range(len(self.class_ids)):
                h = self.bandwidths[c]
                z = (q[:, None, :] - self.samples[c][None, :, :]) / h
                dens = np.einsum(
                    "qnd,n->qd", np.exp(-0.5 * z * z), self.sample_weights[c]
                ) / (h * np.sqrt(2.0 * np.pi))
                scores[:, c] = np.log(self.priors[c]) + np.log(
                    np.maximum(dens, LIKELIHOOD_FLOOR)
                ).sum(axis=1)
            out[start:start + _BLOCK] = self.class_ids[scores.argmax(axis=1)]
        return out

    def to_payload(self) -> dict:
        return {
            "family": "kernel-naive-bayes",
            "class_ids": self.class_ids.tolist(),
            "priors": self.priors.tolist(),
            "samples": [s.tolist() for s in self.samples],
            "sample_weights": [sw.tolist() for sw in self.sample_weights],
            "bandwidths": self.bandwidths.tolist(),
        }


def kernel_nb_from_payload(p: dict) -> KernelNbModel:
    return KernelNbModel(
        np.array(p["class_ids"], dtype=np.int64),
        np.array(p["priors"]),
        tuple(np.array(s) for s in p["samples"]),
        tuple(np.array(sw) for sw in p["sample_weights"]),
        np.array(p["bandwidths"]),
    )


def fit_kernel_nb(ds, w) -> KernelNbModel:
    class_ids, priors, groups = _class_partition(ds, w)
    w = np.asarray(w, dtype=np.float64)
    samples, sample_weights = [], []
    bandwidths = np.empty((len(class_ids), ds.n_features))
    for i, rows in enumerate(groups):
        cw = w[rows]
        samples.append(np.array(ds.features[rows]))
        sample_weights.append(cw / cw.sum())
        for f in range(ds.n_features):
            bandwidths[i, f] = silverman_bandwidth(ds.features[rows, f], cw)
    return KernelNbModel(
        class_ids, priors, tuple(samples), tuple(sample_weights), bandwidths
    )
