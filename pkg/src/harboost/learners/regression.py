"""One-hot least-squares classifiers (independent and joint solves).

Both families regress one-hot class indicators on [1, x] by weighted
ridge least squares: C = (Z^T W Z + ridge I')^-1 Z^T W Y, where I' is
the identity with the intercept entry zeroed. Leaving the intercept
unpenalized keeps zero-variance feature columns at (numerically) zero
coefficient instead of letting them absorb intercept mass. The "ovr"
variant solves the K indicator columns one at a time, the "vector"
variant in a single multi-column solve; the normal equations are the
same, so the two coefficient matrices agree. Prediction is the argmax
of the K fitted scores, lower class id on ties.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numerics import auto_ridge, solve_spd


@dataclass(frozen=True)
class LinearScoreModel:
    class_ids: np.ndarray
    coef: np.ndarray  # (d+1, K), intercept row first
    kind: str         # "linear-regression" | "vector-linear-regression"

    @property
    def n_features(self) -> int:
        return self.coef.shape[0] - 1

    def predict_batch(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        scores = self.coef[0][None, :] + X @ self.coef[1:]
        return self.class_ids[scores.argmax(axis=1)]

    def to_payload(self) -> dict:
        return {
            "family": self.kind,
            "class_ids": self.class_ids.tolist(),
            "coef": self.coef.tolist(),
        }


def model_from_payload(p: dict) -> LinearScoreModel:
    return LinearScoreModel(
        np.array(p["class_ids"], dtype=np.int64),
        np.array(p["coef"]),
        p["family"],
    )


def fit_linear(ds, w, ridge: float | None, joint: bool) -> LinearScoreModel:
    w = np.asarray(w, dtype=np.float64)
    class_ids = np.unique(ds.labels[w > 0] if (w > 0).any() else ds.labels)
    z = np.hstack([np.ones((ds.n_rows, 1)), ds.features])
    wz = z * w[:, None]
    a = z.T @ wz
    a = (a + a.T) / 2.0
    r = auto_ridge(a) if ridge is None else ridge
    a[np.diag_indices_from(a)] += r
    a[0, 0] -= r  # intercept stays unpenalized
    y = (ds.labels[:, None] == class_ids[None, :]).astype(np.float64)
    b = wz.T @ y
    if joint:
        coef = solve_spd(a, b)
    else:
        coef = np.column_stack([solve_spd(a, b[:, k]) for k in range(b.shape[1])])
    return LinearScoreModel(
        class_ids, coef, "vector-linear-regression" if joint else "linear-regression"
    )
