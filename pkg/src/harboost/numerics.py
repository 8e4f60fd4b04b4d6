"""Weighted statistics and small dense SPD linear algebra for the learners."""

from __future__ import annotations

import math

import numpy as np

#: Per-feature variances below this are clamped before use.
VAR_FLOOR = 1e-9
#: Minimum kernel bandwidth, preventing delta spikes on constant features.
BANDWIDTH_FLOOR = 1e-3
#: Likelihoods are floored here before taking logs.
LIKELIHOOD_FLOOR = 1e-300
#: Scale-aware default ridge: RIDGE_SCALE * trace(A) / dim(A).
RIDGE_SCALE = 1e-6


class SingularMatrixError(Exception):
    """Raised when an SPD factorization hits a non-positive pivot."""


def check_weights(w, n: int) -> np.ndarray:
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (n,):
        raise ValueError(f"weight vector has shape {w.shape}, expected ({n},)")
    if (w < 0).any():
        raise ValueError("weights must be non-negative")
    if w.sum() <= 0:
        raise ValueError("total weight must be positive")
    return w


def weighted_mean(xs, w) -> np.ndarray:
    """Weighted row mean: sum_i w_i x_i / sum_i w_i."""
    xs = np.asarray(xs, dtype=np.float64)
    w = check_weights(w, xs.shape[0])
    return (w @ xs) / w.sum()


def weighted_covariance(xs, w, ridge: float = 0.0) -> np.ndarray:
    """Weighted covariance sum_i w_i (x_i - mu)(x_i - mu)^T / sum w + ridge*I.

    The result is exactly symmetric (upper and lower triangles mirrored).
    """
    xs = np.asarray(xs, dtype=np.float64)
    w = check_weights(w, xs.shape[0])
    if ridge < 0:
        raise ValueError("ridge must be non-negative")
    mu = weighted_mean(xs, w)
    xc = xs - mu
    cov = (xc * w[:, None]).T @ xc / w.sum()
    cov = (cov + cov.T) / 2.0
    if ridge:
        cov = cov + ridge * np.eye(cov.shape[0])
    return cov


def auto_ridge(a: np.ndarray) -> float:
    """Default regularization strength for a square matrix."""
    d = a.shape[0]
    return RIDGE_SCALE * float(np.trace(a)) / d


def _check_symmetric(a: np.ndarray) -> None:
    diff = np.abs(a - a.T)
    tol = 1e-12 * np.maximum(1.0, np.abs(a))
    if (diff > tol).any():
        raise ValueError("matrix is not symmetric")


def cholesky_factor(a) -> np.ndarray:
    """Lower-triangular L with L L^T = A for symmetric positive definite A.

    A non-positive pivot raises SingularMatrixError naming the pivot index.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    _check_symmetric(a)
    d = a.shape[0]
    L = np.zeros_like(a)
    for j in range(d):
        pivot = a[j, j] - L[j, :j] @ L[j, :j]
        if not (pivot > 0.0) or not math.isfinite(pivot):
            raise SingularMatrixError(
                f"matrix singular after ridge: pivot {j} is not positive"
            )
        L[j, j] = math.sqrt(pivot)
        if j + 1 < d:
            L[j + 1:, j] = (a[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


def solve_lower(L: np.ndarray, b):
    """Solve L x = b by forward substitution (b may be a matrix)."""
    x = np.array(b, dtype=np.float64, copy=True)
    for i in range(L.shape[0]):
        if i:
            x[i] -= L[i, :i] @ x[:i]
        x[i] /= L[i, i]
    return x


def solve_lower_t(L: np.ndarray, b):
    """Solve L^T x = b by backward substitution."""
    x = np.array(b, dtype=np.float64, copy=True)
    for i in reversed(range(L.shape[0])):
        if i + 1 < L.shape[0]:
            x[i] -= L[i + 1:, i] @ x[i + 1:]
        x[i] /= L[i, i]
    return x


def solve_spd(a, b) -> np.ndarray:
    """Solve A X = B for symmetric positive definite A via Cholesky."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if b.shape[0] != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: A is {a.shape}, B has leading size {b.shape[0]}"
        )
    L = cholesky_factor(a)
    return solve_lower_t(L, solve_lower(L, b))


def gaussian_logpdf(x, mean, var):
    """log N(x; mean, var), with var clamped to the variance floor."""
    var = np.maximum(var, VAR_FLOOR)
    return -0.5 * (np.log(2.0 * math.pi * var) + (np.asarray(x) - mean) ** 2 / var)


def silverman_bandwidth(xs, w) -> float:
    """Silverman's rule on weighted samples: 1.06 * sigma_w * N_eff^(-1/5).

    N_eff = (sum w)^2 / sum(w^2) is the effective sample size and sigma_w
    the weighted standard deviation. Result is floored at BANDWIDTH_FLOOR.
    """
    xs = np.asarray(xs, dtype=np.float64)
    w = check_weights(w, xs.shape[0])
    total = w.sum()
    mu = (w @ xs) / total
    var = (w @ (xs - mu) ** 2) / total
    n_eff = total * total / (w @ w)
    h = 1.06 * math.sqrt(var) * n_eff ** -0.2
    return max(h, BANDWIDTH_FLOOR)
