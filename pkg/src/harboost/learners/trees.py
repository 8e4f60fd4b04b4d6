"""Decision-tree family: stump, binary CART, multiway tree, random tree,
and bootstrap forest.

All trees are grown top-down by greedy weighted-Gini minimization.
Binary nodes test `feature <= threshold` with thresholds at midpoints of
sorted distinct values. Multiway nodes partition one feature's range into
up to `bins` intervals whose boundaries are chosen by exhaustive search
over subsets of a 16-point weighted-quantile candidate grid. Recursion
stops at max_depth, at nodes whose weight mass is at most
min_leaf_weight, and at pure nodes. Leaves predict the class with the
largest weight mass; all ties (split scores, leaf labels, votes) resolve
to the first candidate in scan order, which means the lower feature
index, lower threshold, or lower class id.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..rng import SplitMix64, derive_seed

_QUANTILE_CANDIDATES = 16


@dataclass(frozen=True)
class Leaf:
    label: int  # activity id


@dataclass(frozen=True)
class SplitNode:
    feature: int
    thresholds: tuple[float, ...]  # sorted; len 1 for binary splits
    children: tuple


@dataclass(frozen=True)
class TreeModel:
    root: object
    class_ids: np.ndarray
    kind: str  # "stump" | "tree" | "multiway" | "random"

    def predict_batch(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        out = np.empty(X.shape[0], dtype=np.int64)
        _route(self.root, X, np.arange(X.shape[0]), out)
        return out

    def to_payload(self) -> dict:
        return {
            "family": self.kind,
            "class_ids": self.class_ids.tolist(),
            "root": _node_payload(self.root),
        }


@dataclass(frozen=True)
class ForestModel:
    trees: tuple[TreeModel, ...]
    class_ids: np.ndarray

    def predict_batch(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        votes = np.zeros((X.shape[0], len(self.class_ids)), dtype=np.int64)
        for tree in self.trees:
            idx = np.searchsorted(self.class_ids, tree.predict_batch(X))
            votes[np.arange(X.shape[0]), idx] += 1
        return self.class_ids[votes.argmax(axis=1)]

    def to_payload(self) -> dict:
        return {
            "family": "forest",
            "class_ids": self.class_ids.tolist(),
            "trees": [t.to_payload() for t in self.trees],
        }


def _node_payload(node) -> dict:
    if isinstance(node, Leaf):
        return {"leaf": int(node.label)}
    return {
        "feature": int(node.feature),
        "thresholds": [float(t) for t in node.thresholds],
        "children": [_node_payload(c) for c in node.children],
    }


def _node_from_payload(p) -> object:
    if "leaf" in p:
        return Leaf(int(p["leaf"]))
    return SplitNode(
        int(p["feature"]),
        tuple(float(t) for t in p["thresholds"]),
        tuple(_node_from_payload(c) for c in p["children"]),
    )


def model_from_payload(p: dict):
    if p["family"] == "forest":
        return ForestModel(
            tuple(model_from_payload(t) for t in p["trees"]),
            np.array(p["class_ids"], dtype=np.int64),
        )
    return TreeModel(
        _node_from_payload(p["root"]),
        np.array(p["class_ids"], dtype=np.int64),
        p["family"],
    )


def _route(node, X, idx, out) -> None:
    if isinstance(node, Leaf):
        out[idx] = node.label
        return
    # child i covers (thresholds[i-1], thresholds[i]]; the last child
    # covers values above the final threshold
    cut = np.searchsorted(node.thresholds, X[idx, node.feature], side="left")
    for ci, child in enumerate(node.children):
        sub = idx[cut == ci]
        if sub.size:
            _route(child, X, sub, out)


# ---------------------------------------------------------------------------
# Growth
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowParams:
    max_depth: int
    min_leaf_weight: float
    multiway: bool = False
    bins: int = 4
    subset_size: int | None = None  # random per-node feature subset


class _Grower:
    def __init__(self, X, y_idx, w, n_classes, params, prng=None):
        self.X = X
        self.y = y_idx
        self.w = w
        self.K = n_classes
        self.p = params
        self.prng = prng
        self.scratch = np.empty(X.shape[0], dtype=np.int64)

    def grow(self) -> object:
        order = [np.argsort(self.X[:, f], kind="stable")
                 for f in range(self.X.shape[1])]
        return self._node(order, depth=0)

    def _node(self, order, depth: int) -> object:
        rows = order[0]
        masses = np.bincount(self.y[rows], weights=self.w[rows], minlength=self.K)
        total = masses.sum()
        leaf = Leaf(int(masses.argmax()))
        if (
            depth >= self.p.max_depth
            or total <= self.p.min_leaf_weight
            or (masses > 0).sum() <= 1
        ):
            return leaf
        if self.p.subset_size is not None:
            feats = sorted(
                self.prng.sample_indices(self.X.shape[1], self.p.subset_size)
            )
        else:
            feats = range(self.X.shape[1])
        best_score, best_feat, best_thresholds = np.inf, -1, ()
        for f in feats:
            vals = self.X[order[f], f]
            if vals[0] == vals[-1]:
                continue
            found = (
                self._best_multiway(vals, order[f])
                if self.p.multiway
                else self._best_binary(vals, order[f])
            )
            if found is not None and found[0] < best_score:
                best_score, best_thresholds = found
                best_feat = f
        if best_feat < 0:
            return leaf
        thresholds = np.asarray(best_thresholds)
        cut = np.searchsorted(thresholds, self.X[rows, best_feat], side="left")
        self.scratch[rows] = cut
        # materialize every child's sorted index lists before recursing:
        # the recursion reuses the scratch array for its own routing
        child_orders = [
            [o[self.scratch[o] == ci] for o in order]
            for ci in range(len(thresholds) + 1)
        ]
        children = [self._node(co, depth + 1) for co in child_orders]
        return SplitNode(int(best_feat), tuple(map(float, thresholds)), tuple(children))

    def _class_cumsum(self, rows) -> np.ndarray:
        onehot = np.zeros((rows.size, self.K), dtype=np.float64)
        onehot[np.arange(rows.size), self.y[rows]] = self.w[rows]
        return onehot.cumsum(axis=0)

    @staticmethod
    def _gini_sum(masses: np.ndarray) -> np.ndarray:
        """Weighted Gini contribution (M^2 - sum_c m_c^2) / M per group.

        This form makes a pure group score exactly 0.0, so ties between
        perfect splits resolve by scan order rather than rounding noise.
        """
        s = masses.sum(axis=-1)
        sq = (masses * masses).sum(axis=-1)
        return np.where(s > 0, (s * s - sq) / np.where(s > 0, s, 1.0), 0.0)

    def _best_binary(self, vals, rows):
        cum = self._class_cumsum(rows)
        bounds = np.flatnonzero(vals[1:] != vals[:-1])
        left = cum[bounds]
        right = cum[-1] - left
        score = self._gini_sum(left) + self._gini_sum(right)
        b = int(score.argmin())
        i = bounds[b]
        t = (vals[i] + vals[i + 1]) / 2.0
        if t >= vals[i + 1]:  # midpoint collapsed upward in float
            t = vals[i]
        return float(score[b]), (float(t),)

    def _best_multiway(self, vals, rows):
        cum = self._class_cumsum(rows)
        cumz = np.vstack([np.zeros(self.K), cum])
        wcum = self.w[rows].cumsum()
        total_w = wcum[-1]
        if total_w <= 0:
            return None
        levels = np.arange(1, _QUANTILE_CANDIDATES + 1) / (_QUANTILE_CANDIDATES + 1)
        pos = np.searchsorted(wcum, levels * total_w, side="left")
        cand = np.unique(vals[np.minimum(pos, vals.size - 1)])
        cand = cand[cand < vals[-1]]
        if cand.size == 0:
            return None
        cand_pos = np.searchsorted(vals, cand, side="right")
        n = vals.size
        best_score, best_cut = np.inf, None
        for size in range(1, self.p.bins):
            if size > cand.size:
                break
            combos = np.array(
                list(itertools.combinations(range(cand.size), size)), dtype=np.int64
            )
            bounds = np.concatenate(
                [
                    np.zeros((combos.shape[0], 1), dtype=np.int64),
                    cand_pos[combos],
                    np.full((combos.shape[0], 1), n, dtype=np.int64),
                ],
                axis=1,
            )
            masses = cumz[bounds[:, 1:]] - cumz[bounds[:, :-1]]
            scores = self._gini_sum(masses).sum(axis=1)
            b = int(scores.argmin())
            if scores[b] < best_score:
                best_score = float(scores[b])
                best_cut = tuple(float(v) for v in cand[combos[b]])
        if best_cut is None:
            return None
        return best_score, best_cut


def grow_tree(X, y_idx, w, n_classes, params: GrowParams, prng=None):
    return _Grower(
        np.asarray(X, dtype=np.float64),
        np.asarray(y_idx, dtype=np.int64),
        np.asarray(w, dtype=np.float64),
        n_classes,
        params,
        prng,
    ).grow()


# ---------------------------------------------------------------------------
# Family entry points
# ---------------------------------------------------------------------------


def _prep(ds, w):
    class_ids = np.unique(ds.labels)
    y_idx = np.searchsorted(class_ids, ds.labels)
    return class_ids, y_idx, np.asarray(w, dtype=np.float64)


def _to_label_tree(node, class_ids):
    """Map leaf class indices to activity ids."""
    if isinstance(node, Leaf):
        return Leaf(int(class_ids[node.label]))
    return SplitNode(
        node.feature, node.thresholds,
        tuple(_to_label_tree(c, class_ids) for c in node.children),
    )


def fit_tree(ds, w, max_depth, min_leaf_weight, kind="tree", bins=4,
             subset_size=None, seed=0) -> TreeModel:
    class_ids, y_idx, w = _prep(ds, w)
    prng = SplitMix64(seed) if subset_size is not None else None
    params = GrowParams(
        max_depth=max_depth,
        min_leaf_weight=min_leaf_weight,
        multiway=(kind == "multiway"),
        bins=bins,
        subset_size=subset_size,
    )
    root = grow_tree(ds.features, y_idx, w, len(class_ids), params, prng)
    return TreeModel(_to_label_tree(root, class_ids), class_ids, kind)


def fit_forest(ds, w, n_trees, max_depth, min_leaf_weight, subset_size,
               seed) -> ForestModel:
    """Seeded weighted bootstrap forest of random trees.

    Tree i draws N rows with replacement, with probability proportional
    to w, from a SplitMix64 stream seeded by derive_seed(seed, i); the
    same stream then drives that tree's per-node feature subsets. Each
    tree trains on its resample with integer multiplicity weights (an
    exact, scale-equivalent form of counts/N: all Gini mass arithmetic
    stays exact, so split ties resolve by scan order, not rounding).
    Trees vote unweighted; ties go to the lower class id.
    """
    class_ids, _, w = _prep(ds, w)
    n = ds.n_rows
    cum = np.cumsum(w / w.sum())
    trees = []
    for i in range(n_trees):
        prng = SplitMix64(derive_seed(seed, i))
        counts = np.zeros(n, dtype=np.int64)
        for _ in range(n):
            u = prng.next_float()
            counts[min(np.searchsorted(cum, u, side="right"), n - 1)] += 1
        picked = np.flatnonzero(counts > 0)
        sub = ds.subset(picked)
        sub_w = counts[picked].astype(np.float64)
        sub_ids = np.unique(sub.labels)
        y_idx = np.searchsorted(sub_ids, sub.labels)
        params = GrowParams(
            max_depth=max_depth,
            min_leaf_weight=min_leaf_weight * n,
            subset_size=subset_size,
        )
        root = grow_tree(sub.features, y_idx, sub_w, len(sub_ids), params, prng)
        trees.append(TreeModel(_to_label_tree(root, sub_ids), sub_ids, "random"))
    return ForestModel(tuple(trees), class_ids)
