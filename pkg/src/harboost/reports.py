"""Text, JSON, and CSV rendering for evaluation and comparison results.

JSON reports are schema-stable ("harboost.report.v1"): existing keys are
never renamed, new keys may appear. Serialization is canonical (sorted
keys, two-space indent, shortest round-trip floats), so identical inputs
produce byte-identical reports.
"""

from __future__ import annotations

import json

from .dataset import ActivitySummary, Dataset, dataset_digest
from .evaluation import (
    ComparisonReport,
    ConfusionMatrix,
    CVResult,
    class_precision,
    class_recall,
)

SCHEMA = "harboost.report.v1"
_HEAT_LEVELS = " .:-=+*#%@"
_UNDEFINED = "—"


def pct(x: float | None, digits: int = 2) -> str:
    return _UNDEFINED if x is None else f"{100.0 * x:.{digits}f}%"


def headline(result: CVResult) -> str:
    return (
        f"accuracy: {pct(result.mean_accuracy)} +/- {pct(result.std_accuracy)} "
        f"(micro average: {pct(result.micro_accuracy)})"
    )


def dataset_block(ds: Dataset) -> dict:
    return {
        "digest": dataset_digest(ds),
        "rows": ds.n_rows,
        "features": ds.n_features,
        "feature_names": list(ds.feature_names),
    }


def _align(table: list[list[str]], right_from: int = 1) -> str:
    widths = [max(len(row[c]) for row in table) for c in range(len(table[0]))]
    lines = []
    for row in table:
        cells = [
            row[c].ljust(widths[c]) if c < right_from else row[c].rjust(widths[c])
            for c in range(len(row))
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def render_matrix_text(cm: ConfusionMatrix) -> str:
    """Count matrix with a class-precision column and class-recall row."""
    names = [l.name for l in cm.labels]
    head = [""] + [f"true {n}" for n in names] + ["class precision"]
    table = [head]
    for i, n in enumerate(names):
        row = [f"pred {n}"]
        row += [str(int(v)) for v in cm.counts[i]]
        row.append(pct(class_precision(cm, cm.labels[i])))
        table.append(row)
    recall = ["class recall"]
    recall += [pct(class_recall(cm, l)) for l in cm.labels]
    recall.append("")
    table.append(recall)
    return _align(table)


def render_heatmap(cm: ConfusionMatrix) -> str:
    """Plain-text intensity map of the count matrix (rows = predicted)."""
    peak = max(int(cm.counts.max()), 1)
    lines = ["count heatmap (rows = predicted, columns = true):"]
    for i, label in enumerate(cm.labels):
        cells = []
        for v in cm.counts[i]:
            level = 0 if v == 0 else 1 + int(
                (len(_HEAT_LEVELS) - 2) * (int(v) / peak)
            )
            cells.append(_HEAT_LEVELS[min(level, len(_HEAT_LEVELS) - 1)])
        lines.append(f"  {' '.join(cells)}  {label.name}")
    lines.append(f"  scale: ' ' = 0 .. '@' = {peak}")
    return "\n".join(lines)


def _config_lines(config: dict) -> str:
    return "\n".join(f"  {k}: {config[k]}" for k in sorted(config))


# ---------------------------------------------------------------------------
# Evaluation report
# ---------------------------------------------------------------------------


def evaluation_payload(result: CVResult, config: dict, ds: Dataset) -> dict:
    cm = result.aggregate
    return {
        "schema": SCHEMA,
        "command": "evaluate",
        "config": config,
        "dataset": dataset_block(ds),
        "result": {
            "headline": headline(result),
            "mean_accuracy": result.mean_accuracy,
            "std_accuracy": result.std_accuracy,
            "micro_accuracy": result.micro_accuracy,
            "fold_accuracies": list(result.fold_accuracies),
            "confusion": {
                "order": [l.name for l in cm.labels],
                "class_ids": [int(l) for l in cm.labels],
                "counts": cm.counts.tolist(),
            },
            "precision": {l.name: class_precision(cm, l) for l in cm.labels},
            "recall": {l.name: class_recall(cm, l) for l in cm.labels},
        },
    }


def to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render_evaluation_text(result: CVResult, config: dict, ds: Dataset) -> str:
    parts = [
        "boosted cross-validation report",
        "configuration:",
        _config_lines(config),
        f"dataset: {ds.n_rows} rows, {ds.n_features} features, "
        f"digest {dataset_digest(ds)}",
        "",
        headline(result),
        "",
        render_matrix_text(result.aggregate),
        "",
        render_heatmap(result.aggregate),
        "",
        "fold accuracies: " + ", ".join(pct(a) for a in result.fold_accuracies),
    ]
    return "\n".join(parts) + "\n"


def render_evaluation_csv(result: CVResult, config: dict, ds: Dataset) -> str:
    cm = result.aggregate
    names = [l.name for l in cm.labels]
    lines = ["," + ",".join(f"true {n}" for n in names) + ",class precision"]
    for i, n in enumerate(names):
        cells = [f"pred {n}"]
        cells += [str(int(v)) for v in cm.counts[i]]
        cells.append(pct(class_precision(cm, cm.labels[i])))
        lines.append(",".join(cells))
    lines.append(
        "class recall,"
        + ",".join(pct(class_recall(cm, l)) for l in cm.labels)
        + ","
    )
    lines.append("")
    lines.append("metric,value")
    lines.append(f"mean_accuracy,{result.mean_accuracy!r}")
    lines.append(f"std_accuracy,{result.std_accuracy!r}")
    lines.append(f"micro_accuracy,{result.micro_accuracy!r}")
    for i, a in enumerate(result.fold_accuracies):
        lines.append(f"fold_{i}_accuracy,{a!r}")
    lines.append(f"dataset_digest,{dataset_digest(ds)}")
    for k in sorted(config):
        lines.append(f"config_{k},{config[k]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Comparison report
# ---------------------------------------------------------------------------


def comparison_payload(report: ComparisonReport, config: dict, ds: Dataset) -> dict:
    rows = []
    for row in report.rows:
        if row.implemented:
            rows.append({
                "name": row.name,
                "implemented": True,
                "mean_accuracy": row.result.mean_accuracy,
                "std_accuracy": row.result.std_accuracy,
                "micro_accuracy": row.result.micro_accuracy,
            })
        else:
            rows.append({
                "name": row.name,
                "implemented": False,
                "mean_accuracy": None,
                "std_accuracy": None,
                "micro_accuracy": None,
            })
    return {
        "schema": SCHEMA,
        "command": "compare",
        "config": config,
        "dataset": dataset_block(ds),
        "rows": rows,
    }


def render_comparison_text(report: ComparisonReport, config: dict, ds: Dataset) -> str:
    table = [["learner", "overall accuracy", "micro average"]]
    for row in report.rows:
        if row.implemented:
            table.append([
                row.name,
                f"{pct(row.result.mean_accuracy)} +/- {pct(row.result.std_accuracy)}",
                pct(row.result.micro_accuracy),
            ])
        else:
            table.append([row.name, "not implemented", ""])
    parts = [
        "learner comparison (boosted, shared stratified folds)",
        "configuration:",
        _config_lines(config),
        f"dataset: {ds.n_rows} rows, {ds.n_features} features, "
        f"digest {dataset_digest(ds)}",
        "",
        _align(table),
    ]
    return "\n".join(parts) + "\n"


def render_comparison_csv(report: ComparisonReport, config: dict, ds: Dataset) -> str:
    lines = ["learner,mean_accuracy,std_accuracy,micro_accuracy,implemented"]
    for row in report.rows:
        if row.implemented:
            lines.append(
                f"{row.name},{row.result.mean_accuracy!r},"
                f"{row.result.std_accuracy!r},{row.result.micro_accuracy!r},true"
            )
        else:
            lines.append(f"{row.name},,,,false")
    lines.append("")
    lines.append("metric,value")
    lines.append(f"dataset_digest,{dataset_digest(ds)}")
    for k in sorted(config):
        lines.append(f"config_{k},{config[k]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Per-activity summaries
# ---------------------------------------------------------------------------


def summary_payload(rows: list[ActivitySummary], config: dict, ds: Dataset) -> dict:
    return {
        "schema": SCHEMA,
        "command": "summarize",
        "config": config,
        "dataset": dataset_block(ds),
        "rows": [
            {
                "activity": r.activity.name,
                "activity_id": int(r.activity),
                "feature": r.feature,
                "mean": r.mean,
                "std": r.std,
                "median_abs_dev": r.median_abs_dev,
                "max": r.max,
                "min": r.min,
            }
            for r in rows
        ],
    }


def render_summary_text(rows: list[ActivitySummary]) -> str:
    table = [["activity", "feature", "mean", "std", "mad", "max", "min"]]
    for r in rows:
        table.append([
            r.activity.name, r.feature,
            f"{r.mean:.6f}", f"{r.std:.6f}", f"{r.median_abs_dev:.6f}",
            f"{r.max:.6f}", f"{r.min:.6f}",
        ])
    return _align(table, right_from=2) + "\n"


def render_summary_csv(rows: list[ActivitySummary]) -> str:
    lines = ["activity_id,activity,feature,mean,std,median_abs_dev,max,min"]
    for r in rows:
        lines.append(
            f"{int(r.activity)},{r.activity.name},{r.feature},"
            f"{r.mean!r},{r.std!r},{r.median_abs_dev!r},{r.max!r},{r.min!r}"
        )
    return "\n".join(lines) + "\n"
