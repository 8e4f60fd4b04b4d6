"""Stratified cross-validation with the full confusion-matrix report,
rendered exactly as the CLI's text format (headline, margins, heatmap)."""

from harboost import Family, LearnerSpec, cross_validate
from harboost.reports import headline, render_heatmap, render_matrix_text
from harboost.synthetic import make_activity_dataset


def main():
    ds = make_activity_dataset(600, 12, 15, seed=11, spread=0.35)
    res = cross_validate(
        LearnerSpec(Family.KNN, k=12), ds, folds=10, rounds=10, seed=2024
    )

    print(headline(res))
    print()
    print(render_matrix_text(res.aggregate))
    print()
    print(render_heatmap(res.aggregate))
    print()
    print("fold accuracies:",
          ", ".join(f"{100 * a:.2f}%" for a in res.fold_accuracies))


if __name__ == "__main__":
    main()
