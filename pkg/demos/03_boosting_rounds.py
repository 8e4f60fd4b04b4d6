"""Watch the multi-class AdaBoost (SAMME) loop reweight a weak learner.

Decision stumps are individually weak on a 6-class task; the round trace
shows the weighted error eps_t, the vote weight alpha_t, and how the
ensemble's training accuracy climbs past any single stump.
"""

from harboost import Family, LearnerSpec, boost_fit, boost_predict_batch
from harboost.synthetic import make_activity_dataset


def main():
    ds = make_activity_dataset(400, 6, 4, seed=3, spread=0.45)
    ens = boost_fit(LearnerSpec(Family.DECISION_STUMP), ds, rounds=12, seed=1)

    print(f"requested 12 rounds, kept {len(ens.rounds)} (K = {ens.num_classes})")
    print(f"{'round':>5s} {'eps':>8s} {'alpha':>8s} {'min w':>10s}")
    for t, r in enumerate(ens.rounds, start=1):
        mw = "-" if r.min_weight is None else f"{r.min_weight:.2e}"
        print(f"{t:5d} {r.epsilon:8.4f} {r.alpha:8.4f} {mw:>10s}")

    stump_acc = (
        ens.rounds[0].model.predict_batch(ds.features) == ds.labels
    ).mean()
    ens_acc = (boost_predict_batch(ens, ds.features) == ds.labels).mean()
    print(f"\nfirst stump training accuracy: {stump_acc:.3f}")
    print(f"boosted ensemble training accuracy: {ens_acc:.3f}")


if __name__ == "__main__":
    main()
