"""harboost: boosted classical learners for 12-class activity recognition
on HAPT-style body-acceleration features.

The library provides dataset ingestion and feature selection, twelve
from-scratch weighted base learners, a multi-class AdaBoost (SAMME)
wrapper, stratified cross-validation with confusion-matrix metrics, a
learner-comparison harness, and versioned model persistence. Everything
is deterministic given its seeds.
"""

__version__ = "0.1.0"

from .boosting import (
    BoostedEnsemble,
    BoostRound,
    boost_fit,
    boost_predict,
    boost_predict_batch,
    samme_alpha,
)
from .dataset import (
    BODY_ACC_FEATURES,
    REPORT_CLASS_ORDER,
    ActivityLabel,
    DataError,
    Dataset,
    FoldAssignment,
    dataset_digest,
    load_body_acc,
    load_csv,
    load_hapt,
    save_csv,
    select_features,
    stratified_folds,
    summarize_by_activity,
)
from .evaluation import (
    ComparisonReport,
    ConfusionMatrix,
    CVResult,
    accuracy_binary,
    class_precision,
    class_recall,
    compare,
    confusion_from_predictions,
    cross_validate,
    overall_accuracy,
)
from .learners import ConstantLearner, Family, LearnerSpec, fit, predict
from .modelfile import LoadedModel, ModelFormatError, load_model, save_model

__all__ = [
    "ActivityLabel",
    "BODY_ACC_FEATURES",
    "BoostRound",
    "BoostedEnsemble",
    "CVResult",
    "ComparisonReport",
    "ConfusionMatrix",
    "ConstantLearner",
    "DataError",
    "Dataset",
    "Family",
    "FoldAssignment",
    "LearnerSpec",
    "LoadedModel",
    "ModelFormatError",
    "REPORT_CLASS_ORDER",
    "accuracy_binary",
    "boost_fit",
    "boost_predict",
    "boost_predict_batch",
    "class_precision",
    "class_recall",
    "compare",
    "confusion_from_predictions",
    "cross_validate",
    "dataset_digest",
    "fit",
    "load_body_acc",
    "load_csv",
    "load_hapt",
    "load_model",
    "overall_accuracy",
    "predict",
    "samme_alpha",
    "save_csv",
    "save_model",
    "select_features",
    "stratified_folds",
    "summarize_by_activity",
]
