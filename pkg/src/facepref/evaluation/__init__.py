"""Measurement methodology: metrics, ROC/AUC, splits, curves, studies."""

from .baseline import SCHEMES, BaselineResult, simulate_random_baseline
from .curves import (
    LearningCurveRow,
    ModelSpec,
    SplitScore,
    StudyResult,
    learning_curve,
    repeated_split_study,
)
from .metrics import Counts, Metrics, compute_metrics
from .report import (
    evaluation_from_json,
    evaluation_to_json,
    learning_curve_from_csv,
    learning_curve_to_csv,
    metrics_to_dict,
    roc_from_csv,
    roc_to_csv,
    study_from_json,
    study_to_json,
)
from .roc import RocCurve, auc_pair_count, roc_curve
from .skewnorm import (
    SHAPE_BOUND,
    NormalFit,
    SkewNormalFit,
    density_integral,
    fit_normal,
    fit_skew_normal,
    moment_estimates,
    skewnorm_logpdf,
)
from .splits import derive_seed, random_split

__all__ = [
    "SCHEMES",
    "SHAPE_BOUND",
    "BaselineResult",
    "Counts",
    "LearningCurveRow",
    "Metrics",
    "ModelSpec",
    "NormalFit",
    "RocCurve",
    "SkewNormalFit",
    "SplitScore",
    "StudyResult",
    "auc_pair_count",
    "compute_metrics",
    "density_integral",
    "derive_seed",
    "evaluation_from_json",
    "evaluation_to_json",
    "fit_normal",
    "fit_skew_normal",
    "learning_curve",
    "learning_curve_from_csv",
    "learning_curve_to_csv",
    "metrics_to_dict",
    "moment_estimates",
    "random_split",
    "repeated_split_study",
    "roc_curve",
    "roc_from_csv",
    "roc_to_csv",
    "simulate_random_baseline",
    "skewnorm_logpdf",
    "study_from_json",
    "study_to_json",
]
