"""Classifier families: logistic regression, RBF SVM, and small MLPs."""

from .base import (
    FAMILIES,
    PROBABILITY_FAMILIES,
    ClassWeighting,
    Model,
    UNIFORM,
    classify,
    default_threshold,
    predict_labels,
    predict_score,
    predict_scores,
    training_accuracy,
)
from .io import MODEL_FORMAT_VERSION, load_model, save_model
from .logistic import logistic_objective, train_logistic
from .mlp import ARCHITECTURES, init_layers, mlp_loss_and_grads, train_mlp
from .svm import train_svm_rbf

TRAINERS = {
    "logistic": train_logistic,
    "svm_rbf": train_svm_rbf,
    "mlp": train_mlp,
}


def train(family: str, matrix, **options) -> Model:
    """Dispatch to the trainer for ``family`` with its keyword options."""
    if family not in TRAINERS:
        raise ValueError(f"unknown model family {family!r}")
    return TRAINERS[family](matrix, **options)


__all__ = [
    "ARCHITECTURES",
    "FAMILIES",
    "MODEL_FORMAT_VERSION",
    "PROBABILITY_FAMILIES",
    "ClassWeighting",
    "Model",
    "TRAINERS",
    "UNIFORM",
    "classify",
    "default_threshold",
    "init_layers",
    "load_model",
    "logistic_objective",
    "mlp_loss_and_grads",
    "predict_labels",
    "predict_score",
    "predict_scores",
    "save_model",
    "train",
    "train_logistic",
    "train_mlp",
    "train_svm_rbf",
    "training_accuracy",
]
