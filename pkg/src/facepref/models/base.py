"""Shared model container, class weighting, and prediction paths."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from ..errors import FeatureMismatchError, SingleClassError
from ..features import FeatureVector

FAMILIES = ("logistic", "svm_rbf", "mlp")

#: Score families and their decision thresholds: probability models cut at
#: 0.5, the SVM margin cuts at 0.
PROBABILITY_FAMILIES = ("logistic", "mlp")


@dataclass(frozen=True)
class ClassWeighting:
    """Per-profile training weight policy.

    ``uniform`` gives every profile the same weight regardless of class;
    ``inverse_frequency`` reweights so both classes contribute equally;
    ``explicit`` uses caller-chosen per-class weights.
    """

    scheme: str = "uniform"
    w_like: float = 1.0
    w_dislike: float = 1.0

    def __post_init__(self):
        if self.scheme not in ("uniform", "inverse_frequency", "explicit"):
            raise ValueError(f"unknown weighting scheme {self.scheme!r}")
        if self.w_like <= 0 or self.w_dislike <= 0:
            raise ValueError("class weights must be strictly positive")

    def sample_weights(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y)
        if self.scheme == "uniform":
            return np.ones(y.shape[0])
        if self.scheme == "inverse_frequency":
            n = y.shape[0]
            n_like = int(y.sum())
            n_dislike = n - n_like
            if n_like == 0 or n_dislike == 0:
                raise SingleClassError("inverse-frequency weights need both classes")
            return np.where(y == 1, n / (2.0 * n_like), n / (2.0 * n_dislike))
        return np.where(y == 1, self.w_like, self.w_dislike)

    def describe(self) -> dict:
        out = {"scheme": self.scheme}
        if self.scheme == "explicit":
            out["w_like"] = self.w_like
            out["w_dislike"] = self.w_dislike
        return out


UNIFORM = ClassWeighting("uniform")


@dataclass
class Model:
    """A trained classifier tagged with the feature mode it expects."""

    family: str
    feature_mode: str
    width: int
    params: dict
    hyperparams: dict = field(default_factory=dict)
    train_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}")
        for value in _iter_param_arrays(self.params):
            if not np.all(np.isfinite(value)):
                raise ValueError("model parameters must be finite")


def _iter_param_arrays(params):
    stack = [params]
    while stack:
        item = stack.pop()
        if isinstance(item, dict):
            stack.extend(item.values())
        elif isinstance(item, (list, tuple)):
            stack.extend(item)
        elif isinstance(item, np.ndarray):
            yield item
        elif isinstance(item, (int, float)):
            yield np.asarray(item, dtype=np.float64)


def check_two_classes(y: np.ndarray) -> None:
    y = np.asarray(y)
    if y.size == 0 or y.min() == y.max():
        raise SingleClassError("training set must contain both like and dislike")


def rbf_kernel(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    """exp(-gamma * ||a_i - b_j||^2) for all row pairs."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    sq = (
        np.sum(a * a, axis=1)[:, None]
        - 2.0 * (a @ b.T)
        + np.sum(b * b, axis=1)[None, :]
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


def mlp_forward(layers, X: np.ndarray) -> np.ndarray:
    """Logits of a ReLU feedforward net; layers are (W, b) pairs."""
    a = X
    for W, b in layers[:-1]:
        a = np.maximum(a @ W + b, 0.0)
    W, b = layers[-1]
    return (a @ W + b).ravel()


def _coerce_input(model: Model, x) -> np.ndarray:
    if isinstance(x, FeatureVector):
        if x.mode != model.feature_mode:
            raise FeatureMismatchError(
                f"model expects {model.feature_mode!r} features, got {x.mode!r}"
            )
        x = x.values
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[1] != model.width:
        raise FeatureMismatchError(
            f"model expects width {model.width}, got {x.shape[1]}"
        )
    return x


def predict_scores(model: Model, X) -> np.ndarray:
    """Scores for a batch: probabilities for logistic/mlp, signed margins
    for the SVM. Deterministic."""
    X = _coerce_input(model, X)
    if model.family == "logistic":
        p = model.params
        return expit(X @ p["weights"] + p["bias"])
    if model.family == "svm_rbf":
        p = model.params
        sv = p["support_vectors"]
        if sv.shape[0] == 0:
            return np.full(X.shape[0], p["bias"])
        k = rbf_kernel(X, sv, p["gamma"])
        return k @ p["dual_coef"] + p["bias"]
    if model.family == "mlp":
        return expit(mlp_forward(model.params["layers"], X))
    raise ValueError(f"unknown model family {model.family!r}")


def predict_score(model: Model, x) -> float:
    return float(predict_scores(model, x)[0])


def default_threshold(family: str) -> float:
    return 0.0 if family == "svm_rbf" else 0.5


def classify(score: float, threshold: float) -> str:
    """Decision rule: like iff score >= threshold (ties go to like)."""
    return "like" if score >= threshold else "dislike"


def predict_labels(model: Model, X, threshold: float | None = None) -> np.ndarray:
    """Binary 0/1 decisions for a batch at the family's default threshold."""
    if threshold is None:
        threshold = default_threshold(model.family)
    return (predict_scores(model, X) >= threshold).astype(np.int64)


def training_accuracy(model: Model, X, y) -> float:
    y = np.asarray(y)
    return float((predict_labels(model, X) == y).mean())
