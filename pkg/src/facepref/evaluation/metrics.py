"""Accuracy decomposition: overall, like (TPR), and dislike (TNR) rates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Counts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class Metrics:
    """Overall accuracy plus the per-class rates.

    ``like_accuracy`` is the true positive rate (recall on liked
    profiles), ``dislike_accuracy`` the true negative rate. Either is None
    when its class is absent from the evaluation set.
    """

    accuracy: float
    like_accuracy: float | None
    dislike_accuracy: float | None
    counts: Counts

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "like_accuracy": self.like_accuracy,
            "dislike_accuracy": self.dislike_accuracy,
            "tp": self.counts.tp,
            "fp": self.counts.fp,
            "tn": self.counts.tn,
            "fn": self.counts.fn,
        }


def compute_metrics(y_true, y_pred) -> Metrics:
    """Counts and rates from 0/1 label vectors of equal, nonzero length."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise ValueError(
            f"label vectors must match: {y_true.shape} vs {y_pred.shape}"
        )
    if y_true.size == 0:
        raise ValueError("cannot compute metrics on an empty set")
    for arr in (y_true, y_pred):
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("labels must be 0 (dislike) or 1 (like)")

    tp = int(((y_true == 1) & (y_pred == 1)).sum())
    fn = int(((y_true == 1) & (y_pred == 0)).sum())
    tn = int(((y_true == 0) & (y_pred == 0)).sum())
    fp = int(((y_true == 0) & (y_pred == 1)).sum())
    counts = Counts(tp=tp, fp=fp, tn=tn, fn=fn)
    return Metrics(
        accuracy=(tp + tn) / counts.total,
        like_accuracy=tp / (tp + fn) if tp + fn > 0 else None,
        dislike_accuracy=tn / (tn + fp) if tn + fp > 0 else None,
        counts=counts,
    )
