"""ROC curves and AUC, computed two independent ways.

``roc_curve`` sweeps every distinct score as a threshold (equal scores
collapse into one step) and integrates trapezoidally. ``auc_pair_count``
is the tie-adjusted rank statistic: the fraction of (positive, negative)
pairs where the positive scores higher, ties counted half. The two agree
to float precision on all inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SingleClassError


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Operating points from sweeping the decision threshold.

    Points run from (0, 0) to (1, 1) with both coordinates non-decreasing;
    thresholds[k] is the score cutoff producing points[k] (+inf for the
    all-negative corner).
    """

    points: np.ndarray  # (k, 2) columns fpr, tpr
    thresholds: np.ndarray  # (k,)
    auc: float


def _check_classes(y_true: np.ndarray) -> tuple[int, int]:
    n_pos = int((y_true == 1).sum())
    n_neg = int((y_true == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("ROC requires both classes in y_true")
    return n_pos, n_neg


def roc_curve(scores, y_true) -> RocCurve:
    scores = np.asarray(scores, dtype=np.float64)
    y_true = np.asarray(y_true, dtype=np.int64)
    if scores.shape != y_true.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be 1-D and aligned")
    n_pos, n_neg = _check_classes(y_true)

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_pos = (y_true[order] == 1).astype(np.float64)

    # last index of each tie group of equal scores
    distinct = np.flatnonzero(np.append(np.diff(sorted_scores) != 0, True))
    tp = np.cumsum(sorted_pos)[distinct]
    fp = (distinct + 1) - tp

    fpr = np.concatenate(([0.0], fp / n_neg))
    tpr = np.concatenate(([0.0], tp / n_pos))
    thresholds = np.concatenate(([np.inf], sorted_scores[distinct]))

    auc = float(np.sum((fpr[1:] - fpr[:-1]) * (tpr[1:] + tpr[:-1])) * 0.5)
    return RocCurve(
        points=np.column_stack([fpr, tpr]), thresholds=thresholds, auc=auc
    )


def _average_ranks(scores: np.ndarray) -> np.ndarray:
    """1-based ranks with ties sharing their group's mean rank."""
    order = np.argsort(scores, kind="stable")
    sorted_scores = scores[order]
    boundaries = np.flatnonzero(np.append(np.diff(sorted_scores) != 0, True))
    starts = np.concatenate(([0], boundaries[:-1] + 1))
    group_rank = (starts + boundaries) / 2.0 + 1.0
    ranks = np.empty(scores.shape[0])
    for start, stop, rank in zip(starts, boundaries, group_rank):
        ranks[order[start : stop + 1]] = rank
    return ranks


def auc_pair_count(scores, y_true) -> float:
    """Tie-adjusted pair-counting AUC (Mann-Whitney statistic)."""
    scores = np.asarray(scores, dtype=np.float64)
    y_true = np.asarray(y_true, dtype=np.int64)
    n_pos, n_neg = _check_classes(y_true)
    ranks = _average_ranks(scores)
    pos_rank_sum = ranks[y_true == 1].sum()
    u = pos_rank_sum - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))
