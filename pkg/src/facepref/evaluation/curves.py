"""Learning curves and repeated-split distribution studies.

Both follow the same protocol: at a given training size, draw a random
split (training side forced to contain both classes), fit each requested
model on the training rows, and score train and validation sides. For a
learning curve, every model family at a given (size, repeat) shares the
same split. The repeated-split study refits one model family over many
splits of a fixed size and summarizes the validation-accuracy
distribution with a skew-normal fit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..data import Dataset, filter_reviewable
from ..features import DEFAULT_MAX_IMAGES, FeatureMatrix, build_matrix
from ..models import TRAINERS, Model, predict_labels
from .metrics import Metrics, compute_metrics
from .skewnorm import SkewNormalFit, fit_skew_normal
from .splits import derive_seed, split_positions


@dataclass(frozen=True)
class ModelSpec:
    """A model family plus the feature mode and trainer options to use."""

    family: str = "logistic"
    feature_mode: str = "avg"
    options: dict = field(default_factory=dict)
    label: str | None = None

    def __post_init__(self):
        if self.family not in TRAINERS:
            raise ValueError(f"unknown model family {self.family!r}")

    @property
    def name(self) -> str:
        return self.label or f"{self.family}:{self.feature_mode}"

    def train(self, matrix: FeatureMatrix) -> Model:
        return TRAINERS[self.family](matrix, **self.options)


@dataclass(frozen=True)
class SplitScore:
    train: Metrics
    val: Metrics


@dataclass(frozen=True)
class LearningCurveRow:
    size: int
    repeat: int
    seed: int
    n_train: int
    n_val: int
    results: dict[str, SplitScore]  # keyed by ModelSpec.name


@dataclass(frozen=True, eq=False)
class StudyResult:
    """Validation accuracies over repeated splits at one training size."""

    n_train: int
    repeats: int
    master_seed: int
    model: str
    samples: np.ndarray  # sorted ascending
    fit: SkewNormalFit


def _matrices_for(
    dataset: Dataset, specs, max_images: int
) -> dict[str, FeatureMatrix]:
    modes = {spec.feature_mode for spec in specs}
    return {mode: build_matrix(dataset, mode, max_images) for mode in modes}


def _evaluate_split(
    spec: ModelSpec,
    matrix: FeatureMatrix,
    train_idx: np.ndarray,
    test_idx: np.ndarray,
) -> SplitScore:
    train_matrix = matrix.subset(train_idx)
    model = spec.train(train_matrix)
    train_pred = predict_labels(model, train_matrix.rows)
    val_rows = matrix.rows[test_idx]
    val_pred = predict_labels(model, val_rows)
    return SplitScore(
        train=compute_metrics(train_matrix.labels, train_pred),
        val=compute_metrics(matrix.labels[test_idx], val_pred),
    )


def learning_curve(
    dataset: Dataset,
    sizes,
    specs,
    master_seed: int = 0,
    repeats: int = 1,
    max_images: int = DEFAULT_MAX_IMAGES,
) -> list[LearningCurveRow]:
    """One row per (size, repeat); all specs share the split within a row."""
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one model spec")
    dataset = filter_reviewable(dataset)
    matrices = _matrices_for(dataset, specs, max_images)
    # matrix rows are id-sorted, exactly the order random_split draws over
    labels = next(iter(matrices.values())).labels

    rows = []
    for size in sizes:
        for repeat in range(repeats):
            seed = derive_seed(master_seed, int(size), repeat)
            rng = np.random.default_rng(seed)
            train_idx, test_idx = split_positions(labels, int(size), rng)
            results = {
                spec.name: _evaluate_split(
                    spec, matrices[spec.feature_mode], train_idx, test_idx
                )
                for spec in specs
            }
            rows.append(
                LearningCurveRow(
                    size=int(size),
                    repeat=repeat,
                    seed=seed,
                    n_train=int(train_idx.size),
                    n_val=int(test_idx.size),
                    results=results,
                )
            )
    return rows


def repeated_split_study(
    dataset: Dataset,
    n_train: int,
    repeats: int,
    spec: ModelSpec = ModelSpec(),
    master_seed: int = 0,
    max_images: int = DEFAULT_MAX_IMAGES,
) -> StudyResult:
    """Validation-accuracy distribution over ``repeats`` random splits.

    Repeats are independent given their derived seeds, so they can run in
    any order; samples are sorted before fitting.
    """
    if repeats < 2:
        raise ValueError("repeats must be >= 2")
    dataset = filter_reviewable(dataset)
    matrix = build_matrix(dataset, spec.feature_mode, max_images)

    samples = np.empty(repeats)
    for repeat in range(repeats):
        seed = derive_seed(master_seed, int(n_train), repeat)
        rng = np.random.default_rng(seed)
        train_idx, test_idx = split_positions(matrix.labels, n_train, rng)
        model = spec.train(matrix.subset(train_idx))
        val_pred = predict_labels(model, matrix.rows[test_idx])
        samples[repeat] = float((val_pred == matrix.labels[test_idx]).mean())

    samples.sort()
    return StudyResult(
        n_train=n_train,
        repeats=repeats,
        master_seed=master_seed,
        model=spec.name,
        samples=samples,
        fit=fit_skew_normal(samples),
    )
