"""Profile-level feature vectors built from per-face embeddings.

Two modes:

* ``concat`` — the per-face embeddings concatenated in stored image order
  and zero-padded to a fixed maximum image count, so a profile with one
  face of dimension 128 and a cap of 10 yields 128 values followed by
  1,152 zeros.
* ``avg`` — the elementwise mean of the face embeddings, one value per
  embedding coordinate regardless of face count.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .data import LABEL_TO_Y, Dataset, Profile
from .errors import EmptyProfileError

MODES = ("concat", "avg")

#: Largest image count observed per profile in practice; concat features
#: are padded (or truncated) to this many face blocks by default.
DEFAULT_MAX_IMAGES = 10


class TruncationWarning(UserWarning):
    """A profile had more faces than the concat cap; extras were dropped."""


@dataclass(frozen=True, eq=False)
class FeatureVector:
    mode: str
    values: np.ndarray

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown feature mode {self.mode!r}")
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("feature values must be a 1-D vector")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def width(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.mode == other.mode and np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Stacked feature vectors with aligned binary labels.

    Row order is deterministic: profiles sorted by id.
    """

    rows: np.ndarray  # (n, width)
    labels: np.ndarray  # (n,) ints in {0, 1}
    mode: str
    profile_ids: tuple[str, ...]

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if rows.ndim != 2:
            raise ValueError("rows must be a 2-D matrix")
        if labels.shape != (rows.shape[0],):
            raise ValueError("labels must align with rows")
        if not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 (dislike) or 1 (like)")
        if len(self.profile_ids) != rows.shape[0]:
            raise ValueError("profile_ids must align with rows")
        rows.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "profile_ids", tuple(self.profile_ids))

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def width(self) -> int:
        return self.rows.shape[1]

    def row_index(self) -> dict[str, int]:
        return {pid: i for i, pid in enumerate(self.profile_ids)}

    def subset(self, indices) -> "FeatureMatrix":
        idx = np.asarray(indices, dtype=np.intp)
        return FeatureMatrix(
            self.rows[idx],
            self.labels[idx],
            self.mode,
            tuple(self.profile_ids[i] for i in idx),
        )


def build_avg(profile: Profile) -> FeatureVector:
    """Elementwise mean of the profile's face embeddings."""
    f = profile.face_count
    if f == 0:
        raise EmptyProfileError(f"profile {profile.id!r} has no faces")
    return FeatureVector("avg", profile.faces.sum(axis=0) / f)


def build_concat(
    profile: Profile, max_images: int = DEFAULT_MAX_IMAGES
) -> FeatureVector:
    """Face embeddings concatenated in image order, zero-padded to the cap.

    Profiles with more than ``max_images`` faces keep only the first
    ``max_images``; a :class:`TruncationWarning` records the drop.
    """
    f = profile.face_count
    if f == 0:
        raise EmptyProfileError(f"profile {profile.id!r} has no faces")
    if max_images < 1:
        raise ValueError("max_images must be >= 1")
    dim = profile.faces.shape[1]
    if f > max_images:
        warnings.warn(
            f"profile {profile.id!r} has {f} faces, keeping the first {max_images}",
            TruncationWarning,
            stacklevel=2,
        )
        f = max_images
    out = np.zeros(dim * max_images)
    out[: f * dim] = profile.faces[:f].ravel()
    return FeatureVector("concat", out)


def build_feature(
    profile: Profile, mode: str, max_images: int = DEFAULT_MAX_IMAGES
) -> FeatureVector:
    if mode == "avg":
        return build_avg(profile)
    if mode == "concat":
        return build_concat(profile, max_images)
    raise ValueError(f"unknown feature mode {mode!r}")


def build_matrix(
    dataset: Dataset, mode: str, max_images: int = DEFAULT_MAX_IMAGES
) -> FeatureMatrix:
    """One feature row per profile, sorted by profile id, labels aligned.

    The dataset is expected to have passed ``filter_reviewable`` first;
    unreviewed profiles are rejected and faceless ones raise
    :class:`EmptyProfileError`.
    """
    profiles = sorted(dataset.profiles, key=lambda p: p.id)
    rows = []
    labels = []
    ids = []
    for p in profiles:
        if p.label not in LABEL_TO_Y:
            raise ValueError(
                f"profile {p.id!r} is unreviewed; run filter_reviewable first"
            )
        rows.append(build_feature(p, mode, max_images).values)
        labels.append(LABEL_TO_Y[p.label])
        ids.append(p.id)
    if rows:
        matrix = np.vstack(rows)
    else:
        width = dataset.dim if mode == "avg" else dataset.dim * max_images
        matrix = np.zeros((0, width))
    return FeatureMatrix(matrix, np.array(labels, dtype=np.int64), mode, tuple(ids))
