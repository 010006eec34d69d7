"""Synthetic dataset generator with a controllable like/dislike signal.

Each profile draws a label at the like rate, a latent appearance center
at its class mean plus between-profile noise, a face count from a
discretized truncated normal, and per-face embeddings as the center plus
within-profile noise. The two class means sit ``separation`` apart along
the first embedding axis, so the difficulty of the classification task is
a closed-form function of the noise scales: under the averaged feature a
profile with f faces is N(class_mean, (sigma_b^2 + sigma_w^2/f) I), and
the midpoint decision rule scores Phi(separation / (2 sigma_f)) per
class. ``bayes_accuracy`` marginalizes that over the face-count law and
``calibrate_separation`` inverts it, which is how experiments pin the
task difficulty instead of guessing noise scales.

Generation is deterministic per seed, with one counter-derived substream
per profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import ndtr

from .data import Dataset, Profile


@dataclass(frozen=True)
class FaceCountLaw:
    """Discretized truncated normal over integer face counts."""

    mean: float = 3.01
    std: float = 1.34
    minimum: int = 1
    maximum: int = 10

    def __post_init__(self):
        if not 1 <= self.minimum <= self.maximum:
            raise ValueError("need 1 <= minimum <= maximum")
        if self.std <= 0:
            raise ValueError("std must be > 0")

    def support(self) -> np.ndarray:
        return np.arange(self.minimum, self.maximum + 1)

    def pmf(self) -> np.ndarray:
        k = self.support()
        weights = np.exp(-0.5 * ((k - self.mean) / self.std) ** 2)
        return weights / weights.sum()

    def expected_value(self) -> float:
        return float(self.support() @ self.pmf())

    def variance(self) -> float:
        k = self.support()
        p = self.pmf()
        mu = k @ p
        return float(((k - mu) ** 2) @ p)

    def sample(self, rng, size=None):
        return rng.choice(self.support(), size=size, p=self.pmf())


@dataclass(frozen=True)
class SyntheticSpec:
    n_profiles: int
    like_rate: float = 0.28
    dim: int = 128
    face_law: FaceCountLaw = field(default_factory=FaceCountLaw)
    separation: float = 1.0
    within_noise: float = 1.0  # per-face spread around the profile center
    between_noise: float = 1.0  # profile-center spread around the class mean
    seed: int = 0

    def __post_init__(self):
        if self.n_profiles < 1:
            raise ValueError("n_profiles must be >= 1")
        if not 0.0 < self.like_rate < 1.0:
            raise ValueError("like_rate must be strictly between 0 and 1")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.separation < 0:
            raise ValueError("separation must be >= 0")
        if self.within_noise <= 0 or self.between_noise <= 0:
            raise ValueError("noise scales must be > 0")


def _class_mean(spec: SyntheticSpec, label_like: bool) -> np.ndarray:
    mean = np.zeros(spec.dim)
    mean[0] = 0.5 * spec.separation if label_like else -0.5 * spec.separation
    return mean


def generate(spec: SyntheticSpec) -> Dataset:
    """Deterministic dataset for the spec; same spec gives identical bytes."""
    width = len(str(spec.n_profiles - 1))
    profiles = []
    for i in range(spec.n_profiles):
        rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(i,)))
        like = rng.random() < spec.like_rate
        center = _class_mean(spec, like) + spec.between_noise * rng.standard_normal(
            spec.dim
        )
        f = int(spec.face_law.sample(rng))
        faces = center + spec.within_noise * rng.standard_normal((f, spec.dim))
        profiles.append(
            Profile(
                id=f"synth-{i:0{width}d}",
                faces=faces,
                label="like" if like else "dislike",
            )
        )
    provenance = (
        f"synthetic(n={spec.n_profiles}, like_rate={spec.like_rate}, "
        f"dim={spec.dim}, separation={spec.separation!r}, "
        f"within={spec.within_noise!r}, between={spec.between_noise!r}, "
        f"faces=({spec.face_law.mean}, {spec.face_law.std}, "
        f"{spec.face_law.minimum}, {spec.face_law.maximum}), seed={spec.seed})"
    )
    return Dataset(spec.dim, tuple(profiles), provenance=provenance)


def bayes_accuracy(spec: SyntheticSpec) -> float:
    """Accuracy of the midpoint rule on averaged features, in closed form.

    For a fixed face count f the averaged feature is Gaussian around its
    class mean with variance sigma_b^2 + sigma_w^2/f per coordinate, and
    the midpoint rule is correct with probability Phi(s / (2 sigma_f));
    the face-count law weights those terms.
    """
    counts = spec.face_law.support()
    pmf = spec.face_law.pmf()
    sigma = np.sqrt(spec.between_noise**2 + spec.within_noise**2 / counts)
    return float(pmf @ ndtr(spec.separation / (2.0 * sigma)))


def calibrate_separation(spec: SyntheticSpec, target_accuracy: float) -> float:
    """Separation at which ``bayes_accuracy`` hits the target, by bisection."""
    if not 0.5 <= target_accuracy < 1.0:
        raise ValueError("target accuracy must be in [0.5, 1)")
    lo, hi = 0.0, 1.0
    while bayes_accuracy(replace(spec, separation=hi)) < target_accuracy:
        hi *= 2.0
        if hi > 1e6:
            raise ValueError("target accuracy unreachable")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if bayes_accuracy(replace(spec, separation=mid)) < target_accuracy:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
