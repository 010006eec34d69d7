"""Simulated random-classifier baseline.

Each repeat draws fresh validation labels at the like prior and scores a
classifier that likes each profile independently. The default scheme is a
fair coin per profile, which makes the expected accuracy exactly 0.5
regardless of the prior; ``prior_matched`` likes at the prior instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .skewnorm import NormalFit, fit_normal

SCHEMES = ("coin", "prior_matched")

_CHUNK = 256  # repeats simulated per block to bound memory


@dataclass(frozen=True, eq=False)
class BaselineResult:
    samples: np.ndarray
    fit: NormalFit
    n_val: int
    like_prior: float
    scheme: str


def simulate_random_baseline(
    n_val: int,
    like_prior: float,
    repeats: int,
    seed: int = 0,
    scheme: str = "coin",
) -> BaselineResult:
    if not 0.0 < like_prior < 1.0:
        raise ValueError("like_prior must be strictly between 0 and 1")
    if n_val < 1 or repeats < 1:
        raise ValueError("n_val and repeats must be >= 1")
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")

    p_like = 0.5 if scheme == "coin" else like_prior
    rng = np.random.default_rng(seed)
    samples = np.empty(repeats)
    done = 0
    while done < repeats:
        block = min(_CHUNK, repeats - done)
        labels = rng.random((block, n_val)) < like_prior
        preds = rng.random((block, n_val)) < p_like
        samples[done : done + block] = (preds == labels).mean(axis=1)
        done += block
    return BaselineResult(
        samples=samples,
        fit=fit_normal(samples),
        n_val=n_val,
        like_prior=like_prior,
        scheme=scheme,
    )
