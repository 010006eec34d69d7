"""Random train/test splitting and the derived-seed policy.

Splits are uniform over partitions, conditioned (by rejection) on the
training side containing at least one profile of each class. The class
ratio is deliberately not preserved. All study seeds derive from one
master integer by counter hashing, so an entire evaluation is
reproducible from a single number.
"""

from __future__ import annotations

import numpy as np

from ..data import LABEL_TO_Y, Dataset
from ..errors import SingleClassError


def derive_seed(master: int, *counters: int) -> int:
    """Stable 64-bit seed for the (master, counters...) stream."""
    ss = np.random.SeedSequence(entropy=master, spawn_key=tuple(counters))
    state = ss.generate_state(2, dtype=np.uint32)
    return int(state[0]) << 32 | int(state[1])


def split_positions(
    labels: np.ndarray,
    n_train: int,
    rng: np.random.Generator,
    max_attempts: int = 100_000,
) -> tuple[np.ndarray, np.ndarray]:
    """Row-index split with both classes forced into the training side.

    ``labels`` must be aligned with rows in id-sorted order; this is the
    hot path shared by :func:`random_split` and the study loops, which is
    why it works on positions instead of profile ids.
    """
    labels = np.asarray(labels)
    n = labels.shape[0]
    if not 2 <= n_train <= n - 1:
        raise ValueError(f"n_train must be in [2, {n - 1}], got {n_train}")
    if labels.min() == labels.max():
        raise SingleClassError("dataset must contain both classes to split")
    for _ in range(max_attempts):
        perm = rng.permutation(n)
        train = perm[:n_train]
        picked = labels[train]
        if picked.min() != picked.max():
            mask = np.ones(n, dtype=bool)
            mask[train] = False
            return train, np.flatnonzero(mask)
    raise SingleClassError(
        f"could not draw a two-class training side in {max_attempts} attempts"
    )


def random_split(
    dataset: Dataset, n_train: int, seed: int, max_attempts: int = 100_000
) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split profile ids into (train, test), both classes in train.

    Operates on ids sorted lexicographically so the draw depends only on
    the dataset's contents and the seed, not its stored order.
    """
    ids = sorted(dataset.ids())
    labels = np.array([LABEL_TO_Y.get(dataset.get(pid).label, -1) for pid in ids])
    if (labels == -1).any():
        raise ValueError("dataset contains unreviewed profiles; filter first")
    rng = np.random.default_rng(seed)
    train_pos, test_pos = split_positions(labels, n_train, rng, max_attempts)
    return (
        tuple(ids[i] for i in train_pos),
        tuple(ids[i] for i in test_pos),
    )
