"""Small feedforward networks trained by mini-batch gradient descent.

Hidden layers use rectified units, the output is a single sigmoid, and
the loss is the class-weighted mean binary cross-entropy. Training is
fully deterministic given the seed: initialization and the per-epoch
shuffle are the only random draws, both from one seeded generator.

Two stock layouts are provided: ``nn1`` (one hidden layer of 64) and
``nn2`` (two hidden layers, 128 then 64); any layout can be requested
through ``hidden_layers``.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from ..errors import DivergenceError
from ..features import FeatureMatrix
from .base import ClassWeighting, Model, UNIFORM, check_two_classes, training_accuracy

ARCHITECTURES = {"nn1": (64,), "nn2": (128, 64)}


def init_layers(width: int, hidden: tuple[int, ...], rng) -> list[list[np.ndarray]]:
    """He-scaled weights for the ReLU stack, smaller scale on the output."""
    sizes = [width, *hidden, 1]
    layers = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        scale = np.sqrt(2.0 / fan_in) if fan_out != 1 else np.sqrt(1.0 / fan_in)
        W = rng.standard_normal((fan_in, fan_out)) * scale
        layers.append([W, np.zeros(fan_out)])
    return layers


def mlp_loss_and_grads(layers, X, y, sample_weights):
    """Weighted-mean cross-entropy and its gradients via backprop.

    Returns ``(loss, grads)`` with ``grads`` shaped like ``layers``.
    Exposed as a pure function so tests can check it against finite
    differences.
    """
    weight_sum = sample_weights.sum()
    activations = [X]
    pre = []
    a = X
    for li, (W, b) in enumerate(layers):
        z = a @ W + b
        pre.append(z)
        a = np.maximum(z, 0.0) if li < len(layers) - 1 else z
        activations.append(a)
    logits = activations[-1].ravel()
    # softplus(z) - y*z is the binary cross-entropy on logits
    losses = np.logaddexp(0.0, logits) - y * logits
    loss = float((sample_weights * losses).sum() / weight_sum)

    delta = ((sample_weights * (expit(logits) - y)) / weight_sum)[:, None]
    grads = [None] * len(layers)
    for li in range(len(layers) - 1, -1, -1):
        grads[li] = [activations[li].T @ delta, delta.sum(axis=0)]
        if li > 0:
            delta = (delta @ layers[li][0].T) * (pre[li - 1] > 0.0)
    return loss, grads


def train_mlp(
    matrix: FeatureMatrix,
    weighting: ClassWeighting = UNIFORM,
    arch: str = "nn1",
    hidden_layers: tuple[int, ...] | None = None,
    seed: int = 0,
    epochs: int = 200,
    step_size: float = 0.05,
    batch_size: int = 32,
) -> Model:
    """Train a feedforward network; loss trajectory lands in train_meta.

    ``hidden_layers`` overrides the named ``arch``. Raises
    :class:`DivergenceError` if the loss becomes non-finite.
    """
    if hidden_layers is None:
        if arch not in ARCHITECTURES:
            raise ValueError(
                f"unknown architecture {arch!r}, expected one of "
                f"{tuple(ARCHITECTURES)} or explicit hidden_layers"
            )
        hidden_layers = ARCHITECTURES[arch]
    hidden_layers = tuple(int(h) for h in hidden_layers)
    if any(h < 1 for h in hidden_layers):
        raise ValueError("hidden layer sizes must be >= 1")
    check_two_classes(matrix.labels)

    X = matrix.rows
    y = matrix.labels.astype(np.float64)
    c = weighting.sample_weights(matrix.labels)
    n = X.shape[0]
    rng = np.random.default_rng(seed)
    layers = init_layers(matrix.width, hidden_layers, rng)

    loss, _ = mlp_loss_and_grads(layers, X, y, c)
    trajectory = [loss]
    for epoch in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, batch_size):
            batch = order[start : start + batch_size]
            _, grads = mlp_loss_and_grads(layers, X[batch], y[batch], c[batch])
            for (W, b), (gW, gb) in zip(layers, grads):
                W -= step_size * gW
                b -= step_size * gb
        loss, _ = mlp_loss_and_grads(layers, X, y, c)
        if not np.isfinite(loss):
            raise DivergenceError(
                f"training loss became non-finite at epoch {epoch + 1}"
            )
        trajectory.append(loss)

    model = Model(
        family="mlp",
        feature_mode=matrix.mode,
        width=matrix.width,
        params={"layers": [[W.copy(), b.copy()] for W, b in layers]},
        hyperparams={
            "hidden_layers": list(hidden_layers),
            "arch": arch if hidden_layers == ARCHITECTURES.get(arch) else "custom",
            "epochs": epochs,
            "step_size": step_size,
            "batch_size": batch_size,
            "weighting": weighting.describe(),
        },
        train_meta={
            "seed": seed,
            "iterations": epochs,
            "final_objective": trajectory[-1],
            "loss_trajectory": trajectory,
        },
    )
    model.train_meta["train_accuracy"] = training_accuracy(model, X, matrix.labels)
    return model
