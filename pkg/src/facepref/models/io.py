"""Versioned JSON envelope for trained models.

Floats are encoded with shortest round-trip precision, so a loaded model
scores bit-identically to the one that was saved.
"""

from __future__ import annotations

import json

import numpy as np

from ..errors import ModelFormatError, ModelVersionError
from .base import FAMILIES, Model

MODEL_FORMAT_VERSION = 1


def _encode_params(family: str, params: dict) -> dict:
    if family == "logistic":
        return {
            "weights": params["weights"].tolist(),
            "bias": float(params["bias"]),
        }
    if family == "svm_rbf":
        return {
            "support_vectors": params["support_vectors"].tolist(),
            "dual_coef": params["dual_coef"].tolist(),
            "bias": float(params["bias"]),
            "gamma": float(params["gamma"]),
        }
    if family == "mlp":
        return {
            "layers": [
                {"W": W.tolist(), "b": b.tolist()} for W, b in params["layers"]
            ]
        }
    raise ModelFormatError(f"unknown model family {family!r}")


def _decode_params(family: str, params: dict, width: int) -> dict:
    try:
        if family == "logistic":
            weights = np.asarray(params["weights"], dtype=np.float64)
            if weights.shape != (width,):
                raise ModelFormatError(
                    f"weights shape {weights.shape} does not match width {width}"
                )
            return {"weights": weights, "bias": float(params["bias"])}
        if family == "svm_rbf":
            sv = np.asarray(params["support_vectors"], dtype=np.float64)
            if sv.size == 0:
                sv = sv.reshape(0, width)
            dual = np.asarray(params["dual_coef"], dtype=np.float64)
            if sv.ndim != 2 or sv.shape[1] != width or dual.shape != (sv.shape[0],):
                raise ModelFormatError("inconsistent support vector block")
            return {
                "support_vectors": sv,
                "dual_coef": dual,
                "bias": float(params["bias"]),
                "gamma": float(params["gamma"]),
            }
        if family == "mlp":
            layers = [
                [
                    np.asarray(layer["W"], dtype=np.float64),
                    np.asarray(layer["b"], dtype=np.float64),
                ]
                for layer in params["layers"]
            ]
            if not layers:
                raise ModelFormatError("mlp payload has no layers")
            if layers[0][0].shape[0] != width:
                raise ModelFormatError("first layer does not match model width")
            return {"layers": layers}
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed {family} parameter block: {exc}") from exc
    raise ModelFormatError(f"unknown model family {family!r}")


def save_model(model: Model) -> bytes:
    envelope = {
        "version": MODEL_FORMAT_VERSION,
        "family": model.family,
        "feature_mode": model.feature_mode,
        "width": model.width,
        "hyperparams": model.hyperparams,
        "params": _encode_params(model.family, model.params),
        "train_meta": model.train_meta,
    }
    return json.dumps(envelope).encode("utf-8")


def load_model(payload: bytes) -> Model:
    try:
        envelope = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"corrupt model payload: {exc}") from exc
    if not isinstance(envelope, dict):
        raise ModelFormatError("model payload must be a JSON object")

    version = envelope.get("version")
    if not isinstance(version, int):
        raise ModelFormatError("model payload missing integer version")
    if version > MODEL_FORMAT_VERSION:
        raise ModelVersionError(
            f"model format version {version} is newer than supported "
            f"version {MODEL_FORMAT_VERSION}"
        )

    try:
        family = envelope["family"]
        feature_mode = envelope["feature_mode"]
        width = int(envelope["width"])
        raw_params = envelope["params"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"model payload missing field: {exc}") from exc
    if family not in FAMILIES:
        raise ModelFormatError(f"unknown model family {family!r}")

    try:
        return Model(
            family=family,
            feature_mode=feature_mode,
            width=width,
            params=_decode_params(family, raw_params, width),
            hyperparams=envelope.get("hyperparams", {}),
            train_meta=envelope.get("train_meta", {}),
        )
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc
