"""Plot-ready report emission (CSV/JSON) with exact round-trip parsing.

Every float is written with shortest round-trip precision, so parsing a
report reproduces the in-memory numbers bit for bit.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .curves import LearningCurveRow, SplitScore, StudyResult
from .metrics import Counts, Metrics
from .roc import RocCurve
from .skewnorm import SkewNormalFit

_CURVE_FIELDS = (
    "size",
    "repeat",
    "seed",
    "n_train",
    "n_val",
    "model",
    "split",
    "accuracy",
    "like_accuracy",
    "dislike_accuracy",
    "tp",
    "fp",
    "tn",
    "fn",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def roc_to_csv(roc: RocCurve) -> bytes:
    out = io.StringIO()
    out.write("fpr,tpr,threshold\n")
    for (fpr, tpr), threshold in zip(roc.points, roc.thresholds):
        out.write(f"{_fmt(float(fpr))},{_fmt(float(tpr))},{_fmt(float(threshold))}\n")
    return out.getvalue().encode("utf-8")


def roc_from_csv(payload: bytes) -> RocCurve:
    reader = csv.DictReader(io.StringIO(payload.decode("utf-8")))
    points = []
    thresholds = []
    for row in reader:
        points.append((float(row["fpr"]), float(row["tpr"])))
        thresholds.append(float(row["threshold"]))
    points = np.asarray(points)
    fpr, tpr = points[:, 0], points[:, 1]
    auc = float(np.sum((fpr[1:] - fpr[:-1]) * (tpr[1:] + tpr[:-1])) * 0.5)
    return RocCurve(points=points, thresholds=np.asarray(thresholds), auc=auc)


def metrics_to_dict(metrics: Metrics) -> dict:
    return metrics.as_dict()


def _metrics_from_dict(obj) -> Metrics:
    counts = Counts(
        tp=int(obj["tp"]), fp=int(obj["fp"]), tn=int(obj["tn"]), fn=int(obj["fn"])
    )
    return Metrics(
        accuracy=float(obj["accuracy"]),
        like_accuracy=None if obj["like_accuracy"] is None else float(obj["like_accuracy"]),
        dislike_accuracy=None
        if obj["dislike_accuracy"] is None
        else float(obj["dislike_accuracy"]),
        counts=counts,
    )


def learning_curve_to_csv(rows: list[LearningCurveRow]) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_CURVE_FIELDS)
    for row in rows:
        for model_name, score in row.results.items():
            for split_name in ("train", "val"):
                metrics: Metrics = getattr(score, split_name)
                writer.writerow(
                    [
                        row.size,
                        row.repeat,
                        row.seed,
                        row.n_train,
                        row.n_val,
                        model_name,
                        split_name,
                        _fmt(metrics.accuracy),
                        _fmt(metrics.like_accuracy),
                        _fmt(metrics.dislike_accuracy),
                        metrics.counts.tp,
                        metrics.counts.fp,
                        metrics.counts.tn,
                        metrics.counts.fn,
                    ]
                )
    return out.getvalue().encode("utf-8")


def learning_curve_from_csv(payload: bytes) -> list[LearningCurveRow]:
    reader = csv.DictReader(io.StringIO(payload.decode("utf-8")))
    grouped: dict[tuple, dict] = {}
    for record in reader:
        key = (int(record["size"]), int(record["repeat"]))
        entry = grouped.setdefault(
            key,
            {
                "seed": int(record["seed"]),
                "n_train": int(record["n_train"]),
                "n_val": int(record["n_val"]),
                "halves": {},
            },
        )
        metrics = Metrics(
            accuracy=float(record["accuracy"]),
            like_accuracy=float(record["like_accuracy"])
            if record["like_accuracy"]
            else None,
            dislike_accuracy=float(record["dislike_accuracy"])
            if record["dislike_accuracy"]
            else None,
            counts=Counts(
                tp=int(record["tp"]),
                fp=int(record["fp"]),
                tn=int(record["tn"]),
                fn=int(record["fn"]),
            ),
        )
        entry["halves"].setdefault(record["model"], {})[record["split"]] = metrics

    rows = []
    for (size, repeat), entry in grouped.items():
        results = {
            model: SplitScore(train=halves["train"], val=halves["val"])
            for model, halves in entry["halves"].items()
        }
        rows.append(
            LearningCurveRow(
                size=size,
                repeat=repeat,
                seed=entry["seed"],
                n_train=entry["n_train"],
                n_val=entry["n_val"],
                results=results,
            )
        )
    return rows


def study_to_json(study: StudyResult) -> bytes:
    payload = {
        "n_train": study.n_train,
        "repeats": study.repeats,
        "master_seed": study.master_seed,
        "model": study.model,
        "samples": [float(s) for s in study.samples],
        "fit": {
            "xi": study.fit.location,
            "omega": study.fit.scale,
            "alpha": study.fit.shape,
            "log_likelihood": study.fit.log_likelihood,
        },
    }
    return json.dumps(payload).encode("utf-8")


def study_from_json(payload: bytes) -> StudyResult:
    obj = json.loads(payload.decode("utf-8"))
    fit = SkewNormalFit(
        location=float(obj["fit"]["xi"]),
        scale=float(obj["fit"]["omega"]),
        shape=float(obj["fit"]["alpha"]),
        log_likelihood=float(obj["fit"]["log_likelihood"]),
    )
    return StudyResult(
        n_train=int(obj["n_train"]),
        repeats=int(obj["repeats"]),
        master_seed=int(obj["master_seed"]),
        model=obj["model"],
        samples=np.asarray(obj["samples"], dtype=np.float64),
        fit=fit,
    )


def evaluation_to_json(metrics: Metrics, roc: RocCurve | None = None) -> bytes:
    payload: dict = {"metrics": metrics_to_dict(metrics)}
    if roc is not None:
        payload["roc"] = {
            "auc": roc.auc,
            "points": [[float(f), float(t)] for f, t in roc.points],
            "thresholds": [float(t) for t in roc.thresholds],
        }
    return json.dumps(payload).encode("utf-8")


def evaluation_from_json(payload: bytes) -> tuple[Metrics, RocCurve | None]:
    obj = json.loads(payload.decode("utf-8"))
    metrics = _metrics_from_dict(obj["metrics"])
    roc = None
    if "roc" in obj:
        roc = RocCurve(
            points=np.asarray(obj["roc"]["points"], dtype=np.float64),
            thresholds=np.asarray(obj["roc"]["thresholds"], dtype=np.float64),
            auc=float(obj["roc"]["auc"]),
        )
    return metrics, roc
