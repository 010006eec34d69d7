"""Profile/embedding data model, dataset file formats, and reviewable filtering.

A dataset is an immutable collection of profiles. Each profile carries an
ordered stack of per-face embedding vectors (one row per face, all rows of
the dataset-wide dimension) plus a review label. Two on-disk formats are
supported:

* CSV: header line ``dim=D``, then one row per face
  ``profile_id,label,image_index,v1,...,vD``. A profile without faces is
  written as a single three-field row with an empty image_index. CSV does
  not carry display metadata, label provenance, or the provenance note.
* JSON lines: a header object followed by one profile object per line.
  This is the full-fidelity format used for service persistence.

All float encoding uses ``repr`` (shortest round-trip), so parse/serialize
round-trips are bit-exact.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import DataFormatError

LABELS = ("like", "dislike", "unreviewed")
LABEL_SOURCES = ("human", "machine")

#: Binary encoding used everywhere: like=1, dislike=0.
LABEL_TO_Y = {"like": 1, "dislike": 0}

JSONL_FORMAT_NAME = "facepref-dataset"


@dataclass(frozen=True)
class Display:
    """Optional profile metadata shown during review."""

    name: str | None = None
    age: int | None = None
    image_refs: tuple[str, ...] = ()

    def __post_init__(self):
        if self.age is not None and not isinstance(self.age, int):
            raise ValueError("age must be an integer number of years")
        object.__setattr__(self, "image_refs", tuple(self.image_refs))


@dataclass(frozen=True, eq=False)
class Profile:
    """One dating profile: ordered face embeddings plus its review label."""

    id: str
    faces: np.ndarray  # shape (f, dim); row order is image order
    label: str = "unreviewed"
    label_source: str = "human"
    display: Display | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("profile id must be a non-empty string")
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")
        if self.label_source not in LABEL_SOURCES:
            raise ValueError(f"unknown label source {self.label_source!r}")
        faces = np.asarray(self.faces, dtype=np.float64)
        if faces.ndim != 2:
            raise ValueError(f"faces must be 2-D (f, dim), got shape {faces.shape}")
        if not np.all(np.isfinite(faces)):
            raise ValueError("embedding values must be finite")
        faces = faces.copy()
        faces.setflags(write=False)
        object.__setattr__(self, "faces", faces)

    @property
    def face_count(self) -> int:
        return self.faces.shape[0]

    def with_label(self, label: str, source: str = "human") -> "Profile":
        return Profile(self.id, self.faces, label, source, self.display)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        return (
            self.id == other.id
            and self.label == other.label
            and self.label_source == other.label_source
            and self.display == other.display
            and self.faces.shape == other.faces.shape
            and np.array_equal(self.faces, other.faces)
        )


@dataclass(frozen=True, eq=False)
class Dataset:
    """Labeled profile collection; the unit of persistence.

    Values are immutable once constructed; mutation happens by building a
    new Dataset (see :meth:`with_profile`).
    """

    dim: int
    profiles: tuple[Profile, ...]
    provenance: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dataset dimension must be >= 1")
        profiles = tuple(self.profiles)
        index: dict[str, int] = {}
        for pos, p in enumerate(profiles):
            if p.id in index:
                raise ValueError(f"duplicate profile id {p.id!r}")
            if p.faces.shape[1] != self.dim and p.face_count > 0:
                raise ValueError(
                    f"profile {p.id!r} has embeddings of length "
                    f"{p.faces.shape[1]}, dataset dim is {self.dim}"
                )
            index[p.id] = pos
        object.__setattr__(self, "profiles", profiles)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.profiles)

    def __contains__(self, pid: str) -> bool:
        return pid in self._index

    def get(self, pid: str) -> Profile:
        return self.profiles[self._index[pid]]

    def ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.profiles)

    def with_profile(self, profile: Profile) -> "Dataset":
        """Return a new Dataset with `profile` replacing or appending its id."""
        if profile.id in self._index:
            pos = self._index[profile.id]
            profiles = self.profiles[:pos] + (profile,) + self.profiles[pos + 1 :]
        else:
            profiles = self.profiles + (profile,)
        return Dataset(self.dim, profiles, self.provenance)

    def label_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in LABELS}
        for p in self.profiles:
            counts[p.label] += 1
        return counts

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.provenance == other.provenance
            and self.profiles == other.profiles
        )


def filter_reviewable(dataset: Dataset) -> Dataset:
    """Keep profiles usable for training: at least one face and a verdict.

    Order is preserved; the operation is idempotent.
    """
    kept = tuple(
        p for p in dataset.profiles if p.face_count >= 1 and p.label != "unreviewed"
    )
    return Dataset(dataset.dim, kept, dataset.provenance)


def training_profiles(dataset: Dataset, include_machine: bool = False) -> Dataset:
    """Reviewable profiles eligible for training.

    Machine-made labels are excluded by default so auto-liked profiles do
    not feed back into the next model.
    """
    filtered = filter_reviewable(dataset)
    if include_machine:
        return filtered
    kept = tuple(p for p in filtered.profiles if p.label_source == "human")
    return Dataset(filtered.dim, kept, filtered.provenance)


# --- CSV format ---------------------------------------------------------


def _format_float(v: float) -> str:
    return repr(float(v))


def _serialize_csv(dataset: Dataset) -> bytes:
    out = io.StringIO()
    out.write(f"dim={dataset.dim}\n")
    for p in dataset.profiles:
        if p.face_count == 0:
            out.write(f"{p.id},{p.label},\n")
            continue
        for idx in range(p.face_count):
            values = ",".join(_format_float(v) for v in p.faces[idx])
            out.write(f"{p.id},{p.label},{idx},{values}\n")
    return out.getvalue().encode("utf-8")


def _parse_csv(payload: bytes) -> Dataset:
    text = payload.decode("utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].startswith("dim="):
        raise DataFormatError("missing 'dim=D' header line")
    try:
        dim = int(lines[0][4:])
    except ValueError as exc:
        raise DataFormatError(f"bad dimension header {lines[0]!r}") from exc
    if dim < 1:
        raise DataFormatError(f"dimension must be >= 1, got {dim}")

    order: list[str] = []
    faces: dict[str, list[np.ndarray]] = {}
    labels: dict[str, str] = {}
    seen_index: set[tuple[str, str]] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) < 3:
            raise DataFormatError(f"line {lineno}: expected at least 3 fields")
        pid, label, image_index = fields[0], fields[1], fields[2]
        if label not in LABELS:
            raise DataFormatError(f"line {lineno}: unknown label token {label!r}")
        if pid not in labels:
            order.append(pid)
            labels[pid] = label
            faces[pid] = []
        elif labels[pid] != label:
            raise DataFormatError(
                f"line {lineno}: conflicting labels for profile {pid!r}"
            )
        if image_index == "":
            if len(fields) != 3 or faces[pid]:
                raise DataFormatError(
                    f"line {lineno}: empty image_index is only valid as a "
                    f"single faceless-profile row"
                )
            continue
        if (pid, image_index) in seen_index:
            raise DataFormatError(
                f"line {lineno}: duplicate (profile_id, image_index) "
                f"({pid!r}, {image_index!r})"
            )
        seen_index.add((pid, image_index))
        values = fields[3:]
        if len(values) != dim:
            raise DataFormatError(
                f"line {lineno}: expected {dim} values, got {len(values)}"
            )
        try:
            vec = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError as exc:
            raise DataFormatError(f"line {lineno}: bad float value") from exc
        if not np.all(np.isfinite(vec)):
            raise DataFormatError(f"line {lineno}: non-finite embedding value")
        faces[pid].append(vec)

    profiles = []
    for pid in order:
        stack = faces[pid]
        arr = np.vstack(stack) if stack else np.zeros((0, dim))
        profiles.append(Profile(pid, arr, labels[pid]))
    return Dataset(dim, tuple(profiles))


# --- JSON lines format --------------------------------------------------


def _profile_to_obj(p: Profile) -> dict:
    obj = {
        "id": p.id,
        "label": p.label,
        "label_source": p.label_source,
        "faces": [[float(v) for v in row] for row in p.faces],
    }
    if p.display is not None:
        obj["display"] = {
            "name": p.display.name,
            "age": p.display.age,
            "image_refs": list(p.display.image_refs),
        }
    return obj


def _profile_from_obj(obj: dict, dim: int, lineno: int) -> Profile:
    try:
        pid = obj["id"]
        label = obj["label"]
        rows = obj["faces"]
    except (KeyError, TypeError) as exc:
        raise DataFormatError(f"line {lineno}: missing profile field") from exc
    if label not in LABELS:
        raise DataFormatError(f"line {lineno}: unknown label token {label!r}")
    source = obj.get("label_source", "human")
    if source not in LABEL_SOURCES:
        raise DataFormatError(f"line {lineno}: unknown label source {source!r}")
    for row in rows:
        if len(row) != dim:
            raise DataFormatError(
                f"line {lineno}: expected {dim} values, got {len(row)}"
            )
    arr = np.array(rows, dtype=np.float64) if rows else np.zeros((0, dim))
    display = None
    if obj.get("display") is not None:
        d = obj["display"]
        age = d.get("age")
        if age is not None and not isinstance(age, int):
            raise DataFormatError(f"line {lineno}: age must be an integer")
        display = Display(
            name=d.get("name"),
            age=age,
            image_refs=tuple(d.get("image_refs", ())),
        )
    try:
        return Profile(pid, arr, label, source, display)
    except ValueError as exc:
        raise DataFormatError(f"line {lineno}: {exc}") from exc


def _serialize_jsonl(dataset: Dataset) -> bytes:
    out = io.StringIO()
    header = {
        "format": JSONL_FORMAT_NAME,
        "dim": dataset.dim,
        "provenance": dataset.provenance,
    }
    out.write(json.dumps(header) + "\n")
    for p in dataset.profiles:
        out.write(json.dumps(_profile_to_obj(p)) + "\n")
    return out.getvalue().encode("utf-8")


def _parse_jsonl(payload: bytes) -> Dataset:
    lines = payload.decode("utf-8").splitlines()
    if not lines:
        raise DataFormatError("empty stream, expected a header object")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"bad header line: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != JSONL_FORMAT_NAME:
        raise DataFormatError("first line must be the dataset header object")
    try:
        dim = int(header["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError("header missing integer 'dim'") from exc

    profiles = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"line {lineno}: bad JSON: {exc}") from exc
        p = _profile_from_obj(obj, dim, lineno)
        if p.id in seen:
            raise DataFormatError(f"line {lineno}: duplicate profile id {p.id!r}")
        seen.add(p.id)
        profiles.append(p)
    return Dataset(dim, tuple(profiles), provenance=header.get("provenance", ""))


FORMATS = ("csv", "jsonl")


def parse_dataset(payload: bytes, format: str = "csv") -> Dataset:
    """Parse a byte stream into a Dataset. Face order equals row order."""
    if format == "csv":
        return _parse_csv(payload)
    if format == "jsonl":
        return _parse_jsonl(payload)
    raise ValueError(f"unknown format {format!r}, expected one of {FORMATS}")


def serialize_dataset(dataset: Dataset, format: str = "csv") -> bytes:
    """Serialize a Dataset so that parsing the output reproduces it exactly."""
    if format == "csv":
        return _serialize_csv(dataset)
    if format == "jsonl":
        return _serialize_jsonl(dataset)
    raise ValueError(f"unknown format {format!r}, expected one of {FORMATS}")


def load_dataset(path) -> Dataset:
    """Load a dataset file, picking the format from the file extension."""
    from pathlib import Path

    path = Path(path)
    fmt = "jsonl" if path.suffix in (".jsonl", ".ndjson", ".json") else "csv"
    return parse_dataset(path.read_bytes(), fmt)


def save_dataset(dataset: Dataset, path) -> None:
    from pathlib import Path

    path = Path(path)
    fmt = "jsonl" if path.suffix in (".jsonl", ".ndjson", ".json") else "csv"
    path.write_bytes(serialize_dataset(dataset, fmt))
