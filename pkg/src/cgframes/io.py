"""JSON documents: frame specs, c-frames, certificates, transition reports, split manifests.

Complex numbers are ``[re, im]`` pairs. Floats go through :func:`json.dumps`,
which writes the shortest decimal that round-trips, so write-then-read is
bit-exact.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .core import FrameCertificate, GFrameFamily
from .decomposition import FrameSplit
from .errors import FrameError, SpecFormatError
from .factorization import TransitionReport
from .induced import CFrame
from .measure import MeasureSpace

TOOL_NAME = "cgframes"


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(M: np.ndarray) -> list:
    return [[complex_to_json(z) for z in row] for row in np.atleast_2d(M)]


def vector_to_json(v: np.ndarray) -> list:
    return [complex_to_json(z) for z in v]


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def complex_from_json(x, where: str) -> complex:
    if not (isinstance(x, list) and len(x) == 2 and all(_is_number(c) for c in x)):
        raise SpecFormatError("expected a [re, im] pair of numbers", where)
    if not all(math.isfinite(c) for c in x):
        raise SpecFormatError("non-finite entry", where)
    return complex(float(x[0]), float(x[1]))


def matrix_from_json(rows, where: str, cols: int | None = None) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise SpecFormatError("expected a nonempty list of rows", where)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise SpecFormatError("expected a nonempty row", f"{where}[{i}]")
        if cols is None:
            cols = len(row)
        elif len(row) != cols:
            raise SpecFormatError(f"row has {len(row)} entries, expected {cols}", f"{where}[{i}]")
        out.append([complex_from_json(z, f"{where}[{i}][{k}]") for k, z in enumerate(row)])
    return np.array(out, dtype=complex)


def vector_from_json(entries, where: str) -> np.ndarray:
    if not isinstance(entries, list) or not entries:
        raise SpecFormatError("expected a nonempty list", where)
    return np.array([complex_from_json(z, f"{where}[{k}]") for k, z in enumerate(entries)], dtype=complex)


def _number(x, where: str) -> float:
    if not _is_number(x):
        raise SpecFormatError("expected a number", where)
    return float(x)


def _load_text(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise SpecFormatError("top level must be an object")
    return doc


def _ambient_dim(doc) -> int:
    n = doc.get("ambient_dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecFormatError("expected a positive integer", "ambient_dim")
    return n


# --- frame spec files ------------------------------------------------------

def family_to_dict(fam: GFrameFamily) -> dict:
    return {
        "ambient_dim": fam.ambient_dim,
        "atoms": [{"weight": w, "block": matrix_to_json(L)} for w, L in zip(fam.weights, fam.blocks)],
    }


def family_from_dict(doc: dict) -> GFrameFamily:
    n = _ambient_dim(doc)
    atoms = doc.get("atoms")
    if not isinstance(atoms, list) or not atoms:
        raise SpecFormatError("expected a nonempty list", "atoms")
    weights, blocks = [], []
    for j, atom in enumerate(atoms):
        where = f"atoms[{j}]"
        if not isinstance(atom, dict):
            raise SpecFormatError("expected an object", where)
        w = _number(atom.get("weight"), f"{where}.weight")
        if not (math.isfinite(w) and w > 0):
            raise SpecFormatError(f"weight must be positive and finite, got {w}", f"{where}.weight")
        weights.append(w)
        blocks.append(matrix_from_json(atom.get("block"), f"{where}.block", cols=n))
    try:
        return GFrameFamily(MeasureSpace(tuple(weights)), tuple(blocks))
    except FrameError as exc:
        raise SpecFormatError(str(exc)) from None


def dumps_family(fam: GFrameFamily) -> str:
    return json.dumps(family_to_dict(fam), indent=1)


def loads_family(text: str) -> GFrameFamily:
    return family_from_dict(_load_text(text))


def write_family(path, fam: GFrameFamily) -> None:
    Path(path).write_text(dumps_family(fam) + "\n")


def read_family(path) -> GFrameFamily:
    return loads_family(Path(path).read_text())


# --- c-frame files -----------------------------------------------------------

def cframe_to_dict(u: CFrame) -> dict:
    items = []
    origins = u.origins or (None,) * len(u)
    for w, v, o in zip(u.weights.tolist(), u.vectors, origins):
        item = {"weight": w, "vector": vector_to_json(v)}
        if o is not None:
            item["origin"] = list(o)
        items.append(item)
    return {"ambient_dim": u.ambient_dim, "items": items}


def cframe_from_dict(doc: dict) -> CFrame:
    n = _ambient_dim(doc)
    items = doc.get("items")
    if not isinstance(items, list) or not items:
        raise SpecFormatError("expected a nonempty list", "items")
    weights, vectors, origins = [], [], []
    for i, item in enumerate(items):
        where = f"items[{i}]"
        if not isinstance(item, dict):
            raise SpecFormatError("expected an object", where)
        w = _number(item.get("weight"), f"{where}.weight")
        if not (math.isfinite(w) and w > 0):
            raise SpecFormatError("weight must be positive and finite", f"{where}.weight")
        v = vector_from_json(item.get("vector"), f"{where}.vector")
        if v.size != n:
            raise SpecFormatError(f"vector has {v.size} entries, expected {n}", f"{where}.vector")
        o = item.get("origin")
        weights.append(w)
        vectors.append(v)
        origins.append(tuple(o) if o is not None else None)
    has_origin = any(o is not None for o in origins)
    return CFrame(np.asarray(weights), np.asarray(vectors), tuple(origins) if has_origin else None)


def write_cframe(path, u: CFrame) -> None:
    Path(path).write_text(json.dumps(cframe_to_dict(u), indent=1) + "\n")


def read_cframe(path) -> CFrame:
    return cframe_from_dict(_load_text(Path(path).read_text()))


# --- certificates ------------------------------------------------------------

def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def certificate_to_dict(cert: FrameCertificate) -> dict:
    return asdict(cert)


def certificate_from_dict(doc: dict) -> FrameCertificate:
    try:
        return FrameCertificate(**doc)
    except TypeError as exc:
        raise SpecFormatError(f"bad certificate fields: {exc}") from None


def certificate_document(cert: FrameCertificate, input_digest: str, elapsed: float) -> dict:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "input_digest": input_digest,
        "tolerance": cert.tolerance,
        "elapsed_seconds": elapsed,
        "certificate": certificate_to_dict(cert),
    }


def read_certificate_document(text: str) -> tuple[dict, FrameCertificate]:
    doc = _load_text(text)
    if "certificate" not in doc:
        raise SpecFormatError("missing field", "certificate")
    return doc, certificate_from_dict(doc["certificate"])


# --- transition reports and split manifests ----------------------------------

def transition_to_dict(rep: TransitionReport) -> dict:
    cls = rep.classification
    return {
        "V": matrix_to_json(rep.V),
        "residual": rep.residual,
        "sigma_min": cls.sigma_min,
        "sigma_max": cls.sigma_max,
        "lower_gram": cls.lower_gram,
        "upper_gram": cls.upper_gram,
        "alpha": cls.alpha,
        "is_isometry": cls.is_isometry,
        "is_unitary": cls.is_unitary,
        "is_injective": cls.is_injective,
        "is_invertible": cls.is_invertible,
        "tolerance": cls.tolerance,
    }


def manifest_to_dict(sp: FrameSplit, part_files: list[str]) -> dict:
    return {
        "kind": sp.kind,
        "coefficients": list(sp.coefficients),
        "parts": part_files,
        "declared_classes": list(sp.declared),
        "notes": list(sp.notes),
    }


def read_split(manifest_path) -> FrameSplit:
    """Load a split written by ``cgframes split`` (part paths relative to the manifest)."""
    manifest_path = Path(manifest_path)
    doc = _load_text(manifest_path.read_text())
    parts = tuple(read_family(manifest_path.parent / p) for p in doc["parts"])
    return FrameSplit(kind=doc["kind"], coefficients=tuple(float(c) for c in doc["coefficients"]),
                      parts=parts, declared=tuple(doc["declared_classes"]), notes=tuple(doc.get("notes", ())))
