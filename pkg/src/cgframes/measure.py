"""Atomic measure spaces and the weighted direct-integral coefficient space.

A measure space is a finite list of atoms with positive masses. Integrals
over it become weighted sums taken in ascending atom order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonPositiveWeight, ShapeMismatch


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class MeasureSpace:
    weights: tuple[float, ...]

    def __post_init__(self):
        ws = tuple(float(w) for w in self.weights)
        if not ws:
            raise ValueError("a measure space needs at least one atom")
        for i, w in enumerate(ws):
            if not (math.isfinite(w) and w > 0.0):
                raise NonPositiveWeight(i, w)
        object.__setattr__(self, "weights", ws)

    @property
    def atom_count(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


@dataclass(frozen=True)
class LocalDims:
    dims: tuple[int, ...]

    def __post_init__(self):
        ds = tuple(int(d) for d in self.dims)
        if not ds:
            raise ValueError("need at least one local space")
        if any(d < 1 for d in ds):
            raise ShapeMismatch(f"local dimensions must be >= 1, got {ds}")
        object.__setattr__(self, "dims", ds)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out


@dataclass(frozen=True, eq=False)
class DirectIntegralVector:
    """One local vector per atom; block ``j`` lives in ``C^{d_j}``."""

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        bs = []
        for b in self.blocks:
            b = _frozen(b)
            if b.ndim != 1:
                raise ShapeMismatch("direct-integral blocks must be 1-d vectors")
            bs.append(b)
        object.__setattr__(self, "blocks", tuple(bs))

    @property
    def dims(self) -> LocalDims:
        return LocalDims(tuple(len(b) for b in self.blocks))

    @classmethod
    def from_flat(cls, vector: Sequence[complex], dims: LocalDims) -> "DirectIntegralVector":
        v = np.asarray(vector, dtype=complex)
        if v.shape != (dims.total_dim,):
            raise ShapeMismatch(f"flat vector has length {v.size}, layout needs {dims.total_dim}")
        return cls(tuple(v[o:o + d] for o, d in zip(dims.offsets(), dims.dims)))

    def flat(self) -> np.ndarray:
        return np.concatenate(self.blocks)

    def __add__(self, other: "DirectIntegralVector") -> "DirectIntegralVector":
        _check_same_layout(self, other)
        return DirectIntegralVector(tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __mul__(self, scalar: complex) -> "DirectIntegralVector":
        return DirectIntegralVector(tuple(scalar * b for b in self.blocks))

    __rmul__ = __mul__


def make_measure_space(weights: Sequence[float]) -> MeasureSpace:
    """Validate ``weights`` and wrap them as a :class:`MeasureSpace`.

    Raises
    ------
    NonPositiveWeight
        If any weight is zero, negative, or not finite.
    """
    return MeasureSpace(tuple(weights))


def _check_same_layout(f: DirectIntegralVector, g: DirectIntegralVector) -> None:
    if len(f.blocks) != len(g.blocks):
        raise ShapeMismatch(f"block counts differ: {len(f.blocks)} vs {len(g.blocks)}")
    for j, (a, b) in enumerate(zip(f.blocks, g.blocks)):
        if a.shape != b.shape:
            raise ShapeMismatch(f"block {j} lengths differ: {a.shape[0]} vs {b.shape[0]}")


def _check_measure(f: DirectIntegralVector, mu: MeasureSpace) -> None:
    if len(f.blocks) != mu.atom_count:
        raise ShapeMismatch(f"vector has {len(f.blocks)} blocks, measure has {mu.atom_count} atoms")


def di_inner(f: DirectIntegralVector, g: DirectIntegralVector, mu: MeasureSpace) -> complex:
    """Weighted inner product ``sum_j mu_j <f_j, g_j>``, conjugate-linear in ``g``."""
    _check_same_layout(f, g)
    _check_measure(f, mu)
    total = 0j
    for w, a, b in zip(mu.weights, f.blocks, g.blocks):
        total += w * np.vdot(b, a)
    return complex(total)


def weighted_embedding(f: DirectIntegralVector, mu: MeasureSpace) -> np.ndarray:
    """Isometric map to standard coordinates: block ``j`` scaled by ``sqrt(mu_j)``."""
    _check_measure(f, mu)
    return np.concatenate([math.sqrt(w) * b for w, b in zip(mu.weights, f.blocks)])
