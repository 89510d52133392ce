"""Flattening a g-family into vectors ``u_{j,k} = L_j^* e_{j,k}`` and certifying vector families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    FrameCertificate,
    GFrameFamily,
    _check_tol,
    certificate_from_synthesis,
    certify,
    frame_operator,
)
from .errors import NotUnitaryBasis, ShapeMismatch
from .measure import LocalDims, _frozen


@dataclass(frozen=True, eq=False)
class CFrame:
    """Weighted vectors in ``C^n``; ``vectors[i]`` carries weight ``weights[i]``.

    ``origins[i]`` is ``(atom, local_index)`` for induced families, ``None``
    otherwise.
    """

    weights: np.ndarray
    vectors: np.ndarray
    origins: tuple | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=float, copy=True)
        v = _frozen(np.atleast_2d(self.vectors))
        if w.ndim != 1 or v.ndim != 2 or v.shape[0] != w.shape[0]:
            raise ShapeMismatch("need one weight per vector")
        if w.size == 0:
            raise ShapeMismatch("empty vector family")
        if not np.all(np.isfinite(w) & (w > 0)):
            raise ShapeMismatch("vector weights must be positive and finite")
        if self.origins is not None and len(self.origins) != w.size:
            raise ShapeMismatch("origins must match the number of vectors")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "vectors", v)
        if self.origins is not None:
            object.__setattr__(self, "origins", tuple(tuple(o) if o is not None else None for o in self.origins))

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self):
        return self.weights.size

    def items(self):
        origins = self.origins or (None,) * len(self)
        return list(zip(self.weights.tolist(), self.vectors, origins))


@dataclass(frozen=True, eq=False)
class LocalBases:
    """One unitary per atom; its columns are the orthonormal basis of that local space."""

    matrices: tuple[np.ndarray, ...]
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        ms = tuple(_frozen(m) for m in self.matrices)
        for j, m in enumerate(ms):
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise NotUnitaryBasis(f"basis {j} must be square, got {m.shape}")
            if float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]), 2)) > self.tolerance:
                raise NotUnitaryBasis(f"basis {j} is not unitary")
        object.__setattr__(self, "matrices", ms)

    @property
    def dims(self) -> LocalDims:
        return LocalDims(tuple(m.shape[0] for m in self.matrices))

    @classmethod
    def identity(cls, dims: LocalDims | Sequence[int]) -> "LocalBases":
        ds = dims.dims if isinstance(dims, LocalDims) else tuple(dims)
        return cls(tuple(np.eye(d, dtype=complex) for d in ds))


def induce(fam: GFrameFamily, bases: LocalBases) -> CFrame:
    """Item ``(j, k)`` has weight ``mu_j`` and vector ``L_j^* E_j[:, k]``."""
    if bases.dims != fam.dims:
        raise ShapeMismatch(f"bases layout {bases.dims.dims} does not match family {fam.dims.dims}")
    weights, vectors, origins = [], [], []
    for j, (w, L, E) in enumerate(zip(fam.weights, fam.blocks, bases.matrices)):
        U = L.conj().T @ E
        for k in range(U.shape[1]):
            weights.append(w)
            vectors.append(U[:, k])
            origins.append((j, k))
    return CFrame(np.asarray(weights), np.asarray(vectors), tuple(origins))


def cframe_frame_operator(u: CFrame) -> np.ndarray:
    """``S = sum_i w_i v_i v_i^*``."""
    n = u.ambient_dim
    S = np.zeros((n, n), dtype=complex)
    for w, v in zip(u.weights, u.vectors):
        S += w * np.outer(v, v.conj())
    return 0.5 * (S + S.conj().T)


def cframe_synthesis_matrix(u: CFrame) -> np.ndarray:
    return (u.vectors * np.sqrt(u.weights)[:, None]).T


def pointwise_normalization_defect(u: CFrame) -> float:
    """``max_nu |sum_i w_i <v_i, v_nu> - 1|``: the pointwise normalization condition
    some authors attach to continuous orthonormal bases. Reported, not used for flags."""
    G = u.vectors.conj() @ u.vectors.T  # G[nu, i] = <v_i, v_nu>
    sums = G @ u.weights
    return float(np.max(np.abs(sums - 1.0)))


def certify_cframe(u: CFrame, tol: float = DEFAULT_TOL) -> FrameCertificate:
    """Same flag semantics as :func:`cgframes.core.certify`, on a vector family."""
    tol = _check_tol(tol)
    return certificate_from_synthesis(
        cframe_synthesis_matrix(u), cframe_frame_operator(u), tol,
        extra_defects={"pointwise_normalization": pointwise_normalization_defect(u)},
    )


EQUIVALENCE_CLASSES = ("is_bessel", "is_frame", "is_tight", "is_parseval", "is_complete",
                       "is_riesz_basis", "is_orthonormal_system", "is_orthonormal_basis")


@dataclass(frozen=True)
class EquivalenceReport:
    g_certificate: FrameCertificate
    c_certificate: FrameCertificate
    agreements: dict
    lower_bound_diff: float
    upper_bound_diff: float
    operator_diff: float
    tolerance: float

    @property
    def holds(self) -> bool:
        return (all(self.agreements.values())
                and self.lower_bound_diff <= self.tolerance
                and self.upper_bound_diff <= self.tolerance)


def equivalence_report(fam: GFrameFamily, bases: LocalBases, tol: float = DEFAULT_TOL) -> EquivalenceReport:
    tol = _check_tol(tol)
    u = induce(fam, bases)
    g = certify(fam, tol)
    c = certify_cframe(u, tol)
    agreements = {name: getattr(g, name) == getattr(c, name) for name in EQUIVALENCE_CLASSES}
    return EquivalenceReport(
        g_certificate=g, c_certificate=c, agreements=agreements,
        lower_bound_diff=abs(g.lower_bound - c.lower_bound),
        upper_bound_diff=abs(g.upper_bound - c.upper_bound),
        operator_diff=float(np.max(np.abs(frame_operator(fam) - cframe_frame_operator(u)))),
        tolerance=tol,
    )


def weighted_norm_identity_gap(fam: GFrameFamily, u: CFrame, h) -> float:
    """``|sum_j mu_j ||L_j h||^2 - sum_i w_i |<h, u_i>|^2|`` for one vector ``h``."""
    h = np.asarray(h, dtype=complex)
    lhs = sum(w * float(np.vdot(L @ h, L @ h).real) for w, L in zip(fam.weights, fam.blocks))
    rhs = float(np.sum(u.weights * np.abs(u.vectors.conj() @ h) ** 2))
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def random_local_bases(rng: np.random.Generator, dims: LocalDims | Sequence[int]) -> LocalBases:
    from .generators import haar_unitary

    ds = dims.dims if isinstance(dims, LocalDims) else tuple(dims)
    return LocalBases(tuple(haar_unitary(rng, d) for d in ds))


def fourier_basis(d: int) -> np.ndarray:
    k = np.arange(d)
    return np.exp(-2j * math.pi * np.outer(k, k) / d) / math.sqrt(d)
