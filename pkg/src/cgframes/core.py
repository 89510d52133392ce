"""Operator families, their synthesis/analysis/frame operators, and certification.

A family is stored as one ``d_j x n`` block per atom. Every spectral question
is answered through the weighted synthesis matrix

    T~ = [sqrt(mu_1) L_1^* | ... | sqrt(mu_m) L_m^*]      (n x D)

which represents the synthesis operator in orthonormal coordinates of the
weighted coefficient space (see :func:`cgframes.measure.weighted_embedding`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidTolerance, NotAFrame, ShapeMismatch
from .measure import DirectIntegralVector, LocalDims, MeasureSpace, _frozen

DEFAULT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class GFrameFamily:
    """A family of operators ``L_j : C^n -> C^{d_j}``, one per measure atom."""

    measure: MeasureSpace
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        bs = tuple(_frozen(b) for b in self.blocks)
        if len(bs) != self.measure.atom_count:
            raise ShapeMismatch(f"{len(bs)} blocks for {self.measure.atom_count} atoms")
        n = None
        for j, b in enumerate(bs):
            if b.ndim != 2 or b.shape[0] < 1 or b.shape[1] < 1:
                raise ShapeMismatch(f"block {j} must be a nonempty matrix, got shape {b.shape}")
            if n is None:
                n = b.shape[1]
            elif b.shape[1] != n:
                raise ShapeMismatch(f"block {j} has {b.shape[1]} columns, expected {n}")
            if not np.all(np.isfinite(b)):
                raise ShapeMismatch(f"block {j} has non-finite entries")
        object.__setattr__(self, "blocks", bs)

    @classmethod
    def from_blocks(cls, blocks: Sequence, weights: Sequence[float]) -> "GFrameFamily":
        return cls(MeasureSpace(tuple(weights)), tuple(np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks))

    @property
    def ambient_dim(self) -> int:
        return self.blocks[0].shape[1]

    @property
    def dims(self) -> LocalDims:
        return LocalDims(tuple(b.shape[0] for b in self.blocks))

    @property
    def weights(self) -> tuple[float, ...]:
        return self.measure.weights

    def __repr__(self):
        return f"GFrameFamily(n={self.ambient_dim}, dims={self.dims.dims}, weights={self.weights})"


@dataclass(frozen=True)
class FrameCertificate:
    lower_bound: float
    upper_bound: float
    is_bessel: bool
    is_frame: bool
    is_tight: bool
    is_parseval: bool
    is_complete: bool
    is_riesz_basis: bool
    is_orthonormal_system: bool
    is_orthonormal_basis: bool
    rank: int
    ambient_dim: int
    coefficient_dim: int
    defects: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_TOL

    FLAGS = ("is_bessel", "is_frame", "is_tight", "is_parseval", "is_complete",
             "is_riesz_basis", "is_orthonormal_system", "is_orthonormal_basis")

    def flags(self) -> dict:
        return {name: getattr(self, name) for name in self.FLAGS}


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not (math.isfinite(tol) and tol > 0.0):
        raise InvalidTolerance(f"tolerance must be positive and finite, got {tol}")
    return tol


def _check_coefficients(fam: GFrameFamily, phi: DirectIntegralVector) -> None:
    if len(phi.blocks) != len(fam.blocks):
        raise ShapeMismatch(f"{len(phi.blocks)} coefficient blocks for {len(fam.blocks)} atoms")
    for j, (b, L) in enumerate(zip(phi.blocks, fam.blocks)):
        if b.shape[0] != L.shape[0]:
            raise ShapeMismatch(f"coefficient block {j} has length {b.shape[0]}, expected {L.shape[0]}")


def synthesis_apply(fam: GFrameFamily, phi: DirectIntegralVector) -> np.ndarray:
    """``T phi = sum_j mu_j L_j^* phi_j``."""
    _check_coefficients(fam, phi)
    out = np.zeros(fam.ambient_dim, dtype=complex)
    for w, L, b in zip(fam.weights, fam.blocks, phi.blocks):
        out += w * (L.conj().T @ b)
    return out


def analysis_apply(fam: GFrameFamily, h: Sequence[complex]) -> DirectIntegralVector:
    """``(T^* h)_j = L_j h``."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (fam.ambient_dim,):
        raise ShapeMismatch(f"vector of shape {h.shape} for ambient dimension {fam.ambient_dim}")
    return DirectIntegralVector(tuple(L @ h for L in fam.blocks))


def synthesis_matrix(fam: GFrameFamily) -> np.ndarray:
    return np.hstack([math.sqrt(w) * L.conj().T for w, L in zip(fam.weights, fam.blocks)])


def frame_operator(fam: GFrameFamily) -> np.ndarray:
    """``S = sum_j mu_j L_j^* L_j`` as an ``n x n`` Hermitian matrix."""
    n = fam.ambient_dim
    S = np.zeros((n, n), dtype=complex)
    for w, L in zip(fam.weights, fam.blocks):
        S += w * (L.conj().T @ L)
    return 0.5 * (S + S.conj().T)


def frame_bounds(fam: GFrameFamily) -> tuple[float, float]:
    """Optimal bounds: extreme eigenvalues of the frame operator (lower clipped at 0)."""
    ev = np.linalg.eigvalsh(frame_operator(fam))
    return max(float(ev[0]), 0.0), max(float(ev[-1]), 0.0)


def orthonormal_system_defect(fam: GFrameFamily) -> float:
    """Spectral distance of the weighted Gram ``T~^* T~`` from ``I_D``.

    Zero exactly when ``mu_j L_j L_j^* = I`` on every atom and ``L_i L_j^* = 0``
    across distinct atoms.
    """
    Tt = synthesis_matrix(fam)
    G = Tt.conj().T @ Tt
    return float(np.linalg.norm(G - np.eye(G.shape[0]), 2))


def numerical_rank(M: np.ndarray, tol: float) -> int:
    """Count singular values above ``tol * sigma_max``; the zero matrix has rank 0."""
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def certificate_from_synthesis(Tt: np.ndarray, S: np.ndarray, tol: float,
                               extra_defects: dict | None = None) -> FrameCertificate:
    """Shared classification logic for g-families and flattened vector families.

    ``Tt`` is the ``n x D`` weighted synthesis matrix and ``S`` the frame
    operator computed independently by the caller.
    """
    tol = _check_tol(tol)
    n, D = Tt.shape
    ev = np.linalg.eigvalsh(S)
    A, B = max(float(ev[0]), 0.0), max(float(ev[-1]), 0.0)
    s = np.linalg.svd(Tt, compute_uv=False)
    sigma_max = float(s[0]) if s.size else 0.0
    rank = int(np.count_nonzero(s > tol * sigma_max)) if sigma_max > 0 else 0
    sigma_min = float(s[-1]) if (D == n and s.size) else 0.0

    gram_defect = float(np.linalg.norm(Tt.conj().T @ Tt - np.eye(D), 2))
    parseval_defect = float(np.linalg.norm(S - np.eye(n), 2))
    tight_defect = (B - A) / max(B, 1.0)

    is_frame = A > tol
    is_parseval = parseval_defect <= tol and is_frame
    # tight and Riesz are conjoined with their parent classes so the
    # implication chain holds at the boundary of the tolerance window
    is_tight = is_frame and (tight_defect <= tol or is_parseval)
    is_complete = rank == n
    is_riesz = D == n and sigma_min > tol and is_frame and is_complete
    is_os = gram_defect <= tol
    is_onb = is_os and is_parseval

    defects = {
        "tight": tight_defect,
        "parseval": parseval_defect,
        "orthonormal_system": gram_defect,
        "orthonormal_basis": max(gram_defect, parseval_defect),
    }
    if D == n:
        defects["unitary_synthesis"] = max(gram_defect, float(np.linalg.norm(Tt @ Tt.conj().T - np.eye(n), 2)))
        defects["synthesis_sigma_min"] = sigma_min
    if extra_defects:
        defects.update(extra_defects)
    return FrameCertificate(
        lower_bound=A, upper_bound=B,
        is_bessel=True, is_frame=is_frame, is_tight=is_tight, is_parseval=is_parseval,
        is_complete=is_complete, is_riesz_basis=is_riesz,
        is_orthonormal_system=is_os, is_orthonormal_basis=is_onb,
        rank=rank, ambient_dim=n, coefficient_dim=D, defects=defects, tolerance=tol,
    )


def certify(fam: GFrameFamily, tol: float = DEFAULT_TOL) -> FrameCertificate:
    """Classify ``fam`` against every frame class at tolerance ``tol``.

    Parameters
    ----------
    fam : GFrameFamily
    tol : float
        Positive tolerance. Frame: ``A > tol``. Tight: ``(B - A) <= tol * max(B, 1)``.
        Parseval: ``||S - I|| <= tol``. Complete: full rank of ``T~`` at
        threshold ``tol * sigma_max``. Riesz basis: ``D == n`` and
        ``sigma_min(T~) > tol``. Orthonormal system: Gram defect ``<= tol``.

    Returns
    -------
    FrameCertificate
        Bounds, flags, rank and the defect map. ``unitary_synthesis`` and
        ``synthesis_sigma_min`` are only reported when ``D == n``.
    """
    return certificate_from_synthesis(synthesis_matrix(fam), frame_operator(fam), tol)


def pseudo_inverse(M: np.ndarray) -> np.ndarray:
    """Moore-Penrose inverse by SVD, dropping ``sigma <= max(shape) * eps * sigma_max``."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise ShapeMismatch("pseudo_inverse expects a matrix")
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(M.shape[::-1], dtype=complex)
    cutoff = max(M.shape) * np.finfo(float).eps * s[0]
    inv = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    return (Vh.conj().T * inv) @ U.conj().T


def compose(fam: GFrameFamily, V: np.ndarray) -> GFrameFamily:
    """The family ``{L_j V}``."""
    V = np.asarray(V, dtype=complex)
    n = fam.ambient_dim
    if V.shape != (n, n):
        raise ShapeMismatch(f"V must be {n}x{n}, got {V.shape}")
    return GFrameFamily(fam.measure, tuple(L @ V for L in fam.blocks))


def canonical_dual(fam: GFrameFamily, tol: float = DEFAULT_TOL) -> GFrameFamily:
    """Dual family ``L_j S^{-1}``; both mixed sums ``sum mu_j L~_j^* L_j`` and
    ``sum mu_j L_j^* L~_j`` reproduce the identity."""
    tol = _check_tol(tol)
    S = frame_operator(fam)
    lam_min = float(np.linalg.eigvalsh(S)[0])
    if lam_min <= tol:
        raise NotAFrame(f"lower frame bound {lam_min:.3e} <= tolerance {tol:.1e}")
    # L_j S^{-1} = (S^{-1} L_j^*)^* since S is Hermitian
    return GFrameFamily(fam.measure, tuple(np.linalg.solve(S, L.conj().T).conj().T for L in fam.blocks))


def mixed_frame_operator(left: GFrameFamily, right: GFrameFamily) -> np.ndarray:
    """``sum_j mu_j left_j^* right_j``; equals the identity for a family and its dual."""
    _check_same_layout(left, right)
    n = left.ambient_dim
    M = np.zeros((n, n), dtype=complex)
    for w, L, R in zip(left.weights, left.blocks, right.blocks):
        M += w * (L.conj().T @ R)
    return M


def _check_same_layout(a: GFrameFamily, b: GFrameFamily) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    if a.dims != b.dims:
        raise ShapeMismatch(f"local dimensions differ: {a.dims.dims} vs {b.dims.dims}")
    if not np.allclose(a.measure.as_array(), b.measure.as_array(), rtol=1e-12, atol=0.0):
        raise ShapeMismatch("measures differ")


def linear_combination(coefficients: Sequence[complex], parts: Sequence[GFrameFamily]) -> GFrameFamily:
    """Blockwise ``sum_k c_k part_k``; all parts must share one layout."""
    if len(coefficients) != len(parts) or not parts:
        raise ShapeMismatch("need one coefficient per part and at least one part")
    for p in parts[1:]:
        _check_same_layout(parts[0], p)
    blocks = []
    for j in range(len(parts[0].blocks)):
        acc = np.zeros_like(parts[0].blocks[j])
        for c, p in zip(coefficients, parts):
            acc = acc + c * p.blocks[j]
        blocks.append(acc)
    return GFrameFamily(parts[0].measure, tuple(blocks))


def block_distance(a: GFrameFamily, b: GFrameFamily) -> float:
    """Largest spectral-norm difference over atoms."""
    _check_same_layout(a, b)
    return max(float(np.linalg.norm(x - y, 2)) for x, y in zip(a.blocks, b.blocks))


def block_norm(a: GFrameFamily) -> float:
    return max(float(np.linalg.norm(x, 2)) for x in a.blocks)
