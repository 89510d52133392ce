"""Constructive unitary decompositions of operators and the frame splits built on them.

Every split goes through the transition operator ``V`` of a frame relative
to an orthonormal basis family, decomposes ``V`` into unitaries (or
isometries), and composes the basis with each piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    GFrameFamily,
    _check_tol,
    certify,
    compose,
    linear_combination,
)
from .errors import (
    DegenerateSpectrumGrid,
    NormExceedsOne,
    NotAFrame,
    NotRieszBasis,
    NotSelfAdjoint,
    ShapeMismatch,
)
from .factorization import transition_operator

PHASE_GRID_POINTS = 360
SQRT_CLAMP = 1e-12

SPLIT_KINDS = ("parseval_pair", "three_onb", "two_onb_combo", "onb_plus_riesz")


@dataclass(frozen=True, eq=False)
class PolarParts:
    U: np.ndarray
    P: np.ndarray


@dataclass(frozen=True, eq=False)
class UnitaryCombo:
    alpha: float
    unitaries: tuple[np.ndarray, ...]
    sigma_min: float = 0.0

    def reconstruct(self) -> np.ndarray:
        return self.alpha * sum(self.unitaries)


@dataclass(frozen=True, eq=False)
class FrameSplit:
    kind: str
    coefficients: tuple[float, ...]
    parts: tuple[GFrameFamily, ...]
    declared: tuple[str, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    def recombine(self) -> GFrameFamily:
        return linear_combination(self.coefficients, self.parts)


def _square(V) -> np.ndarray:
    V = np.asarray(V, dtype=complex)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {V.shape}")
    return V


def psd_sqrt(M: np.ndarray) -> np.ndarray:
    """Square root of a Hermitian PSD matrix via ``eigh``.

    Eigenvalues in ``[-1e-12, 0)`` are treated as rounding and clamped to 0;
    anything more negative is rejected.
    """
    M = _square(M)
    H = 0.5 * (M + M.conj().T)
    lam, Q = np.linalg.eigh(H)
    if lam.size and lam[0] < -SQRT_CLAMP * max(1.0, abs(lam[-1])):
        raise ValueError(f"matrix is not positive semidefinite (eigenvalue {lam[0]:.3e})")
    return (Q * np.sqrt(np.clip(lam, 0.0, None))) @ Q.conj().T


def polar_decompose(V) -> PolarParts:
    """``V = U P`` with ``U`` unitary and ``P = sqrt(V^* V)``.

    From the SVD ``V = W S X^*``: ``U = W X^*`` and ``P = X S X^*``. On
    ``ker V`` this completes the partial isometry to a unitary. The zero
    matrix gives ``U = I``, ``P = 0``.
    """
    V = _square(V)
    n = V.shape[0]
    if not np.any(V):
        return PolarParts(U=np.eye(n, dtype=complex), P=np.zeros((n, n), dtype=complex))
    W, s, Xh = np.linalg.svd(V)
    U = W @ Xh
    P = (Xh.conj().T * s) @ Xh
    return PolarParts(U=U, P=0.5 * (P + P.conj().T))


def selfadjoint_to_unitaries(P, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return the unitary ``W = P + i sqrt(I - P^2)``, so that ``P = (W + W^*) / 2``.

    Eigenvalues of ``P`` within ``tol`` outside ``[-1, 1]`` are clamped.

    Raises
    ------
    NotSelfAdjoint
        If ``||P - P^*|| > tol * max(1, ||P||)``.
    NormExceedsOne
        If some eigenvalue has modulus above ``1 + tol``.
    """
    tol = _check_tol(tol)
    P = _square(P)
    scale = max(1.0, float(np.linalg.norm(P, 2)))
    if float(np.linalg.norm(P - P.conj().T, 2)) > tol * scale:
        raise NotSelfAdjoint("P is not Hermitian within tolerance")
    lam, Q = np.linalg.eigh(0.5 * (P + P.conj().T))
    if lam.size and max(abs(lam[0]), abs(lam[-1])) > 1.0 + tol:
        raise NormExceedsOne(f"||P|| = {max(abs(lam[0]), abs(lam[-1])):.6g} exceeds 1")
    Pc = (Q * np.clip(lam, -1.0, 1.0)) @ Q.conj().T
    n = P.shape[0]
    return Pc + 1j * psd_sqrt(np.eye(n) - Pc @ Pc)


def two_unitary_combination(V) -> UnitaryCombo:
    """``V = a (U_1 + U_2)`` with ``a = ||V|| / 2``.

    Writing ``sigma_i / ||V|| = cos(theta_i)`` in the SVD ``V = W S X^*``, the
    terms are ``W diag(exp(+-i theta)) X^*``. This works for every square
    matrix; ``sigma_min`` is carried so callers can insist on invertibility.
    """
    V = _square(V)
    n = V.shape[0]
    if not np.any(V):
        I = np.eye(n, dtype=complex)
        return UnitaryCombo(alpha=0.0, unitaries=(I, I.copy()), sigma_min=0.0)
    W, s, Xh = np.linalg.svd(V)
    norm = float(s[0])
    theta = np.arccos(np.clip(s / norm, -1.0, 1.0))
    U1 = (W * np.exp(1j * theta)) @ Xh
    U2 = (W * np.exp(-1j * theta)) @ Xh
    return UnitaryCombo(alpha=norm / 2.0, unitaries=(U1, U2), sigma_min=float(s[-1]))


def three_unitary_combination(V) -> UnitaryCombo:
    """``V = a (U_1 + U_2 + U_3)`` with ``a = ||V||``.

    Per normalized singular value ``sigma``, ``2 cos(theta) - 1 = sigma`` with
    ``theta = arccos((sigma + 1) / 2)``; the third term is ``-W X^*``.
    """
    V = _square(V)
    n = V.shape[0]
    if not np.any(V):
        I = np.eye(n, dtype=complex)
        return UnitaryCombo(alpha=0.0, unitaries=(I, I.copy(), I.copy()), sigma_min=0.0)
    norm = float(np.linalg.norm(V, 2))
    W, s, Xh = np.linalg.svd(V / norm)
    theta = np.arccos(np.clip((s + 1.0) / 2.0, -1.0, 1.0))
    U1 = (W * np.exp(1j * theta)) @ Xh
    U2 = (W * np.exp(-1j * theta)) @ Xh
    U3 = -(W @ Xh)
    return UnitaryCombo(alpha=norm, unitaries=(U1, U2, U3), sigma_min=float(s[-1]) * norm)


def _frame_transition(fam: GFrameFamily, basis: GFrameFamily, tol: float) -> np.ndarray:
    cert = certify(fam, tol)
    if not cert.is_frame:
        raise NotAFrame(f"lower frame bound {cert.lower_bound:.3e} <= tolerance {tol:.1e}")
    return transition_operator(fam, basis, tol).V


def parseval_pair_split(fam: GFrameFamily, basis: GFrameFamily, tol: float = DEFAULT_TOL) -> FrameSplit:
    """Write a frame as ``(||V||/2) (basis o UW) + (||V||/2) (basis o UW^*)``.

    ``U`` is the polar unitary of ``V`` and ``W`` the unitary lift of
    ``|V| / ||V||``; both parts are Parseval.
    """
    tol = _check_tol(tol)
    V = _frame_transition(fam, basis, tol)
    polar = polar_decompose(V)
    norm = float(np.linalg.norm(V, 2))
    W = selfadjoint_to_unitaries(polar.P / norm, tol)
    parts = (compose(basis, polar.U @ W), compose(basis, polar.U @ W.conj().T))
    return FrameSplit(kind="parseval_pair", coefficients=(norm / 2.0, norm / 2.0), parts=parts,
                      declared=("parseval", "parseval"))


def three_onb_split(fam: GFrameFamily, basis: GFrameFamily, tol: float = DEFAULT_TOL) -> FrameSplit:
    """Write a frame as ``a (Psi + Gamma + Phi)`` with three orthonormal basis families."""
    tol = _check_tol(tol)
    V = _frame_transition(fam, basis, tol)
    combo = three_unitary_combination(V)
    parts = tuple(compose(basis, U) for U in combo.unitaries)
    return FrameSplit(kind="three_onb", coefficients=(combo.alpha,) * 3, parts=parts,
                      declared=("orthonormal_basis",) * 3)


def riesz_two_onb_split(fam: GFrameFamily, basis: GFrameFamily, tol: float = DEFAULT_TOL) -> FrameSplit:
    """Write a Riesz basis as ``a Psi + b Gamma`` with ``a = b = ||V|| / 2``."""
    tol = _check_tol(tol)
    cert = certify(fam, tol)
    if not cert.is_riesz_basis:
        raise NotRieszBasis("family does not certify as a Riesz basis")
    V = transition_operator(fam, basis, tol).V
    combo = two_unitary_combination(V)
    parts = tuple(compose(basis, U) for U in combo.unitaries)
    note = ("parts are orthonormal bases; the family equals their combination with "
            "coefficients ||V||/2, a plain sum only when ||V|| = 2")
    return FrameSplit(kind="two_onb_combo", coefficients=(combo.alpha, combo.alpha), parts=parts,
                      declared=("orthonormal_basis", "orthonormal_basis"), notes=(note,))


def spectrum_avoiding_phase(V: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Grid angle whose unit-circle point is farthest from the eigenvalues of ``V``.

    Ties go to the smallest angle.
    """
    eig = np.linalg.eigvals(_square(V))
    thetas = 2.0 * math.pi * np.arange(PHASE_GRID_POINTS) / PHASE_GRID_POINTS
    points = np.exp(1j * thetas)
    dist = np.min(np.abs(points[:, None] - eig[None, :]), axis=1)
    k = int(np.argmax(dist))
    if dist[k] <= tol:
        raise DegenerateSpectrumGrid("every grid point lies within tolerance of the spectrum")
    return float(thetas[k])


def onb_plus_riesz_split(fam: GFrameFamily, basis: GFrameFamily, tol: float = DEFAULT_TOL) -> FrameSplit:
    """Write a frame as ``basis o (zI) + basis o (V - zI)`` with ``|z| = 1`` off the spectrum."""
    tol = _check_tol(tol)
    V = _frame_transition(fam, basis, tol)
    theta = spectrum_avoiding_phase(V, tol)
    # exact values at the quarter turns keep the pi case free of 1e-16 imaginary parts
    z = complex(round(math.cos(theta), 15), round(math.sin(theta), 15))
    n = V.shape[0]
    parts = (compose(basis, z * np.eye(n)), compose(basis, V - z * np.eye(n)))
    return FrameSplit(kind="onb_plus_riesz", coefficients=(1.0, 1.0), parts=parts,
                      declared=("orthonormal_basis", "riesz_basis"),
                      notes=(f"phase {theta:.6f} rad",))


def split(kind: str, fam: GFrameFamily, basis: GFrameFamily, tol: float = DEFAULT_TOL) -> FrameSplit:
    funcs = {
        "parseval_pair": parseval_pair_split,
        "three_onb": three_onb_split,
        "two_onb_combo": riesz_two_onb_split,
        "onb_plus_riesz": onb_plus_riesz_split,
    }
    if kind not in funcs:
        raise ValueError(f"unknown split kind {kind!r}; choose from {SPLIT_KINDS}")
    return funcs[kind](fam, basis, tol)
