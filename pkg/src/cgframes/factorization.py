"""Transition operators relative to an orthonormal basis family.

Given an orthonormal basis family ``Theta`` and any family ``L`` on the same
layout, ``V = sum_j mu_j Theta_j^* L_j`` is the unique operator with
``L_j = Theta_j V``. Frame-theoretic properties of ``L`` are then properties
of ``V``: bounds are the extreme eigenvalues of ``V^* V``, Parseval means
isometry, orthonormal basis means unitary, Riesz basis means invertible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    FrameCertificate,
    GFrameFamily,
    _check_same_layout,
    _check_tol,
    certify,
    compose,
    numerical_rank,
    synthesis_matrix,
)
from .errors import NotOrthonormalBasis, ShapeMismatch

__all__ = [
    "TransitionClass", "TransitionReport", "FactorizationCheck",
    "transition_operator", "compose", "classify_transition",
    "completeness_check", "check_factorization_theorems", "require_orthonormal_basis",
]


@dataclass(frozen=True)
class TransitionClass:
    sigma_min: float
    sigma_max: float
    is_isometry: bool
    is_unitary: bool
    is_injective: bool
    is_invertible: bool
    tolerance: float

    @property
    def alpha(self) -> float:
        """Largest constant with ``||V f||^2 >= alpha ||f||^2``."""
        return self.sigma_min ** 2

    @property
    def lower_gram(self) -> float:
        return self.sigma_min ** 2

    @property
    def upper_gram(self) -> float:
        return self.sigma_max ** 2


@dataclass(frozen=True, eq=False)
class TransitionReport:
    V: np.ndarray
    residual: float
    classification: TransitionClass


def classify_transition(V: np.ndarray, tol: float = DEFAULT_TOL) -> TransitionClass:
    """Classify a square operator.

    In finite dimensions ``V^*`` onto, ``V`` injective and ``V`` invertible
    coincide, so a single singular-value test serves all three.
    """
    tol = _check_tol(tol)
    V = np.asarray(V, dtype=complex)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ShapeMismatch(f"V must be square, got shape {V.shape}")
    n = V.shape[0]
    s = np.linalg.svd(V, compute_uv=False)
    I = np.eye(n)
    iso = float(np.linalg.norm(V.conj().T @ V - I, 2)) <= tol
    co_iso = float(np.linalg.norm(V @ V.conj().T - I, 2)) <= tol
    injective = float(s[-1]) > tol
    return TransitionClass(
        sigma_min=float(s[-1]), sigma_max=float(s[0]),
        is_isometry=iso, is_unitary=iso and co_iso,
        is_injective=injective, is_invertible=injective, tolerance=tol,
    )


def require_orthonormal_basis(basis: GFrameFamily, tol: float) -> FrameCertificate:
    cert = certify(basis, tol)
    if not cert.is_orthonormal_basis:
        raise NotOrthonormalBasis(
            f"reference family is not an orthonormal basis "
            f"(defect {cert.defects['orthonormal_basis']:.3e}, tolerance {tol:.1e})"
        )
    return cert


def transition_operator(fam: GFrameFamily, basis: GFrameFamily, tol: float = DEFAULT_TOL) -> TransitionReport:
    """Recover ``V`` with ``fam_j = basis_j V`` from the explicit weighted sum.

    Raises
    ------
    ShapeMismatch
        If the two families do not share ambient dimension, local dimensions
        and measure.
    NotOrthonormalBasis
        If ``basis`` does not certify as an orthonormal basis at ``tol``.
    """
    tol = _check_tol(tol)
    _check_same_layout(fam, basis)
    require_orthonormal_basis(basis, tol)
    n = fam.ambient_dim
    V = np.zeros((n, n), dtype=complex)
    for w, Th, L in zip(fam.weights, basis.blocks, fam.blocks):
        V += w * (Th.conj().T @ L)
    residual = max(float(np.linalg.norm(L - Th @ V, 2)) for Th, L in zip(basis.blocks, fam.blocks))
    return TransitionReport(V=V, residual=residual, classification=classify_transition(V, tol))


def completeness_check(fam: GFrameFamily, tol: float = DEFAULT_TOL) -> tuple[bool, int]:
    """Complete iff only ``h = 0`` is annihilated by every block, i.e. ``rank(T~) = n``."""
    tol = _check_tol(tol)
    r = numerical_rank(synthesis_matrix(fam), tol)
    return r == fam.ambient_dim, r


@dataclass(frozen=True)
class FactorizationCheck:
    """Outcome of testing the four factorization biconditionals on ``basis o V``."""

    certificate: FrameCertificate
    classification: TransitionClass
    parseval_iff_isometry: bool
    bounds_match_gram: bool
    orthonormal_iff_unitary: bool
    riesz_iff_invertible: bool
    lower_bound_error: float
    upper_bound_error: float

    @property
    def all_hold(self) -> bool:
        return (self.parseval_iff_isometry and self.bounds_match_gram
                and self.orthonormal_iff_unitary and self.riesz_iff_invertible)


def check_factorization_theorems(basis: GFrameFamily, V: np.ndarray, tol: float = DEFAULT_TOL,
                                 bound_rtol: float = 1e-9) -> FactorizationCheck:
    """Compose ``basis`` with ``V`` and test each biconditional.

    Bound errors are relative to ``max(sigma_max(V)^2, 1)``.
    """
    tol = _check_tol(tol)
    require_orthonormal_basis(basis, tol)
    fam = compose(basis, V)
    cert = certify(fam, tol)
    cls = classify_transition(V, tol)
    scale = max(cls.upper_gram, 1.0)
    lo_err = abs(cert.lower_bound - cls.lower_gram) / scale
    hi_err = abs(cert.upper_bound - cls.upper_gram) / scale
    return FactorizationCheck(
        certificate=cert,
        classification=cls,
        parseval_iff_isometry=cert.is_parseval == cls.is_isometry,
        bounds_match_gram=lo_err <= bound_rtol and hi_err <= bound_rtol,
        orthonormal_iff_unitary=cert.is_orthonormal_basis == cls.is_unitary,
        riesz_iff_invertible=cert.is_riesz_basis == cls.is_invertible,
        lower_bound_error=lo_err,
        upper_bound_error=hi_err,
    )
