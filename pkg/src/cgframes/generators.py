"""Seeded constructions of families in every class.

Randomness comes from numpy's PCG64 seeded through ``SeedSequence(seed,
spawn_key=(crc32(purpose),))``, so each (seed, purpose) pair owns an
independent, reproducible stream.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import GFrameFamily
from .errors import InvalidBounds, LayoutMismatch
from .measure import LocalDims, MeasureSpace

TARGET_CLASSES = ("orthonormal_basis", "parseval", "tight", "frame", "riesz", "incomplete")


def stream(seed: int, purpose: str) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(zlib.crc32(purpose.encode()),))
    return np.random.Generator(np.random.PCG64(ss))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """QR of a complex Gaussian with the diagonal of ``R`` made positive real."""
    return _orthonormal_columns(rng, n, n)


def _orthonormal_columns(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    Z = complex_gaussian(rng, (rows, cols))
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    phase = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return Q * phase.conj()


def _layout(n: int, dims: Sequence[int], weights: Sequence[float] | None):
    ld = LocalDims(tuple(dims))
    if weights is None:
        weights = (1.0,) * len(ld.dims)
    mu = MeasureSpace(tuple(weights))
    if mu.atom_count != len(ld.dims):
        raise LayoutMismatch(f"{mu.atom_count} weights for {len(ld.dims)} local spaces")
    if n < 1:
        raise LayoutMismatch("ambient dimension must be >= 1")
    return ld, mu


def _from_synthesis_rows(M: np.ndarray, dims: LocalDims, mu: MeasureSpace) -> GFrameFamily:
    """Family whose weighted synthesis matrix is ``M^*`` (``M`` is ``D x n``)."""
    blocks = []
    for off, d, w in zip(dims.offsets(), dims.dims, mu.weights):
        blocks.append(M[off:off + d, :] / math.sqrt(w))
    return GFrameFamily(mu, tuple(blocks))


def example_2_3() -> GFrameFamily:
    """Two atoms of mass 1 on ``C^2`` with blocks ``[1, 0]`` and ``[0, 1]``.

    The atoms are ``{a, b}`` and ``{c}`` of a three-point space whose
    sigma-algebra cannot separate ``a`` from ``b``; each block is the
    functional ``h -> <h, f(w)>`` with ``f = e1`` on ``{a, b}`` and ``e2`` on ``{c}``.
    """
    return GFrameFamily(MeasureSpace((1.0, 1.0)),
                        (np.array([[1.0, 0.0]], dtype=complex), np.array([[0.0, 1.0]], dtype=complex)))


def random_orthonormal_system(seed: int, n: int, dims: Sequence[int],
                              weights: Sequence[float] | None = None) -> GFrameFamily:
    """Orthonormal system with ``D <= n``: its weighted synthesis matrix has orthonormal columns."""
    ld, mu = _layout(n, dims, weights)
    if ld.total_dim > n:
        raise LayoutMismatch(f"orthonormal systems need D <= n, got D={ld.total_dim}, n={n}")
    C = _orthonormal_columns(stream(seed, "onb"), n, ld.total_dim)
    return _from_synthesis_rows(C.conj().T, ld, mu)


def random_onb(seed: int, n: int, dims: Sequence[int], weights: Sequence[float] | None = None) -> GFrameFamily:
    """Orthonormal basis family: rows of a Haar unitary, block ``j`` divided by ``sqrt(mu_j)``."""
    ld, _ = _layout(n, dims, weights)
    if ld.total_dim != n:
        raise LayoutMismatch(f"orthonormal bases need D == n, got D={ld.total_dim}, n={n}")
    return random_orthonormal_system(seed, n, dims, weights)


def pinned_singular_values(rng: np.random.Generator, k: int, lo: float, hi: float) -> np.ndarray:
    """``k`` values from ``lo`` to ``hi`` ascending: endpoints exact, interior log-uniform."""
    if k == 1:
        return np.array([lo])
    interior = np.exp(rng.uniform(math.log(lo), math.log(hi), size=k - 2)) if k > 2 else np.empty(0)
    return np.concatenate(([lo], np.sort(interior), [hi]))


def random_operator(seed: int, n: int, singular_values: Sequence[float], purpose: str = "operator") -> np.ndarray:
    """``X diag(s) Y^*`` with Haar unitaries ``X``, ``Y``."""
    rng = stream(seed, purpose)
    s = np.asarray(singular_values, dtype=float)
    if s.shape != (n,):
        raise LayoutMismatch(f"need {n} singular values")
    X = haar_unitary(rng, n)
    Y = haar_unitary(rng, n)
    return (X * s) @ Y.conj().T


def random_frame_with_bounds(seed: int, n: int, dims: Sequence[int], weights: Sequence[float] | None,
                             A: float, B: float) -> GFrameFamily:
    """Frame with optimal bounds exactly ``(A, B)`` up to rounding.

    For ``D == n`` this is ``random_onb o V`` with ``V`` having singular values
    ``sqrt(A) = s_1 <= ... <= s_n = sqrt(B)``. For ``D > n`` a ``D x n``
    matrix with those singular values is drawn and its rows partitioned.
    """
    if not (math.isfinite(A) and math.isfinite(B)) or A <= 0 or A > B:
        raise InvalidBounds(f"need 0 < A <= B, got A={A}, B={B}")
    if n == 1 and A != B:
        raise InvalidBounds("a one-dimensional frame is tight; need A == B")
    ld, mu = _layout(n, dims, weights)
    D = ld.total_dim
    if D < n:
        raise LayoutMismatch(f"frames need D >= n, got D={D}, n={n}")
    rng = stream(seed, "bounds")
    s = np.sqrt(pinned_singular_values(rng, n, A, B))
    if D == n:
        theta = random_onb(seed, n, ld.dims, mu.weights)
        V = random_operator(seed, n, s, purpose="transition")
        return GFrameFamily(mu, tuple(T @ V for T in theta.blocks))
    rng = stream(seed, "wide-frame")
    Ucols = _orthonormal_columns(rng, D, n)
    Y = haar_unitary(rng, n)
    M = (Ucols * s) @ Y.conj().T
    return _from_synthesis_rows(M, ld, mu)


def incomplete_family(seed: int, n: int, dims: Sequence[int], weights: Sequence[float] | None = None) -> GFrameFamily:
    """Random blocks right-multiplied by a rank ``n - 1`` orthogonal projector."""
    ld, mu = _layout(n, dims, weights)
    if n < 2:
        raise LayoutMismatch("an incomplete family needs n >= 2")
    rng = stream(seed, "incomplete")
    v = complex_gaussian(rng, n)
    v /= np.linalg.norm(v)
    P = np.eye(n) - np.outer(v, v.conj())
    blocks = tuple(complex_gaussian(rng, (d, n)) @ P for d in ld.dims)
    return GFrameFamily(mu, blocks)


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int
    ambient_dim: int
    dims: tuple[int, ...]
    weights: tuple[float, ...] | None
    target_class: str
    A: float | None = None
    B: float | None = None

    def __post_init__(self):
        if self.target_class not in TARGET_CLASSES:
            raise LayoutMismatch(f"unknown target class {self.target_class!r}")
        D = sum(self.dims)
        if self.target_class in ("orthonormal_basis", "riesz") and D != self.ambient_dim:
            raise LayoutMismatch(f"{self.target_class} needs D == n, got D={D}, n={self.ambient_dim}")
        if self.target_class in ("parseval", "tight", "frame") and D < self.ambient_dim:
            raise LayoutMismatch(f"{self.target_class} needs D >= n, got D={D}, n={self.ambient_dim}")


def generate(spec: GeneratorSpec) -> GFrameFamily:
    n, dims, w, seed = spec.ambient_dim, spec.dims, spec.weights, spec.seed
    cls = spec.target_class
    if cls == "orthonormal_basis":
        return random_onb(seed, n, dims, w)
    if cls == "parseval":
        return random_frame_with_bounds(seed, n, dims, w, 1.0, 1.0)
    if cls == "tight":
        if spec.A is None:
            raise InvalidBounds("tight frames need a bound A")
        return random_frame_with_bounds(seed, n, dims, w, spec.A, spec.A)
    if cls in ("frame", "riesz"):
        if spec.A is None or spec.B is None:
            raise InvalidBounds(f"{cls} needs bounds A and B")
        return random_frame_with_bounds(seed, n, dims, w, spec.A, spec.B)
    return incomplete_family(seed, n, dims, w)
