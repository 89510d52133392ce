import numpy as np
import pytest
from hypothesis import given, strategies as st

from cgframes import certify, completeness_check, compose, frame_bounds
from cgframes.errors import InvalidBounds, LayoutMismatch
from cgframes.generators import (
    GeneratorSpec,
    complex_gaussian,
    example_2_3,
    generate,
    haar_unitary,
    incomplete_family,
    random_frame_with_bounds,
    random_onb,
    stream,
)

from conftest import random_complex, spectral


def test_example_2_3():
    fam = example_2_3()
    assert fam.weights == (1.0, 1.0) and fam.dims.dims == (1, 1)
    cert = certify(fam)
    assert cert.is_orthonormal_basis
    assert cert.lower_bound == cert.upper_bound == 1.0
    assert cert.defects["orthonormal_system"] == 0.0


def test_random_onb_examples():
    assert certify(random_onb(1, 2, [1, 1], [1, 1]), 1e-10).is_orthonormal_basis
    for seed in range(5):
        block = random_onb(seed, 2, [2], [1.0]).blocks[0]
        assert spectral(block.conj().T @ block - np.eye(2)) <= 1e-14
    with pytest.raises(LayoutMismatch):
        random_onb(0, 2, [1, 1, 1])


def test_haar_unitary_diagonal_convention():
    Q = haar_unitary(stream(0, "test"), 4)
    Z = complex_gaussian(stream(0, "test"), (4, 4))
    R = Q.conj().T @ Z
    assert spectral(Q.conj().T @ Q - np.eye(4)) <= 1e-14
    assert np.max(np.abs(np.tril(R, -1))) <= 1e-13
    d = np.diagonal(R)
    assert np.all(d.real > 0) and np.max(np.abs(d.imag)) <= 1e-13


def test_bounds_examples():
    assert certify(random_frame_with_bounds(3, 4, [1] * 4, None, 1.0, 1.0)).is_parseval
    c = certify(random_frame_with_bounds(3, 4, [1] * 4, None, 2.0, 2.0))
    assert c.is_tight and not c.is_parseval
    assert (c.lower_bound, c.upper_bound) == pytest.approx((2.0, 2.0), rel=1e-12)
    A, B = frame_bounds(random_frame_with_bounds(5, 3, [1] * 3, None, 1.0, 3.0))
    assert abs(A - 1) <= 1e-9 and abs(B - 3) <= 3e-9


@pytest.mark.parametrize("A,B", [(0.0, 1.0), (-1.0, 1.0), (2.0, 1.0), (float("nan"), 1.0)])
def test_invalid_bounds(A, B):
    with pytest.raises(InvalidBounds):
        random_frame_with_bounds(0, 2, [1, 1], None, A, B)


def test_frame_layout_errors():
    with pytest.raises(LayoutMismatch):
        random_frame_with_bounds(0, 3, [1, 1], None, 1.0, 2.0)
    with pytest.raises(LayoutMismatch):
        random_frame_with_bounds(0, 2, [1, 1], [1.0], 1.0, 2.0)


def test_incomplete_examples():
    fam = incomplete_family(2, 2, [1, 1])
    assert completeness_check(fam) == (False, 1)
    V = random_complex(np.random.default_rng(0), (2, 2))
    assert not completeness_check(compose(fam, V))[0]
    assert not certify(fam).is_frame
    with pytest.raises(LayoutMismatch):
        incomplete_family(0, 1, [1])


def test_generator_spec_validation():
    with pytest.raises(LayoutMismatch):
        GeneratorSpec(0, 2, (1, 1, 1), None, "riesz", 1.0, 2.0)
    with pytest.raises(LayoutMismatch):
        GeneratorSpec(0, 3, (1, 1), None, "frame", 1.0, 2.0)
    with pytest.raises(LayoutMismatch):
        GeneratorSpec(0, 2, (1, 1), None, "gabor")
    with pytest.raises(InvalidBounds):
        generate(GeneratorSpec(0, 2, (1, 1), None, "frame"))


CLASS_CHECKS = {
    "orthonormal_basis": lambda c: c.is_orthonormal_basis,
    "parseval": lambda c: c.is_parseval,
    "tight": lambda c: c.is_tight,
    "frame": lambda c: c.is_frame,
    "riesz": lambda c: c.is_riesz_basis,
    "incomplete": lambda c: not c.is_complete and not c.is_frame,
}


@st.composite
def generator_specs(draw):
    cls = draw(st.sampled_from(sorted(CLASS_CHECKS)))
    n = draw(st.integers(2, 8))
    square = cls in ("orthonormal_basis", "riesz")
    extra = 0 if square else draw(st.integers(0, 4))
    dims, left = [], n + extra
    while left:
        d = draw(st.integers(1, min(4, left)))
        dims.append(d)
        left -= d
    weights = tuple(draw(st.floats(0.1, 10.0)) for _ in dims)
    A = draw(st.floats(0.05, 5.0))
    B = A * draw(st.floats(1.0, 50.0))
    if cls == "tight":
        B = A
    return GeneratorSpec(draw(st.integers(0, 2**63)), n, tuple(dims), weights, cls, A, B)


@given(generator_specs())
def test_class_fidelity_and_determinism(spec):
    fam = generate(spec)
    again = generate(spec)
    assert all(a.tobytes() == b.tobytes() for a, b in zip(fam.blocks, again.blocks))
    cert = certify(fam, 1e-9)
    assert CLASS_CHECKS[spec.target_class](cert)
    if spec.target_class in ("frame", "riesz", "tight"):
        assert abs(cert.lower_bound - spec.A) <= 1e-9 * spec.B
        assert abs(cert.upper_bound - spec.B) <= 1e-9 * spec.B
