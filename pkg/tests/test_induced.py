import numpy as np
import pytest
from hypothesis import given, strategies as st

from cgframes import CFrame, GFrameFamily, LocalBases, certify, certify_cframe, compose, equivalence_report, induce
from cgframes.core import frame_operator
from cgframes.errors import NotUnitaryBasis, ShapeMismatch
from cgframes.generators import (
    incomplete_family,
    random_frame_with_bounds,
    random_onb,
    random_orthonormal_system,
    stream,
)
from cgframes.induced import (
    cframe_frame_operator,
    fourier_basis,
    random_local_bases,
    weighted_norm_identity_gap,
)

from conftest import random_complex


def test_induce_example(example):
    u = induce(example, LocalBases.identity(example.dims))
    assert u.weights.tolist() == [1.0, 1.0]
    np.testing.assert_array_equal(u.vectors, np.eye(2))
    assert u.origins == ((0, 0), (1, 0))
    g, c = certify(example), certify_cframe(u)
    assert g.flags() == c.flags()
    assert (c.lower_bound, c.upper_bound) == (1.0, 1.0)
    assert c.defects["pointwise_normalization"] == 0.0


def test_induce_identity_block():
    fam = GFrameFamily.from_blocks([np.eye(2)], [1.0])
    u = induce(fam, LocalBases.identity([2]))
    np.testing.assert_array_equal(u.vectors, np.eye(2))
    u = induce(fam, LocalBases((fourier_basis(2),)))
    np.testing.assert_allclose(u.vectors, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(cframe_frame_operator(u), np.eye(2), atol=1e-15)
    assert certify_cframe(u).is_parseval


def test_induce_errors(example):
    with pytest.raises(ShapeMismatch):
        induce(example, LocalBases.identity([2]))
    with pytest.raises(NotUnitaryBasis):
        LocalBases((np.array([[2.0]]),))


def test_cframe_operator_examples(frame13):
    std = CFrame(np.ones(2), np.eye(2))
    np.testing.assert_array_equal(cframe_frame_operator(std), np.eye(2))
    np.testing.assert_array_equal(cframe_frame_operator(CFrame([4.0], [[1.0, 0.0]])), np.diag([4, 0]))
    u = induce(frame13, LocalBases.identity(frame13.dims))
    np.testing.assert_allclose(cframe_frame_operator(u), frame_operator(frame13), atol=1e-15)


def test_certify_cframe_examples():
    std = certify_cframe(CFrame(np.ones(2), np.eye(2)))
    assert std.is_parseval and std.is_orthonormal_basis
    one = certify_cframe(CFrame([1.0], [[1.0, 0.0]]))
    assert one.is_bessel and not one.is_frame and one.lower_bound == 0.0
    three = certify_cframe(CFrame(np.ones(3), [[1, 0], [0, 1], [1, 1]]))
    assert three.lower_bound == pytest.approx(1.0, abs=1e-14)
    assert three.upper_bound == pytest.approx(3.0, abs=1e-14)


def test_equivalence_report_examples(example, frame13):
    rep = equivalence_report(example, LocalBases.identity(example.dims))
    assert rep.holds and rep.g_certificate.is_orthonormal_basis
    rep = equivalence_report(frame13, LocalBases.identity(frame13.dims))
    assert rep.holds
    assert rep.g_certificate.upper_bound == pytest.approx(3.0)
    assert not rep.g_certificate.is_riesz_basis and not rep.c_certificate.is_riesz_basis
    rep = equivalence_report(compose(example, np.diag([1.0, 0.5])), LocalBases.identity(example.dims))
    assert rep.holds
    assert rep.c_certificate.lower_bound == pytest.approx(0.25)
    assert rep.c_certificate.upper_bound == pytest.approx(1.0)


def families(seed):
    rng = stream(seed, "induced-test")
    n = int(rng.integers(2, 5))
    dims = [int(d) for d in rng.integers(1, 3, size=int(rng.integers(1, n + 1)))]
    while sum(dims) < n:
        dims.append(1)
    w = [float(x) for x in rng.uniform(0.3, 3, len(dims))]
    sq = [1] * n
    sw = [float(x) for x in rng.uniform(0.3, 3, n)]
    return [
        random_frame_with_bounds(seed, n, dims, w, 0.5, 2.0),
        random_frame_with_bounds(seed, n, dims, w, 1.5, 1.5),
        random_frame_with_bounds(seed, n, dims, w, 1.0, 1.0),
        random_frame_with_bounds(seed, n, sq, sw, 0.5, 2.0),
        random_onb(seed, n, sq, sw),
        random_orthonormal_system(seed, n + 1, sq, sw),
        incomplete_family(seed, n, dims, w),
    ]


@given(st.integers(0, 10_000))
def test_flattening_preserves_everything(seed):
    rng = stream(seed, "bases-test")
    for fam in families(seed):
        E1 = random_local_bases(rng, fam.dims)
        E2 = random_local_bases(rng, fam.dims)
        u1, u2 = induce(fam, E1), induce(fam, E2)
        assert len(u1) == fam.dims.total_dim
        assert np.max(np.abs(cframe_frame_operator(u1) - frame_operator(fam))) <= 1e-12 * max(
            1.0, np.max(np.abs(frame_operator(fam))))
        h = random_complex(np.random.default_rng(seed), fam.ambient_dim)
        assert weighted_norm_identity_gap(fam, u1, h) <= 1e-10
        c1, c2 = certify_cframe(u1), certify_cframe(u2)
        assert c1.flags() == c2.flags()
        assert abs(c1.lower_bound - c2.lower_bound) <= 1e-10
        assert abs(c1.upper_bound - c2.upper_bound) <= 1e-10
        rep = equivalence_report(fam, E1)
        assert rep.holds, rep.agreements
