import cmath
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from winding_obstruction.errors import (
    BranchCut,
    InvalidInput,
    NotUnitary,
    OutsideLogDomain,
    UnsupportedExponent,
)
from winding_obstruction.linalg import (
    TraceKind,
    identity,
    log_near_identity,
    op_norm,
    random_near_identity,
    random_projection,
    random_skew_hermitian,
    random_unitary,
    schatten_norm,
    trace,
    unitary_log,
)

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 6)


def test_op_norm_examples():
    assert op_norm(identity(5)) == pytest.approx(1.0, abs=1e-15)
    assert op_norm(np.diag([2, 1])) == pytest.approx(2.0, abs=1e-15)
    u = random_unitary(16, 7)
    oracle = np.linalg.svd(u, compute_uv=False)
    assert op_norm(u) == pytest.approx(1.0, abs=1e-10)
    assert op_norm(u) == pytest.approx(oracle.max(), rel=1e-12)


def test_op_norm_rejects_nan():
    with pytest.raises(InvalidInput):
        op_norm(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(InvalidInput):
        op_norm(np.zeros((2, 3)))


def test_schatten_examples():
    assert schatten_norm(identity(4), 2) == pytest.approx(2.0, abs=1e-14)
    p = random_projection(8, 1, 3)
    assert schatten_norm(p, 2) == pytest.approx(1.0, abs=1e-12)
    m = random_unitary(5, 1) @ np.diag([3, 2, 1, 0.5, 0])
    assert schatten_norm(m, math.inf) == op_norm(m)
    # p = 2 is the Frobenius norm
    assert schatten_norm(m, 2) == pytest.approx(np.linalg.norm(m), rel=1e-12)


@pytest.mark.parametrize("p", [1, 0.5, -2])
def test_schatten_rejects_small_exponents(p):
    with pytest.raises(UnsupportedExponent):
        schatten_norm(identity(2), p)


def test_trace_examples():
    assert trace(identity(3), TraceKind.NORMALIZED) == pytest.approx(1)
    assert trace(identity(3), TraceKind.UNNORMALIZED) == pytest.approx(3)
    assert trace(np.diag([1j, -1j, 0]), TraceKind.UNNORMALIZED) == 0


def test_trace_kind_parse():
    assert TraceKind.parse("norm") is TraceKind.NORMALIZED
    assert TraceKind.parse("Unnormalized") is TraceKind.UNNORMALIZED
    with pytest.raises(InvalidInput):
        TraceKind.parse("half")


def test_log_near_identity_examples():
    assert np.array_equal(log_near_identity(identity(4)), np.zeros((4, 4)))
    u = cmath.exp(0.3j) * identity(3)
    np.testing.assert_allclose(log_near_identity(u), 0.3j * identity(3), atol=1e-12)


def test_log_inverts_exponential():
    a = random_skew_hermitian(6, 0.1, np.random.default_rng(11))
    u = scipy.linalg.expm(a)
    np.testing.assert_allclose(log_near_identity(u), a, atol=1e-10)


def test_log_outside_domain():
    with pytest.raises(OutsideLogDomain):
        log_near_identity(-identity(2))
    with pytest.raises(OutsideLogDomain):
        log_near_identity(identity(2) + np.diag([1.0, 0.0]))


def test_unitary_log_examples():
    w = cmath.exp(2j * math.pi / 3)
    np.testing.assert_allclose(
        unitary_log(np.diag([w, w.conjugate()])),
        np.diag([2j * math.pi / 3, -2j * math.pi / 3]),
        atol=1e-12,
    )
    np.testing.assert_allclose(unitary_log(identity(5)), np.zeros((5, 5)), atol=1e-14)
    with pytest.raises(BranchCut):
        unitary_log(np.diag([-1.0, 1.0]))
    with pytest.raises(NotUnitary):
        unitary_log(2 * identity(2))


def test_unitary_log_far_from_identity():
    # products of commutators can sit far from 1; the series cannot handle this
    u = np.diag(np.exp(1j * np.array([2.5, -2.9, 1.0])))
    w = random_unitary(3, 4)
    u = w @ u @ w.conj().T
    log = unitary_log(u)
    np.testing.assert_allclose(scipy.linalg.expm(log), u, atol=1e-12)
    np.testing.assert_allclose(sorted(np.linalg.eigvals(log).imag), [-2.9, 1.0, 2.5], atol=1e-12)


def test_random_unitary_examples():
    z = random_unitary(1, 99)
    assert z.shape == (1, 1) and abs(abs(z[0, 0]) - 1) < 1e-15
    u = random_unitary(16, 7)
    assert op_norm(u.conj().T @ u - identity(16)) < 1e-12
    assert np.array_equal(random_unitary(16, 7), u)
    assert not np.array_equal(random_unitary(16, 8), u)


def test_random_unitary_first_moment():
    # Haar: E|u_00|^2 = 1/d
    vals = [abs(random_unitary(4, s)[0, 0]) ** 2 for s in range(2000)]
    assert np.mean(vals) == pytest.approx(0.25, abs=0.015)


def test_random_projection_examples():
    assert np.allclose(random_projection(4, 0, 5), 0)
    np.testing.assert_allclose(random_projection(4, 4, 5), identity(4), atol=1e-12)
    p = random_projection(8, 3, 13)
    assert trace(p, TraceKind.UNNORMALIZED) == pytest.approx(3, abs=1e-12)
    assert op_norm(p @ p - p) < 1e-12
    assert op_norm(p - p.conj().T) < 1e-12
    with pytest.raises(InvalidInput):
        random_projection(4, 5, 0)


@given(seed=seeds, dim=dims, radius=st.floats(0.0, 0.95))
def test_series_log_roundtrip(seed, dim, radius):
    u = random_near_identity(dim, radius, np.random.default_rng(seed))
    assert op_norm(scipy.linalg.expm(log_near_identity(u)) - u) < 1e-10


@given(seed=seeds, dim=dims, radius=st.floats(0.0, 0.499))
def test_series_log_norm_bound(seed, dim, radius):
    u = random_near_identity(dim, radius, np.random.default_rng(seed))
    assert op_norm(log_near_identity(u)) <= 2 * op_norm(u - identity(dim)) + 1e-15


@given(seed=seeds, dim=st.integers(1, 8))
def test_unitary_log_roundtrip(seed, dim):
    u = random_unitary(dim, seed)
    log = unitary_log(u)
    assert op_norm(scipy.linalg.expm(log) - u) < 1e-8
    assert np.abs(np.linalg.eigvals(log).real).max() < 1e-8


@given(seed=seeds, dim=dims, p=st.one_of(st.floats(1.01, 10.0), st.just(math.inf)))
def test_schatten_dominated_by_op_norm(seed, dim, p):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    bound = op_norm(m) * (1 if math.isinf(p) else dim ** (1 / p))
    assert schatten_norm(m, p) <= bound * (1 + 1e-12)


@given(seed=seeds, dim=dims, p=st.floats(1.5, 6.0))
def test_norms_unitarily_invariant(seed, dim, p):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    w, v = random_unitary(dim, seed + 1), random_unitary(dim, seed + 2)
    assert abs(op_norm(w @ m @ v) - op_norm(m)) < 1e-10
    assert abs(schatten_norm(w @ m @ v, p) - schatten_norm(m, p)) < 1e-10


def test_inputs_not_mutated():
    u = random_near_identity(4, 0.3, np.random.default_rng(0))
    before = u.copy()
    log_near_identity(u)
    schatten_norm(u, 3)
    op_norm(u)
    assert np.array_equal(u, before)
