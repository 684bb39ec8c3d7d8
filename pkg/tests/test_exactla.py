from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from yoneda.exactla import (
    FieldSpec,
    kernel_basis,
    kernel_matrix,
    left_inverse,
    rank,
    rref,
    solve,
    span_equal,
)
from yoneda.exactla import _pykernels, kernels

GF = FieldSpec.prime()
Q = FieldSpec.rational()
GF5 = FieldSpec.prime(5)


def small_matrices(max_side=6, lo=-3, hi=3):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rref_identity_and_zero():
    r, piv, red = rref(GF.eye(2), GF)
    assert (r, piv) == (2, [0, 1])
    assert np.array_equal(red, GF.eye(2))
    r, piv, _ = rref(GF.zeros((3, 4)), GF)
    assert (r, piv) == (0, [])


def test_rref_rank_one_over_q():
    r, piv, red = rref(Q.array([[1, 2], [2, 4]]), Q)
    assert (r, piv) == (1, [0])
    assert list(red[0]) == [1, 2] and list(red[1]) == [0, 0]


def test_kernel_examples():
    assert kernel_basis(GF.eye(3), GF) == []
    ks = kernel_basis(GF.zeros((2, 3)), GF)
    assert [list(v) for v in ks] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    (v,) = kernel_basis(GF5.array([[1, 1]]), GF5)
    assert list(v) == [4, 1]


def test_span_equal_examples():
    e1, e2 = GF.array([1, 0]), GF.array([0, 1])
    assert span_equal([e1], [GF.array([2, 0])], GF)
    assert not span_equal([e1], [e1, e2], GF)
    assert span_equal([GF.array([1, 1]), e2], [e1, e2], GF)
    with pytest.raises(ValueError):
        span_equal([e1], [GF.array([1, 0, 0])], GF)


def test_solve_and_inconsistent():
    a = Q.array([[1, 1], [0, 1]])
    x = solve(a, Q.array([3, 1]), Q)
    assert list(x) == [2, 1]
    assert solve(Q.array([[1, 1], [1, 1]]), Q.array([0, 1]), Q) is None


def test_left_inverse():
    m = GF.array([[1, 0], [2, 3], [0, 1]])
    rows, inv = left_inverse(m, GF)
    assert np.array_equal(GF.matmul(inv, m[rows]), GF.eye(2))


def test_field_parse_and_format():
    assert FieldSpec.parse("q") == Q
    assert FieldSpec.parse("fp:7") == FieldSpec.prime(7)
    with pytest.raises(ValueError):
        FieldSpec.parse("fp:8")
    assert Q.format(Fraction(-3, 4)) == "-3/4"
    assert GF.format(GF.scalar(-1)) == "32002"


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rref_idempotent(rows):
    for F in (GF, Q):
        m = F.array(rows)
        _, _, red = rref(m, F)
        _, _, red2 = rref(red, F)
        assert np.array_equal(red, red2)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_transpose_and_kernel(rows):
    for F in (GF, Q):
        m = F.array(rows)
        assert rank(m, F) == rank(m.T.copy(), F)
        K = kernel_matrix(m, F)
        assert K.shape[1] == m.shape[1] - rank(m, F)
        assert F.is_zero(F.matmul(m, K))


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_prime_and_rational_rank_agree(rows):
    # small integer entries: no unlucky reductions mod 32003
    assert rank(GF.array(rows), GF) == rank(Q.array(rows), Q)


@settings(max_examples=40, deadline=None)
@given(small_matrices(max_side=8, lo=0, hi=32002))
def test_backends_agree_on_rref(rows):
    a = np.array(rows, dtype=np.int64)
    b = a.copy()
    r1 = _pykernels.rref_modp(a, 32003)
    r2 = kernels.rref_modp(b, 32003)
    assert r1[0] == r2[0] and list(r1[1]) == list(r2[1])
    assert np.array_equal(a, b)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.integers(0, 50))
def test_backends_agree_on_bilinear(seed, nnz):
    rng = np.random.Generator(np.random.Philox(seed))
    u = rng.integers(0, 32003, size=7, dtype=np.int64)
    v = rng.integers(0, 32003, size=5, dtype=np.int64)
    iu = rng.integers(0, 7, size=nnz, dtype=np.int64)
    iv = rng.integers(0, 5, size=nnz, dtype=np.int64)
    io = rng.integers(0, 4, size=nnz, dtype=np.int64)
    a = _pykernels.bilinear_modp(u, v, iu, iv, io, 4, 32003)
    b = kernels.bilinear_modp(u, v, iu, iv, io, 4, 32003)
    assert np.array_equal(a, b)


def test_compiled_backend_present():
    # the extension is built by the editable install; the fallback is tested via subprocess elsewhere
    assert kernels.BACKEND in ("compiled", "python")
