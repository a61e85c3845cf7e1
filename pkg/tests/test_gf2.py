import numpy as np
import pytest
from hypothesis import given, strategies as st

from dihedral_blocks import gf2
from dihedral_blocks.gf2 import GF2, GF4, GF16, FFMatrix

FIELDS = [GF2, GF4, GF16]


def matrices(F, max_side=7):
    return st.integers(1, max_side).flatmap(
        lambda m: st.integers(1, max_side).flatmap(
            lambda n: st.lists(st.integers(0, F.size - 1), min_size=m * n, max_size=m * n).map(
                lambda xs: np.array(xs, dtype=np.uint8).reshape(m, n))))


def any_field_matrix():
    return st.sampled_from(FIELDS).flatmap(lambda F: matrices(F).map(lambda A: (F, A)))


# ---- oracles

def test_field_tables_known_values():
    # GF(4) = GF(2)[x]/(x^2+x+1): x * x = x + 1, x * (x+1) = 1
    assert GF4.mul(2, 2) == 3
    assert GF4.mul(2, 3) == 1
    assert GF4.inv(2) == 3
    # GF(16) with x^4 + x + 1: x^4 = x + 1
    assert GF16.power(2, 4) == 3
    assert GF16.power(2, 15) == 1
    with pytest.raises(ZeroDivisionError):
        GF4.inv(0)
    with pytest.raises(ValueError):
        gf2.get_field(3)


def test_rank_of_known_matrices():
    A = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert gf2.rank(GF2, A) == 2  # rows sum to zero mod 2
    B = np.array([[1, 2], [2, 3]], dtype=np.uint8)  # det = 3 + 2*2 = 3 + 3 = 0 over GF(4)
    assert gf2.rank(GF4, B) == 1
    assert gf2.rank(GF2, gf2.identity(9)) == 9


def test_inverse_and_solve_small():
    A = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    assert np.array_equal(gf2.inverse(GF2, A), A)
    x = gf2.solve(GF2, A, np.array([1, 0], dtype=np.uint8))
    assert x is not None
    assert np.array_equal(gf2.matmul(GF2, A, x.reshape(-1, 1)).ravel(), [1, 0])
    assert gf2.solve(GF2, np.zeros((2, 2), dtype=np.uint8), np.array([1, 0], dtype=np.uint8)) is None


def test_embedding_is_a_ring_map():
    for small, big in [(GF2, GF4), (GF4, GF16), (GF2, GF16)]:
        tab = gf2.embed(np.arange(small.size, dtype=np.uint8), small, big)
        for a in range(small.size):
            for b in range(small.size):
                assert big.mul(int(tab[a]), int(tab[b])) == tab[small.mul(a, b)]
                assert int(tab[a]) ^ int(tab[b]) == tab[a ^ b]
    with pytest.raises(gf2.FieldMismatch):
        gf2._embedding(2, 1)


def test_kron_shape_and_mixed_product():
    rs = np.random.default_rng(1)
    A, B = gf2.random_matrix(GF4, 2, 3, rs), gf2.random_matrix(GF4, 3, 2, rs)
    C, D = gf2.random_matrix(GF4, 3, 2, rs), gf2.random_matrix(GF4, 2, 3, rs)
    lhs = gf2.matmul(GF4, gf2.kron(GF4, A, B), gf2.kron(GF4, C, D))
    rhs = gf2.kron(GF4, gf2.matmul(GF4, A, C), gf2.matmul(GF4, B, D))
    assert np.array_equal(lhs, rhs)


def test_ffmatrix_text_round_trip_and_mismatch():
    M = FFMatrix([[1, 0, 1], [0, 1, 1]])
    text = M.to_text()
    assert text.splitlines()[0] == "2 3 1"
    assert FFMatrix.from_text(text) == M
    N = FFMatrix([[3, 2], [0, 15]], GF16)
    assert FFMatrix.from_text(N.to_text()) == N
    with pytest.raises(gf2.FieldMismatch):
        _ = M @ FFMatrix([[1]], GF4)
    with pytest.raises(ValueError):
        FFMatrix([[4]], GF4)


# ---- properties

@given(any_field_matrix())
def test_rank_nullity(FA):
    F, A = FA
    K = gf2.nullspace(F, A)
    assert gf2.rank(F, A) + K.shape[0] == A.shape[1]
    if K.shape[0]:
        assert not gf2.matmul(F, A, K.T).any()


@given(any_field_matrix())
def test_rref_idempotent_and_row_space(FA):
    F, A = FA
    R, piv, r = gf2.rref(F, A)
    R2, piv2, r2 = gf2.rref(F, R[:r])
    assert r == r2 and piv == piv2
    assert np.array_equal(R[:r], R2[:r2])
    for row in A:
        assert gf2.in_span(F, row.reshape(1, -1), R[:r])


@given(any_field_matrix())
def test_left_nullspace(FA):
    F, A = FA
    L = gf2.left_nullspace(F, A)
    assert L.shape[0] == A.shape[0] - gf2.rank(F, A)
    if L.shape[0]:
        assert not gf2.matmul(F, L, A).any()


@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_inverse_and_solve_random(F, n, seed):
    rs = np.random.default_rng(seed)
    A = gf2.random_matrix(F, n, n, rs)
    b = gf2.random_matrix(F, 1, n, rs).ravel()
    x = gf2.solve(F, A, b)
    if gf2.rank(F, A) == n:
        Ai = gf2.inverse(F, A)
        assert np.array_equal(gf2.matmul(F, A, Ai), gf2.identity(n))
        assert x is not None
    if x is not None:
        assert np.array_equal(gf2.matmul(F, A, x.reshape(-1, 1)).ravel(), b)


@given(st.sampled_from(FIELDS), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_spin_is_invariant_and_stable(F, n, seed):
    rs = np.random.default_rng(seed)
    acts = [gf2.random_matrix(F, n, n, rs) for _ in range(2)]
    v = gf2.random_matrix(F, 1, n, rs)
    U = gf2.spin(F, v, acts)
    for A in acts:
        img = gf2.matmul(F, U, A) if U.shape[0] else U
        for row in img:
            assert gf2.in_span(F, row.reshape(1, -1), U)
    assert np.array_equal(gf2.spin(F, U, acts), U)


@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_sum_and_intersection_dimensions(F, n, seed):
    rs = np.random.default_rng(seed)
    U = gf2.echelon(F, gf2.random_matrix(F, rs.integers(1, n + 1), n, rs))
    W = gf2.echelon(F, gf2.random_matrix(F, rs.integers(1, n + 1), n, rs))
    S = gf2.subspace_sum(F, U, W)
    I = gf2.subspace_intersection(F, U, W)
    assert S.shape[0] + I.shape[0] == U.shape[0] + W.shape[0]
    for row in I:
        assert gf2.in_span(F, row.reshape(1, -1), U) and gf2.in_span(F, row.reshape(1, -1), W)


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_embedding_commutes_with_matmul(n, seed):
    rs = np.random.default_rng(seed)
    A, B = gf2.random_matrix(GF4, n, n, rs), gf2.random_matrix(GF4, n, n, rs)
    lhs = gf2.embed(gf2.matmul(GF4, A, B), GF4, GF16)
    rhs = gf2.matmul(GF16, gf2.embed(A, GF4, GF16), gf2.embed(B, GF4, GF16))
    assert np.array_equal(lhs, rhs)


@given(any_field_matrix())
def test_ffmatrix_text_round_trip(FA):
    F, A = FA
    M = FFMatrix(A, F)
    assert FFMatrix.from_text(M.to_text()) == M
