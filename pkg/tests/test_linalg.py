import numpy as np
import pytest
from hypothesis import given, strategies as st

from enrichcat.linalg import (
    FpMatrix,
    ModulusError,
    all_vectors,
    cokernel_projection,
    image_basis,
    is_isomorphism,
    kernel_basis,
    kron,
    rref,
    solve,
)
from enrichcat import linalg

from conftest import matrices


def brute_kernel(m):
    return {tuple(v) for v in all_vectors(m.p, m.cols) if not ((m.a @ v) % m.p).any()}


def brute_span(cols, p):
    n = cols.shape[1]
    return {tuple((cols @ c) % p) for c in all_vectors(p, n)} if n else {tuple([0] * cols.shape[0])}


def test_rref_identity():
    r, piv = rref(FpMatrix.identity(2, 2))
    assert r == FpMatrix.identity(2, 2) and piv == [0, 1]


def test_rref_all_ones_f2():
    r, piv = rref(FpMatrix(2, [[1, 1], [1, 1]]))
    assert r.tolist() == [[1, 1], [0, 0]] and piv == [0]


def test_rref_zero():
    r, piv = rref(FpMatrix.zeros(3, 3, 2))
    assert r.is_zero() and piv == []


def test_kernel_examples():
    assert kernel_basis(FpMatrix.identity(3, 4)).cols == 0
    k = kernel_basis(FpMatrix(2, [[1, 0], [0, 0]]))
    # all four vectors of F_2^2 checked by hand: only (0,0) and (0,1) are killed
    assert brute_kernel(FpMatrix(2, [[1, 0], [0, 0]])) == {(0, 0), (0, 1)}
    assert k.tolist() == [[0], [1]]
    assert kernel_basis(FpMatrix.zeros(5, 1, 2)).cols == 2


def test_cokernel_examples():
    assert cokernel_projection(FpMatrix.zeros(2, 3, 2)) == FpMatrix.identity(2, 3)
    assert cokernel_projection(FpMatrix.identity(2, 3)).rows == 0
    m = FpMatrix(2, [[1], [0]])
    q = cokernel_projection(m)
    assert q.rank() == 1 and (q @ FpMatrix.column(2, [1, 0])).is_zero()
    # the kernel of q is exactly the image of m, by enumeration of F_2^2
    assert brute_kernel(q) == brute_span(m.a, 2)


def test_kron_examples():
    assert kron(FpMatrix.identity(2, 2), FpMatrix.identity(2, 3)) == FpMatrix.identity(2, 6)
    assert kron(FpMatrix.zeros(3, 2, 2), FpMatrix(3, [[1, 2]])).is_zero()
    assert kron(FpMatrix(2, [[1, 1]]), FpMatrix(2, [[1], [1]])).tolist() == [[1, 1], [1, 1]]


def test_inverse_examples():
    assert is_isomorphism(FpMatrix.identity(3, 3)) == FpMatrix.identity(3, 3)
    m = FpMatrix(2, [[1, 1], [0, 1]])
    inv = is_isomorphism(m)
    assert inv.tolist() == [[1, 1], [0, 1]]
    assert m @ inv == FpMatrix.identity(2, 2) and inv @ m == FpMatrix.identity(2, 2)
    assert is_isomorphism(FpMatrix(2, [[1, 0, 0], [0, 1, 0]])) is None
    assert is_isomorphism(FpMatrix(2, [[1, 1], [1, 1]])) is None


def test_modulus_validated():
    with pytest.raises(ModulusError):
        FpMatrix(4, [[1]])
    with pytest.raises(ModulusError):
        FpMatrix(2, [[1]]) @ FpMatrix(3, [[1]])


@given(matrices())
def test_kernel_property(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.rank() == k.cols == m.cols - m.rank()


@given(matrices())
def test_cokernel_property(m):
    q = cokernel_projection(m)
    assert (q @ m).is_zero()
    assert q.rank() == q.rows == m.rows - m.rank()


@given(matrices(p=2, max_dim=3))
def test_kernel_cokernel_match_enumeration(m):
    assert brute_span(kernel_basis(m).a, 2) == brute_kernel(m)
    assert brute_kernel(cokernel_projection(m)) == brute_span(m.a, 2)
    assert brute_span(image_basis(m).a, 2) == brute_span(m.a, 2)


@given(matrices())
def test_rref_idempotent_and_rank_preserving(m):
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert r2 == r and piv2 == piv and r.rank() == m.rank() == len(piv)


@given(st.data())
def test_kron_functorial(data):
    p = data.draw(st.sampled_from([2, 3]))
    n = [data.draw(st.integers(0, 3)) for _ in range(6)]
    a, a2 = data.draw(matrices(p, rows=n[0], cols=n[1])), data.draw(matrices(p, rows=n[1], cols=n[2]))
    b, b2 = data.draw(matrices(p, rows=n[3], cols=n[4])), data.draw(matrices(p, rows=n[4], cols=n[5]))
    assert kron(a @ a2, b @ b2) == kron(a, b) @ kron(a2, b2)


@given(matrices(max_dim=3), matrices(max_dim=3))
def test_kron_index_formula(a, b):
    if a.p != b.p:
        return
    k = kron(a, b)
    for i, j, r, c in np.ndindex(a.rows, a.cols, b.rows, b.cols):
        assert k.a[i * b.rows + r, j * b.cols + c] == (a.a[i, j] * b.a[r, c]) % a.p


@given(matrices(max_dim=4), st.data())
def test_solve_finds_solution_iff_consistent(a, data):
    b = data.draw(matrices(a.p, rows=a.rows, cols=1))
    x = solve(a, b)
    consistent = any(((a.a @ v) % a.p == b.a[:, 0]).all() for v in all_vectors(a.p, a.cols)) if a.p ** a.cols <= 625 else None
    if x is not None:
        assert a @ x == b
    if consistent is not None:
        assert (x is not None) == consistent


@given(matrices(max_dim=5), st.data())
def test_float_and_integer_products_agree(a, data):
    b = data.draw(matrices(a.p, rows=a.cols, cols=data.draw(st.integers(0, 5))))
    assert np.array_equal(linalg._mulmod(a.a, b.a, a.p), (a.a @ b.a) % a.p)


def test_large_modulus_products_stay_exact():
    p = 2_147_483_647   # 2^31 - 1, the largest prime below 2^31
    a = FpMatrix(p, [[p - 1] * 4])
    b = FpMatrix(p, [[p - 1]] * 4)
    # four copies of (-1)(-1); the float route would round and plain int64 would overflow
    assert (a @ b).tolist() == [[4]]


def test_modulus_bound():
    with pytest.raises(ModulusError):
        FpMatrix(2_147_483_659, [[1]])
