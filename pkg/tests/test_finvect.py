import numpy as np
import pytest
from hypothesis import given, strategies as st

from enrichcat import finvect as fv
from enrichcat.finvect import FinVect
from enrichcat.linalg import FpMatrix, ModulusError, all_vectors
from enrichcat.laws import check_cosmos_laws

from conftest import matrices


def mor(p, rows, src_dim=None):
    m = FpMatrix(p, rows)
    return fv.morphism(fv.obj(m.cols, p), fv.obj(m.rows, p), m)


def test_tensor_dims_and_left_unit():
    V = FinVect(2)
    assert V.tensor(V.obj(2), V.obj(3)).dim == 6
    x = V.obj(3)
    l = V.left_unit(x)
    assert l.src == V.tensor(V.unit(), x) and l.matrix == FpMatrix.identity(2, 3)


def test_tensor_mor_functorial_f2():
    f, f2 = mor(2, [[1, 1], [0, 1]]), mor(2, [[1, 0], [1, 1]])
    g, g2 = mor(2, [[1, 0, 1]]), mor(2, [[1, 1], [0, 1], [1, 0]])
    both = fv.tensor_mor(f @ f2, g @ g2)
    assert both == fv.tensor_mor(f, g) @ fv.tensor_mor(f2, g2)
    # composite computed without kron: (f f2)(x) (g g2) on basis e_i (x) e_j
    ff, gg = (f @ f2).matrix.a, (g @ g2).matrix.a
    for i, j in np.ndindex(2, 2):
        col = both.matrix.a[:, i * 2 + j]
        assert np.array_equal(col, np.outer(ff[:, i], gg[:, j]).reshape(-1) % 2)


def test_internal_hom_dims():
    V = FinVect(3)
    assert V.internal_hom(V.unit(), V.obj(4)).dim == 4
    assert V.internal_hom(V.obj(4), V.unit()).dim == 4


@given(st.data())
def test_hom_mor_acts_on_matrix_units(data):
    p = data.draw(st.sampled_from([2, 3]))
    a, b, c, d = (data.draw(st.integers(0, 3)) for _ in range(4))
    f = fv.morphism(fv.obj(a, p), fv.obj(b, p), data.draw(matrices(p, rows=b, cols=a)))   # X' -> X
    g = fv.morphism(fv.obj(c, p), fv.obj(d, p), data.draw(matrices(p, rows=d, cols=c)))   # Y -> Y'
    h = fv.hom_mor(f, g)
    for y, x in np.ndindex(c, b):
        e = np.zeros((c, b), dtype=np.int64)
        e[y, x] = 1
        want = (g.matrix.a @ e @ f.matrix.a) % p
        assert np.array_equal(h.matrix.a[:, y * b + x], want.reshape(-1))


def test_evaluation_is_uncurried_identity():
    V = FinVect(3)
    y, z = V.obj(2), V.obj(3)
    ev = V.evaluation(y, z)
    # ev(h (x) v) = h v on every basis pair
    for hk in range(6):
        h = np.zeros(6, dtype=np.int64)
        h[hk] = 1
        for vk in range(2):
            v = np.zeros(2, dtype=np.int64)
            v[vk] = 1
            assert np.array_equal(ev.matrix.a @ np.kron(h, v) % 3, h.reshape(3, 2) @ v % 3)


def test_curry_of_left_unit_names_identity():
    V = FinVect(2)
    y = V.obj(3)
    assert V.curry(V.left_unit(y), V.unit(), y) == V.internal_ident(y)


def test_curry_round_trip_f3_222():
    rng = np.random.default_rng(7)
    V = FinVect(3)
    x = y = z = V.obj(2)
    for _ in range(10):
        f = fv.morphism(V.tensor(x, y), z, FpMatrix.random(3, 2, 4, rng))
        assert V.uncurry_to(V.curry(f, x, y), y, z) == f


def test_curry_shape_errors():
    V = FinVect(2)
    with pytest.raises(ValueError):
        V.curry(fv.identity(V.obj(3)), V.obj(2), V.obj(2))
    with pytest.raises(ModulusError):
        fv.tensor(fv.obj(1, 2), fv.obj(1, 3))


def test_equalizer_examples():
    V = FinVect(2)
    f = mor(2, [[1, 1], [0, 1]])
    e, inc = V.equalizer(f, f)
    assert e.dim == 2 and inc == fv.identity(V.obj(2))
    e, _ = V.equalizer(fv.identity(V.obj(2)), fv.zero(V.obj(2), V.obj(2)))
    assert e.dim == 0
    f = mor(2, [[1, 0], [0, 0]])
    e, inc = V.equalizer(f, fv.zero(V.obj(2), V.obj(2)))
    killed = {tuple(v) for v in all_vectors(2, 2) if not (f.matrix.a @ v % 2).any()}
    assert killed == {(0, 0), (0, 1)}
    assert e.dim == 1 and inc.matrix.tolist() == [[0], [1]]


@given(st.data())
def test_equalizer_universal(data):
    p = data.draw(st.sampled_from([2, 3]))
    m, n, k = (data.draw(st.integers(0, 3)) for _ in range(3))
    f = fv.morphism(fv.obj(m, p), fv.obj(n, p), data.draw(matrices(p, rows=n, cols=m)))
    g = fv.morphism(fv.obj(m, p), fv.obj(n, p), data.draw(matrices(p, rows=n, cols=m)))
    e, inc = fv.equalizer(f, g)
    assert f @ inc == g @ inc
    # any h with f h = g h factors, uniquely since inc is mono
    h = inc @ fv.morphism(fv.obj(k, p), e, data.draw(matrices(p, rows=e.dim, cols=k)))
    u = fv.factor_through_mono(inc, h)
    assert u is not None and inc @ u == h
    assert inc.matrix.rank() == e.dim


@given(st.data())
def test_coequalizer_universal(data):
    p = data.draw(st.sampled_from([2, 3]))
    m, n, k = (data.draw(st.integers(0, 3)) for _ in range(3))
    f = fv.morphism(fv.obj(m, p), fv.obj(n, p), data.draw(matrices(p, rows=n, cols=m)))
    g = fv.morphism(fv.obj(m, p), fv.obj(n, p), data.draw(matrices(p, rows=n, cols=m)))
    c, q = fv.coequalizer(f, g)
    assert q @ f == q @ g
    h = fv.morphism(c, fv.obj(k, p), data.draw(matrices(p, rows=k, cols=c.dim))) @ q
    u = fv.factor_through_epi(q, h)
    assert u is not None and u @ q == h
    assert q.matrix.rank() == c.dim


def test_biproduct_identities():
    V = FinVect(3)
    b = fv.biproduct([V.obj(1), V.obj(2)])
    i, pr = b.injections, b.projections
    assert pr[0] @ i[0] == fv.identity(V.obj(1)) and (pr[1] @ i[0]).matrix.is_zero()
    assert (i[0] @ pr[0]) + (i[1] @ pr[1]) == fv.identity(b.obj)


def test_dual_pair_examples():
    w = fv.dual_pair(fv.unit(2))
    assert w.eta.matrix.tolist() == [[1]] and w.epsilon.matrix.tolist() == [[1]]
    w = fv.dual_pair(fv.obj(2, 2))
    V = FinVect(2)
    first, second = fv.zigzag_residuals(V, w)
    assert first == fv.identity(w.x) and second == fv.identity(w.y)
    w = fv.dual_pair(fv.obj(0, 3))
    assert w.eta.src.dim == 1 and w.eta.dst.dim == 0 and fv.zigzag_holds(FinVect(3), w)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_dual_pairs_up_to_dim_4(p):
    V = FinVect(p)
    for n in range(5):
        assert fv.zigzag_holds(V, fv.dual_pair(V.obj(n)))


@pytest.mark.parametrize("p", [2, 3])
def test_structural_maps_invertible(p):
    V = FinVect(p)
    for a, b, c in np.ndindex(3, 3, 3):
        x, y, z = V.obj(a), V.obj(b), V.obj(c)
        assert V.is_iso(V.associator(x, y, z)) and V.is_iso(V.symmetry(x, y))
    assert V.is_iso(V.left_unit(V.obj(2))) and V.is_iso(V.right_unit(V.obj(2)))


def test_symmetry_is_not_identity():
    # a stored permutation, so coherence checks can catch reindexing bugs
    V = FinVect(2)
    s = V.symmetry(V.obj(2), V.obj(2))
    assert s.matrix != FpMatrix.identity(2, 4)
    assert s.matrix.a[1 * 2 + 0, 0 * 2 + 1] == 1


@pytest.mark.parametrize("p", [2, 5])
def test_cosmos_laws_dims_up_to_2(p):
    V = FinVect(p)
    rep = check_cosmos_laws(V, [V.obj(d) for d in range(3)])
    assert rep.ok, rep.failures
