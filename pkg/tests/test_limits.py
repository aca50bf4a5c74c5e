import numpy as np
import pytest
from hypothesis import given, strategies as st

from enrichcat import finvect as fv
from enrichcat.enriched import dual_numbers, opposite, unit_vcategory
from enrichcat.finvect import FinVect
from enrichcat.limits import (
    VTarget,
    _tau_xi_linear,
    coend_of,
    colimit_comparison,
    conical_colimit,
    conical_limit,
    cotensor_comparison,
    dinaturality_residual,
    end_of,
    functor_hom,
    hom_bifunctor,
    limit_comparison,
    tau_xi_generic,
    tensor_comparison,
    weighted_colimit,
    weighted_limit,
)
from enrichcat.linalg import FpMatrix, all_vectors
from enrichcat.oracle import coend_agrees, end_agrees
from enrichcat.ordinary import from_quiver
from enrichcat.presheaf import vfunctor

from conftest import matrices

DUAL = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]


def regular(J, p):
    """The dual numbers acting on themselves by multiplication (commutative, so either side)."""
    V = FinVect(p)
    a = V.obj(2)

    def act(s, t, k):
        m = np.array([DUAL[k][j] for j in range(2)]).T  # column j = e_k e_j
        return fv.morphism(a, a, FpMatrix(p, m))

    return vfunctor(J, {"*": a}, act, name="A")


@pytest.mark.parametrize("p", [2, 3])
def test_end_of_hom_over_dual_numbers(p):
    A = dual_numbers(p)
    F = regular(A, p)
    H = hom_bifunctor(F, F)
    res = end_of(H, A)
    # maps commuting with multiplication by x: the centraliser of a 2x2 Jordan block
    assert res.obj.dim == 2
    assert functor_hom(F, F).obj.dim == 2
    assert end_agrees(res, H, A)
    assert dinaturality_residual(res, H, A)


@pytest.mark.parametrize("p", [2, 3])
def test_coend_of_hom_over_dual_numbers(p):
    A = dual_numbers(p)
    F = regular(A, p)
    H = hom_bifunctor(F, F)
    res = coend_of(H, A)
    # [A, A] modulo commutators with L_x, which span a space of dim 4 - 2
    assert res.obj.dim == 2
    assert coend_agrees(res, H, A)
    assert dinaturality_residual(res, H, A, co=True)


@pytest.mark.parametrize("x,y", [(0, 2), (1, 1), (2, 3)])
def test_end_over_unit_category_is_the_value(x, y):
    V = FinVect(3)
    C = unit_vcategory(V)
    F = vfunctor(C, {"*": V.obj(x)}, lambda a, b, k: fv.identity(V.obj(x)))
    G = vfunctor(C, {"*": V.obj(y)}, lambda a, b, k: fv.identity(V.obj(y)))
    res = end_of(hom_bifunctor(F, G), C)
    assert res.obj.dim == x * y
    assert V.is_iso(res.legs["*"])


def test_tau_xi_routes_agree():
    for p in (2, 3):
        A = dual_numbers(p)
        F = regular(A, p)
        t1, x1 = _tau_xi_linear(F, F, "*", "*")
        t2, x2 = tau_xi_generic(F, F, "*", "*")
        assert t1 == t2 and x1 == x2


@given(st.integers(0, 3), st.integers(0, 3), st.sampled_from([2, 3]))
def test_cotensor_and_tensor_in_v(x, m, p):
    V = FinVect(p)
    M = VTarget(V)
    cone = M.cotensor(V.obj(x), V.obj(m))
    assert cone.apex.dim == x * m and len(cone.legs) == x
    for n in range(3):
        assert V.is_iso(cotensor_comparison(V.obj(x), V.obj(m), V.obj(n), M))
        assert V.is_iso(tensor_comparison(V.obj(x), V.obj(m), V.obj(n), M))


def test_unit_cotensor_is_identity():
    V = FinVect(2)
    cone = VTarget(V).cotensor(V.unit(), V.obj(3))
    assert cone.apex.dim == 3
    assert cone.legs[0] == fv.identity(V.obj(3))


PAIR = from_quiver(["a", "b"], {"f": ("a", "b"), "g": ("a", "b")})


@given(st.data())
def test_conical_equalizer_and_coequalizer_count(data):
    p = data.draw(st.sampled_from([2, 3]))
    n, m = data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))
    f = data.draw(matrices(p, rows=m, cols=n))
    g = data.draw(matrices(p, rows=m, cols=n))
    V = FinVect(p)
    M = VTarget(V)
    objs = {"a": V.obj(n), "b": V.obj(m)}
    arrows = {"f": fv.morphism(objs["a"], objs["b"], f), "g": fv.morphism(objs["a"], objs["b"], g)}
    lim = conical_limit(PAIR, objs, arrows, M)
    col = conical_colimit(PAIR, objs, arrows, M)
    fa, ga = f.a, g.a
    eq = sum(np.array_equal(fa @ v % p, ga @ v % p) for v in all_vectors(p, n))
    coeq = sum(np.array_equal(w @ fa % p, w @ ga % p) for w in all_vectors(p, m))
    assert p ** lim.obj.dim == eq
    assert p ** col.obj.dim == coeq


@pytest.mark.parametrize("p", [2, 3])
def test_representable_weights(p):
    # {A(*, -), F} = F(*) and A(-, *) * F = F(*)
    A = dual_numbers(p)
    V = A.cosmos
    M = VTarget(V)
    F = regular(A, p)
    lim = weighted_limit(F, F, M)
    assert lim.obj.dim == 2
    Wop = regular(opposite(A), p)
    col = weighted_colimit(Wop, F, M)
    assert col.obj.dim == 2
    for n in (V.obj(0), V.obj(1), V.obj(2)):
        k, _ = limit_comparison(lim, F, F, n, M)
        assert V.is_iso(k)
        k, _ = colimit_comparison(col, Wop, F, n, M)
        assert V.is_iso(k)


def test_comparison_detects_a_wrong_cone():
    from dataclasses import replace

    p = 3
    A = dual_numbers(p)
    V = A.cosmos
    M = VTarget(V)
    F = regular(A, p)
    lim = weighted_limit(F, F, M)
    zeroed = replace(lim, legs={j: M.zero(lim.obj, leg.dst) for j, leg in lim.legs.items()})
    k, _ = limit_comparison(zeroed, F, F, V.obj(1), M)
    assert not V.is_iso(k)
