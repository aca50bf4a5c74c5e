from itertools import product

import numpy as np
from hypothesis import given, strategies as st

from enrichcat import chain as ch
from enrichcat import finvect as fv
from enrichcat.chain import ChainCosmos
from enrichcat.enriched import (
    SelfEnriched,
    VFunctor,
    algebra_category,
    check_axioms,
    dual_numbers,
    free_vcategory,
    full_subcategory,
    identity_functor,
    inclusion_functor,
    opposite,
    same_structure,
    tensor_vcat,
    underlying,
    unit_vcategory,
)
from enrichcat.finvect import FinVect
from enrichcat.ordinary import from_quiver


def algebra_laws_hold(p, mult, unit):
    """Associativity and two-sided unit of the structure constants, by direct expansion."""
    n = len(unit)
    c = np.array(mult) % p  # c[i, j] = coords of e_i e_j

    def mul(u, v):
        return np.einsum("i,j,ijk->k", u, v, c) % p

    e = np.eye(n, dtype=np.int64)
    u = np.array(unit)
    for i, j, k in product(range(n), repeat=3):
        if not np.array_equal(mul(mul(e[i], e[j]), e[k]), mul(e[i], mul(e[j], e[k]))):
            return False
    return all(np.array_equal(mul(u, e[i]), e[i]) and np.array_equal(mul(e[i], u), e[i]) for i in range(n))


def test_dual_numbers_are_a_vcategory():
    for p in (2, 3):
        assert check_axioms(dual_numbers(p)).ok


def test_corrupted_composition_is_caught():
    A = algebra_category(2, [[[1, 0], [0, 1]], [[1, 0], [0, 0]]], [1, 0])
    rep = check_axioms(A)
    assert not rep.ok
    assert "associativity" in {f.diagram for f in rep.failures}


@given(st.sampled_from([2, 3]), st.integers(1, 2), st.data())
def test_algebra_axioms_match_structure_constants(p, n, data):
    vals = st.integers(0, p - 1)
    mult = data.draw(st.lists(st.lists(st.lists(vals, min_size=n, max_size=n), min_size=n, max_size=n),
                              min_size=n, max_size=n))
    unit = data.draw(st.sampled_from([[1] + [0] * (n - 1), data.draw(st.lists(vals, min_size=n, max_size=n))]))
    assert check_axioms(algebra_category(p, mult, unit)).ok == algebra_laws_hold(p, mult, unit)


def test_unit_category():
    for V in (FinVect(2), ChainCosmos(3)):
        assert check_axioms(unit_vcategory(V)).ok


def test_self_enrichment():
    V = FinVect(3)
    assert check_axioms(SelfEnriched(V), [V.obj(d) for d in (0, 1, 2)]).ok
    C = ChainCosmos(2)
    objs = [ch.sphere(fv.unit(2)), ch.disk(fv.unit(2))]
    assert check_axioms(SelfEnriched(C), objs).ok


def test_opposite_is_involutive_and_lawful():
    A = dual_numbers(3)
    assert check_axioms(opposite(A)).ok
    assert same_structure(opposite(opposite(A)), A)
    Q = free_vcategory(from_quiver(["a", "b"], {"f": ("a", "b")}), 2)
    assert same_structure(opposite(opposite(Q)), Q)
    assert opposite(Q).hom("b", "a").dim == 1


def test_free_vcategory_and_underlying_counts():
    L = from_quiver(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c"), "h": ("a", "c")})
    for p in (2, 3):
        LV = free_vcategory(L, p)
        assert check_axioms(LV).ok
        U = underlying(LV)
        for a, b in product(L.objects, repeat=2):
            assert len(U.hom(a, b)) == p ** len(L.hom(a, b))


def test_underlying_of_dual_numbers_multiplies():
    p = 3
    U = underlying(dual_numbers(p))
    assert len(U.hom("*", "*")) == 9
    for (a, b), (c, d) in product(product(range(p), repeat=2), repeat=2):
        g, f = ("*", "*", (a, b)), ("*", "*", (c, d))
        # (a + b x)(c + d x) = ac + (ad + bc) x
        assert U.compose(g, f) == ("*", "*", ((a * c) % p, (a * d + b * c) % p))
    assert U.identity("*") == ("*", "*", (1, 0))


def test_full_subcategory_and_inclusion():
    V = FinVect(2)
    M = SelfEnriched(V)
    objs = {"one": V.obj(1), "two": V.obj(2)}
    G = full_subcategory(M, objs)
    assert check_axioms(G).ok
    assert G.hom("one", "two").dim == 2
    assert check_axioms(inclusion_functor(G, M, objs)).ok


def test_tensor_of_vcategories():
    A = dual_numbers(2)
    T = tensor_vcat(A, A)
    assert check_axioms(T).ok
    assert T.hom(("*", "*"), ("*", "*")).dim == 4


def test_broken_functor_is_caught():
    A = dual_numbers(3)
    V = A.cosmos
    assert check_axioms(identity_functor(A)).ok
    # x |-> 2x on the hom fixes 1 but doubles x, and (2x)(2x) = 0 = 2(x x): still multiplicative
    scale = fv.morphism(V.obj(2), V.obj(2), [[1, 0], [0, 2]])
    F = VFunctor(A, A, lambda a: a, lambda a, b: scale)
    assert check_axioms(F).ok
    # 1 |-> 2 breaks the identity axiom
    bad = VFunctor(A, A, lambda a: a, lambda a, b: fv.morphism(V.obj(2), V.obj(2), [[2, 0], [0, 1]]))
    rep = check_axioms(bad)
    assert not rep.ok and "identity" in {f.diagram for f in rep.failures}
