from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from enrichcat.enriched import check_axioms, dual_numbers, free_vcategory, unit_vcategory
from enrichcat.finvect import FinVect
from enrichcat.harness import tensor_hom_agreement
from enrichcat.limits import VTarget
from enrichcat.linalg import all_vectors
from enrichcat.ordinary import from_quiver
from enrichcat.presheaf import (
    basis_action,
    is_fully_faithful,
    lan_pointwise,
    nerve_realization,
    presheaf,
    presheaf_category,
    random_morphism,
    random_presheaf,
    yoneda,
    yoneda_iso,
)

from test_limits import regular


def categories(p):
    return {
        "unit": unit_vcategory(FinVect(p)),
        "dual": dual_numbers(p),
        "quiver": free_vcategory(from_quiver(["a", "b"], {"f": ("a", "b")}), p),
    }


def natural_count(P, Q):
    """Families of matrices P(c) -> Q(c) commuting with every basis action, by enumeration."""
    J = P.source
    objs = list(J.objects)
    p = J.cosmos.p
    spaces = [list(all_vectors(p, Q.obj(c).dim * P.obj(c).dim)) for c in objs]
    count = 0
    for choice in product(*spaces):
        m = {c: np.array(v, dtype=np.int64).reshape(Q.obj(c).dim, P.obj(c).dim) for c, v in zip(objs, choice)}
        ok = True
        for a, b in product(objs, repeat=2):
            for k in range(J.hom(a, b).dim):
                lhs = m[b] @ basis_action(P, a, b, k).matrix.a % p
                rhs = basis_action(Q, a, b, k).matrix.a @ m[a] % p
                if not np.array_equal(lhs, rhs):
                    ok = False
        count += ok
    return count


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("name", ["unit", "dual", "quiver"])
def test_yoneda_on_representables(p, name):
    C = categories(p)[name]
    y = yoneda(C)
    for c, d in product(C.objects, repeat=2):
        assert y.obj(c).obj(d) == C.hom(d, c)
        assert yoneda_iso(y.obj(c), d, y).ok
    assert is_fully_faithful(y).ok
    assert check_axioms(y).ok


@given(st.sampled_from(["unit", "dual", "quiver"]), st.sampled_from([2, 3]), st.integers(0, 2**16))
def test_yoneda_on_random_presheaves(name, p, seed):
    C = categories(p)[name]
    y = yoneda(C)
    P = random_presheaf(y, np.random.default_rng(seed))
    assert check_axioms(P).ok
    for c in C.objects:
        assert yoneda_iso(P, c, y).ok


def test_non_functorial_action_rejected():
    A = dual_numbers(3)
    PC = presheaf_category(A)
    bad = presheaf(PC, {"*": 1}, {("*", "*"): [[[1]], [[1]]]})  # x acts as 1 but x x = 0
    assert not check_axioms(bad).ok
    with pytest.raises(ValueError, match="not natural"):
        yoneda_iso(bad, "*", yoneda(A, PC))


@given(st.sampled_from(["dual", "quiver"]), st.sampled_from([2, 3]), st.integers(0, 2**16))
def test_presheaf_hom_matches_enumeration(name, p, seed):
    C = categories(p)[name]
    y = yoneda(C)
    rng = np.random.default_rng(seed)
    P = random_presheaf(y, rng, max_gens=1, max_rels=1)
    Q = random_presheaf(y, rng, max_gens=1, max_rels=1)
    assert p ** y.target.hom(P, Q).dim == natural_count(P, Q)


@given(st.sampled_from([2, 3]), st.integers(0, 2**16))
def test_kernels_and_cokernels_are_pointwise(p, seed):
    A = dual_numbers(p)
    y = yoneda(A)
    PC = y.target
    rng = np.random.default_rng(seed)
    P, Q = random_presheaf(y, rng), random_presheaf(y, rng)
    f = random_morphism(PC, P, Q, rng)
    K, inc = PC.kernel(f)
    Ck, proj = PC.cokernel(f)
    r = f.at("*").matrix.rank()
    assert K.obj("*").dim == P.obj("*").dim - r
    assert Ck.obj("*").dim == Q.obj("*").dim - r
    assert check_axioms(K).ok and check_axioms(Ck).ok
    assert PC.compose(f, inc) == PC.zero(K, Q)
    assert PC.compose(proj, f) == PC.zero(P, Ck)


@pytest.mark.parametrize("name", ["unit", "dual", "quiver"])
def test_density_lan_of_yoneda(name):
    p = 3
    C = categories(p)[name]
    y = yoneda(C)
    L = lan_pointwise(y, y)
    P = random_presheaf(y, np.random.default_rng(7), nonzero=True)
    LP = L.obj(P)
    for c in C.objects:
        assert LP.obj(c).dim == P.obj(c).dim


@pytest.mark.parametrize("name", ["dual", "quiver"])
def test_nerve_realization_of_yoneda_is_an_equivalence(name):
    p = 2
    C = categories(p)[name]
    y = yoneda(C)
    PC = y.target
    rng = np.random.default_rng(11)
    Ps = [y.obj(c) for c in C.objects] + [random_presheaf(y, rng, nonzero=True) for _ in range(2)]
    maps = [random_morphism(PC, Ps[i], Ps[(i + 1) % len(Ps)], rng) for i in range(len(Ps))]
    w = nerve_realization(y, PC, Ps, Ps, maps, maps, PC=PC, y=y)
    assert w.ok and w.is_equivalence


def test_nerve_realization_of_regular_module_is_not_an_equivalence():
    # S P = P (x)_A A is the underlying space, T a = [A, a]: an adjunction, but the unit P -> [A, P] grows dims
    A = dual_numbers(3)
    w = nerve_realization(regular(A, 3), VTarget(A.cosmos), strict=False)
    assert w.ok
    assert not any(w.unit_iso.values()) and not any(w.counit_iso.values())


@pytest.mark.parametrize("p", [2, 3])
def test_tensor_hom_agreement(p):
    assert tensor_hom_agreement(p, 2, [0, 1, 2], [0, 1, 2]).passed
