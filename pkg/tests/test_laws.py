import numpy as np
import pytest

from enrichcat import chain as ch
from enrichcat import finvect as fv
from enrichcat.chain import ChainCosmos
from enrichcat.finvect import FinVect
from enrichcat.linalg import FpMatrix
from enrichcat.laws import (
    check_cosmos_laws,
    curry_uncurry,
    hexagon,
    involution,
    pentagon,
    sample_maps,
    uncurry_curry,
)


class Broken:
    """Delegates to a cosmos but scales one structural map by k."""

    def __init__(self, base, which, k):
        self.base, self.which, self.k = base, which, k

    def __getattr__(self, name):
        attr = getattr(self.base, name)
        if name != self.which:
            return attr

        def scaled(*args):
            m = attr(*args)
            return fv.CosmosMorphism(m.src, m.dst, m.matrix.scale(self.k))

        return scaled


def test_finvect_laws_small():
    c = FinVect(3)
    rep = check_cosmos_laws(c, [c.obj(d) for d in (0, 1, 2)], np.random.default_rng(0))
    assert rep.ok
    assert set(rep.counts) == {"triangle", "involution", "hexagon", "uncurry-curry", "curry-uncurry", "pentagon"}
    assert rep.counts["pentagon"] == 81


def test_scaled_associator_breaks_pentagon():
    # a -> 2a over F_3: the pentagon compares a*a = 4 = 1 with a*a*a = 8 = 2
    c = Broken(FinVect(3), "associator", 2)
    x = c.obj(1)
    assert not pentagon(c, x, x, x, x)


def test_negated_symmetry_breaks_hexagon_not_involution():
    c = Broken(FinVect(3), "symmetry", -1)
    x = c.obj(1)
    assert involution(c, x, x)
    assert not hexagon(c, x, x, x)
    rep = check_cosmos_laws(c, [x])
    assert not rep.ok and {law for law, _ in rep.failures} == {"hexagon"}


def test_scaled_curry_breaks_round_trips():
    c = Broken(FinVect(3), "curry", 2)
    x = c.obj(1)
    rng = np.random.default_rng(0)
    f = fv.morphism(c.tensor(x, x), x, [[1]])
    assert not uncurry_curry(c, f, x, x, x)
    g = fv.morphism(x, c.internal_hom(x, x), [[1]])
    assert not curry_uncurry(c, g, x, x, x)
    assert sample_maps(c.base, x, x, rng, 3)


@pytest.mark.parametrize("p", [2, 3])
def test_chain_sample_maps_are_chain_maps(p):
    c = ChainCosmos(p)
    a = ch.disk(fv.unit(p))
    b = ch.ChainComplex(p, -1, [1, 2], [FpMatrix(p, [[1], [0]])])
    for f in sample_maps(c, a, b, np.random.default_rng(3), 5):
        ch.ChainMap(a, b, {n: f.comp(n) for n in ch._union(a, b)})
