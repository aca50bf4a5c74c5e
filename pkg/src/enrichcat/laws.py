"""Coherence and closure laws of a cosmos, checked on explicit objects.

Works for any cosmos value exposing tensor, associator, unit and symmetry maps,
curry/uncurry_to, compose, identity and equal (FinVect and ChainCosmos do).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from . import chain as ch
from . import finvect as fv
from .linalg import FpMatrix


def pentagon(c, w, x, y, z) -> bool:
    a = c.associator
    t, i = c.tensor, c.identity
    lhs = c.compose(a(w, x, t(y, z)), a(t(w, x), y, z))
    rhs = c.compose(c.tensor_mor(i(w), a(x, y, z)), c.compose(a(w, t(x, y), z), c.tensor_mor(a(w, x, y), i(z))))
    return c.equal(lhs, rhs)


def triangle(c, x, y) -> bool:
    lhs = c.compose(c.tensor_mor(c.identity(x), c.left_unit(y)), c.associator(x, c.unit(), y))
    return c.equal(lhs, c.tensor_mor(c.right_unit(x), c.identity(y)))


def hexagon(c, x, y, z) -> bool:
    a, s, t, i = c.associator, c.symmetry, c.tensor, c.identity
    lhs = c.compose(a(y, z, x), c.compose(s(x, t(y, z)), a(x, y, z)))
    rhs = c.compose(c.tensor_mor(i(y), s(x, z)), c.compose(a(y, x, z), c.tensor_mor(s(x, y), i(z))))
    return c.equal(lhs, rhs)


def involution(c, x, y) -> bool:
    return c.equal(c.compose(c.symmetry(y, x), c.symmetry(x, y)), c.identity(c.tensor(x, y)))


def uncurry_curry(c, f, x, y, z) -> bool:
    """uncurry(curry f) = f for f: X (x) Y -> Z."""
    return c.equal(c.uncurry_to(c.curry(f, x, y), y, z), f)


def curry_uncurry(c, g, x, y, z) -> bool:
    """curry(uncurry g) = g for g: X -> [Y, Z]."""
    return c.equal(c.curry(c.uncurry_to(g, y, z), x, y), g)


def sample_maps(c, a, b, rng: np.random.Generator, n: int) -> list:
    """Up to n morphisms a -> b: random matrices in FinVect, random degree-0 cycles of the hom complex otherwise."""
    if isinstance(a, fv.CosmosObject):
        return [fv.morphism(a, b, FpMatrix.random(a.p, b.dim, a.dim, rng)) for _ in range(n)]
    from .harness import chain_map_from_hom0

    h = ch.total_hom(a, b, c.bounds)
    z, inc = ch.cycles0(h)
    out = []
    for _ in range(n):
        coords = rng.integers(0, c.p, size=z.dim)
        v = (inc.matrix.a @ coords) % c.p if z.dim else np.zeros(inc.dst.dim, dtype=np.int64)
        out.append(chain_map_from_hom0(v, a, b))
    return out


@dataclass
class LawReport:
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, law: str, ok: bool, where) -> None:
        self.counts[law] = self.counts.get(law, 0) + 1
        if not ok:
            self.failures.append((law, where))


def check_cosmos_laws(
    c,
    objects: Sequence,
    rng: np.random.Generator | None = None,
    maps_per_shape: int = 2,
    quadruples: Sequence | None = None,
    triples: Sequence | None = None,
) -> LawReport:
    """Pentagon on quadruples, hexagon and curry round trips on triples, triangle and involution on pairs.

    Quadruples and triples default to every tuple drawn from ``objects``.
    """
    rng = rng or np.random.default_rng(0)
    rep = LawReport()
    objs = list(objects)
    idx = range(len(objs))
    for i, j in product(idx, repeat=2):
        x, y = objs[i], objs[j]
        rep.record("triangle", triangle(c, x, y), (i, j))
        rep.record("involution", involution(c, x, y), (i, j))
    for i, j, k in triples if triples is not None else product(idx, repeat=3):
        x, y, z = objs[i], objs[j], objs[k]
        rep.record("hexagon", hexagon(c, x, y, z), (i, j, k))
        for f in sample_maps(c, c.tensor(x, y), z, rng, maps_per_shape):
            rep.record("uncurry-curry", uncurry_curry(c, f, x, y, z), (i, j, k))
        for g in sample_maps(c, x, c.internal_hom(y, z), rng, maps_per_shape):
            rep.record("curry-uncurry", curry_uncurry(c, g, x, y, z), (i, j, k))
    for i, j, k, m in quadruples if quadruples is not None else product(idx, repeat=4):
        rep.record("pentagon", pentagon(c, objs[i], objs[j], objs[k], objs[m]), (i, j, k, m))
    return rep
