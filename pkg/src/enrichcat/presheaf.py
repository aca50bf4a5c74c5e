"""Functor and presheaf V-categories, Yoneda, pointwise left Kan extensions, nerve and realization.

A presheaf on C is stored extensionally as a V-functor C^op -> V: values are
objects of FinVect and each hom component C(d, c) -> [P(c), P(d)] is a matrix.
A morphism of presheaves is a :class:`NatMap` (one linear map per object);
it corresponds to a point of the functor-hom equalizer and the two views are
converted by :meth:`FunctorCategory.point_of_arrow` / ``arrow_of_point``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from . import finvect as fv
from .enriched import (
    SelfEnriched,
    VCategory,
    VFunctor,
    check_functor,
    compose_functors,
    opposite,
)
from .finvect import CosmosMorphism, CosmosObject, FinVect
from .limits import (
    ArrowTarget,
    Cocone,
    Cone,
    EndResult,
    FunctorHom,
    VTarget,
    _columns,
    coend_of,
    functor_hom,
    point_tensor,
)
from .linalg import FpMatrix
from .enriched import tensor_vcat


class AdjunctionError(RuntimeError):
    """An adjunction witness failed verification at a named probe."""


@dataclass
class NatMap:
    """A family of linear maps P(c) -> Q(c)."""

    src: VFunctor
    dst: VFunctor
    comps: dict

    def at(self, c) -> CosmosMorphism:
        return self.comps[c]


@dataclass
class FBiproduct:
    obj: VFunctor
    injections: tuple
    projections: tuple


def vfunctor(J: VCategory, values: dict, action, name: str = "P") -> VFunctor:
    """A V-valued V-functor on J from values and basis actions.

    ``action(a, b, k)`` is the linear map values[a] -> values[b] assigned to
    the k-th basis element of J(a, b).
    """
    V = J.cosmos
    vals = dict(values)

    def hom(a, b):
        h = J.hom(a, b)
        cols = [fv.element_of_hom(action(a, b, k)) for k in range(h.dim)]
        dst = fv.internal_hom(vals[a], vals[b])
        if not cols:
            return V.zero(h, dst)
        return fv.morphism(h, dst, FpMatrix.hstack(V.p, cols, dst.dim))

    return VFunctor(J, SelfEnriched(V), lambda a: vals[a], hom, name=name)


def basis_action(F: VFunctor, a, b, k: int) -> CosmosMorphism:
    """F applied to the k-th basis element of its source hom object J(a, b)."""
    h = F.hom(a, b)
    return fv.hom_element(F.obj(a), F.obj(b), h.matrix.col(k))


class FunctorCategory(VCategory, ArrowTarget):
    """[J, V] for a finite V-category J over FinVect, as a V-category and an arrow target."""

    def __init__(self, J: VCategory, name: str | None = None):
        self.J = J
        self.V = J.cosmos
        self.cosmos = J.cosmos
        self.cat = self
        self.name = name or f"[{J.name},V]"
        self._fh: dict = {}

    def __repr__(self) -> str:
        return f"FunctorCategory({self.name})"

    @property
    def objects(self):
        return None

    # V-category structure ----------------------------------------------
    def fhom(self, P: VFunctor, Q: VFunctor) -> FunctorHom:
        key = (id(P), id(Q))
        hit = self._fh.get(key)
        if hit is None:
            hit = (P, Q, functor_hom(P, Q))
            self._fh[key] = hit
        return hit[2]

    def hom(self, P, Q) -> CosmosObject:
        return self.fhom(P, Q).obj

    def comp(self, P, Q, R) -> CosmosMorphism:
        V = self.V
        fqr, fpq, fpr = self.fhom(Q, R), self.fhom(P, Q), self.fhom(P, R)
        parts = []
        for c in self.J.objects:
            m = fv.internal_comp(P.obj(c), Q.obj(c), R.obj(c))
            parts.append(m @ fv.tensor_mor(fqr.component(c), fpq.component(c)))
        src = fv.tensor(fqr.obj, fpq.obj)
        big = fpr.product.pair(parts) if parts else V.zero(src, fpr.product.obj)
        out = fv.factor_through_mono(fpr.inclusion, big)
        if out is None:
            raise ValueError("composite of natural families is not natural")
        return out

    def ident(self, P) -> CosmosMorphism:
        f = self.fhom(P, P)
        parts = [fv.internal_ident(P.obj(c)) for c in self.J.objects]
        big = f.product.pair(parts) if parts else self.V.zero(self.V.unit(), f.product.obj)
        return fv.factor_through_mono(f.inclusion, big)

    # arrows ------------------------------------------------------------
    def arrow_of_point(self, P, Q, pt: CosmosMorphism) -> NatMap:
        f = self.fhom(P, Q)
        v = f.inclusion @ pt
        return NatMap(P, Q, {
            c: fv.hom_element(P.obj(c), Q.obj(c), (f.product.projections[k] @ v).matrix)
            for k, c in enumerate(f.objects)
        })

    def point_of_arrow(self, a: NatMap) -> CosmosMorphism:
        f = self.fhom(a.src, a.dst)
        col = f.product.pair([
            fv.CosmosMorphism(self.V.unit(), fv.internal_hom(a.src.obj(c), a.dst.obj(c)), fv.element_of_hom(a.comps[c]))
            for c in f.objects
        ]) if f.objects else self.V.zero(self.V.unit(), f.product.obj)
        pt = fv.factor_through_mono(f.inclusion, col)
        if pt is None:
            raise ValueError("family of maps is not natural")
        return pt

    def is_natural(self, a: NatMap) -> bool:
        f = self.fhom(a.src, a.dst)
        col = f.product.pair([
            fv.CosmosMorphism(self.V.unit(), fv.internal_hom(a.src.obj(c), a.dst.obj(c)), fv.element_of_hom(a.comps[c]))
            for c in f.objects
        ])
        return fv.factor_through_mono(f.inclusion, col) is not None

    def src(self, a: NatMap):
        return a.src

    def dst(self, a: NatMap):
        return a.dst

    def compose(self, g: NatMap, f: NatMap) -> NatMap:
        if f.dst is not g.src:
            raise ValueError("cannot compose presheaf maps: codomain/domain mismatch")
        return NatMap(f.src, g.dst, {c: g.comps[c] @ f.comps[c] for c in self.J.objects})

    def add(self, f: NatMap, g: NatMap) -> NatMap:
        return NatMap(f.src, f.dst, {c: f.comps[c] + g.comps[c] for c in self.J.objects})

    def sub(self, f: NatMap, g: NatMap) -> NatMap:
        return NatMap(f.src, f.dst, {c: f.comps[c] - g.comps[c] for c in self.J.objects})

    def scale(self, f: NatMap, k: int) -> NatMap:
        return NatMap(f.src, f.dst, {c: f.comps[c].scale(k) for c in self.J.objects})

    def zero(self, P, Q) -> NatMap:
        return NatMap(P, Q, {c: fv.zero(P.obj(c), Q.obj(c)) for c in self.J.objects})

    def identity(self, P) -> NatMap:
        return NatMap(P, P, {c: fv.identity(P.obj(c)) for c in self.J.objects})

    def equal(self, f: NatMap, g: NatMap) -> bool:
        return all(f.comps[c] == g.comps[c] for c in self.J.objects)

    def is_iso(self, f: NatMap) -> bool:
        return all(self.V.is_iso(f.comps[c]) for c in self.J.objects)

    def inverse(self, f: NatMap) -> NatMap:
        return NatMap(f.dst, f.src, {c: self.V.inverse(f.comps[c]) for c in self.J.objects})

    def is_zero_object(self, P) -> bool:
        return all(P.obj(c).dim == 0 for c in self.J.objects)

    # finite limits and colimits, computed pointwise ----------------------
    def _induced(self, values: dict, make, name: str) -> VFunctor:
        return vfunctor(self.J, values, make, name=name)

    def zero_object(self) -> VFunctor:
        z = fv.zero_object(self.V.p)
        return self._induced({c: z for c in self.J.objects}, lambda a, b, k: fv.zero(z, z), "0")

    def biproduct(self, objs: Sequence[VFunctor]) -> FBiproduct:
        objs = list(objs)
        J = self.J
        bps = {c: fv.biproduct([P.obj(c) for P in objs], self.V.p) for c in J.objects}

        def act(a, b, k):
            return fv.CosmosMorphism(
                bps[a].obj, bps[b].obj,
                FpMatrix.block_diag(self.V.p, [basis_action(P, a, b, k).matrix for P in objs]),
            )

        S = self._induced({c: bps[c].obj for c in J.objects}, act, "⊕")
        injs = tuple(NatMap(P, S, {c: bps[c].injections[i] for c in J.objects}) for i, P in enumerate(objs))
        projs = tuple(NatMap(S, P, {c: bps[c].projections[i] for c in J.objects}) for i, P in enumerate(objs))
        return FBiproduct(S, injs, projs)

    def kernel(self, f: NatMap) -> tuple[VFunctor, NatMap]:
        J = self.J
        ks = {c: fv.kernel(f.comps[c]) for c in J.objects}

        def act(a, b, k):
            u = fv.factor_through_mono(ks[b][1], basis_action(f.src, a, b, k) @ ks[a][1])
            if u is None:
                raise ValueError("source action does not preserve the pointwise kernel")
            return u

        K = self._induced({c: ks[c][0] for c in J.objects}, act, "Ker")
        return K, NatMap(K, f.src, {c: ks[c][1] for c in J.objects})

    def cokernel(self, f: NatMap) -> tuple[VFunctor, NatMap]:
        J = self.J
        qs = {c: fv.cokernel(f.comps[c]) for c in J.objects}

        def act(a, b, k):
            u = fv.factor_through_epi(qs[a][1], qs[b][1] @ basis_action(f.dst, a, b, k))
            if u is None:
                raise ValueError("target action does not descend to the pointwise cokernel")
            return u

        Q = self._induced({c: qs[c][0] for c in J.objects}, act, "Coker")
        return Q, NatMap(f.dst, Q, {c: qs[c][1] for c in J.objects})

    def factor_through_mono(self, incl: NatMap, h: NatMap) -> NatMap | None:
        comps = {}
        for c in self.J.objects:
            u = fv.factor_through_mono(incl.comps[c], h.comps[c])
            if u is None:
                return None
            comps[c] = u
        return NatMap(h.src, incl.src, comps)

    def factor_through_epi(self, proj: NatMap, h: NatMap) -> NatMap | None:
        comps = {}
        for c in self.J.objects:
            u = fv.factor_through_epi(proj.comps[c], h.comps[c])
            if u is None:
                return None
            comps[c] = u
        return NatMap(proj.dst, h.dst, comps)

    def cotensor(self, x: CosmosObject, P: VFunctor) -> Cone:
        """(X ⋔ P)(c) = [X, P(c)] with action [1, P(f)]."""
        J = self.J
        VT = VTarget(self.V)
        cones = {c: VT.cotensor(x, P.obj(c)) for c in J.objects}
        C = self._induced(
            {c: cones[c].apex for c in J.objects},
            lambda a, b, k: fv.hom_mor(fv.identity(x), basis_action(P, a, b, k)),
            "⋔",
        )
        legs = [NatMap(C, P, {c: cones[c].legs[i] for c in J.objects}) for i in range(x.dim)]
        return Cone(C, legs, "pointwise internal hom")

    def tensor(self, x: CosmosObject, P: VFunctor) -> Cocone:
        """(X (x) P)(c) = X (x) P(c) with action 1 (x) P(f)."""
        J = self.J
        VT = VTarget(self.V)
        ccs = {c: VT.tensor(x, P.obj(c)) for c in J.objects}
        T = self._induced(
            {c: ccs[c].apex for c in J.objects},
            lambda a, b, k: fv.tensor_mor(fv.identity(x), basis_action(P, a, b, k)),
            "⊗",
        )
        legs = [NatMap(P, T, {c: ccs[c].legs[i] for c in J.objects}) for i in range(x.dim)]
        return Cocone(T, legs, "pointwise tensor")


def presheaf_category(C: VCategory) -> FunctorCategory:
    pc = FunctorCategory(opposite(C), name=f"[{C.name}^op,V]")
    pc.base = C
    return pc


def presheaf(PC: FunctorCategory, values: dict, actions: dict, name: str = "P") -> VFunctor:
    """A presheaf from dims and, for each basis arrow k of C(d, c), the matrix P(c) -> P(d).

    ``actions[(c, d)]`` lists one matrix per basis element of C^op(c, d) = C(d, c);
    missing entries default to zero maps.
    """
    V = PC.V
    vals = {c: (v if isinstance(v, CosmosObject) else V.obj(int(v))) for c, v in values.items()}

    def act(a, b, k):
        mats = actions.get((a, b))
        if mats is None:
            return fv.zero(vals[a], vals[b])
        return fv.morphism(vals[a], vals[b], mats[k])

    return vfunctor(PC.J, vals, act, name=name)


# Yoneda ---------------------------------------------------------------------

def yoneda(C: VCategory, PC: FunctorCategory | None = None) -> VFunctor:
    """y: C -> [C^op, V], c |-> C(-, c)."""
    PC = PC or presheaf_category(C)
    V = C.cosmos
    reps: dict = {}

    def rep(c):
        if c not in reps:
            def hom(d, e):
                # C^op(d, e) = C(e, d) -> [C(d, c), C(e, c)], f |-> (g |-> g f)
                m = V.compose(C.comp(e, d, c), V.symmetry(C.hom(e, d), C.hom(d, c)))
                return V.curry(m, C.hom(e, d), C.hom(d, c))

            reps[c] = VFunctor(PC.J, SelfEnriched(V), lambda d: C.hom(d, c), hom, name=f"y({c})")
        return reps[c]

    def hom(c, c2):
        f = PC.fhom(rep(c), rep(c2))
        parts = [V.curry(C.comp(d, c, c2), C.hom(c, c2), C.hom(d, c)) for d in f.objects]
        out = fv.factor_through_mono(f.inclusion, f.product.pair(parts))
        if out is None:
            raise ValueError("postcomposition is not natural; the category is not valid")
        return out

    y = VFunctor(C, PC, rep, hom, name="y")
    y.presheaves = PC
    return y


@dataclass
class YonedaIso:
    """[C^op, V](y(c), F) <-> F(c) with both composites recorded."""

    forward: CosmosMorphism
    backward: CosmosMorphism
    round_trip_hom: bool
    round_trip_value: bool

    @property
    def ok(self) -> bool:
        return self.round_trip_hom and self.round_trip_value


def yoneda_iso(P: VFunctor, c, y: VFunctor) -> YonedaIso:
    PC = y.target
    C = y.source
    V = C.cosmos
    yc = y.obj(c)
    f = PC.fhom(yc, P)
    # alpha |-> alpha_c(j_c)
    ev = fv.hom_mor(C.ident(c), fv.identity(P.obj(c)))
    forward = ev @ f.component(c)
    # x |-> (g |-> P(g) x) at every d
    parts = []
    for d in f.objects:
        act = P.hom(c, d)  # C(d, c) -> [P c, P d]
        e = fv.evaluation(P.obj(c), P.obj(d)) @ fv.tensor_mor(act, fv.identity(P.obj(c)))
        e = e @ fv.symmetry(P.obj(c), C.hom(d, c))
        parts.append(fv.curry(e, P.obj(c), C.hom(d, c)))
    big = f.product.pair(parts) if parts else V.zero(P.obj(c), f.product.obj)
    backward = fv.factor_through_mono(f.inclusion, big)
    if backward is None:
        raise ValueError(f"P is not a presheaf: the Yoneda family at {c!r} is not natural")
    return YonedaIso(
        forward, backward,
        backward @ forward == fv.identity(f.obj),
        forward @ backward == fv.identity(P.obj(c)),
    )


def yoneda_element(P: VFunctor, c, y: VFunctor, x: FpMatrix) -> NatMap:
    """The map y(c) -> P named by the element x of P(c)."""
    it = yoneda_iso(P, c, y)
    PC = y.target
    pt = it.backward @ fv.CosmosMorphism(PC.V.unit(), P.obj(c), x)
    return PC.arrow_of_point(y.obj(c), P, pt)


# random presheaves ------------------------------------------------------------

def random_presheaf(y: VFunctor, rng: np.random.Generator, max_gens: int = 2, max_rels: int = 2,
                    name: str = "P", nonzero: bool = False) -> VFunctor:
    """Cokernel of a random map between sums of representables (always a valid presheaf).

    With ``nonzero`` the draw is repeated (at most 50 times) until the result is nonzero.
    """
    for _ in range(50 if nonzero else 1):
        Q = _random_cokernel(y, rng, max_gens, max_rels, name)
        if not nonzero or any(Q.obj(c).dim for c in y.source.objects):
            return Q
    return y.obj(next(iter(y.source.objects)))


def _random_cokernel(y, rng, max_gens, max_rels, name):
    PC = y.target
    objs = list(y.source.objects)
    gens = [objs[int(i)] for i in rng.integers(0, len(objs), size=int(rng.integers(1, max_gens + 1)))]
    rels = [objs[int(i)] for i in rng.integers(0, len(objs), size=int(rng.integers(0, max_rels + 1)))]
    G = PC.biproduct([y.obj(c) for c in gens])
    R = PC.biproduct([y.obj(c) for c in rels])
    psi = random_morphism(PC, R.obj, G.obj, rng)
    Q, _ = PC.cokernel(psi)
    Q.name = name
    return Q


def random_morphism(M: ArrowTarget, P, Q, rng: np.random.Generator):
    h = M.hom_obj(P, Q)
    v = rng.integers(0, M.V.p, size=h.dim)
    return M.arrow_of_point(P, Q, M.V.point(h, v))


# pointwise left Kan extensions ------------------------------------------------------

class LanFunctor(VFunctor):
    """(Lan_K F)(d) = coend^c D(Kc, d) (x) F c, computed per object and cached."""

    def __init__(self, K: VFunctor, F: VFunctor, Dt: ArrowTarget, Mt: ArrowTarget, name: str = "Lan"):
        self.K, self.F, self.Dt, self.Mt = K, F, Dt, Mt
        self.C = K.source
        self._vals: dict = {}
        super().__init__(Dt.cat, Mt.cat, self._obj_of, self._hom_of, name=name)

    def value(self, d) -> tuple[EndResult, dict]:
        key = id(d) if not _hashable(d) else ("h", d)
        hit = self._vals.get(key)
        if hit is not None:
            return hit[1], hit[2]
        C, K, F, Dt, Mt = self.C, self.K, self.F, self.Dt, self.Mt
        V = C.cosmos
        cocones: dict = {}

        def cocone(x):
            if x not in cocones:
                cocones[x] = Mt.tensor(Dt.hom_obj(K.obj(x[0]), d), F.obj(x[1]))
            return cocones[x]

        def hom(x, y):
            (a, b), (a2, b2) = x, y
            cols = []
            for f in V.point_basis(C.hom(a2, a)):
                pre = Dt.pre_map(Dt.fmap(K, a2, a, f), d)   # D(Ka, d) -> D(Ka2, d)
                for g in V.point_basis(C.hom(b, b2)):
                    cols.append(Mt.point_of_arrow(Mt.tensor_mor(pre, Mt.fmap(F, b, b2, g), cocone(x), cocone(y))))
            return _columns(V, src.hom(x, y), Mt.hom_obj(cocone(x).apex, cocone(y).apex), cols)

        src = tensor_vcat(opposite(C), C)
        H = VFunctor(src, Mt.cat, lambda x: cocone(x).apex, hom, name="H")
        res = coend_of(H, C, Mt)
        dc = {c: cocone((c, c)) for c in C.objects}
        self._vals[key] = (d, res, dc)
        return res, dc

    def _obj_of(self, d):
        return self.value(d)[0].obj

    def induced(self, u):
        """Lan_K F (u) for an arrow u: d -> d' of D."""
        Dt, Mt, K, F = self.Dt, self.Mt, self.K, self.F
        d, d2 = Dt.src(u), Dt.dst(u)
        r1, c1 = self.value(d)
        r2, c2 = self.value(d2)
        maps = []
        for c in self.C.objects:
            tm = Mt.tensor_mor(Dt.post_map(K.obj(c), u), Mt.identity(F.obj(c)), c1[c], c2[c])
            maps.append(Mt.compose(r2.legs[c], tm))
        return Mt.descend(Cocone(r1.obj, [r1.legs[c] for c in self.C.objects]), maps, r2.obj)

    def _hom_of(self, d, d2):
        Dt, Mt = self.Dt, self.Mt
        V = Mt.V
        cols = [Mt.point_of_arrow(self.induced(u)) for u in Dt.basis_arrows(d, d2)]
        return _columns(V, Dt.hom_obj(d, d2), Mt.hom_obj(self.obj(d), self.obj(d2)), cols)

    def injection(self, d, c, x: CosmosMorphism):
        """F c -> (Lan_K F)(d) at the element x of D(Kc, d)."""
        res, cc = self.value(d)
        leg = self.Mt.lincomb(x.matrix.a[:, 0], cc[c].legs, self.F.obj(c), cc[c].apex)
        return self.Mt.compose(res.legs[c], leg)


def _hashable(a) -> bool:
    try:
        hash(a)
    except TypeError:
        return False
    return not isinstance(a, VFunctor)


def lan_pointwise(K: VFunctor, F: VFunctor, Dt: ArrowTarget | None = None, Mt: ArrowTarget | None = None) -> LanFunctor:
    from .limits import _target_for

    Dt = Dt or _target_for(K.target)
    Mt = Mt or _target_for(F.target)
    return LanFunctor(K, F, Dt, Mt, name=f"Lan_{K.name}{F.name}")


# nerve ------------------------------------------------------------------------

class NerveFunctor(VFunctor):
    """T(a) = A(F-, a): A -> [C^op, V]."""

    def __init__(self, F: VFunctor, At: ArrowTarget, PC: FunctorCategory, name: str = "N"):
        self.F, self.At, self.PC = F, At, PC
        self.C = F.source
        self._vals: dict = {}
        super().__init__(At.cat, PC, self._obj_of, self._hom_of, name=name)

    def _obj_of(self, a):
        C, F, At = self.C, self.F, self.At
        V = C.cosmos

        def act(c, d, k):
            # C^op(c, d) = C(d, c); basis arrow f: d -> c acts by precomposition
            f = V.point_basis(C.hom(d, c))[k]
            return At.pre_map(At.fmap(F, d, c, f), a)

        return vfunctor(self.PC.J, {c: At.hom_obj(F.obj(c), a) for c in C.objects}, act, name=f"{self.name}({a!r})"[:40])

    def induced(self, u) -> NatMap:
        a, b = self.At.src(u), self.At.dst(u)
        return NatMap(self.obj(a), self.obj(b), {c: self.At.post_map(self.F.obj(c), u) for c in self.C.objects})

    def _hom_of(self, a, b):
        cols = [self.PC.point_of_arrow(self.induced(u)) for u in self.At.basis_arrows(a, b)]
        return _columns(self.PC.V, self.At.hom_obj(a, b), self.PC.hom(self.obj(a), self.obj(b)), cols)


def nerve(F: VFunctor, At: ArrowTarget | None = None, PC: FunctorCategory | None = None) -> NerveFunctor:
    from .limits import _target_for

    At = At or _target_for(F.target)
    PC = PC or presheaf_category(F.source)
    return NerveFunctor(F, At, PC, name=f"N_{F.name}")


# the adjunction ------------------------------------------------------------------

@dataclass
class AdjunctionWitness:
    """S -| T with explicit hom isomorphisms A(SP, a) ~ [C^op,V](P, Ta) at probe pairs."""

    left: VFunctor
    right: VFunctor
    presheaves: FunctorCategory
    target: ArrowTarget
    hom_iso: dict = field(default_factory=dict)
    hom_iso_inverse: dict = field(default_factory=dict)
    naturality: list = field(default_factory=list)
    triangles: list = field(default_factory=list)
    unit_iso: dict = field(default_factory=dict)
    counit_iso: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            all(v is not None for v in self.hom_iso_inverse.values())
            and all(r["ok"] for r in self.naturality)
            and all(r["ok"] for r in self.triangles)
        )

    @property
    def is_equivalence(self) -> bool:
        return all(self.unit_iso.values()) and all(self.counit_iso.values())


def realization_hom_iso(S: LanFunctor, T: NerveFunctor, P: VFunctor, a) -> CosmosMorphism:
    """phi |-> (x in P(c) |-> phi . iota_c(y^(x) (x) -)), landing in [C^op, V](P, Ta)."""
    At, PC = S.Mt, T.PC
    V = PC.V
    C = S.C
    y = S.K
    f = PC.fhom(P, T.obj(a))
    isos = {c: yoneda_iso(P, c, y) for c in C.objects}
    cols = []
    for phi in At.basis_arrows(S.obj(P), a):
        parts = []
        for c in C.objects:
            pts = []
            for k in range(P.obj(c).dim):
                yx = isos[c].backward.matrix.col(k)
                inj = S.injection(P, c, fv.CosmosMorphism(V.unit(), isos[c].backward.dst, yx))
                pts.append(At.point_of_arrow(At.compose(phi, inj)))
            h = _columns(V, P.obj(c), At.hom_obj(S.F.obj(c), a), pts)
            parts.append(VTarget(V).point_of_arrow(h))
        cols.append(f.product.pair(parts) if parts else V.zero(V.unit(), f.product.obj))
    big = _columns(V, At.hom_obj(S.obj(P), a), f.product.obj, cols)
    out = fv.factor_through_mono(f.inclusion, big)
    if out is None:
        raise AdjunctionError(f"hom_iso at ({P.name}, {a!r}) does not land in natural families")
    return out


def nerve_realization(
    F: VFunctor,
    At: ArrowTarget | None = None,
    probe_presheaves: Sequence[VFunctor] = (),
    probe_objects: Sequence = (),
    probe_presheaf_maps: Sequence = (),
    probe_object_maps: Sequence = (),
    PC: FunctorCategory | None = None,
    y: VFunctor | None = None,
    strict: bool = True,
) -> AdjunctionWitness:
    """Build S = Lan_y F and T = N_F and verify the adjunction on the probe family.

    Probes default to the representables and the images F(c).  Every hom_iso
    is inverted, naturality squares are checked for every probe map in both
    variables, and unit/counit are extracted and checked against the triangles.
    """
    from .limits import _target_for

    C = F.source
    At = At or _target_for(F.target)
    PC = PC or presheaf_category(C)
    y = y or yoneda(C, PC)
    S = LanFunctor(y, F, PC, At, name="S")
    T = NerveFunctor(F, At, PC, name="T")
    Ps = list(probe_presheaves) or [y.obj(c) for c in C.objects]
    As = list(probe_objects) or [F.obj(c) for c in C.objects]
    w = AdjunctionWitness(S, T, PC, At)
    objs_P, objs_A = list(Ps), list(As)
    # the unit/counit need SP in A and Ta in presheaves as probes too
    for P in Ps:
        objs_A.append(S.obj(P))
    for a in As:
        objs_P.append(T.obj(a))

    isos: dict = {}

    def iso(P, a):
        k = (id(P), _akey(a))
        if k not in isos:
            phi = realization_hom_iso(S, T, P, a)
            try:
                inv = PC.V.inverse(phi)
            except ValueError:
                inv = None
            label = (P.name, repr(a)[:40], len(w.hom_iso))
            w.hom_iso[label] = phi
            w.hom_iso_inverse[label] = inv
            if inv is None and strict:
                raise AdjunctionError(f"hom_iso is not invertible at probe pair ({P.name}, {a!r})")
            isos[k] = (P, a, phi)
        return isos[k][2]

    for P in objs_P:
        for a in objs_A:
            iso(P, a)

    # naturality in both variables over probe maps
    for u in probe_presheaf_maps:
        for a in As:
            P2, P1 = u.src, u.dst  # u: P2 -> P1
            lhs = iso(P2, a) @ At.pre_map(S.induced(u), a)
            rhs = PC.pre_map(u, T.obj(a)) @ iso(P1, a)
            w.naturality.append({"variable": "presheaf", "probe": (P2.name, P1.name, repr(a)[:40]), "ok": lhs == rhs})
    for v in probe_object_maps:
        a1, a2 = At.src(v), At.dst(v)
        for P in Ps:
            lhs = iso(P, a2) @ At.post_map(S.obj(P), v)
            rhs = PC.post_map(P, T.induced(v)) @ iso(P, a1)
            w.naturality.append({"variable": "object", "probe": (P.name, repr(a1)[:40], repr(a2)[:40]), "ok": lhs == rhs})

    # unit and counit from the hom isomorphisms, then the triangle identities
    V = PC.V
    for P in Ps:
        SP = S.obj(P)
        phi = iso(P, SP)
        eta = PC.arrow_of_point(P, T.obj(SP), phi @ At.point_of_arrow(At.identity(SP)))
        w.unit_iso[P.name + f"#{len(w.unit_iso)}"] = PC.is_iso(eta)
        # epsilon_{SP} . S(eta_P) = 1
        TSP = T.obj(SP)
        phi2 = iso(TSP, SP)
        eps_pt = V.inverse(phi2) @ PC.point_of_arrow(PC.identity(TSP)) if V.is_iso(phi2) else None
        if eps_pt is None:
            w.triangles.append({"triangle": "S", "probe": P.name, "ok": False})
            continue
        eps = At.arrow_of_point(S.obj(TSP), SP, eps_pt)
        tri = At.compose(eps, S.induced(eta))
        w.triangles.append({"triangle": "S", "probe": P.name, "ok": At.equal(tri, At.identity(SP))})
    for a in As:
        Ta = T.obj(a)
        phi = iso(Ta, a)
        if not V.is_iso(phi):
            w.triangles.append({"triangle": "T", "probe": repr(a)[:40], "ok": False})
            continue
        eps = At.arrow_of_point(S.obj(Ta), a, V.inverse(phi) @ PC.point_of_arrow(PC.identity(Ta)))
        w.counit_iso[repr(a)[:40] + f"#{len(w.counit_iso)}"] = At.is_iso(eps)
        STa = S.obj(Ta)
        phi2 = iso(Ta, STa)
        eta = PC.arrow_of_point(Ta, T.obj(STa), phi2 @ At.point_of_arrow(At.identity(STa)))
        tri = PC.compose(T.induced(eps), eta)
        w.triangles.append({"triangle": "T", "probe": repr(a)[:40], "ok": PC.equal(tri, PC.identity(Ta))})
    if strict:
        bad = [r for r in w.naturality + w.triangles if not r["ok"]]
        if bad:
            raise AdjunctionError(f"adjunction verification failed at {bad[0]}")
    return w


def _akey(a):
    if isinstance(a, VFunctor):
        return ("id", id(a))
    return ("h", a)


# full faithfulness --------------------------------------------------------------------

@dataclass
class FullFaithfulnessReport:
    verdicts: dict
    inverses: dict

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


def is_fully_faithful(F: VFunctor, pairs: Sequence | None = None) -> FullFaithfulnessReport:
    """Per-pair verdict that F_ab: C(a,b) -> D(Fa,Fb) is invertible, with the inverse as witness."""
    V = F.source.cosmos
    if pairs is None:
        pairs = list(product(F.source.objects, repeat=2))
    verdicts, inverses = {}, {}
    for i, (a, b) in enumerate(pairs):
        label = (_label(a), _label(b), i)
        m = F.hom(a, b)
        try:
            inv = V.inverse(m)
        except ValueError:
            inv = None
        verdicts[label] = inv is not None
        inverses[label] = inv
    return FullFaithfulnessReport(verdicts, inverses)


def _label(a) -> str:
    if isinstance(a, VFunctor):
        return a.name
    return repr(a)


# right adjoints of cocontinuous functors ---------------------------------------------

@dataclass
class CocontinuityCheck:
    ok: bool
    comparisons: dict


def realization_comparison(S: VFunctor, y: VFunctor, At: ArrowTarget, P: VFunctor):
    """Canonical coend^c [C^op,V](yc, P) (x) S(yc) -> S(P); invertible when S preserves the colimit."""
    PC = y.target
    Sy = compose_functors(S, y)
    L = LanFunctor(y, Sy, PC, At, name="Lan_y(Sy)")
    res, cc = L.value(P)
    maps = []
    for c in y.source.objects:
        yc = y.obj(c)
        legs = [functor_arrow_generic(S, PC, At, u) for u in PC.basis_arrows(yc, P)]
        maps.append(At.descend(cc[c], legs, S.obj(P)))
    return At.descend(Cocone(res.obj, [res.legs[c] for c in y.source.objects]), maps, S.obj(P)), L


def functor_arrow_generic(S: VFunctor, A: ArrowTarget, B: ArrowTarget, u):
    a, b = A.src(u), A.dst(u)
    return B.arrow_of_point(S.obj(a), S.obj(b), A.V.compose(S.hom(a, b), A.point_of_arrow(u)))


def right_adjoint_from_cocontinuous(
    S: VFunctor, y: VFunctor, At: ArrowTarget, probes: Sequence[VFunctor], probe_objects: Sequence = ()
) -> tuple[AdjunctionWitness, CocontinuityCheck]:
    """Right adjoint of S as the nerve of S y, after checking S agrees with Lan_y(S y) on probes."""
    comps, ok = {}, True
    for i, P in enumerate(probes):
        m, _ = realization_comparison(S, y, At, P)
        iso = At.is_iso(m)
        comps[(P.name, i)] = iso
        ok = ok and iso
    check = CocontinuityCheck(ok, comps)
    if not ok:
        bad = [k for k, v in comps.items() if not v][0]
        raise AdjunctionError(f"functor does not preserve the canonical colimit presentation at probe {bad}")
    F = compose_functors(S, y)
    F.name = f"{S.name}y"
    w = nerve_realization(F, At, probe_presheaves=probes, probe_objects=probe_objects, PC=y.target, y=y)
    return w, check


def functor_check(F: VFunctor, objects: Sequence) -> bool:
    return check_functor(F, objects).ok
