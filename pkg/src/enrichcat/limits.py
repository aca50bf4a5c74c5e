"""Ends, coends, (co)tensors and weighted (co)limits over finite index V-categories.

Everything here runs over the linear base V = FinVect, so an end can be cut
out by one equation per *basis* element of each hom object: the dinaturality
conditions are linear in the morphism.  Targets ``M`` are either V itself
(:class:`VTarget`) or a functor category (``presheaf.FunctorCategory``); both
expose the same arrow-level interface used below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from . import finvect as fv
from .enriched import SelfEnriched, VCategory, VFunctor, free_vcategory, opposite, tensor_vcat
from .finvect import CosmosMorphism, CosmosObject, FinVect
from .linalg import FpMatrix
from .ordinary import FiniteCategory


@dataclass
class Cone:
    """An apex with legs into a family of objects."""

    apex: object
    legs: list
    note: str = ""


@dataclass
class Cocone:
    apex: object
    legs: list
    note: str = ""


@dataclass
class Weight:
    """W: J -> V for limits (W: J^op -> V for colimits)."""

    functor: VFunctor
    finite: bool = True


def point_tensor(V, f, g):
    """The point f (x) g of X (x) Y for points f of X and g of Y."""
    i = V.unit()
    return V.compose(V.tensor_mor(f, g), V.inverse(V.left_unit(i)))


def _columns(V: FinVect, src: CosmosObject, dst: CosmosObject, cols: Sequence[CosmosMorphism]) -> CosmosMorphism:
    """The morphism src -> dst whose k-th basis image is the point cols[k]."""
    if not cols:
        return V.zero(src, dst)
    return fv.morphism(src, dst, FpMatrix.hstack(V.p, [c.matrix for c in cols], dst.dim))


class ArrowTarget:
    """Arrow-level operations shared by V and functor categories.

    Subclasses supply the primitive operations; the generic (co)limit
    plumbing (lifts into cones, (co)tensor functoriality, hom maps) lives here.
    """

    V: FinVect
    cat: VCategory

    # primitives -------------------------------------------------------
    def hom_obj(self, x, y) -> CosmosObject:
        return self.cat.hom(x, y)

    def arrow_of_point(self, x, y, pt: CosmosMorphism):
        raise NotImplementedError

    def point_of_arrow(self, f) -> CosmosMorphism:
        raise NotImplementedError

    def src(self, f):
        raise NotImplementedError

    def dst(self, f):
        raise NotImplementedError

    # derived ----------------------------------------------------------
    def basis_arrows(self, x, y) -> list:
        return [self.arrow_of_point(x, y, pt) for pt in self.V.point_basis(self.hom_obj(x, y))]

    def sum(self, fs: Sequence, x, y):
        out = self.zero(x, y)
        for f in fs:
            out = self.add(out, f)
        return out

    def lincomb(self, coeffs, fs: Sequence, x, y):
        out = self.zero(x, y)
        for c, f in zip(coeffs, fs):
            c = int(c) % self.V.p
            if c:
                out = self.add(out, self.scale(f, c))
        return out

    def pair(self, b, maps: Sequence, src=None):
        """Universal map into a biproduct from maps into each summand."""
        src = self.src(maps[0]) if maps else src
        return self.sum([self.compose(inj, f) for inj, f in zip(b.injections, maps)], src, b.obj)

    def copair(self, b, maps: Sequence, dst=None):
        dst = self.dst(maps[0]) if maps else dst
        return self.sum([self.compose(f, pr) for pr, f in zip(b.projections, maps)], b.obj, dst)

    def lift(self, cone: Cone, maps: Sequence, src=None):
        """The unique u with leg_k u = maps[k], for a jointly monic cone."""
        if not cone.legs:
            return self.zero(src, cone.apex)
        b = self.biproduct([self.dst(l) for l in cone.legs])
        u = self.factor_through_mono(self.pair(b, cone.legs), self.pair(b, maps, src))
        if u is None:
            raise ValueError("maps do not factor through the cone")
        return u

    def descend(self, cocone: Cocone, maps: Sequence, dst=None):
        """The unique u with u leg_k = maps[k], for a jointly epic cocone."""
        if not cocone.legs:
            return self.zero(cocone.apex, dst)
        b = self.biproduct([self.src(l) for l in cocone.legs])
        u = self.factor_through_epi(self.copair(b, cocone.legs), self.copair(b, maps, dst))
        if u is None:
            raise ValueError("maps do not factor through the cocone")
        return u

    def cotensor_mor(self, a: CosmosMorphism, u, src_cone: Cone | None = None, dst_cone: Cone | None = None):
        """a ⋔ u: X ⋔ m -> X' ⋔ m' for a: X' -> X in V and u: m -> m'."""
        X, Xp = a.dst, a.src
        m, mp = self.src(u), self.dst(u)
        s = src_cone or self.cotensor(X, m)
        t = dst_cone or self.cotensor(Xp, mp)
        maps = []
        for k in range(Xp.dim):
            col = a.matrix.a[:, k]
            maps.append(self.lincomb(col, [self.compose(u, l) for l in s.legs], s.apex, mp))
        return self.lift(t, maps, s.apex)

    def tensor_mor(self, a: CosmosMorphism, u, src_cocone: Cocone | None = None, dst_cocone: Cocone | None = None):
        """a (x) u: X (x) m -> X' (x) m' for a: X -> X' in V and u: m -> m'."""
        X, Xp = a.src, a.dst
        m, mp = self.src(u), self.dst(u)
        s = src_cocone or self.tensor(X, m)
        t = dst_cocone or self.tensor(Xp, mp)
        maps = []
        for k in range(X.dim):
            col = a.matrix.a[:, k]
            maps.append(self.lincomb(col, [self.compose(l, u) for l in t.legs], m, t.apex))
        return self.descend(s, maps, t.apex)

    def post_map(self, n, u) -> CosmosMorphism:
        """M(n, u): M(n, m) -> M(n, m')."""
        m, mp = self.src(u), self.dst(u)
        cols = [self.point_of_arrow(self.compose(u, f)) for f in self.basis_arrows(n, m)]
        return _columns(self.V, self.hom_obj(n, m), self.hom_obj(n, mp), cols)

    def pre_map(self, u, n) -> CosmosMorphism:
        """M(u, n): M(m', n) -> M(m, n) for u: m -> m'."""
        m, mp = self.src(u), self.dst(u)
        cols = [self.point_of_arrow(self.compose(f, u)) for f in self.basis_arrows(mp, n)]
        return _columns(self.V, self.hom_obj(mp, n), self.hom_obj(m, n), cols)

    def fmap(self, F: VFunctor, a, b, pt: CosmosMorphism):
        """The arrow F(f) named by a point f of the source hom object."""
        return self.arrow_of_point(F.obj(a), F.obj(b), self.V.compose(F.hom(a, b), pt))

    def image_comparison(self, f):
        """The canonical Coker(Ker f) -> Ker(Coker f), with the pieces it is built from."""
        _, kinc = self.kernel(f)
        coim, cq = self.cokernel(kinc)
        _, cproj = self.cokernel(f)
        im, iinc = self.kernel(cproj)
        through_im = self.factor_through_mono(iinc, f)
        comp = self.factor_through_epi(cq, through_im)
        return comp, {"kernel": kinc, "coimage": cq, "cokernel": cproj, "image": iinc}


class VTarget(ArrowTarget):
    """V = FinVect as a category of arrows (CosmosMorphisms)."""

    def __init__(self, V: FinVect):
        self.V = V
        self.cat = SelfEnriched(V)

    def __repr__(self) -> str:
        return f"VTarget({self.V!r})"

    def arrow_of_point(self, x, y, pt):
        return fv.hom_element(x, y, pt.matrix)

    def point_of_arrow(self, f):
        return fv.CosmosMorphism(self.V.unit(), fv.internal_hom(f.src, f.dst), fv.element_of_hom(f))

    def src(self, f):
        return f.src

    def dst(self, f):
        return f.dst

    def compose(self, g, f):
        return g @ f

    def add(self, f, g):
        return f + g

    def sub(self, f, g):
        return f - g

    def scale(self, f, k):
        return f.scale(k)

    def zero(self, x, y):
        return fv.zero(x, y)

    def identity(self, x):
        return fv.identity(x)

    def equal(self, f, g) -> bool:
        return f == g

    def is_iso(self, f) -> bool:
        return self.V.is_iso(f)

    def inverse(self, f):
        return self.V.inverse(f)

    def is_zero_object(self, x) -> bool:
        return x.dim == 0

    def biproduct(self, objs):
        return fv.biproduct(list(objs), self.V.p)

    def kernel(self, f):
        return fv.kernel(f)

    def cokernel(self, f):
        return fv.cokernel(f)

    def factor_through_mono(self, incl, h):
        return fv.factor_through_mono(incl, h)

    def factor_through_epi(self, proj, h):
        return fv.factor_through_epi(proj, h)

    def cotensor(self, x: CosmosObject, m: CosmosObject) -> Cone:
        """[X, m] with legs 'evaluate at e_k'."""
        c = fv.internal_hom(x, m)
        legs = []
        for k in range(x.dim):
            sel = np.zeros((m.dim, c.dim), dtype=np.int64)
            for y in range(m.dim):
                sel[y, y * x.dim + k] = 1
            legs.append(fv.morphism(c, m, FpMatrix(self.V.p, sel)))
        return Cone(c, legs, "internal hom")

    def tensor(self, x: CosmosObject, m: CosmosObject) -> Cocone:
        """X (x) m with legs e_k (x) -."""
        t = fv.tensor(x, m)
        legs = []
        for k in range(x.dim):
            sel = np.zeros((t.dim, m.dim), dtype=np.int64)
            for y in range(m.dim):
                sel[k * m.dim + y, y] = 1
            legs.append(fv.morphism(m, t, FpMatrix(self.V.p, sel)))
        return Cocone(t, legs, "monoidal product")


# functor-hom equalizer ----------------------------------------------------------

@dataclass
class FunctorHom:
    """[C, D](F, G) as a subobject of the product of D(Fc, Gc)."""

    obj: CosmosObject
    inclusion: CosmosMorphism
    product: fv.Biproduct
    objects: list

    def component(self, c) -> CosmosMorphism:
        return self.product.projections[self.objects.index(c)] @ self.inclusion


def tau_xi(F: VFunctor, G: VFunctor, c, d) -> tuple[CosmosMorphism, CosmosMorphism]:
    """tau: D(Fd, Gd) -> [C(c,d), D(Fc,Gd)] and xi: D(Fc, Gc) -> [C(c,d), D(Fc,Gd)]."""
    if isinstance(F.target, SelfEnriched) and isinstance(F.target.cosmos, FinVect):
        return _tau_xi_linear(F, G, c, d)
    return tau_xi_generic(F, G, c, d)


def _tau_xi_linear(F: VFunctor, G: VFunctor, c, d) -> tuple[CosmosMorphism, CosmosMorphism]:
    # alpha |-> alpha F(f_k) is [F f_k, 1] and alpha |-> G(f_k) alpha is [1, G f_k], one block per basis f_k
    V = F.source.cosmos
    hcd = F.source.hom(c, d)
    Fc, Fd, Gc, Gd = F.obj(c), F.obj(d), G.obj(c), G.obj(d)
    Fh, Gh = F.hom(c, d), G.hom(c, d)
    tb, xb = [], []
    for k in range(hcd.dim):
        Ff = fv.hom_element(Fc, Fd, Fh.matrix.col(k))
        Gf = fv.hom_element(Gc, Gd, Gh.matrix.col(k))
        tb.append(fv.hom_mor(Ff, fv.identity(Gd)).matrix.a)
        xb.append(fv.hom_mor(fv.identity(Fc), Gf).matrix.a)
    tgt = fv.internal_hom(hcd, fv.internal_hom(Fc, Gd))

    def stack(blocks, src):
        if not blocks:
            return fv.zero(src, tgt)
        arr = np.stack(blocks, axis=1)          # (Y, k, A): row index y * dim C(c,d) + k
        return fv.morphism(src, tgt, FpMatrix(V.p, arr.reshape(tgt.dim, src.dim)))

    return stack(tb, fv.internal_hom(Fd, Gd)), stack(xb, fv.internal_hom(Fc, Gc))


def tau_xi_generic(F: VFunctor, G: VFunctor, c, d) -> tuple[CosmosMorphism, CosmosMorphism]:
    """tau and xi through the composition and symmetry of the target (any cosmos)."""
    C, D = F.source, F.target
    V = C.cosmos
    Fc, Fd, Gc, Gd = F.obj(c), F.obj(d), G.obj(c), G.obj(d)
    hcd = C.hom(c, d)
    # alpha_d (x) f |-> alpha_d . F f
    t = V.compose(D.comp(Fc, Fd, Gd), V.tensor_mor(V.identity(D.hom(Fd, Gd)), F.hom(c, d)))
    tau = V.curry(t, D.hom(Fd, Gd), hcd)
    # alpha_c (x) f |-> G f . alpha_c
    x = V.compose(
        D.comp(Fc, Gc, Gd),
        V.compose(V.tensor_mor(G.hom(c, d), V.identity(D.hom(Fc, Gc))), V.symmetry(D.hom(Fc, Gc), hcd)),
    )
    xi = V.curry(x, D.hom(Fc, Gc), hcd)
    return tau, xi


def functor_hom(F: VFunctor, G: VFunctor) -> FunctorHom:
    """Equalizer of prod tau and prod xi: prod_c D(Fc,Gc) => prod_{c,d} [C(c,d), D(Fc,Gd)]."""
    C, D = F.source, F.target
    V = C.cosmos
    objs = list(C.objects)
    prod = fv.biproduct([D.hom(F.obj(c), G.obj(c)) for c in objs], V.p)
    pairs = list(product(objs, repeat=2))
    taus, xis = {}, {}
    for c, d in pairs:
        taus[(c, d)], xis[(c, d)] = tau_xi(F, G, c, d)
    target = fv.biproduct([taus[pr].dst for pr in pairs], V.p)
    idx = {c: k for k, c in enumerate(objs)}
    top = target.pair([taus[(c, d)] @ prod.projections[idx[d]] for c, d in pairs]) if pairs else None
    bot = target.pair([xis[(c, d)] @ prod.projections[idx[c]] for c, d in pairs]) if pairs else None
    if top is None:
        e, inc = prod.obj, fv.identity(prod.obj)
    else:
        e, inc = fv.equalizer(top, bot)
    return FunctorHom(e, inc, prod, objs)


def hom_bifunctor(F: VFunctor, G: VFunctor) -> VFunctor:
    """D(F-, G-): C^op (x) C -> V, (c, c') |-> D(Fc, Gc')."""
    C, D = F.source, F.target
    V = C.cosmos
    T = VTarget(V)
    Dt = _target_for(D)
    cop = opposite(C)
    src = tensor_vcat(cop, C)

    def obj(x):
        return D.hom(F.obj(x[0]), G.obj(x[1]))

    def hom(x, y):
        (a, b), (a2, b2) = x, y
        hsrc, hdst = obj(x), obj(y)
        cols = []
        for f in V.point_basis(C.hom(a2, a)):
            Ff = Dt.fmap(F, a2, a, f)
            for g in V.point_basis(C.hom(b, b2)):
                Gg = Dt.fmap(G, b, b2, g)
                mp = _columns(V, hsrc, hdst, [
                    Dt.point_of_arrow(Dt.compose(Dt.compose(Gg, phi), Ff))
                    for phi in Dt.basis_arrows(F.obj(a), G.obj(b))
                ])
                cols.append(T.point_of_arrow(mp))
        return _columns(V, src.hom(x, y), fv.internal_hom(hsrc, hdst), cols)

    return VFunctor(src, SelfEnriched(V), obj, hom, name=f"{D.name}({F.name}-,{G.name}-)")


def _target_for(cat: VCategory) -> ArrowTarget:
    if isinstance(cat, SelfEnriched):
        return VTarget(cat.cosmos)
    if isinstance(cat, ArrowTarget):
        return cat
    raise TypeError(f"{cat!r} has no arrow-level interface")


# ends and coends ------------------------------------------------------------------

@dataclass
class EndResult:
    """The end (or coend) object with its universal (co)cone and the defining pair."""

    obj: object
    legs: dict
    incl: object  # inclusion into the product (or projection from the sum)
    pair: tuple
    target: ArrowTarget = field(repr=False, default=None)
    product: object = field(repr=False, default=None)  # the biproduct the (co)end sits in


def _diag_data(H: VFunctor, C: VCategory):
    V = C.cosmos
    rows = []
    for c, d in product(C.objects, repeat=2):
        for f in V.point_basis(C.hom(c, d)):
            rows.append((c, d, f))
    return rows


def end_of(H: VFunctor, C: VCategory, target: ArrowTarget | None = None) -> EndResult:
    """End of H: C^op (x) C -> M as the equalizer of prod_c H(c,c) => prod_{f: c->d} H(c,d)."""
    M = target or _target_for(H.target)
    V = C.cosmos
    objs = list(C.objects)
    P = M.biproduct([H.obj((c, c)) for c in objs])
    rels = _diag_data(H, C)
    Q = M.biproduct([H.obj((c, d)) for c, d, _ in rels])
    idx = {c: k for k, c in enumerate(objs)}
    left, right = [], []
    for c, d, f in rels:
        lf = M.fmap(H, (c, c), (c, d), point_tensor(V, C.ident(c), f))   # H(1, f)
        rf = M.fmap(H, (d, d), (c, d), point_tensor(V, f, C.ident(d)))   # H(f, 1)
        left.append(M.compose(lf, P.projections[idx[c]]))
        right.append(M.compose(rf, P.projections[idx[d]]))
    if rels:
        u, v = M.pair(Q, left), M.pair(Q, right)
        e, inc = M.kernel(M.sub(u, v))
    else:
        e, inc = P.obj, M.identity(P.obj)
    legs = {c: M.compose(P.projections[idx[c]], inc) for c in objs}
    return EndResult(e, legs, inc, (left, right), M, P)


def coend_of(H: VFunctor, C: VCategory, target: ArrowTarget | None = None) -> EndResult:
    """Coend of H as the coequalizer of sum_{f: c->d} H(d,c) => sum_c H(c,c)."""
    M = target or _target_for(H.target)
    V = C.cosmos
    objs = list(C.objects)
    S = M.biproduct([H.obj((c, c)) for c in objs])
    rels = _diag_data(H, C)
    R = M.biproduct([H.obj((d, c)) for c, d, _ in rels])
    idx = {c: k for k, c in enumerate(objs)}
    left, right = [], []
    for c, d, f in rels:
        lf = M.fmap(H, (d, c), (c, c), point_tensor(V, f, C.ident(c)))   # H(f, 1): H(d,c) -> H(c,c)
        rf = M.fmap(H, (d, c), (d, d), point_tensor(V, C.ident(d), f))   # H(1, f): H(d,c) -> H(d,d)
        left.append(M.compose(S.injections[idx[c]], lf))
        right.append(M.compose(S.injections[idx[d]], rf))
    if rels:
        u, v = M.copair(R, left), M.copair(R, right)
        q_obj, q = M.cokernel(M.sub(u, v))
    else:
        q_obj, q = S.obj, M.identity(S.obj)
    legs = {c: M.compose(q, S.injections[idx[c]]) for c in objs}
    return EndResult(q_obj, legs, q, (left, right), M, S)


def dinaturality_residual(res: EndResult, H: VFunctor, C: VCategory, co: bool = False) -> bool:
    """True when every wedge (or cowedge) equation holds for the computed legs."""
    M = res.target
    V = C.cosmos
    for c, d, f in _diag_data(H, C):
        if not co:
            lhs = M.compose(M.fmap(H, (c, c), (c, d), point_tensor(V, C.ident(c), f)), res.legs[c])
            rhs = M.compose(M.fmap(H, (d, d), (c, d), point_tensor(V, f, C.ident(d))), res.legs[d])
        else:
            lhs = M.compose(res.legs[c], M.fmap(H, (d, c), (c, c), point_tensor(V, f, C.ident(c))))
            rhs = M.compose(res.legs[d], M.fmap(H, (d, c), (d, d), point_tensor(V, C.ident(d), f)))
        if not M.equal(lhs, rhs):
            return False
    return True


# weighted limits and colimits -------------------------------------------------------

def cotensor_bifunctor(W: VFunctor, F: VFunctor, M: ArrowTarget) -> tuple[VFunctor, Callable]:
    """(j, j') |-> W j ⋔ F j' on J^op (x) J."""
    J = W.source
    V = J.cosmos
    src = tensor_vcat(opposite(J), J)
    cones: dict = {}

    def obj(x):
        return cone(x).apex

    def cone(x):
        if x not in cones:
            cones[x] = M.cotensor(W.obj(x[0]), F.obj(x[1]))
        return cones[x]

    def hom(x, y):
        (a, b), (a2, b2) = x, y
        cols = []
        for f in V.point_basis(J.hom(a2, a)):
            Wf = fv.hom_element(W.obj(a2), W.obj(a), V.compose(W.hom(a2, a), f).matrix)
            for g in V.point_basis(J.hom(b, b2)):
                Fg = M.fmap(F, b, b2, g)
                cols.append(M.point_of_arrow(M.cotensor_mor(Wf, Fg, cone(x), cone(y))))
        return _columns(V, src.hom(x, y), M.hom_obj(obj(x), obj(y)), cols)

    return VFunctor(src, M.cat, obj, hom, name=f"{W.name}⋔{F.name}"), cone


def tensor_bifunctor(W: VFunctor, F: VFunctor, M: ArrowTarget) -> tuple[VFunctor, Callable]:
    """(j, j') |-> W j (x) F j' on J^op (x) J, for W: J^op -> V."""
    J = F.source
    V = J.cosmos
    src = tensor_vcat(opposite(J), J)
    cocones: dict = {}

    def cocone(x):
        if x not in cocones:
            cocones[x] = M.tensor(W.obj(x[0]), F.obj(x[1]))
        return cocones[x]

    def obj(x):
        return cocone(x).apex

    def hom(x, y):
        (a, b), (a2, b2) = x, y
        cols = []
        for f in V.point_basis(J.hom(a2, a)):
            # W is contravariant: J(a2, a) = J^op(a, a2) -> [W a, W a2]
            Wf = fv.hom_element(W.obj(a), W.obj(a2), V.compose(W.hom(a, a2), f).matrix)
            for g in V.point_basis(J.hom(b, b2)):
                Fg = M.fmap(F, b, b2, g)
                cols.append(M.point_of_arrow(M.tensor_mor(Wf, Fg, cocone(x), cocone(y))))
        return _columns(V, src.hom(x, y), M.hom_obj(obj(x), obj(y)), cols)

    return VFunctor(src, M.cat, obj, hom, name=f"{W.name}*{F.name}"), cocone


@dataclass
class WeightedLimit:
    obj: object
    legs: dict            # j -> (L -> W j ⋔ F j)
    cotensors: dict       # j -> Cone of W j ⋔ F j
    end: EndResult


@dataclass
class WeightedColimit:
    obj: object
    legs: dict            # j -> (W j (x) F j -> L)
    tensors: dict
    coend: EndResult


def weighted_limit(w: Weight | VFunctor, F: VFunctor, target: ArrowTarget | None = None) -> WeightedLimit:
    """{W, F} as the end of W j ⋔ F j'."""
    W = w.functor if isinstance(w, Weight) else w
    M = target or _target_for(F.target)
    J = F.source
    H, cone = cotensor_bifunctor(W, F, M)
    e = end_of(H, J, M)
    return WeightedLimit(e.obj, e.legs, {j: cone((j, j)) for j in J.objects}, e)


def weighted_colimit(w: Weight | VFunctor, F: VFunctor, target: ArrowTarget | None = None) -> WeightedColimit:
    """W * F as the coend of W j (x) F j'."""
    W = w.functor if isinstance(w, Weight) else w
    M = target or _target_for(F.target)
    J = F.source
    H, cocone = tensor_bifunctor(W, F, M)
    e = coend_of(H, J, M)
    return WeightedColimit(e.obj, e.legs, {j: cocone((j, j)) for j in J.objects}, e)


def limit_comparison(lim: WeightedLimit, W: VFunctor, F: VFunctor, n, M: ArrowTarget) -> tuple[CosmosMorphism, FunctorHom]:
    """M(n, {W,F}) -> [J, V](W, M(n, F-)); an isomorphism exactly when the universal property holds at n."""
    J = F.source
    V = J.cosmos
    rep = represented(F, n, M)
    fh = functor_hom(W, rep)
    cols = []
    for phi in M.basis_arrows(n, lim.obj):
        comps = []
        for j in J.objects:
            cone = lim.cotensors[j]
            leg = M.compose(lim.legs[j], phi)
            pts = [M.point_of_arrow(M.compose(pr, leg)) for pr in cone.legs]
            h = _columns(V, W.obj(j), M.hom_obj(n, F.obj(j)), pts)
            comps.append(VTarget(V).point_of_arrow(h))
        cols.append(fh.product.pair(comps) if comps else V.zero(V.unit(), fh.product.obj))
    big = _columns(V, M.hom_obj(n, lim.obj), fh.product.obj, cols)
    k = fv.factor_through_mono(fh.inclusion, big)
    if k is None:
        raise ValueError("limit legs do not form a cone")
    return k, fh


def colimit_comparison(col: WeightedColimit, W: VFunctor, F: VFunctor, n, M: ArrowTarget) -> tuple[CosmosMorphism, FunctorHom]:
    """M(W*F, n) -> [J^op, V](W, M(F-, n))."""
    J = F.source
    V = J.cosmos
    corep = corepresented(F, n, M)
    fh = functor_hom(W, corep)
    cols = []
    for phi in M.basis_arrows(col.obj, n):
        comps = []
        for j in J.objects:
            cc = col.tensors[j]
            leg = M.compose(phi, col.legs[j])
            pts = [M.point_of_arrow(M.compose(leg, inj)) for inj in cc.legs]
            h = _columns(V, W.obj(j), M.hom_obj(F.obj(j), n), pts)
            comps.append(VTarget(V).point_of_arrow(h))
        cols.append(fh.product.pair(comps) if comps else V.zero(V.unit(), fh.product.obj))
    big = _columns(V, M.hom_obj(col.obj, n), fh.product.obj, cols)
    k = fv.factor_through_mono(fh.inclusion, big)
    if k is None:
        raise ValueError("colimit legs do not form a cocone")
    return k, fh


def represented(F: VFunctor, n, M: ArrowTarget) -> VFunctor:
    """M(n, F-): J -> V."""
    J = F.source
    V = J.cosmos

    def hom(a, b):
        cols = [VTarget(V).point_of_arrow(M.post_map(n, M.fmap(F, a, b, f))) for f in V.point_basis(J.hom(a, b))]
        return _columns(V, J.hom(a, b), fv.internal_hom(M.hom_obj(n, F.obj(a)), M.hom_obj(n, F.obj(b))), cols)

    return VFunctor(J, SelfEnriched(V), lambda a: M.hom_obj(n, F.obj(a)), hom, name=f"M(n,{F.name}-)")


def corepresented(F: VFunctor, n, M: ArrowTarget) -> VFunctor:
    """M(F-, n): J^op -> V."""
    J = F.source
    V = J.cosmos
    jop = opposite(J)

    def hom(a, b):
        # J^op(a, b) = J(b, a)
        cols = [VTarget(V).point_of_arrow(M.pre_map(M.fmap(F, b, a, f), n)) for f in V.point_basis(J.hom(b, a))]
        return _columns(V, J.hom(b, a), fv.internal_hom(M.hom_obj(F.obj(a), n), M.hom_obj(F.obj(b), n)), cols)

    return VFunctor(jop, SelfEnriched(V), lambda a: M.hom_obj(F.obj(a), n), hom, name=f"M({F.name}-,n)")


# weights and diagrams from ordinary data ------------------------------------------

def constant_weight(J: VCategory, contravariant: bool = False) -> Weight:
    """Delta I on a free V-category: every basis arrow acts as the identity of I."""
    V = J.cosmos
    i = V.unit()
    src = opposite(J) if contravariant else J

    def hom(a, b):
        h = src.hom(a, b)
        return fv.morphism(h, fv.internal_hom(i, i), FpMatrix(V.p, np.ones((1, h.dim), dtype=np.int64)))

    return Weight(VFunctor(src, SelfEnriched(V), lambda a: i, hom, name="ΔI"), True)


def diagram_functor(L: FiniteCategory, objs: dict, arrows: dict, M: ArrowTarget, p: int) -> tuple[VCategory, VFunctor]:
    """The V-functor L_V -> M induced by an ordinary diagram (objects and arrows of M)."""
    LV = free_vcategory(L, p)
    V = LV.cosmos

    def hom(a, b):
        pts = [M.point_of_arrow(M.identity(objs[a]) if a == b and f == L.identity(a) else arrows[f])
               for f in L.hom(a, b)]
        return _columns(V, LV.hom(a, b), M.hom_obj(objs[a], objs[b]), pts)

    return LV, VFunctor(LV, M.cat, lambda a: objs[a], hom, name="H")


def conical_colimit(L: FiniteCategory, objs: dict, arrows: dict, M: ArrowTarget) -> WeightedColimit:
    """colim H = (Delta I) * H over the free V-category on L."""
    LV, H = diagram_functor(L, objs, arrows, M, M.V.p)
    return weighted_colimit(constant_weight(LV, contravariant=True), H, M)


def conical_limit(L: FiniteCategory, objs: dict, arrows: dict, M: ArrowTarget) -> WeightedLimit:
    LV, H = diagram_functor(L, objs, arrows, M, M.V.p)
    return weighted_limit(constant_weight(LV), H, M)


def conical_legs(res, M: ArrowTarget, co: bool = False) -> dict:
    """Ordinary (co)cone legs: compose with the (co)tensor-by-I leg."""
    out = {}
    if co:
        for j, leg in res.legs.items():
            out[j] = M.compose(leg, res.tensors[j].legs[0])
    else:
        for j, leg in res.legs.items():
            out[j] = M.compose(res.cotensors[j].legs[0], leg)
    return out


def tensor_op(x: CosmosObject, m, M: ArrowTarget) -> Cocone:
    return M.tensor(x, m)


def cotensor(x: CosmosObject, m, M: ArrowTarget) -> Cone:
    return M.cotensor(x, m)


def cotensor_comparison(x: CosmosObject, m, n, M: ArrowTarget) -> CosmosMorphism:
    """M(n, X ⋔ m) -> [X, M(n, m)], phi |-> (e_k |-> leg_k phi)."""
    V = M.V
    cone = M.cotensor(x, m)
    cols = []
    for phi in M.basis_arrows(n, cone.apex):
        pts = [M.point_of_arrow(M.compose(l, phi)) for l in cone.legs]
        h = _columns(V, x, M.hom_obj(n, m), pts)
        cols.append(VTarget(V).point_of_arrow(h))
    return _columns(V, M.hom_obj(n, cone.apex), fv.internal_hom(x, M.hom_obj(n, m)), cols)


def tensor_comparison(x: CosmosObject, m, n, M: ArrowTarget) -> CosmosMorphism:
    """M(X (x) m, n) -> [X, M(m, n)], phi |-> (e_k |-> phi leg_k)."""
    V = M.V
    cc = M.tensor(x, m)
    cols = []
    for phi in M.basis_arrows(cc.apex, n):
        pts = [M.point_of_arrow(M.compose(phi, l)) for l in cc.legs]
        h = _columns(V, x, M.hom_obj(m, n), pts)
        cols.append(VTarget(V).point_of_arrow(h))
    return _columns(V, M.hom_obj(cc.apex, n), fv.internal_hom(x, M.hom_obj(m, n)), cols)


def functor_arrow(S: VFunctor, A: ArrowTarget, B: ArrowTarget, u):
    """S(u) for an arrow u of A, through points (or directly when S knows how)."""
    if hasattr(S, "induced"):
        return S.induced(u)
    a, b = A.src(u), A.dst(u)
    return B.arrow_of_point(S.obj(a), S.obj(b), A.V.compose(S.hom(a, b), A.point_of_arrow(u)))


def cotensor_preservation(S: VFunctor, A: ArrowTarget, B: ArrowTarget, x: CosmosObject, m) -> object:
    """The comparison S(X ⋔ m) -> X ⋔ S(m) built from S of the legs."""
    cone = A.cotensor(x, m)
    tgt = B.cotensor(x, S.obj(m))
    maps = [functor_arrow(S, A, B, l) for l in cone.legs]
    return B.lift(tgt, maps, S.obj(cone.apex))
