"""Finite V-categories, V-functors and V-natural transformations over a pluggable cosmos.

A cosmos is any object with the method surface of :class:`~enrichcat.finvect.FinVect`
or :class:`~enrichcat.chain.ChainCosmos`.  Categories whose object class is not
finite (V itself, presheaf categories) subclass :class:`VCategory` and compute
their structure maps lazily.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from . import finvect as fv
from .finvect import CosmosMorphism, CosmosObject, FinVect
from .linalg import FpMatrix, all_vectors
from .ordinary import FiniteCategory

DEFAULT_MAX_HOM_DIM = 6


class EnumerationCapError(ValueError):
    """A hom-set enumeration would exceed the configured dimension cap."""


class VCategory:
    """Abstract V-category: hom objects, composition ``m_abc`` and identities ``j_a``."""

    cosmos = None
    name = "C"

    @property
    def objects(self) -> list | None:
        """Finite object list, or None for large categories."""
        return None

    def hom(self, a, b):
        raise NotImplementedError

    def comp(self, a, b, c):
        """m: C(b, c) (x) C(a, b) -> C(a, c)."""
        raise NotImplementedError

    def ident(self, a):
        """j_a: I -> C(a, a)."""
        raise NotImplementedError

    def is_finite(self) -> bool:
        return self.objects is not None

    def __repr__(self) -> str:
        n = len(self.objects) if self.objects is not None else "many"
        return f"{type(self).__name__}({self.name}, {n} objects over {self.cosmos!r})"


class FiniteVCategory(VCategory):
    def __init__(
        self,
        cosmos,
        objects: Sequence[Hashable],
        hom: Mapping[tuple, object],
        comp: Mapping[tuple, object],
        ident: Mapping[Hashable, object],
        name: str = "C",
    ):
        self.cosmos = cosmos
        self._objects = list(objects)
        self._hom = dict(hom)
        self._comp = dict(comp)
        self._ident = dict(ident)
        self.name = name

    @property
    def objects(self) -> list:
        return self._objects

    def hom(self, a, b):
        return self._hom[(a, b)]

    def comp(self, a, b, c):
        return self._comp[(a, b, c)]

    def ident(self, a):
        return self._ident[a]

    def replace(self, comp=None, ident=None, name=None) -> "FiniteVCategory":
        """Copy with some structure maps overridden (used to build negative controls)."""
        new_comp = dict(self._comp)
        new_comp.update(comp or {})
        new_ident = dict(self._ident)
        new_ident.update(ident or {})
        return FiniteVCategory(self.cosmos, self._objects, self._hom, new_comp, new_ident, name or self.name)


class SelfEnriched(VCategory):
    """The cosmos V regarded as a V-category, with hom objects the internal homs."""

    def __init__(self, cosmos):
        self.cosmos = cosmos
        self.name = "V"

    def hom(self, a, b):
        return self.cosmos.internal_hom(a, b)

    def comp(self, a, b, c):
        return self.cosmos.internal_comp(a, b, c)

    def ident(self, a):
        return self.cosmos.internal_ident(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, SelfEnriched) and other.cosmos == self.cosmos

    def __hash__(self) -> int:
        return hash(("self", self.cosmos))


class OppositeVCategory(VCategory):
    """C^op with C^op(a, b) = C(b, a) and composition precomposed with the symmetry."""

    def __init__(self, base: VCategory):
        self.base = base
        self.cosmos = base.cosmos
        self.name = f"{base.name}^op"

    @property
    def objects(self):
        return self.base.objects

    def hom(self, a, b):
        return self.base.hom(b, a)

    def comp(self, a, b, c):
        V = self.cosmos
        # C(c,b) (x) C(b,a) --sym--> C(b,a) (x) C(c,b) --m_{c,b,a}--> C(c,a)
        return V.compose(self.base.comp(c, b, a), V.symmetry(self.base.hom(c, b), self.base.hom(b, a)))

    def ident(self, a):
        return self.base.ident(a)


def opposite(c: VCategory) -> VCategory:
    if c.is_finite():
        op = OppositeVCategory(c)
        objs = c.objects
        return FiniteVCategory(
            c.cosmos, objs,
            {(a, b): op.hom(a, b) for a in objs for b in objs},
            {(a, b, d): op.comp(a, b, d) for a in objs for b in objs for d in objs},
            {a: op.ident(a) for a in objs},
            name=op.name,
        )
    return OppositeVCategory(c)


def same_structure(c: VCategory, d: VCategory) -> bool:
    """Equality of finite V-categories as data (objects, homs, composition, identities)."""
    if not (c.is_finite() and d.is_finite()) or list(c.objects) != list(d.objects):
        return False
    V = c.cosmos
    objs = c.objects
    for a, b in product(objs, repeat=2):
        if c.hom(a, b) != d.hom(a, b):
            return False
    for a, b, e in product(objs, repeat=3):
        if not V.equal(c.comp(a, b, e), d.comp(a, b, e)):
            return False
    return all(V.equal(c.ident(a), d.ident(a)) for a in objs)


# functors and transformations ---------------------------------------------------

class VFunctor:
    """Object map plus hom components F_ab: C(a, b) -> D(Fa, Fb).

    ``obj_map`` and ``hom_map`` may be dicts or callables; large source
    categories (presheaf categories) need callables.
    """

    def __init__(self, source: VCategory, target: VCategory, obj_map, hom_map, name: str = "F"):
        self.source = source
        self.target = target
        self._obj = obj_map
        self._hom = hom_map
        self._hom_cache: dict = {}
        self._obj_cache: dict = {}
        self.name = name

    def obj(self, a):
        key = _key(a)
        if key in self._obj_cache:
            return self._obj_cache[key]
        v = self._obj(a) if callable(self._obj) else self._obj[a]
        self._obj_cache[key] = v
        return v

    def hom(self, a, b):
        key = (_key(a), _key(b))
        if key in self._hom_cache:
            return self._hom_cache[key]
        v = self._hom(a, b) if callable(self._hom) else self._hom[(a, b)]
        self._hom_cache[key] = v
        return v

    def __repr__(self) -> str:
        return f"VFunctor({self.name}: {self.source.name} -> {self.target.name})"


def _key(a):
    try:
        hash(a)
        return ("h", a)
    except TypeError:
        return ("id", id(a))


def identity_functor(c: VCategory) -> VFunctor:
    V = c.cosmos
    return VFunctor(c, c, lambda a: a, lambda a, b: V.identity(c.hom(a, b)), name=f"1_{c.name}")


def compose_functors(g: VFunctor, f: VFunctor) -> VFunctor:
    V = f.source.cosmos
    return VFunctor(
        f.source, g.target,
        lambda a: g.obj(f.obj(a)),
        lambda a, b: V.compose(g.hom(f.obj(a), f.obj(b)), f.hom(a, b)),
        name=f"{g.name}{f.name}",
    )


@dataclass
class VNatTransformation:
    """Components alpha_c: I -> D(Fc, Gc)."""

    F: VFunctor
    G: VFunctor
    components: dict

    def at(self, c):
        return self.components[c]


# axiom checking -----------------------------------------------------------

@dataclass
class Failure:
    diagram: str
    where: tuple
    detail: str = ""
    lhs: object = None
    rhs: object = None
    structural: bool = False

    def describe(self) -> str:
        kind = "structural" if self.structural else "diagram"
        return f"{kind} failure in {self.diagram} at {self.where}" + (f": {self.detail}" if self.detail else "")


@dataclass
class AxiomReport:
    subject: str
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def _check_eq(report: AxiomReport, V, lhs, rhs, diagram: str, where: tuple) -> None:
    report.checked += 1
    try:
        same = V.equal(lhs, rhs)
    except Exception as exc:  # shape mismatch inside a diagram
        report.failures.append(Failure(diagram, where, f"cannot compare: {exc}", structural=True))
        return
    if not same:
        report.failures.append(Failure(diagram, where, "composites differ", lhs, rhs))


def _guard(report: AxiomReport, diagram: str, where: tuple, build: Callable):
    try:
        return build()
    except Exception as exc:
        report.failures.append(Failure(diagram, where, str(exc), structural=True))
        return None


def check_category(c: VCategory, objects: Sequence | None = None) -> AxiomReport:
    V = c.cosmos
    objs = list(objects if objects is not None else c.objects)
    report = AxiomReport(f"V-category {c.name}")
    # structural: shapes of every structure map
    for a, b, d in product(objs, repeat=3):
        m = _guard(report, "composition shape", (a, b, d), lambda: c.comp(a, b, d))
        if m is None:
            continue
        want_src = V.tensor(c.hom(b, d), c.hom(a, b))
        if V.src(m) != want_src or V.dst(m) != c.hom(a, d):
            report.failures.append(Failure("composition shape", (a, b, d), "domain or codomain mismatch", structural=True))
    for a in objs:
        j = _guard(report, "identity shape", (a,), lambda: c.ident(a))
        if j is not None and (V.src(j) != V.unit() or V.dst(j) != c.hom(a, a)):
            report.failures.append(Failure("identity shape", (a,), "domain or codomain mismatch", structural=True))
    if report.failures:
        return report
    for a, b, d, e in product(objs, repeat=4):
        hde, hbd, hab = c.hom(d, e), c.hom(b, d), c.hom(a, b)
        lhs = V.compose(c.comp(a, b, e), V.tensor_mor(c.comp(b, d, e), V.identity(hab)))
        rhs = V.compose(
            c.comp(a, d, e),
            V.compose(V.tensor_mor(V.identity(hde), c.comp(a, b, d)), V.associator(hde, hbd, hab)),
        )
        _check_eq(report, V, lhs, rhs, "associativity", (a, b, d, e))
    for a, b in product(objs, repeat=2):
        h = c.hom(a, b)
        left = V.compose(c.comp(a, b, b), V.tensor_mor(c.ident(b), V.identity(h)))
        _check_eq(report, V, left, V.left_unit(h), "left unit", (a, b))
        right = V.compose(c.comp(a, a, b), V.tensor_mor(V.identity(h), c.ident(a)))
        _check_eq(report, V, right, V.right_unit(h), "right unit", (a, b))
    return report


def check_functor(F: VFunctor, objects: Sequence | None = None) -> AxiomReport:
    C, D = F.source, F.target
    V = C.cosmos
    objs = list(objects if objects is not None else C.objects)
    report = AxiomReport(f"V-functor {F.name}")
    for a, b in product(objs, repeat=2):
        comp = _guard(report, "hom component shape", (a, b), lambda: F.hom(a, b))
        if comp is None:
            continue
        if V.src(comp) != C.hom(a, b) or V.dst(comp) != D.hom(F.obj(a), F.obj(b)):
            report.failures.append(Failure("hom component shape", (a, b), "domain or codomain mismatch", structural=True))
    if report.failures:
        return report
    for a, b, c in product(objs, repeat=3):
        Fa, Fb, Fc = F.obj(a), F.obj(b), F.obj(c)
        lhs = V.compose(F.hom(a, c), C.comp(a, b, c))
        rhs = V.compose(D.comp(Fa, Fb, Fc), V.tensor_mor(F.hom(b, c), F.hom(a, b)))
        _check_eq(report, V, lhs, rhs, "composition", (a, b, c))
    for a in objs:
        _check_eq(report, V, V.compose(F.hom(a, a), C.ident(a)), D.ident(F.obj(a)), "identity", (a,))
    return report


def check_nat(alpha: VNatTransformation, objects: Sequence | None = None) -> AxiomReport:
    F, G = alpha.F, alpha.G
    C, D = F.source, F.target
    V = C.cosmos
    objs = list(objects if objects is not None else C.objects)
    report = AxiomReport(f"V-natural transformation {F.name} => {G.name}")
    for c in objs:
        a = alpha.at(c)
        if V.src(a) != V.unit() or V.dst(a) != D.hom(F.obj(c), G.obj(c)):
            report.failures.append(Failure("component shape", (c,), "domain or codomain mismatch", structural=True))
    if report.failures:
        return report
    for c, d in product(objs, repeat=2):
        h = C.hom(c, d)
        Fc, Fd, Gc, Gd = F.obj(c), F.obj(d), G.obj(c), G.obj(d)
        upper = V.compose(
            D.comp(Fc, Fd, Gd),
            V.compose(V.tensor_mor(alpha.at(d), F.hom(c, d)), V.inverse(V.left_unit(h))),
        )
        lower = V.compose(
            D.comp(Fc, Gc, Gd),
            V.compose(V.tensor_mor(G.hom(c, d), alpha.at(c)), V.inverse(V.right_unit(h))),
        )
        _check_eq(report, V, upper, lower, "V-naturality", (c, d))
    return report


def check_axioms(x, objects: Sequence | None = None) -> AxiomReport:
    """Every failing diagram of a V-category, V-functor or V-natural transformation."""
    if isinstance(x, VCategory):
        return check_category(x, objects)
    if isinstance(x, VFunctor):
        return check_functor(x, objects)
    if isinstance(x, VNatTransformation):
        return check_nat(x, objects)
    raise TypeError(f"cannot check axioms of {type(x).__name__}")


# constructions ------------------------------------------------------------

def middle_four(V, p, q, r, s):
    """(P (x) Q) (x) (R (x) S) -> (P (x) R) (x) (Q (x) S) built from a and c."""
    a = V.associator
    inv = V.inverse
    one = V.identity
    step1 = a(p, q, V.tensor(r, s))                                # P (Q (R S))
    step2 = V.tensor_mor(one(p), inv(a(q, r, s)))                  # P ((Q R) S)
    step3 = V.tensor_mor(one(p), V.tensor_mor(V.symmetry(q, r), one(s)))  # P ((R Q) S)
    step4 = V.tensor_mor(one(p), a(r, q, s))                       # P (R (Q S))
    step5 = inv(a(p, r, V.tensor(q, s)))                           # (P R) (Q S)
    out = step1
    for st in (step2, step3, step4, step5):
        out = V.compose(st, out)
    return out


def tensor_vcat(c: VCategory, d: VCategory, name: str | None = None) -> FiniteVCategory:
    """C (x) D: objects are pairs, homs tensor, composition via the middle-four interchange."""
    if c.cosmos != d.cosmos:
        raise ValueError("tensor_vcat needs both categories over the same cosmos")
    V = c.cosmos
    objs = [(x, y) for x in c.objects for y in d.objects]
    hom = {(s, t): V.tensor(c.hom(s[0], t[0]), d.hom(s[1], t[1])) for s in objs for t in objs}
    comp = {}
    for s, t, u in product(objs, repeat=3):
        mf = middle_four(V, c.hom(t[0], u[0]), d.hom(t[1], u[1]), c.hom(s[0], t[0]), d.hom(s[1], t[1]))
        comp[(s, t, u)] = V.compose(V.tensor_mor(c.comp(s[0], t[0], u[0]), d.comp(s[1], t[1], u[1])), mf)
    iu = V.unit()
    ident = {
        s: V.compose(V.tensor_mor(c.ident(s[0]), d.ident(s[1])), V.inverse(V.left_unit(iu)))
        for s in objs
    }
    return FiniteVCategory(V, objs, hom, comp, ident, name=name or f"{c.name}(x){d.name}")


def full_subcategory(M: VCategory, objects: Mapping[Hashable, object], name: str = "G") -> FiniteVCategory:
    """The full sub-V-category of M on the labelled objects (homs and structure maps copied)."""
    labels = list(objects)
    V = M.cosmos
    return FiniteVCategory(
        V, labels,
        {(a, b): M.hom(objects[a], objects[b]) for a in labels for b in labels},
        {(a, b, c): M.comp(objects[a], objects[b], objects[c]) for a in labels for b in labels for c in labels},
        {a: M.ident(objects[a]) for a in labels},
        name=name,
    )


def inclusion_functor(G: FiniteVCategory, M: VCategory, objects: Mapping[Hashable, object]) -> VFunctor:
    V = M.cosmos
    return VFunctor(G, M, lambda a: objects[a], lambda a, b: V.identity(G.hom(a, b)), name=f"{G.name}->{M.name}")


def unit_vcategory(cosmos, label: Hashable = "*") -> FiniteVCategory:
    """The one-object V-category with hom I and composition l = r."""
    i = cosmos.unit()
    return FiniteVCategory(
        cosmos, [label], {(label, label): i},
        {(label, label, label): cosmos.left_unit(i)}, {label: cosmos.identity(i)}, name="I",
    )


def algebra_category(p: int, mult: Sequence[Sequence[Sequence[int]]], unit_coords: Sequence[int],
                     label: Hashable = "*", name: str = "A") -> FiniteVCategory:
    """One-object V-category of a finite-dimensional F_p-algebra.

    ``mult[i][j]`` are the coordinates of ``e_i e_j``.  Composition of
    ``g (x) f`` is the product ``g f``.
    """
    V = FinVect(p)
    n = len(unit_coords)
    m = np.zeros((n, n * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            m[:, i * n + j] = mult[i][j]
    a = V.obj(n)
    return FiniteVCategory(
        V, [label], {(label, label): a},
        {(label, label, label): fv.morphism(V.tensor(a, a), a, FpMatrix(p, m))},
        {label: V.point(a, unit_coords)}, name=name,
    )


def dual_numbers(p: int = 2, label: Hashable = "*") -> FiniteVCategory:
    """F_p[x]/(x^2) with basis (1, x)."""
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return algebra_category(p, mult, [1, 0], label, name="F%d[x]/(x^2)" % p)


def free_vcategory(l: FiniteCategory, p: int) -> FiniteVCategory:
    """L_V: hom(a, b) = I^{L(a, b)}, composition the induced 0/1 matrix."""
    V = FinVect(p)
    objs = list(l.objects)
    hom = {(a, b): V.obj(len(l.hom(a, b))) for a in objs for b in objs}
    comp = {}
    for a, b, c in product(objs, repeat=3):
        fs, gs, hs = l.hom(a, b), l.hom(b, c), l.hom(a, c)
        idx = {h: k for k, h in enumerate(hs)}
        m = np.zeros((len(hs), len(gs) * len(fs)), dtype=np.int64)
        for gi, g in enumerate(gs):
            for fi, f in enumerate(fs):
                m[idx[l.compose(g, f)], gi * len(fs) + fi] = 1
        comp[(a, b, c)] = fv.morphism(V.tensor(hom[(b, c)], hom[(a, b)]), hom[(a, c)], FpMatrix(p, m))
    ident = {}
    for a in objs:
        coords = [1 if f == l.identity(a) else 0 for f in l.hom(a, a)]
        ident[a] = V.point(hom[(a, a)], coords)
    return FiniteVCategory(V, objs, hom, comp, ident, name=f"{l.name}_V")


def free_arrow(l: FiniteCategory, a, b, f, p: int) -> FpMatrix:
    """Coordinates of the arrow f in L_V(a, b)."""
    return FpMatrix.unit_vector(p, len(l.hom(a, b)), l.hom(a, b).index(f))


# underlying categories ----------------------------------------------------

def _points(V, x, cap: int) -> list:
    d = V.dim(x)
    if d > cap:
        raise EnumerationCapError(f"hom object of dimension {d} exceeds the enumeration cap {cap}")
    basis = V.point_basis(x)
    pts = []
    for coeffs in all_vectors(V.p, d):
        total = V.zero(V.unit(), x)
        for k, cf in enumerate(coeffs):
            if cf:
                total = total + _scale(V, basis[k], int(cf))
        pts.append(total)
    return pts


def _scale(V, f, k: int):
    out = f
    for _ in range(k - 1):
        out = out + f
    return out


def element_compose(c: VCategory, a, b, d, g, f):
    """g . f for underlying arrows f: I -> C(a, b) and g: I -> C(b, d)."""
    V = c.cosmos
    i = V.unit()
    return V.compose(c.comp(a, b, d), V.compose(V.tensor_mor(g, f), V.inverse(V.left_unit(i))))


def underlying(c: VCategory, max_dim: int = DEFAULT_MAX_HOM_DIM) -> FiniteCategory:
    """C_0 with hom-sets Hom_V(I, C(a, b)) enumerated exhaustively.

    Arrow labels are ``(a, b, coords)``; coords are the coordinates of the
    point in the degree-0/canonical basis of the hom object.
    """
    V = c.cosmos
    objs = list(c.objects)
    arrows, elems = {}, {}
    for a, b in product(objs, repeat=2):
        for pt in _points(V, c.hom(a, b), max_dim):
            lab = (a, b, tuple(int(x) for x in V.point_coords(c.hom(a, b), pt)))
            arrows[lab] = (a, b)
            elems[lab] = pt
    idents = {a: (a, a, tuple(int(x) for x in V.point_coords(c.hom(a, a), c.ident(a)))) for a in objs}

    def comp(g, f):
        a, b, _ = f
        _, d, _ = g
        pt = element_compose(c, a, b, d, elems[g], elems[f])
        return (a, d, tuple(int(x) for x in V.point_coords(c.hom(a, d), pt)))

    return FiniteCategory(objs, arrows, idents, comp, name=f"{c.name}_0", check=False)


def underlying_functor(F: VFunctor, max_dim: int = DEFAULT_MAX_HOM_DIM) -> dict:
    """Arrow map of F_0 on the enumerated hom-sets of the source."""
    C, D = F.source, F.target
    V = C.cosmos
    out = {}
    for a, b in product(C.objects, repeat=2):
        for pt in _points(V, C.hom(a, b), max_dim):
            img = V.compose(F.hom(a, b), pt)
            Fa, Fb = F.obj(a), F.obj(b)
            src = (a, b, tuple(int(x) for x in V.point_coords(C.hom(a, b), pt)))
            out[src] = (Fa, Fb, tuple(int(x) for x in V.point_coords(D.hom(Fa, Fb), img)))
    return out
