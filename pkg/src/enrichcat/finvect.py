"""The cosmos of finite-dimensional F_p-vector spaces.

Bases are canonical: ``X (x) Y`` uses Kronecker order (index ``i*dim(Y)+k``)
and ``[X, Y]`` uses row-major matrix units (index ``y*dim(X)+x``), so a
linear map ``h: X -> Y`` sits in ``[X, Y]`` as ``h.flatten()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import (
    FpMatrix,
    ModulusError,
    check_prime,
    cokernel_projection,
    is_isomorphism,
    kernel_basis,
    kron,
    solve,
)


class CoherenceError(RuntimeError):
    """An internally constructed witness failed its own defining check."""


@dataclass(frozen=True)
class CosmosObject:
    dim: int
    p: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError(f"dimension must be non-negative, got {self.dim}")
        check_prime(self.p)

    def __repr__(self) -> str:
        return f"F{self.p}^{self.dim}"


@dataclass(frozen=True)
class CosmosMorphism:
    src: CosmosObject
    dst: CosmosObject
    matrix: FpMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.dst.dim, self.src.dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not fit {self.src} -> {self.dst}"
            )
        if not (self.src.p == self.dst.p == self.matrix.p):
            raise ModulusError("morphism mixes moduli")

    @property
    def p(self) -> int:
        return self.matrix.p

    def __matmul__(self, other: "CosmosMorphism") -> "CosmosMorphism":
        if other.dst != self.src:
            raise ValueError(f"cannot compose {self.src}->{self.dst} after {other.src}->{other.dst}")
        return CosmosMorphism(other.src, self.dst, self.matrix @ other.matrix)

    def __add__(self, other: "CosmosMorphism") -> "CosmosMorphism":
        _parallel(self, other)
        return CosmosMorphism(self.src, self.dst, self.matrix + other.matrix)

    def __sub__(self, other: "CosmosMorphism") -> "CosmosMorphism":
        _parallel(self, other)
        return CosmosMorphism(self.src, self.dst, self.matrix - other.matrix)

    def scale(self, k: int) -> "CosmosMorphism":
        return CosmosMorphism(self.src, self.dst, self.matrix.scale(k))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def _parallel(f: CosmosMorphism, g: CosmosMorphism) -> None:
    if f.src != g.src or f.dst != g.dst:
        raise ValueError(f"morphisms are not parallel: {f.src}->{f.dst} vs {g.src}->{g.dst}")


def _same_p(*objs: CosmosObject) -> int:
    ps = {o.p for o in objs}
    if len(ps) != 1:
        raise ModulusError(f"modulus mismatch: {sorted(ps)}")
    return ps.pop()


def obj(dim: int, p: int) -> CosmosObject:
    return CosmosObject(dim, p)


def unit(p: int) -> CosmosObject:
    return CosmosObject(1, p)


def zero_object(p: int) -> CosmosObject:
    return CosmosObject(0, p)


def identity(x: CosmosObject) -> CosmosMorphism:
    return CosmosMorphism(x, x, FpMatrix.identity(x.p, x.dim))


def zero(x: CosmosObject, y: CosmosObject) -> CosmosMorphism:
    p = _same_p(x, y)
    return CosmosMorphism(x, y, FpMatrix.zeros(p, y.dim, x.dim))


def morphism(x: CosmosObject, y: CosmosObject, rows) -> CosmosMorphism:
    p = _same_p(x, y)
    if isinstance(rows, FpMatrix):
        return CosmosMorphism(x, y, rows)
    return CosmosMorphism(x, y, FpMatrix(p, np.array(rows, dtype=np.int64).reshape(y.dim, x.dim)))


def _perm(src: CosmosObject, dst: CosmosObject, target_of: Sequence[int]) -> CosmosMorphism:
    """Permutation morphism sending basis vector i to basis vector target_of[i]."""
    m = np.zeros((dst.dim, src.dim), dtype=np.int64)
    for i, t in enumerate(target_of):
        m[t, i] = 1
    return CosmosMorphism(src, dst, FpMatrix(src.p, m))


# monoidal structure -------------------------------------------------------

def tensor(x: CosmosObject, y: CosmosObject) -> CosmosObject:
    p = _same_p(x, y)
    return CosmosObject(x.dim * y.dim, p)


def tensor_mor(f: CosmosMorphism, g: CosmosMorphism) -> CosmosMorphism:
    _same_p(f.src, g.src)
    return CosmosMorphism(tensor(f.src, g.src), tensor(f.dst, g.dst), kron(f.matrix, g.matrix))


def associator(x: CosmosObject, y: CosmosObject, z: CosmosObject) -> CosmosMorphism:
    """a: (X (x) Y) (x) Z -> X (x) (Y (x) Z), built by explicit reindexing."""
    dx, dy, dz = x.dim, y.dim, z.dim
    targets = []
    for i in range(dx):
        for j in range(dy):
            for k in range(dz):
                # source index ((i*dy)+j)*dz+k, enumerated in this order
                targets.append(i * (dy * dz) + (j * dz + k))
    return _perm(tensor(tensor(x, y), z), tensor(x, tensor(y, z)), targets)


def left_unit(x: CosmosObject) -> CosmosMorphism:
    """l: I (x) X -> X."""
    return _perm(tensor(unit(x.p), x), x, [0 * x.dim + k for k in range(x.dim)])


def right_unit(x: CosmosObject) -> CosmosMorphism:
    """r: X (x) I -> X."""
    return _perm(tensor(x, unit(x.p)), x, [i * 1 + 0 for i in range(x.dim)])


def symmetry(x: CosmosObject, y: CosmosObject) -> CosmosMorphism:
    """c: X (x) Y -> Y (x) X."""
    targets = [k * x.dim + i for i in range(x.dim) for k in range(y.dim)]
    return _perm(tensor(x, y), tensor(y, x), targets)


# closed structure ---------------------------------------------------------

def internal_hom(x: CosmosObject, y: CosmosObject) -> CosmosObject:
    p = _same_p(x, y)
    return CosmosObject(x.dim * y.dim, p)


def hom_mor(f: CosmosMorphism, g: CosmosMorphism) -> CosmosMorphism:
    """[f, g]: [X, Y] -> [X', Y'] for f: X' -> X and g: Y -> Y', sending h to g h f."""
    return CosmosMorphism(
        internal_hom(f.dst, g.src), internal_hom(f.src, g.dst), kron(g.matrix, f.matrix.T)
    )


def element_of_hom(h: CosmosMorphism) -> FpMatrix:
    """Column vector of [X, Y] naming the morphism h: X -> Y."""
    return FpMatrix(h.p, h.matrix.a.reshape(-1, 1))


def hom_element(x: CosmosObject, y: CosmosObject, v: FpMatrix) -> CosmosMorphism:
    """Inverse of element_of_hom."""
    return CosmosMorphism(x, y, FpMatrix(x.p, v.a.reshape(y.dim, x.dim)))


def curry(f: CosmosMorphism, x: CosmosObject, y: CosmosObject) -> CosmosMorphism:
    """X (x) Y -> Z  becomes  X -> [Y, Z]."""
    if f.src != tensor(x, y):
        raise ValueError(f"curry: source {f.src} is not {x} (x) {y}")
    z = f.dst
    arr = f.matrix.a.reshape(z.dim, x.dim, y.dim).transpose(0, 2, 1).reshape(z.dim * y.dim, x.dim)
    return CosmosMorphism(x, internal_hom(y, z), FpMatrix(x.p, arr))


def uncurry(g: CosmosMorphism, y: CosmosObject) -> CosmosMorphism:
    """X -> [Y, Z]  becomes  X (x) Y -> Z."""
    if y.dim == 0:
        if g.dst.dim:
            raise ValueError("uncurry: [0, Z] is zero, codomain mismatch")
        return uncurry_to(g, y, zero_object(y.p))
    if g.dst.dim % y.dim:
        raise ValueError(f"uncurry: {g.dst} is not an internal hom out of {y}")
    return uncurry_to(g, y, CosmosObject(g.dst.dim // y.dim, y.p))


def uncurry_to(g: CosmosMorphism, y: CosmosObject, z: CosmosObject) -> CosmosMorphism:
    """uncurry with the codomain Z given explicitly (needed when Y is zero)."""
    if g.dst != internal_hom(y, z):
        raise ValueError(f"uncurry: {g.dst} is not [{y}, {z}]")
    x = g.src
    arr = g.matrix.a.reshape(z.dim, y.dim, x.dim).transpose(0, 2, 1).reshape(z.dim, x.dim * y.dim)
    return CosmosMorphism(tensor(x, y), z, FpMatrix(x.p, arr))


def evaluation(y: CosmosObject, z: CosmosObject) -> CosmosMorphism:
    """ev: [Y, Z] (x) Y -> Z."""
    return uncurry_to(identity(internal_hom(y, z)), y, z)


def internal_comp(x: CosmosObject, y: CosmosObject, z: CosmosObject) -> CosmosMorphism:
    """Composition M: [Y, Z] (x) [X, Y] -> [X, Z], g (x) h |-> g h."""
    p = _same_p(x, y, z)
    dx, dy, dz = x.dim, y.dim, z.dim
    m = np.zeros((dz * dx, dz * dy * dy * dx), dtype=np.int64)
    for zi in range(dz):
        for yi in range(dy):
            g_idx = zi * dy + yi
            for xi in range(dx):
                h_idx = yi * dx + xi
                m[zi * dx + xi, g_idx * (dy * dx) + h_idx] = 1
    return CosmosMorphism(
        tensor(internal_hom(y, z), internal_hom(x, y)), internal_hom(x, z), FpMatrix(p, m)
    )


def internal_ident(x: CosmosObject) -> CosmosMorphism:
    """j_X: I -> [X, X] naming the identity."""
    return CosmosMorphism(unit(x.p), internal_hom(x, x), element_of_hom(identity(x)))


# finite limits and colimits -------------------------------------------------

def equalizer(f: CosmosMorphism, g: CosmosMorphism) -> tuple[CosmosObject, CosmosMorphism]:
    _parallel(f, g)
    k = kernel_basis((f - g).matrix)
    e = CosmosObject(k.cols, f.p)
    return e, CosmosMorphism(e, f.src, k)


def coequalizer(f: CosmosMorphism, g: CosmosMorphism) -> tuple[CosmosObject, CosmosMorphism]:
    _parallel(f, g)
    q = cokernel_projection((f - g).matrix)
    c = CosmosObject(q.rows, f.p)
    return c, CosmosMorphism(f.dst, c, q)


def kernel(f: CosmosMorphism) -> tuple[CosmosObject, CosmosMorphism]:
    return equalizer(f, zero(f.src, f.dst))


def cokernel(f: CosmosMorphism) -> tuple[CosmosObject, CosmosMorphism]:
    return coequalizer(f, zero(f.src, f.dst))


def factor_through_mono(incl: CosmosMorphism, h: CosmosMorphism) -> CosmosMorphism | None:
    """The unique u with incl u = h, or None when h does not factor."""
    if h.dst != incl.dst:
        raise ValueError("factor_through_mono: codomain mismatch")
    u = solve(incl.matrix, h.matrix)
    if u is None:
        return None
    return CosmosMorphism(h.src, incl.src, u)


def factor_through_epi(proj: CosmosMorphism, h: CosmosMorphism) -> CosmosMorphism | None:
    """The unique u with u proj = h, or None when h does not factor."""
    if h.src != proj.src:
        raise ValueError("factor_through_epi: domain mismatch")
    ut = solve(proj.matrix.T, h.matrix.T)
    if ut is None:
        return None
    return CosmosMorphism(proj.dst, h.dst, ut.T)


@dataclass(frozen=True)
class Biproduct:
    obj: CosmosObject
    injections: tuple[CosmosMorphism, ...]
    projections: tuple[CosmosMorphism, ...]

    def pair(self, maps: Sequence[CosmosMorphism]) -> CosmosMorphism:
        """Universal map into the product from maps X -> A_k."""
        total = None
        for inj, f in zip(self.injections, maps):
            t = inj @ f
            total = t if total is None else total + t
        return total

    def copair(self, maps: Sequence[CosmosMorphism]) -> CosmosMorphism:
        total = None
        for proj, f in zip(self.projections, maps):
            t = f @ proj
            total = t if total is None else total + t
        return total


def biproduct(objs: Sequence[CosmosObject], p: int | None = None) -> Biproduct:
    if not objs:
        if p is None:
            raise ValueError("empty biproduct needs an explicit modulus")
        return Biproduct(zero_object(p), (), ())
    p = _same_p(*objs)
    total = sum(o.dim for o in objs)
    s = CosmosObject(total, p)
    injs, projs = [], []
    off = 0
    for o in objs:
        m = np.zeros((total, o.dim), dtype=np.int64)
        m[off:off + o.dim, :] = np.eye(o.dim, dtype=np.int64)
        inj = CosmosMorphism(o, s, FpMatrix(p, m))
        injs.append(inj)
        projs.append(CosmosMorphism(s, o, inj.matrix.T))
        off += o.dim
    return Biproduct(s, tuple(injs), tuple(projs))


def direct_sum_mor(fs: Sequence[CosmosMorphism]) -> CosmosMorphism:
    src = biproduct([f.src for f in fs], fs[0].p if fs else None)
    dst = biproduct([f.dst for f in fs], fs[0].p if fs else None)
    return CosmosMorphism(
        src.obj, dst.obj, FpMatrix.block_diag(src.obj.p, [f.matrix for f in fs])
    )


# dual pairs ---------------------------------------------------------------

@dataclass(frozen=True)
class DualPairWitness:
    """A dual pair (X, Y) with eta: I -> Y (x) X and epsilon: X (x) Y -> I."""

    x: object
    y: object
    eta: object
    epsilon: object


def zigzag_residuals(cosmos, w: DualPairWitness) -> tuple[object, object]:
    """The two triangle composites, each of which must be an identity."""
    x, y, eta, eps = w.x, w.y, w.eta, w.epsilon
    c = cosmos
    # X -> X I -> X (Y X) -> (X Y) X -> I X -> X
    first = (
        c.left_unit(x)
        @ c.tensor_mor(eps, c.identity(x))
        @ c.inverse(c.associator(x, y, x))
        @ c.tensor_mor(c.identity(x), eta)
        @ c.inverse(c.right_unit(x))
    )
    # Y -> I Y -> (Y X) Y -> Y (X Y) -> Y I -> Y
    second = (
        c.right_unit(y)
        @ c.tensor_mor(c.identity(y), eps)
        @ c.associator(y, x, y)
        @ c.tensor_mor(eta, c.identity(y))
        @ c.inverse(c.left_unit(y))
    )
    return first, second


def zigzag_holds(cosmos, w: DualPairWitness) -> bool:
    first, second = zigzag_residuals(cosmos, w)
    return cosmos.equal(first, cosmos.identity(w.x)) and cosmos.equal(second, cosmos.identity(w.y))


def dual_pair(x: CosmosObject) -> DualPairWitness:
    """The dual pair (X, [X, I]) with the evaluation/coevaluation matrices."""
    n, p = x.dim, x.p
    y = internal_hom(x, unit(p))
    eta = np.zeros((n * n, 1), dtype=np.int64)
    eps = np.zeros((1, n * n), dtype=np.int64)
    for k in range(n):
        eta[k * n + k, 0] = 1  # sum_k e_k^* (x) e_k
        eps[0, k * n + k] = 1  # e_i (x) e_j^* |-> delta_ij
    w = DualPairWitness(
        x, y,
        CosmosMorphism(unit(p), tensor(y, x), FpMatrix(p, eta)),
        CosmosMorphism(tensor(x, y), unit(p), FpMatrix(p, eps)),
    )
    if not zigzag_holds(FinVect(p), w):
        raise CoherenceError(f"dual pair witness for {x} fails a triangle identity")
    return w


# the cosmos as a pluggable value ----------------------------------------------

class FinVect:
    """Finite-dimensional F_p-vector spaces with the operations enriched code needs."""

    name = "finvect"

    def __init__(self, p: int):
        self.p = check_prime(p)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinVect) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("finvect", self.p))

    def __repr__(self) -> str:
        return f"FinVect(F_{self.p})"

    def describe(self) -> str:
        return (
            f"FinVect_F{self.p}: finite-dimensional F_{self.p}-vector spaces, the finitely "
            f"(co)complete fragment of Vect_F{self.p}; only finite (co)limits are computed"
        )

    def obj(self, dim: int) -> CosmosObject:
        return CosmosObject(dim, self.p)

    def unit(self) -> CosmosObject:
        return unit(self.p)

    def zero_object(self) -> CosmosObject:
        return zero_object(self.p)

    def check_object(self, x) -> None:
        if not isinstance(x, CosmosObject) or x.p != self.p:
            raise TypeError(f"{x!r} is not an object of {self!r}")

    def check_morphism(self, f) -> None:
        if not isinstance(f, CosmosMorphism) or f.p != self.p:
            raise TypeError(f"{f!r} is not a morphism of {self!r}")

    def src(self, f: CosmosMorphism) -> CosmosObject:
        return f.src

    def dst(self, f: CosmosMorphism) -> CosmosObject:
        return f.dst

    identity = staticmethod(identity)
    zero = staticmethod(zero)
    tensor = staticmethod(tensor)
    tensor_mor = staticmethod(tensor_mor)
    associator = staticmethod(associator)
    left_unit = staticmethod(left_unit)
    right_unit = staticmethod(right_unit)
    symmetry = staticmethod(symmetry)
    internal_hom = staticmethod(internal_hom)
    hom_mor = staticmethod(hom_mor)
    curry = staticmethod(curry)
    uncurry_to = staticmethod(uncurry_to)
    evaluation = staticmethod(evaluation)
    internal_comp = staticmethod(internal_comp)
    internal_ident = staticmethod(internal_ident)
    equalizer = staticmethod(equalizer)
    coequalizer = staticmethod(coequalizer)
    dual_pair = staticmethod(dual_pair)

    def compose(self, g: CosmosMorphism, f: CosmosMorphism) -> CosmosMorphism:
        return g @ f

    def equal(self, f: CosmosMorphism, g: CosmosMorphism) -> bool:
        return f == g

    def inverse(self, f: CosmosMorphism) -> CosmosMorphism:
        inv = is_isomorphism(f.matrix)
        if inv is None:
            raise ValueError("morphism is not invertible")
        return CosmosMorphism(f.dst, f.src, inv)

    def is_iso(self, f: CosmosMorphism) -> bool:
        return is_isomorphism(f.matrix) is not None

    def dim(self, x: CosmosObject) -> int:
        """Dimension of Hom(I, X) as an F_p-space."""
        return x.dim

    def point_basis(self, x: CosmosObject) -> list[CosmosMorphism]:
        """A basis of Hom(I, X)."""
        i = unit(self.p)
        return [CosmosMorphism(i, x, FpMatrix.unit_vector(self.p, x.dim, k)) for k in range(x.dim)]

    def point(self, x: CosmosObject, coords) -> CosmosMorphism:
        return CosmosMorphism(unit(self.p), x, FpMatrix.column(self.p, list(coords)))

    def point_coords(self, x: CosmosObject, pt: CosmosMorphism) -> np.ndarray:
        return pt.matrix.a[:, 0].copy()

    def mor_entries(self, f: CosmosMorphism) -> list:
        return f.matrix.tolist()
