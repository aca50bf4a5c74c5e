"""Bounded cochain complexes of finite-dimensional F_p-spaces.

Differentials raise degree by one.  The total tensor carries the Koszul sign
``d(x (x) y) = dx (x) y + (-1)^i x (x) dy`` and the total hom uses
``d(h)_i = d_B h_i - (-1)^n h_{i+1} d_A`` for ``h`` of degree ``n``.
Degree bounds are capped; exceeding the cap raises instead of truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from . import finvect as fv
from .finvect import CoherenceError, CosmosObject, DualPairWitness, zigzag_holds
from .linalg import FpMatrix, ModulusError, check_prime, is_isomorphism, kernel_basis, kron

DEFAULT_BOUNDS = (-8, 8)


class DegreeBoundError(ValueError):
    """A construction would produce terms outside the configured degree cap."""


def _z(p: int, r: int, c: int) -> FpMatrix:
    return FpMatrix.zeros(p, r, c)


class ChainComplex:
    """Terms ``X^n`` for ``lo <= n <= hi`` with differentials ``d^n: X^n -> X^{n+1}``."""

    __slots__ = ("p", "lo", "hi", "_dims", "_d")

    def __init__(self, p: int, lo: int, dims, diffs=None, check: bool = True):
        self.p = check_prime(p)
        dims = [int(x) for x in dims]
        if any(x < 0 for x in dims):
            raise ValueError("term dimensions must be non-negative")
        self.lo = int(lo)
        self.hi = self.lo + len(dims) - 1
        self._dims = tuple(dims)
        ds = []
        diffs = list(diffs) if diffs is not None else [None] * max(len(dims) - 1, 0)
        if len(diffs) != max(len(dims) - 1, 0):
            raise ValueError(f"expected {max(len(dims) - 1, 0)} differentials, got {len(diffs)}")
        for k, m in enumerate(diffs):
            src, dst = dims[k], dims[k + 1]
            if m is None:
                m = _z(p, dst, src)
            elif not isinstance(m, FpMatrix):
                m = FpMatrix(p, np.array(m, dtype=np.int64).reshape(dst, src))
            if m.p != p:
                raise ModulusError("differential over a different field")
            if m.shape != (dst, src):
                raise ValueError(f"d^{self.lo + k} has shape {m.shape}, expected {(dst, src)}")
            ds.append(m)
        self._d = tuple(ds)
        if check:
            for k in range(len(ds) - 1):
                if not (ds[k + 1] @ ds[k]).is_zero():
                    raise ValueError(f"d^{self.lo + k + 1} d^{self.lo + k} != 0")

    def dim(self, n: int) -> int:
        if self.lo <= n <= self.hi:
            return self._dims[n - self.lo]
        return 0

    def term(self, n: int) -> CosmosObject:
        return CosmosObject(self.dim(n), self.p)

    def d(self, n: int) -> FpMatrix:
        """d^n: X^n -> X^{n+1} (zero outside the stored range)."""
        if self.lo <= n < self.hi:
            return self._d[n - self.lo]
        return _z(self.p, self.dim(n + 1), self.dim(n))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def support(self) -> tuple[int, int] | None:
        nz = [n for n in self.degrees() if self.dim(n)]
        return (min(nz), max(nz)) if nz else None

    @property
    def total_dim(self) -> int:
        return sum(self._dims)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex) or other.p != self.p:
            return False
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return all(self.dim(n) == other.dim(n) for n in range(lo, hi + 1)) and all(
            self.d(n) == other.d(n) for n in range(lo, hi)
        )

    def __hash__(self) -> int:
        s = self.support()
        if s is None:
            return hash(("chain", self.p))
        return hash(("chain", self.p, s, tuple(self.dim(n) for n in range(s[0], s[1] + 1))))

    def __repr__(self) -> str:
        terms = " -> ".join(f"{n}:{self.dim(n)}" for n in self.degrees())
        return f"ChainComplex(F{self.p}, {terms})"


def zero_complex(p: int) -> ChainComplex:
    return ChainComplex(p, 0, [0])


class ChainMap:
    """A degree-zero map of complexes commuting with the differentials."""

    __slots__ = ("src", "dst", "_c")

    def __init__(self, src: ChainComplex, dst: ChainComplex, comps: Mapping[int, FpMatrix], check: bool = True):
        if src.p != dst.p:
            raise ModulusError("chain map between complexes over different fields")
        self.src, self.dst = src, dst
        c = {}
        for n in _union(src, dst):
            m = comps.get(n)
            if m is None:
                m = _z(src.p, dst.dim(n), src.dim(n))
            elif not isinstance(m, FpMatrix):
                m = FpMatrix(src.p, np.array(m, dtype=np.int64).reshape(dst.dim(n), src.dim(n)))
            if m.shape != (dst.dim(n), src.dim(n)):
                raise ValueError(f"component {n} has shape {m.shape}, expected {(dst.dim(n), src.dim(n))}")
            c[n] = m
        self._c = c
        if check:
            for n in _union(src, dst):
                if self.comp(n + 1) @ src.d(n) != dst.d(n) @ self.comp(n):
                    raise ValueError(f"not a chain map: square at degree {n} does not commute")

    @property
    def p(self) -> int:
        return self.src.p

    def comp(self, n: int) -> FpMatrix:
        m = self._c.get(n)
        return m if m is not None else _z(self.p, self.dst.dim(n), self.src.dim(n))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.dst != self.src:
            raise ValueError("cannot compose chain maps: codomain/domain mismatch")
        degs = set(_union(other.src, self.dst))
        return ChainMap(other.src, self.dst, {n: self.comp(n) @ other.comp(n) for n in degs}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: self.comp(n) + other.comp(n) for n in _union(self.src, self.dst)}, check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: self.comp(n) - other.comp(n) for n in _union(self.src, self.dst)}, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (
            self.src == other.src
            and self.dst == other.dst
            and all(self.comp(n) == other.comp(n) for n in _union(self.src, self.dst))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"ChainMap({self.src} -> {self.dst})"


def _union(a: ChainComplex, b: ChainComplex) -> range:
    return range(min(a.lo, b.lo), max(a.hi, b.hi) + 1)


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: FpMatrix.identity(c.p, c.dim(n)) for n in c.degrees()}, check=False)


def zero_map(a: ChainComplex, b: ChainComplex) -> ChainMap:
    return ChainMap(a, b, {}, check=False)


# basic complexes ----------------------------------------------------------

def sphere(x: CosmosObject) -> ChainComplex:
    """S(X): X concentrated in degree 0."""
    return ChainComplex(x.p, 0, [x.dim])


def disk(x: CosmosObject) -> ChainComplex:
    """D(X): X in degrees -1 and 0 joined by the identity."""
    return ChainComplex(x.p, -1, [x.dim, x.dim], [FpMatrix.identity(x.p, x.dim)])


def shift(c: ChainComplex, n: int) -> ChainComplex:
    """c[n]: terms c[n]^k = c^{k+n}, differential (-1)^n d."""
    sign = -1 if n % 2 else 1
    return ChainComplex(
        c.p, c.lo - n, [c.dim(k) for k in c.degrees()],
        [c.d(k).scale(sign) for k in range(c.lo, c.hi)],
    )


def _check_bounds(lo: int, hi: int, bounds: tuple[int, int]) -> None:
    if lo < bounds[0] or hi > bounds[1]:
        raise DegreeBoundError(f"degrees [{lo}, {hi}] exceed the configured cap {list(bounds)}")


def _trimmed(c: ChainComplex) -> tuple[int, int]:
    s = c.support()
    return s if s is not None else (0, -1)


# total tensor -------------------------------------------------------------

def _tensor_blocks(a: ChainComplex, b: ChainComplex, n: int) -> list[tuple[int, int, int, int]]:
    """(i, j, offset, size) for the summands A^i (x) B^j of (A (x) B)^n, i ascending."""
    out, off = [], 0
    for i in a.degrees():
        j = n - i
        if b.lo <= j <= b.hi:
            size = a.dim(i) * b.dim(j)
            out.append((i, j, off, size))
            off += size
    return out


def _tensor_range(a: ChainComplex, b: ChainComplex) -> tuple[int, int]:
    return a.lo + b.lo, a.hi + b.hi


_TENSOR_CACHE: dict = {}
_TENSOR_CACHE_MAX = 4096


def _exact_key(c: ChainComplex) -> tuple:
    # equality ignores zero padding, but block offsets depend on lo, so the cache keys on the raw data
    return (c.p, c.lo, c._dims, tuple(d.entries for d in c._d))


def total_tensor(a: ChainComplex, b: ChainComplex, bounds: tuple[int, int] = DEFAULT_BOUNDS) -> ChainComplex:
    if a.p != b.p:
        raise ModulusError("total_tensor of complexes over different fields")
    key = (_exact_key(a), _exact_key(b), tuple(bounds))
    hit = _TENSOR_CACHE.get(key)
    if hit is None:
        if len(_TENSOR_CACHE) >= _TENSOR_CACHE_MAX:
            _TENSOR_CACHE.clear()
        hit = _TENSOR_CACHE[key] = _total_tensor(a, b, bounds)
    return hit


def _total_tensor(a: ChainComplex, b: ChainComplex, bounds: tuple[int, int]) -> ChainComplex:
    p = a.p
    lo, hi = _tensor_range(a, b)
    _check_bounds(*_support_range(a, b, "tensor"), bounds)
    dims = [sum(s for *_, s in _tensor_blocks(a, b, n)) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        src = _tensor_blocks(a, b, n)
        dst = {(i, j): (off, s) for i, j, off, s in _tensor_blocks(a, b, n + 1)}
        m = np.zeros((dims[n + 1 - lo], dims[n - lo]), dtype=np.int64)
        for i, j, off, s in src:
            if (i + 1, j) in dst:
                o2, s2 = dst[(i + 1, j)]
                blk = kron(a.d(i), FpMatrix.identity(p, b.dim(j)))
                m[o2:o2 + s2, off:off + s] += blk.a
            if (i, j + 1) in dst:
                o2, s2 = dst[(i, j + 1)]
                blk = kron(FpMatrix.identity(p, a.dim(i)), b.d(j))
                if i % 2:
                    blk = -blk
                m[o2:o2 + s2, off:off + s] += blk.a
        diffs.append(FpMatrix(p, m))
    return ChainComplex(p, lo, dims, diffs)


def _support_range(a: ChainComplex, b: ChainComplex, kind: str) -> tuple[int, int]:
    # bounds are judged on nonzero terms so zero padding never trips the cap
    sa, sb = a.support(), b.support()
    if sa is None or sb is None:
        return (0, -1)
    if kind == "tensor":
        return sa[0] + sb[0], sa[1] + sb[1]
    return sb[0] - sa[1], sb[1] - sa[0]


def tensor_mor(f: ChainMap, g: ChainMap, bounds=DEFAULT_BOUNDS) -> ChainMap:
    src = total_tensor(f.src, g.src, bounds)
    dst = total_tensor(f.dst, g.dst, bounds)
    comps = {}
    for n in src.degrees():
        m = np.zeros((dst.dim(n), src.dim(n)), dtype=np.int64)
        dblocks = {(i, j): (off, s) for i, j, off, s in _tensor_blocks(f.dst, g.dst, n)}
        for i, j, off, s in _tensor_blocks(f.src, g.src, n):
            if (i, j) in dblocks:
                o2, s2 = dblocks[(i, j)]
                m[o2:o2 + s2, off:off + s] = kron(f.comp(i), g.comp(j)).a
        comps[n] = FpMatrix(src.p, m)
    return ChainMap(src, dst, comps, check=False)


# total hom ----------------------------------------------------------------

def _hom_blocks(a: ChainComplex, b: ChainComplex, n: int) -> list[tuple[int, int, int]]:
    """(i, offset, size) for the factors [A^i, B^{i+n}] of Hom(A, B)^n, i ascending."""
    out, off = [], 0
    for i in a.degrees():
        if b.lo <= i + n <= b.hi:
            size = a.dim(i) * b.dim(i + n)
            out.append((i, off, size))
            off += size
    return out


def _hom_range(a: ChainComplex, b: ChainComplex) -> tuple[int, int]:
    return b.lo - a.hi, b.hi - a.lo


def total_hom(a: ChainComplex, b: ChainComplex, bounds: tuple[int, int] = DEFAULT_BOUNDS) -> ChainComplex:
    if a.p != b.p:
        raise ModulusError("total_hom of complexes over different fields")
    p = a.p
    lo, hi = _hom_range(a, b)
    _check_bounds(*_support_range(a, b, "hom"), bounds)
    dims = [sum(s for *_, s in _hom_blocks(a, b, n)) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        dst = {i: (off, s) for i, off, s in _hom_blocks(a, b, n + 1)}
        m = np.zeros((dims[n + 1 - lo], dims[n - lo]), dtype=np.int64)
        for i, off, s in _hom_blocks(a, b, n):
            # h_i |-> d_B h_i lands in component i
            if i in dst:
                o2, s2 = dst[i]
                m[o2:o2 + s2, off:off + s] += kron(b.d(i + n), FpMatrix.identity(p, a.dim(i))).a
            # h_i |-> -(-1)^n h_i d_A^{i-1} lands in component i-1
            if i - 1 in dst:
                o2, s2 = dst[i - 1]
                blk = kron(FpMatrix.identity(p, b.dim(i + n)), a.d(i - 1).T)
                if n % 2 == 0:
                    blk = -blk
                m[o2:o2 + s2, off:off + s] += blk.a
        diffs.append(FpMatrix(p, m))
    return ChainComplex(p, lo, dims, diffs)


def hom_mor(f: ChainMap, g: ChainMap, bounds=DEFAULT_BOUNDS) -> ChainMap:
    """[f, g]: Hom(A, B) -> Hom(A', B') for f: A' -> A, g: B -> B'; h |-> g h f."""
    src = total_hom(f.dst, g.src, bounds)
    dst = total_hom(f.src, g.dst, bounds)
    comps = {}
    for n in src.degrees():
        m = np.zeros((dst.dim(n), src.dim(n)), dtype=np.int64)
        dblocks = {i: (off, s) for i, off, s in _hom_blocks(f.src, g.dst, n)}
        for i, off, s in _hom_blocks(f.dst, g.src, n):
            if i in dblocks:
                o2, s2 = dblocks[i]
                m[o2:o2 + s2, off:off + s] = kron(g.comp(i + n), f.comp(i).T).a
        comps[n] = FpMatrix(src.p, m)
    return ChainMap(src, dst, comps, check=False)


def curry(f: ChainMap, x: ChainComplex, y: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    """X (x) Y -> Z becomes X -> Hom(Y, Z); no signs with these conventions."""
    if f.src != total_tensor(x, y, bounds):
        raise ValueError("curry: source is not X (x) Y")
    z = f.dst
    h = total_hom(y, z, bounds)
    comps = {}
    for pdeg in x.degrees():
        m = np.zeros((h.dim(pdeg), x.dim(pdeg)), dtype=np.int64)
        for j, off_h, s_h in _hom_blocks(y, z, pdeg):
            blocks = {(i, jj): (off, s) for i, jj, off, s in _tensor_blocks(x, y, pdeg + j)}
            if (pdeg, j) not in blocks:
                continue
            off_t, s_t = blocks[(pdeg, j)]
            piece = f.comp(pdeg + j).submatrix(slice(None), slice(off_t, off_t + s_t))
            cm = fv.curry(
                fv.CosmosMorphism(fv.tensor(x.term(pdeg), y.term(j)), z.term(pdeg + j), piece),
                x.term(pdeg), y.term(j),
            )
            m[off_h:off_h + s_h, :] = cm.matrix.a
        comps[pdeg] = FpMatrix(x.p, m)
    return ChainMap(x, h, comps)


def uncurry_to(g: ChainMap, y: ChainComplex, z: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    """X -> Hom(Y, Z) becomes X (x) Y -> Z."""
    x = g.src
    if g.dst != total_hom(y, z, bounds):
        raise ValueError("uncurry: codomain is not Hom(Y, Z)")
    t = total_tensor(x, y, bounds)
    comps = {}
    for n in t.degrees():
        m = np.zeros((z.dim(n), t.dim(n)), dtype=np.int64)
        for i, j, off_t, s_t in _tensor_blocks(x, y, n):
            hb = {jj: (off, s) for jj, off, s in _hom_blocks(y, z, i)}
            if j not in hb:
                continue
            off_h, s_h = hb[j]
            piece = g.comp(i).submatrix(slice(off_h, off_h + s_h), slice(None))
            um = fv.uncurry_to(
                fv.CosmosMorphism(x.term(i), fv.internal_hom(y.term(j), z.term(n)), piece),
                y.term(j), z.term(n),
            )
            m[:, off_t:off_t + s_t] = um.matrix.a
        comps[n] = FpMatrix(x.p, m)
    return ChainMap(t, z, comps)


def internal_comp(a: ChainComplex, b: ChainComplex, c: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    """Hom(B, C) (x) Hom(A, B) -> Hom(A, C), g (x) h |-> g h."""
    hbc, hab, hac = total_hom(b, c, bounds), total_hom(a, b, bounds), total_hom(a, c, bounds)
    src = total_tensor(hbc, hab, bounds)
    p = a.p
    comps = {}
    for n in src.degrees():
        m = np.zeros((hac.dim(n), src.dim(n)), dtype=np.int64)
        out_blocks = {i: (off, s) for i, off, s in _hom_blocks(a, c, n)}
        for s_deg, t_deg, off_t, _ in _tensor_blocks(hbc, hab, n):
            g_blocks = {k: (off, sz) for k, off, sz in _hom_blocks(b, c, s_deg)}
            h_blocks = _hom_blocks(a, b, t_deg)
            width_h = hab.dim(t_deg)
            for i, off_h, s_h in h_blocks:
                k = i + t_deg
                if k not in g_blocks or i not in out_blocks:
                    continue
                off_g, s_g = g_blocks[k]
                off_o, s_o = out_blocks[i]
                comp = fv.internal_comp(a.term(i), b.term(k), c.term(k + s_deg))
                cm = comp.matrix.a
                # place [B^k,C^{k+s}] (x) [A^i,B^k] inside Hom(B,C)^s (x) Hom(A,B)^t
                for gi in range(s_g):
                    for hi_ in range(s_h):
                        col = off_t + (off_g + gi) * width_h + (off_h + hi_)
                        m[off_o:off_o + s_o, col] += cm[:, gi * s_h + hi_]
        comps[n] = FpMatrix(p, m)
    return ChainMap(src, hac, comps)


def internal_ident(a: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    """S(I) -> Hom(A, A) naming the identity."""
    h = total_hom(a, a, bounds)
    v = np.zeros((h.dim(0), 1), dtype=np.int64)
    for i, off, s in _hom_blocks(a, a, 0):
        v[off:off + s, 0] = np.eye(a.dim(i), dtype=np.int64).reshape(-1)
    return ChainMap(sphere(fv.unit(a.p)), h, {0: FpMatrix(a.p, v)})


# structural isomorphisms --------------------------------------------------

def _perm_map(src: ChainComplex, dst: ChainComplex, entries: dict[int, list[tuple[int, int, int]]]) -> ChainMap:
    comps = {}
    for n in src.degrees():
        m = np.zeros((dst.dim(n), src.dim(n)), dtype=np.int64)
        for s_idx, t_idx, sign in entries.get(n, []):
            m[t_idx, s_idx] = sign
        comps[n] = FpMatrix(src.p, m)
    return ChainMap(src, dst, comps)


_STRUCT_CACHE: dict = {}


def _cached(kind: str, build, bounds, *cs):
    key = (kind, tuple(bounds)) + tuple(_exact_key(c) for c in cs)
    hit = _STRUCT_CACHE.get(key)
    if hit is None:
        if len(_STRUCT_CACHE) >= _TENSOR_CACHE_MAX:
            _STRUCT_CACHE.clear()
        hit = _STRUCT_CACHE[key] = build(*cs, bounds)
    return hit


def associator(a: ChainComplex, b: ChainComplex, c: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    return _cached("assoc", _associator, bounds, a, b, c)


def _associator(a: ChainComplex, b: ChainComplex, c: ChainComplex, bounds) -> ChainMap:
    ab = total_tensor(a, b, bounds)
    bc = total_tensor(b, c, bounds)
    src = total_tensor(ab, c, bounds)
    dst = total_tensor(a, bc, bounds)
    entries: dict[int, list] = {}
    for n in src.degrees():
        outer_s = {k: (off, s) for k, _, off, s in _tensor_blocks(ab, c, n)}
        outer_t = {i: (off, s) for i, _, off, s in _tensor_blocks(a, bc, n)}
        lst = []
        for i in a.degrees():
            for j in b.degrees():
                k = n - i - j
                if not (c.lo <= k <= c.hi):
                    continue
                da, db, dc = a.dim(i), b.dim(j), c.dim(k)
                if not (da and db and dc):
                    continue
                inner_ab = {ii: off for ii, _, off, _ in _tensor_blocks(a, b, i + j)}[i]
                inner_bc = {jj: off for jj, _, off, _ in _tensor_blocks(b, c, j + k)}[j]
                so = outer_s[i + j][0]
                to = outer_t[i][0]
                w_ab, w_bc = ab.dim(i + j), bc.dim(j + k)
                for x in range(da):
                    for y in range(db):
                        for z in range(dc):
                            s_idx = so + (inner_ab + x * db + y) * dc + z
                            t_idx = to + x * w_bc + (inner_bc + y * dc + z)
                            lst.append((s_idx, t_idx, 1))
        entries[n] = lst
    return _perm_map(src, dst, entries)


def left_unit(a: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    s = sphere(fv.unit(a.p))
    src = total_tensor(s, a, bounds)
    return ChainMap(src, a, {n: FpMatrix.identity(a.p, a.dim(n)) for n in a.degrees()})


def right_unit(a: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    s = sphere(fv.unit(a.p))
    src = total_tensor(a, s, bounds)
    return ChainMap(src, a, {n: FpMatrix.identity(a.p, a.dim(n)) for n in a.degrees()})


def symmetry(a: ChainComplex, b: ChainComplex, bounds=DEFAULT_BOUNDS) -> ChainMap:
    """x (x) y |-> (-1)^{|x||y|} y (x) x."""
    return _cached("sym", _symmetry, bounds, a, b)


def _symmetry(a: ChainComplex, b: ChainComplex, bounds) -> ChainMap:
    src = total_tensor(a, b, bounds)
    dst = total_tensor(b, a, bounds)
    entries: dict[int, list] = {}
    for n in src.degrees():
        tgt = {(j, i): off for j, i, off, _ in _tensor_blocks(b, a, n)}
        lst = []
        for i, j, off, _ in _tensor_blocks(a, b, n):
            da, db = a.dim(i), b.dim(j)
            sign = -1 if (i * j) % 2 else 1
            o2 = tgt[(j, i)]
            for x in range(da):
                for y in range(db):
                    lst.append((off + x * db + y, o2 + y * da + x, sign))
        entries[n] = lst
    return _perm_map(src, dst, entries)


# dualizability --------------------------------------------------------------

def chain_dual_pair(c: ChainComplex, bounds=DEFAULT_BOUNDS) -> DualPairWitness:
    """(C, Hom(C, S(I))) with sign-corrected evaluation and coevaluation."""
    p = c.p
    s = sphere(fv.unit(p))
    y = total_hom(c, s, bounds)
    xy = total_tensor(c, y, bounds)
    yx = total_tensor(y, c, bounds)
    eps = np.zeros((1, xy.dim(0)), dtype=np.int64)
    for i, j, off, _ in _tensor_blocks(c, y, 0):
        n = c.dim(i)
        sign = -1 if i % 2 else 1
        for k in range(n):
            eps[0, off + k * n + k] = sign
    eta = np.zeros((yx.dim(0), 1), dtype=np.int64)
    for j, i, off, _ in _tensor_blocks(y, c, 0):
        n = c.dim(i)
        sign = -1 if i % 2 else 1
        for k in range(n):
            eta[off + k * n + k, 0] = sign
    w = DualPairWitness(
        c, y,
        ChainMap(s, yx, {0: FpMatrix(p, eta)}),
        ChainMap(xy, s, {0: FpMatrix(p, eps)}),
    )
    if not zigzag_holds(ChainCosmos(p, bounds), w):
        raise CoherenceError(f"dual pair witness for {c} fails a triangle identity")
    return w


# cycles -------------------------------------------------------------------

def cycles0(c: ChainComplex) -> tuple[CosmosObject, fv.CosmosMorphism]:
    """Z^0(C) = ker(d^0) with its inclusion into C^0."""
    k = kernel_basis(c.d(0))
    z = CosmosObject(k.cols, c.p)
    return z, fv.CosmosMorphism(z, c.term(0), k)


class ChainCosmos:
    """Bounded complexes with total tensor and total hom."""

    name = "chain"

    def __init__(self, p: int, bounds: tuple[int, int] = DEFAULT_BOUNDS):
        self.p = check_prime(p)
        self.bounds = (int(bounds[0]), int(bounds[1]))

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainCosmos) and (other.p, other.bounds) == (self.p, self.bounds)

    def __hash__(self) -> int:
        return hash(("chain", self.p, self.bounds))

    def __repr__(self) -> str:
        return f"ChainCosmos(F_{self.p}, {list(self.bounds)})"

    def describe(self) -> str:
        lo, hi = self.bounds
        return (
            f"Ch_b(FinVect_F{self.p}): bounded cochain complexes of finite-dimensional "
            f"F_{self.p}-spaces, degrees capped to [{lo}, {hi}], total tensor and total hom"
        )

    def unit(self) -> ChainComplex:
        return sphere(fv.unit(self.p))

    def zero_object(self) -> ChainComplex:
        return zero_complex(self.p)

    def check_object(self, x) -> None:
        if not isinstance(x, ChainComplex) or x.p != self.p:
            raise TypeError(f"{x!r} is not an object of {self!r}")

    def check_morphism(self, f) -> None:
        if not isinstance(f, ChainMap) or f.p != self.p:
            raise TypeError(f"{f!r} is not a morphism of {self!r}")

    def src(self, f: ChainMap) -> ChainComplex:
        return f.src

    def dst(self, f: ChainMap) -> ChainComplex:
        return f.dst

    def identity(self, x):
        return identity_map(x)

    def zero(self, x, y):
        return zero_map(x, y)

    def tensor(self, x, y):
        return total_tensor(x, y, self.bounds)

    def tensor_mor(self, f, g):
        return tensor_mor(f, g, self.bounds)

    def associator(self, x, y, z):
        return associator(x, y, z, self.bounds)

    def left_unit(self, x):
        return left_unit(x, self.bounds)

    def right_unit(self, x):
        return right_unit(x, self.bounds)

    def symmetry(self, x, y):
        return symmetry(x, y, self.bounds)

    def internal_hom(self, x, y):
        return total_hom(x, y, self.bounds)

    def hom_mor(self, f, g):
        return hom_mor(f, g, self.bounds)

    def curry(self, f, x, y):
        return curry(f, x, y, self.bounds)

    def uncurry_to(self, g, y, z):
        return uncurry_to(g, y, z, self.bounds)

    def evaluation(self, y, z):
        return uncurry_to(identity_map(total_hom(y, z, self.bounds)), y, z, self.bounds)

    def internal_comp(self, x, y, z):
        return internal_comp(x, y, z, self.bounds)

    def internal_ident(self, x):
        return internal_ident(x, self.bounds)

    def dual_pair(self, x):
        return chain_dual_pair(x, self.bounds)

    def compose(self, g, f):
        return g @ f

    def equal(self, f, g) -> bool:
        return f == g

    def inverse(self, f: ChainMap) -> ChainMap:
        comps = {}
        for n in _union(f.src, f.dst):
            inv = is_isomorphism(f.comp(n))
            if inv is None:
                raise ValueError(f"chain map is not invertible in degree {n}")
            comps[n] = inv
        return ChainMap(f.dst, f.src, comps, check=False)

    def is_iso(self, f: ChainMap) -> bool:
        return all(is_isomorphism(f.comp(n)) is not None for n in _union(f.src, f.dst))

    def dim(self, x: ChainComplex) -> int:
        return cycles0(x)[0].dim

    def point_basis(self, x: ChainComplex) -> list[ChainMap]:
        """Chain maps S(I) -> X from a basis of Z^0(X)."""
        _, inc = cycles0(x)
        s = self.unit()
        return [ChainMap(s, x, {0: inc.matrix.col(k)}, check=False) for k in range(inc.src.dim)]

    def point(self, x: ChainComplex, coords) -> ChainMap:
        v = FpMatrix.column(self.p, list(coords))
        return ChainMap(self.unit(), x, {0: v})

    def point_coords(self, x: ChainComplex, pt: ChainMap) -> np.ndarray:
        return pt.comp(0).a[:, 0].copy()

    def mor_entries(self, f: ChainMap) -> dict:
        return {str(n): f.comp(n).tolist() for n in _union(f.src, f.dst)}


def iter_small_complexes(p: int, max_terms: int, max_dim: int, lo: int = -1) -> Iterator[ChainComplex]:
    """Every complex with up to max_terms consecutive terms of dim <= max_dim (exhaustive)."""
    from itertools import product

    from .linalg import all_vectors

    for nterms in range(1, max_terms + 1):
        for dims in product(range(max_dim + 1), repeat=nterms):
            shapes = [(dims[k + 1], dims[k]) for k in range(nterms - 1)]
            choices = [list(all_vectors(p, r * c)) for r, c in shapes]
            for ds in product(*choices) if choices else [()]:
                mats = [FpMatrix(p, np.array(v).reshape(r, c)) for v, (r, c) in zip(ds, shapes)]
                if all((mats[k + 1] @ mats[k]).is_zero() for k in range(len(mats) - 1)):
                    yield ChainComplex(p, lo, dims, mats, check=False)
