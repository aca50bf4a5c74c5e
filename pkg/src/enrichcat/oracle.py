"""Brute-force oracles that enumerate every vector instead of solving linear systems.

Used to cross-check the equalizer/coequalizer formulas for ends and coends.
They read only the raw hom-component matrices of the bifunctor and iterate
over all elements of F_p^n, so they share no code path with :mod:`limits`
beyond the input data.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .linalg import FpMatrix, all_vectors, rref

MAX_ENUM_DIM = 14


class OracleCapError(ValueError):
    pass


def _act(H, src, dst, vec: np.ndarray, p: int) -> np.ndarray:
    """The matrix H(src -> dst) at the morphism with coordinates vec."""
    comp = H.hom(src, dst).matrix.a
    flat = (comp @ vec) % p
    return flat.reshape(H.obj(dst).dim, H.obj(src).dim)


def _pt(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.kron(u, v)


def _ident_vec(C, c) -> np.ndarray:
    return C.ident(c).matrix.a[:, 0]


def _dims(C) -> tuple[list, dict]:
    objs = list(C.objects)
    return objs, {(a, b): C.hom(a, b).dim for a in objs for b in objs}


def dinatural_families(H, C) -> set[tuple[int, ...]]:
    """Every family (x_c) in prod_c H(c,c) with H(1,f) x_c = H(f,1) x_d for every f: c -> d."""
    p = C.cosmos.p
    objs, hd = _dims(C)
    sizes = [H.obj((c, c)).dim for c in objs]
    total = sum(sizes)
    if total > MAX_ENUM_DIM:
        raise OracleCapError(f"family space of dimension {total} exceeds the oracle cap")
    checks = []
    for c, d in product(objs, repeat=2):
        for f in all_vectors(p, hd[(c, d)]):
            left = _act(H, (c, c), (c, d), _pt(_ident_vec(C, c), f), p)
            right = _act(H, (d, d), (c, d), _pt(f, _ident_vec(C, d)), p)
            checks.append((objs.index(c), objs.index(d), left, right))
    offs = np.cumsum([0] + sizes)
    out = set()
    for x in all_vectors(p, total):
        parts = [x[offs[i]:offs[i + 1]] for i in range(len(objs))]
        if all(np.array_equal((l @ parts[i]) % p, (r @ parts[j]) % p) for i, j, l, r in checks):
            out.add(tuple(int(v) for v in x))
    return out


def codinatural_functionals(H, C) -> set[tuple[int, ...]]:
    """Every functional phi on sum_c H(c,c) with phi H(f,1) = phi H(1,f) on H(d,c) for every f: c -> d."""
    p = C.cosmos.p
    objs, hd = _dims(C)
    sizes = [H.obj((c, c)).dim for c in objs]
    total = sum(sizes)
    if total > MAX_ENUM_DIM:
        raise OracleCapError(f"functional space of dimension {total} exceeds the oracle cap")
    checks = []
    for c, d in product(objs, repeat=2):
        for f in all_vectors(p, hd[(c, d)]):
            left = _act(H, (d, c), (c, c), _pt(f, _ident_vec(C, c)), p)
            right = _act(H, (d, c), (d, d), _pt(_ident_vec(C, d), f), p)
            checks.append((objs.index(c), objs.index(d), left, right))
    offs = np.cumsum([0] + sizes)
    out = set()
    for phi in all_vectors(p, total):
        parts = [phi[offs[i]:offs[i + 1]] for i in range(len(objs))]
        if all(np.array_equal((parts[i] @ l) % p, (parts[j] @ r) % p) for i, j, l, r in checks):
            out.add(tuple(int(v) for v in phi))
    return out


def span_set(m: np.ndarray, p: int, rows: bool = False) -> set[tuple[int, ...]]:
    """All combinations of the columns (or rows) of m."""
    gens = m.T if not rows else m
    n = gens.shape[0]
    width = m.shape[0] if not rows else m.shape[1]
    out = set()
    for coeffs in all_vectors(p, n):
        v = (coeffs @ gens) % p if n else np.zeros(width, dtype=np.int64)
        out.add(tuple(int(x) for x in v))
    return out


def end_agrees(res, H, C) -> bool:
    """The image of the computed end inclusion equals the brute-force set of dinatural families."""
    p = C.cosmos.p
    return span_set(res.incl.matrix.a, p) == dinatural_families(H, C)


def coend_agrees(res, H, C) -> bool:
    """Functionals killing the relations are exactly those factoring through the computed quotient."""
    p = C.cosmos.p
    return span_set(res.incl.matrix.a, p, rows=True) == codinatural_functionals(H, C)


def chain_maps_bruteforce(a, b) -> int:
    """Number of chain maps a -> b, by enumerating every family of matrices."""
    p = a.p
    degs = range(min(a.lo, b.lo), max(a.hi, b.hi) + 1)
    shapes = [(n, b.dim(n), a.dim(n)) for n in degs]
    spaces = [list(all_vectors(p, r * c)) for _, r, c in shapes]
    count = 0
    for choice in product(*spaces):
        mats = {n: np.array(v, dtype=np.int64).reshape(r, c) for (n, r, c), v in zip(shapes, choice)}
        ok = True
        for n in degs:
            if n + 1 not in mats:
                continue
            lhs = (mats[n + 1] @ a.d(n).a) % p
            rhs = (b.d(n).a @ mats[n]) % p
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        count += ok
    return count


def canonical_basis(vectors, width: int, p: int) -> FpMatrix:
    """Reduced row echelon basis (nonzero rows only) of the span of the given row vectors."""
    vs = [list(v) for v in vectors]
    if not vs:
        return FpMatrix.zeros(p, 0, width)
    r, piv = rref(FpMatrix(p, np.array(vs, dtype=np.int64).reshape(len(vs), width)))
    return r.submatrix(rows=slice(0, len(piv)))


def end_bases(res, H, C) -> tuple[FpMatrix, FpMatrix]:
    """Canonical bases of the computed end (as families) and of the brute-force dinatural families."""
    p = C.cosmos.p
    m = res.incl.matrix
    return canonical_basis(m.T.tolist(), m.rows, p), canonical_basis(dinatural_families(H, C), m.rows, p)


def coend_bases(res, H, C) -> tuple[FpMatrix, FpMatrix]:
    """Canonical bases of the functionals through the computed coend and of the brute-force ones."""
    p = C.cosmos.p
    m = res.incl.matrix
    return canonical_basis(m.tolist(), m.cols, p), canonical_basis(codinatural_functionals(H, C), m.cols, p)
