"""Dense exact linear algebra over a prime field F_p.

Every morphism in the package is ultimately an :class:`FpMatrix`.  Pivoting is
leftmost column, topmost row, so every basis produced here is reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


class ModulusError(ValueError):
    """Raised when matrices over different prime fields are combined."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


MAX_MODULUS = 2 ** 31


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ModulusError(f"modulus must be prime, got {p!r}")
    if p >= MAX_MODULUS:
        # entrywise products in row reduction must fit in int64
        raise ModulusError(f"modulus {p} exceeds the supported bound 2^31")
    return int(p)


class FpMatrix:
    """Immutable dense matrix over F_p, stored row-major."""

    __slots__ = ("p", "a", "_hash")

    def __init__(self, p: int, data, shape: tuple[int, int] | None = None):
        self.p = check_prime(p)
        arr = np.array(data, dtype=np.int64)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise ValueError(f"FpMatrix needs 2-d data, got ndim={arr.ndim}")
        arr = np.mod(arr, self.p)
        arr.setflags(write=False)
        self.a = arr
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def _raw(cls, p: int, arr: np.ndarray) -> "FpMatrix":
        # trusted path: arr already reduced and owned
        obj = cls.__new__(cls)
        obj.p = p
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        obj.a = arr
        obj._hash = None
        return obj

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls._raw(check_prime(p), np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls._raw(check_prime(p), np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: int | None = None) -> "FpMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(p, 0, cols or 0)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(p, rows)

    @classmethod
    def column(cls, p: int, entries: Sequence[int]) -> "FpMatrix":
        return cls(p, np.array(entries, dtype=np.int64).reshape(-1, 1))

    @classmethod
    def unit_vector(cls, p: int, n: int, i: int) -> "FpMatrix":
        v = np.zeros((n, 1), dtype=np.int64)
        v[i, 0] = 1
        return cls._raw(check_prime(p), v)

    @classmethod
    def random(cls, p: int, rows: int, cols: int, rng: np.random.Generator) -> "FpMatrix":
        return cls._raw(check_prime(p), rng.integers(0, p, size=(rows, cols), dtype=np.int64))

    @classmethod
    def hstack(cls, p: int, blocks: Sequence["FpMatrix"], rows: int) -> "FpMatrix":
        for b in blocks:
            _same_p(p, b)
        if not blocks:
            return cls.zeros(p, rows, 0)
        return cls._raw(p, np.hstack([b.a for b in blocks]))

    @classmethod
    def vstack(cls, p: int, blocks: Sequence["FpMatrix"], cols: int) -> "FpMatrix":
        for b in blocks:
            _same_p(p, b)
        if not blocks:
            return cls.zeros(p, 0, cols)
        return cls._raw(p, np.vstack([b.a for b in blocks]))

    @classmethod
    def block_diag(cls, p: int, blocks: Sequence["FpMatrix"]) -> "FpMatrix":
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = np.zeros((r, c), dtype=np.int64)
        i = j = 0
        for b in blocks:
            _same_p(p, b)
            out[i:i + b.rows, j:j + b.cols] = b.a
            i += b.rows
            j += b.cols
        return cls._raw(p, out)

    # shape and entries ------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.a.ravel())

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def __getitem__(self, idx):
        return self.a[idx]

    def submatrix(self, rows=slice(None), cols=slice(None)) -> "FpMatrix":
        return FpMatrix._raw(self.p, self.a[rows, cols].copy())

    def col(self, j: int) -> "FpMatrix":
        return self.submatrix(slice(None), slice(j, j + 1))

    # arithmetic -------------------------------------------------------

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        _same_p(self.p, other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FpMatrix._raw(self.p, _mulmod(self.a, other.a, self.p))

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        _same_p(self.p, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return FpMatrix._raw(self.p, (self.a + other.a) % self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        _same_p(self.p, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return FpMatrix._raw(self.p, (self.a - other.a) % self.p)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix._raw(self.p, (-self.a) % self.p)

    def scale(self, k: int) -> "FpMatrix":
        return FpMatrix._raw(self.p, (self.a * (int(k) % self.p)) % self.p)

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix._raw(self.p, self.a.T.copy())

    def is_zero(self) -> bool:
        return not self.a.any()

    def rank(self) -> int:
        return len(rref(self)[1])

    # identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.shape, self.a.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.a.tolist()})"


_FLOAT_EXACT = 2 ** 52


def _mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 goes through BLAS and is exact while every dot product stays below 2^52
    bound = a.shape[1] * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    if bound < 2 ** 63:
        return (a @ b) % p
    return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)


def _same_p(p: int, m: FpMatrix) -> None:
    if m.p != p:
        raise ModulusError(f"modulus mismatch: {p} vs {m.p}")


def _inv(x: int, p: int) -> int:
    return pow(int(x), -1, p)


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = a.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * _inv(m[r, c], p)) % p
        factors = m[:, c].copy()
        factors[r] = 0
        if factors.any():
            m = (m - np.outer(factors, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int]]:
    """Reduced row echelon form and ascending pivot columns."""
    out, pivots = _rref_array(m.a, m.p)
    return FpMatrix._raw(m.p, out), pivots


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Columns form a basis of {v : m v = 0}, one per free column of rref(m)."""
    r, pivots = _rref_array(m.a, m.p)
    n = m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, pc in enumerate(pivots):
            out[pc, k] = (-r[i, f]) % m.p
    return FpMatrix._raw(m.p, out)


def cokernel_projection(m: FpMatrix) -> FpMatrix:
    """A surjection q out of the codomain of m whose kernel is exactly image(m)."""
    return kernel_basis(m.T).T


def image_basis(m: FpMatrix) -> FpMatrix:
    """Columns of m at the pivot positions; a basis of image(m)."""
    _, pivots = _rref_array(m.a, m.p)
    return m.submatrix(slice(None), pivots)


def kron(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    _same_p(a.p, b)
    # outer product reshaped: same index order as np.kron, without its per-call overhead
    r = np.multiply.outer(a.a, b.a).transpose(0, 2, 1, 3).reshape(a.rows * b.rows, a.cols * b.cols)
    return FpMatrix._raw(a.p, r % a.p)


def is_isomorphism(m: FpMatrix) -> FpMatrix | None:
    """Two-sided inverse when m is square of full rank, otherwise None."""
    n = m.rows
    if m.cols != n:
        return None
    aug = np.hstack([m.a, np.eye(n, dtype=np.int64)])
    r, pivots = _rref_array(aug, m.p)
    if pivots[:n] != list(range(n)) or (n and len(pivots) < n):
        return None
    if any(pc >= n for pc in pivots[:n]):
        return None
    return FpMatrix._raw(m.p, r[:, n:].copy())


def solve(a: FpMatrix, b: FpMatrix) -> FpMatrix | None:
    """Some x with a @ x == b (the one with free coordinates zero), or None."""
    _same_p(a.p, b)
    if a.rows != b.rows:
        raise ValueError(f"solve: row mismatch {a.shape} vs {b.shape}")
    n = a.cols
    aug = np.hstack([a.a, b.a])
    r, pivots = _rref_array(aug, a.p)
    if any(pc >= n for pc in pivots):
        return None
    x = np.zeros((n, b.cols), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return FpMatrix._raw(a.p, x)


def left_inverse(m: FpMatrix) -> FpMatrix:
    """r with r @ m == id, for m injective."""
    rt = solve(m.T, FpMatrix.identity(m.p, m.cols))
    if rt is None:
        raise ValueError("matrix is not injective")
    return rt.T


def right_inverse(m: FpMatrix) -> FpMatrix:
    """s with m @ s == id, for m surjective."""
    s = solve(m, FpMatrix.identity(m.p, m.rows))
    if s is None:
        raise ValueError("matrix is not surjective")
    return s


def all_vectors(p: int, n: int) -> Iterable[np.ndarray]:
    """Every vector of F_p^n in lexicographic order."""
    if n == 0:
        yield np.zeros(0, dtype=np.int64)
        return
    grid = np.indices((p,) * n).reshape(n, -1).T
    for row in grid:
        yield row.astype(np.int64)
