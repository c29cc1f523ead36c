"""Exact dense linear algebra over prime fields and the rationals.

Matrices are plain numpy arrays. Over F_p with small p they are ``int64``
arrays of least non-negative residues; over Q (or huge p) they are object
arrays of ``Fraction`` (resp. Python ``int``). A :class:`Field` knows how to
normalise arrays into its canonical representation; every function here
returns canonical arrays.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import _kernels

# above this, int64 products could overflow inside matmul
_INT64_PRIME_LIMIT = 1 << 20


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _is_prime(p: int) -> bool:
    """Miller-Rabin with the first 13 prime bases; deterministic below 3.3e24."""
    if p < 2:
        return False
    for b in _MR_BASES:
        if p % b == 0:
            return p == b
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Field:
    """F_p for a prime ``p``, or Q when ``p`` is None."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int | None:
        return self.p

    @property
    def label(self) -> str:
        """Token used by the file formats: the prime, or ``Q``."""
        return str(self.p) if self.p else "Q"

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_PRIME_LIMIT:
            return np.int64
        return object

    @property
    def fast(self) -> bool:
        return self.dtype is np.int64

    # scalars -------------------------------------------------------------
    def scalar(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def format_scalar(self, x) -> str:
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def elements(self):
        if self.p is None:
            raise ValueError("Q has no finite element list")
        return range(self.p)

    # arrays --------------------------------------------------------------
    def array(self, data, shape: tuple[int, int] | None = None) -> np.ndarray:
        a = np.array(data, dtype=object)
        if shape is not None:
            a = a.reshape(shape)
        return self.reduce(a)

    def reduce(self, a) -> np.ndarray:
        a = np.asarray(a)
        if self.fast:
            if a.dtype == object:
                if a.size == 0:
                    return np.zeros(a.shape, dtype=np.int64)
                return np.vectorize(self.scalar, otypes=[np.int64])(a)
            return np.asarray(a, dtype=np.int64) % self.p
        out = np.empty(a.shape, dtype=object)
        flat = a.reshape(-1)
        out_flat = out.reshape(-1)
        for i, x in enumerate(flat):
            out_flat[i] = self.scalar(x.item() if hasattr(x, "item") else x)
        return out

    def zeros(self, rows: int, cols: int | None = None) -> np.ndarray:
        shape = (rows,) if cols is None else (rows, cols)
        if self.fast:
            return np.zeros(shape, dtype=np.int64)
        return self.reduce(np.zeros(shape, dtype=object))

    def eye(self, n: int) -> np.ndarray:
        if self.fast:
            return np.eye(n, dtype=np.int64)
        return self.reduce(np.eye(n, dtype=np.int64).astype(object))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
        if rows == 0 or cols == 0:
            return self.zeros(rows, cols)
        return self.reduce(np.kron(a, b))

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a)


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


class RREF(NamedTuple):
    rank: int
    pivots: list[int]
    reduced: np.ndarray


def _rref_generic(m: np.ndarray, field: Field) -> RREF:
    a = [list(row) for row in m]
    rows = len(a)
    cols = m.shape[1]
    p = field.p
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.scalar(x * inv) for x in a[r]] if p else [x * inv for x in a[r]]
        for i in range(rows):
            f = a[i][c]
            if i != r and f != 0:
                if p:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
                else:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = a[i][j]
    return RREF(r, pivots, out)


def rref(m: np.ndarray, field: Field) -> RREF:
    """Reduced row echelon form; pivot = first nonzero entry in scan order."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if m.shape[0] == 0 or m.shape[1] == 0:
        return RREF(0, [], field.zeros(*m.shape))
    if field.fast:
        rank, pivots, reduced = _kernels.rref_modp(m, field.p)
        return RREF(rank, list(pivots), reduced)
    return _rref_generic(field.reduce(m), field)


def rank(m: np.ndarray, field: Field) -> int:
    return rref(m, field).rank


def kernel_basis(m: np.ndarray, field: Field) -> list[np.ndarray]:
    """Basis of {x : m x = 0}, one vector per free column, in column order."""
    m = np.asarray(m)
    cols = m.shape[1]
    res = rref(m, field)
    pivset = set(res.pivots)
    basis = []
    for f in range(cols):
        if f in pivset:
            continue
        v = field.zeros(cols)
        v[f] = field.scalar(1)
        for i, pc in enumerate(res.pivots):
            v[pc] = field.scalar(-res.reduced[i, f])
        basis.append(v)
    return basis


def kernel_matrix(m: np.ndarray, field: Field) -> np.ndarray:
    """Kernel basis stacked as the columns of a (cols x nullity) matrix."""
    basis = kernel_basis(m, field)
    if not basis:
        return field.zeros(np.asarray(m).shape[1], 0)
    return np.stack(basis, axis=1)


def solve_matrix(m: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray | None:
    """Some X with m X = b, or None when inconsistent. ``b`` is 2-d."""
    m = np.asarray(m)
    b = np.asarray(b)
    if m.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: matrix has {m.shape[0]} rows, right side {b.shape[0]}")
    cols = m.shape[1]
    if b.shape[1] == 0:
        return field.zeros(cols, 0)
    if m.shape[0] == 0:
        return field.zeros(cols, b.shape[1])
    res = rref(np.hstack([field.reduce(m), field.reduce(b)]), field)
    if res.pivots and res.pivots[-1] >= cols:
        return None
    x = field.zeros(cols, b.shape[1])
    for i, pc in enumerate(res.pivots):
        x[pc, :] = res.reduced[i, cols:]
    return x


def solve_linear(m: np.ndarray, b, field: Field) -> np.ndarray | None:
    """Some x with m x = b for a column vector b, or None when inconsistent."""
    b = np.asarray(b)
    if b.ndim != 1:
        raise ValueError("solve_linear expects a 1-d right-hand side")
    if b.shape[0] != np.asarray(m).shape[0]:
        raise ValueError(f"right side has length {b.shape[0]}, matrix has {np.asarray(m).shape[0]} rows")
    x = solve_matrix(m, b.reshape(-1, 1), field)
    return None if x is None else x[:, 0]


def inverse(m: np.ndarray, field: Field) -> np.ndarray | None:
    m = np.asarray(m)
    if m.shape[0] != m.shape[1]:
        return None
    if rank(m, field) != m.shape[0]:
        return None
    return solve_matrix(m, field.eye(m.shape[0]), field)


def column_space(m: np.ndarray, field: Field) -> np.ndarray:
    """Basis of the column space: the pivot columns of ``m``."""
    m = np.asarray(m)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return field.zeros(m.shape[0], 0)
    res = rref(m, field)
    return field.reduce(m[:, res.pivots])


def extend_to_basis(sub: np.ndarray, dim: int, field: Field) -> list[int]:
    """Indices of standard basis vectors completing the columns of ``sub``.

    Candidates are tried in index order, so the complement is deterministic.
    """
    current = sub if sub.shape[1] else field.zeros(dim, 0)
    r = rank(current, field) if current.shape[1] else 0
    chosen = []
    for j in range(dim):
        if r == dim:
            break
        e = field.zeros(dim, 1)
        e[j, 0] = field.scalar(1)
        trial = np.hstack([current, e])
        r2 = rank(trial, field)
        if r2 > r:
            current, r = trial, r2
            chosen.append(j)
    return chosen


def block_diag(blocks: list[np.ndarray], field: Field) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def enumerate_combinations(q: int, k: int) -> np.ndarray:
    """All vectors of F_q^k as rows, in lexicographic order (first digit most significant)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q ** k, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q
