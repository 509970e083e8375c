"""Dense matrices over GF(q): RREF, rank, kernel, inverse, product."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldSpec


class Matrix:
    """Immutable dense matrix over a :class:`FieldSpec`.

    Entries are encoded field elements stored in a read-only ``uint8`` array.
    """

    __slots__ = ("field", "entries", "_key")

    def __init__(self, field: FieldSpec, entries, cols: int | None = None):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, cols if cols is not None else 0)
        if arr.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        if cols is not None and arr.shape[1] != cols:
            raise ValueError(f"expected {cols} columns, got {arr.shape[1]}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries must lie in [0, {field.q})")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        self.field = field
        self.entries = arr
        self._key = None

    @classmethod
    def _wrap(cls, field: FieldSpec, arr: np.ndarray) -> "Matrix":
        # trusted constructor: arr is already a valid uint8 array
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.setflags(write=False)
        obj.field = field
        obj.entries = arr
        obj._key = None
        return obj

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls._wrap(field, np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls._wrap(field, np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def key(self) -> bytes:
        if self._key is None:
            self._key = bytes([self.rows, self.cols]) + self.entries.tobytes()
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def stack(self, other: "Matrix") -> "Matrix":
        return Matrix._wrap(self.field, np.vstack([self.entries, other.entries]))


@dataclass(frozen=True)
class RREF:
    matrix: Matrix
    rank: int
    pivots: tuple[int, ...]

    def __iter__(self):
        return iter((self.matrix, self.rank, self.pivots))


def rref_array(f: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a uint8 array in place of a copy; returns (R, pivots)."""
    add, mul, neg, inv = f.add_table, f.mul_table, f.neg_table, f.inv_table
    R = np.array(a, dtype=np.uint8, copy=True)
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        lead = R[r, c]
        if lead != 1:
            R[r] = mul[inv[lead], R[r]]
        factors = neg[R[:, c]]
        factors[r] = 0
        if factors.any():
            R = add[R, mul[factors[:, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rref(M: Matrix) -> RREF:
    """Unique reduced row echelon form, rank and pivot columns."""
    R, pivots = rref_array(M.field, M.entries)
    return RREF(Matrix._wrap(M.field, R), len(pivots), tuple(pivots))


def rank(M: Matrix) -> int:
    return rref(M).rank


def kernel(M: Matrix) -> Matrix:
    """RREF basis (as rows) of the right null space ``{v : M v^T = 0}``."""
    f = M.field
    R, pivots = rref_array(f, M.entries)
    n = M.cols
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for t, c in enumerate(free):
        basis[t, c] = 1
        for j, pc in enumerate(pivots):
            basis[t, pc] = f.neg_table[R[j, c]]
    # rows are already independent; reduce for a canonical presentation
    Rb, _ = rref_array(f, basis)
    return Matrix._wrap(f, Rb)


def matmul_array(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if f.k == 1:
        return ((a.astype(np.int64) @ b.astype(np.int64)) % f.p).astype(np.uint8)
    add, mul = f.add_table, f.mul_table
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    for t in range(a.shape[1]):
        out = add[out, mul[a[:, t][:, None], b[t][None, :]]]
    return out


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.field != B.field:
        raise ValueError("matrices over different fields")
    return Matrix._wrap(A.field, matmul_array(A.field, A.entries, B.entries))


def invert(M: Matrix) -> Matrix | None:
    """Inverse of a square matrix, or ``None`` when it is singular."""
    if M.rows != M.cols:
        raise ValueError(f"cannot invert a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    aug = np.hstack([M.entries, np.eye(n, dtype=np.uint8)])
    R, pivots = rref_array(M.field, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return Matrix._wrap(M.field, R[:, n:])


def det_nonzero(M: Matrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows
