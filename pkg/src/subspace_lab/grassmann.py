"""Subspaces of F_q^n in canonical form, lattice operations, enumeration of
the half-dimensional Grassmannian, and pencils."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import prod

import numpy as np

from .field import FieldSpec
from .linalg import Matrix, kernel, matmul_array, rref_array

DEFAULT_MAX_SIZE = 200_000


class SizeError(ValueError):
    """Raised when an enumeration would exceed its configured cap."""


class Subspace:
    """A subspace of F_q^n, stored as its RREF basis without zero rows.

    Equality and hashing compare the canonical basis, so two spanning sets of
    the same space give equal objects.
    """

    __slots__ = ("basis", "pivots")

    def __init__(self, basis: Matrix, pivots: tuple[int, ...]):
        self.basis = basis
        self.pivots = pivots

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def ambient_dim(self) -> int:
        return self.basis.cols

    @property
    def dim(self) -> int:
        return self.basis.rows

    def key(self) -> bytes:
        return self.basis.key()

    def sort_key(self) -> tuple:
        return (self.dim, self.pivots, self.basis.entries.tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.basis == other.basis

    def __lt__(self, other: "Subspace") -> bool:
        return self.sort_key() < other.sort_key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(n={self.ambient_dim}, rows={self.basis.tolist()})"

    def __le__(self, other: "Subspace") -> bool:
        return is_subspace(self, other)

    def contains_vector(self, v) -> bool:
        row = np.asarray(v, dtype=np.uint8)[None, :]
        R, piv = rref_array(self.field, np.vstack([self.basis.entries, row]))
        return len(piv) == self.dim

    def to_json(self) -> dict:
        return {"n": self.ambient_dim, "rows": self.basis.tolist()}


def _canonical(f: FieldSpec, rows: np.ndarray, n: int) -> Subspace:
    R, piv = rref_array(f, rows.reshape(-1, n))
    return Subspace(Matrix._wrap(f, R[: len(piv)]), tuple(piv))


def subspace_from_rows(rows: Matrix) -> Subspace:
    """Canonical subspace spanned by the rows of ``rows``."""
    return _canonical(rows.field, rows.entries, rows.cols)


def span(f: FieldSpec, n: int, vectors) -> Subspace:
    vs = np.array(list(vectors), dtype=np.int64).reshape(-1, n)
    return subspace_from_rows(Matrix(f, vs, cols=n))


def zero_subspace(f: FieldSpec, n: int) -> Subspace:
    return Subspace(Matrix.zeros(f, 0, n), ())


def full_space(f: FieldSpec, n: int) -> Subspace:
    return Subspace(Matrix.identity(f, n), tuple(range(n)))


def subspace_from_json(f: FieldSpec, obj: dict | str) -> Subspace:
    if isinstance(obj, str):
        obj = json.loads(obj)
    n = int(obj["n"])
    rows = obj["rows"]
    return subspace_from_rows(Matrix(f, rows if rows else np.zeros((0, n)), cols=n))


def _check_same(X: Subspace, Y: Subspace) -> None:
    if X.field != Y.field or X.ambient_dim != Y.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")


def join(X: Subspace, Y: Subspace) -> Subspace:
    _check_same(X, Y)
    return _canonical(X.field, np.vstack([X.basis.entries, Y.basis.entries]), X.ambient_dim)


def join_dim(X: Subspace, Y: Subspace) -> int:
    _check_same(X, Y)
    _, piv = rref_array(X.field, np.vstack([X.basis.entries, Y.basis.entries]))
    return len(piv)


def meet(X: Subspace, Y: Subspace) -> Subspace:
    """Intersection, from the kernel of ``[X; -Y]^T``.

    A vector ``a X = b Y`` lies in both; the pairs ``(a, b)`` form the left
    null space of the stacked basis, and the ``a`` parts map onto X ∩ Y.
    """
    _check_same(X, Y)
    f, n = X.field, X.ambient_dim
    if X.dim == 0 or Y.dim == 0:
        return zero_subspace(f, n)
    negY = f.neg_table[Y.basis.entries]
    stacked = np.vstack([X.basis.entries, negY])  # (dx+dy) x n
    K = kernel(Matrix._wrap(f, stacked.T.copy()))  # rows (a | b) with aX - bY = 0
    if K.rows == 0:
        return zero_subspace(f, n)
    coeffs = K.entries[:, : X.dim]
    vecs = matmul_array(f, coeffs, X.basis.entries)
    return _canonical(f, vecs, n)


def annihilator(X: Subspace) -> Subspace:
    """X^⊥ with respect to the standard dot product on F_q^n."""
    f, n = X.field, X.ambient_dim
    if X.dim == 0:
        return full_space(f, n)
    K = kernel(X.basis)
    return Subspace(K, tuple(int(np.flatnonzero(r)[0]) for r in K.entries))


def is_subspace(X: Subspace, Y: Subspace) -> bool:
    """X ≤ Y."""
    return X.dim <= Y.dim and join_dim(X, Y) == Y.dim


def is_complement(X: Subspace, Y: Subspace) -> bool:
    n = X.ambient_dim
    return join_dim(X, Y) == n and meet(X, Y).dim == 0


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = prod(q ** (n - i) - 1 for i in range(k))
    den = prod(q ** (i + 1) - 1 for i in range(k))
    return num // den


def _free_positions(pivots: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    pset = set(pivots)
    return [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]


def enumerate_subspaces(f: FieldSpec, n: int, k: int, max_size: int = DEFAULT_MAX_SIZE) -> list[Subspace]:
    """All k-dimensional subspaces of F_q^n in canonical order.

    Order: pivot sets lexicographically, then the free entries (row-major)
    in ascending lexicographic order of their encoded values.
    """
    total = gaussian_binomial(n, k, f.q)
    if total > max_size:
        raise SizeError(
            f"Gaussian binomial [{n} choose {k}]_{f.q} = {total} exceeds the cap {max_size}"
        )
    out: list[Subspace] = []
    for pivots in itertools.combinations(range(n), k):
        free = _free_positions(pivots, n)
        base = np.zeros((k, n), dtype=np.uint8)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        rows_idx = np.array([i for i, _ in free], dtype=np.intp)
        cols_idx = np.array([c for _, c in free], dtype=np.intp)
        for values in itertools.product(range(f.q), repeat=len(free)):
            b = base.copy()
            if free:
                b[rows_idx, cols_idx] = values
            out.append(Subspace(Matrix._wrap(f, b), pivots))
    assert len(out) == total
    return out


class Grassmannian:
    """All m-dimensional subspaces of F_q^{2m}, indexed in canonical order."""

    def __init__(self, field: FieldSpec, m: int, max_size: int = DEFAULT_MAX_SIZE):
        if m < 0:
            raise ValueError("half-dimension must be non-negative")
        self.field = field
        self.m = m
        self.n = 2 * m
        self.elements = enumerate_subspaces(field, self.n, m, max_size)
        self._index = {X.key(): i for i, X in enumerate(self.elements)}
        arr = np.zeros((len(self.elements), m, self.n), dtype=np.uint8)
        for i, X in enumerate(self.elements):
            arr[i] = X.basis.entries
        arr.setflags(write=False)
        self.bases = arr

    @property
    def q(self) -> int:
        return self.field.q

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> Subspace:
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def index_of(self, X: Subspace) -> int:
        try:
            return self._index[X.key()]
        except KeyError:
            raise KeyError(f"{X!r} is not an element of this Grassmannian") from None

    def dump_jsonl(self) -> str:
        return "".join(json.dumps(X.to_json(), separators=(",", ":")) + "\n" for X in self.elements)


def enumerate_grassmannian(f: FieldSpec, m: int, max_size: int = DEFAULT_MAX_SIZE) -> Grassmannian:
    return Grassmannian(f, m, max_size)


@dataclass(frozen=True)
class Pencil:
    M: Subspace
    N: Subspace
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


def pencil(G: Grassmannian, M: Subspace, N: Subspace) -> Pencil:
    """Elements X of G with M < X < N, found by scanning G."""
    m = G.m
    if M.dim != m - 1 or N.dim != m + 1:
        raise ValueError(f"pencil needs dim M = {m - 1} and dim N = {m + 1}, got {M.dim}, {N.dim}")
    if not is_subspace(M, N):
        raise ValueError("pencil needs M < N")
    members = tuple(
        i for i, X in enumerate(G.elements) if is_subspace(M, X) and is_subspace(X, N)
    )
    return Pencil(M, N, members)


def pencil_through(G: Grassmannian, P: Subspace, Q: Subspace) -> Pencil:
    """The unique pencil containing two adjacent elements."""
    m = G.m
    if not (P.dim == Q.dim == m and join_dim(P, Q) == m + 1):
        raise ValueError("pencil_through needs two adjacent elements")
    return pencil(G, meet(P, Q), join(P, Q))
