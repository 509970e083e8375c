"""Finite fields GF(p^k) with table-driven arithmetic.

Elements are plain ints in ``[0, q)``.  For ``k > 1`` an element encodes the
polynomial ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` as ``sum(c_i * p**i)``;
for ``k = 1`` it is the residue mod ``p``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

MAX_ORDER = 64


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    # Coefficient lists are low degree first; den must be monic.
    num = list(num)
    dd = len(den) - 1
    quot = [0] * max(len(num) - dd, 1)
    for shift in range(len(num) - 1 - dd, -1, -1):
        c = num[shift + dd] % p
        if c:
            quot[shift] = c
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - c * d) % p
    rem = [c % p for c in num[:dd]] or [0]
    return quot, rem


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] != 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            _, rem = _poly_divmod(list(coeffs), divisor, p)
            if not any(rem):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Order is by coefficient vector read from the highest non-leading degree
    down, i.e. by the integer ``sum(c_i * p**i)`` of the non-leading part.
    """
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        coeffs = tuple(low) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field GF(p^k) together with its full operation tables."""

    p: int
    k: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = dc_field(repr=False)
    mul_table: np.ndarray = dc_field(repr=False)
    neg_table: np.ndarray = dc_field(repr=False)
    inv_table: np.ndarray = dc_field(repr=False)
    exp_table: np.ndarray = dc_field(repr=False)
    log_table: np.ndarray = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def generator(self) -> int:
        """Smallest primitive element (generates the multiplicative group)."""
        return int(self.exp_table[1]) if self.q > 2 else 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q}; p={self.p}, modulus={list(self.modulus)})"

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return int(self.inv_table[a])

    def elements(self) -> range:
        return range(self.q)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "q": self.q, "modulus": list(self.modulus)}


def _digits(v: int, p: int, k: int) -> list[int]:
    return [(v // p**i) % p for i in range(k)]


def _undigits(ds: list[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def make_field(p: int, k: int = 1, modulus: tuple[int, ...] | list[int] | None = None) -> FieldSpec:
    """Build GF(p^k).

    ``modulus`` is a monic coefficient list, low degree first.  When omitted
    the lexicographically smallest irreducible is chosen so that the element
    encoding (and everything downstream) is reproducible.
    """
    if not _is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    q = p**k
    if q > MAX_ORDER:
        raise FieldError(f"field order {q} exceeds the cap {MAX_ORDER}")
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {list(modulus)} is not monic of degree {k}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")

    digits = [_digits(v, p, k) for v in range(q)]
    add = np.empty((q, q), dtype=np.uint8)
    mul = np.empty((q, q), dtype=np.uint8)
    for a in range(q):
        da = digits[a]
        for b in range(q):
            db = digits[b]
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            _, rem = _poly_divmod(prod, list(modulus), p)
            mul[a, b] = _undigits(rem + [0] * (k - len(rem)), p)

    neg = np.array([int(np.where(add[a] == 0)[0][0]) for a in range(q)], dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        inv[a] = int(np.where(mul[a] == 1)[0][0])

    # Discrete exp/log w.r.t. the smallest primitive element.
    exp = np.zeros(q - 1, dtype=np.uint8)
    log = np.zeros(q, dtype=np.int16)
    log[0] = -1
    for g in range(1, q):
        powers = [1]
        while len(powers) < q:
            nxt = int(mul[powers[-1], g])
            if nxt == 1:
                break
            powers.append(nxt)
        if len(powers) == q - 1:
            exp[:] = powers
            for i, v in enumerate(powers):
                log[v] = i
            break

    for t in (add, mul, neg, inv, exp, log):
        t.setflags(write=False)
    return FieldSpec(p, k, tuple(modulus), add, mul, neg, inv, exp, log)


def arith(f: FieldSpec, op: str, a: int, b: int | None = None) -> int:
    """Dispatch one of ``add``, ``neg``, ``mul``, ``inv``."""
    for v in (a, b):
        if v is not None and not 0 <= v < f.q:
            raise FieldError(f"operand {v} outside [0, {f.q})")
    if op == "add":
        return f.add(a, b)
    if op == "mul":
        return f.mul(a, b)
    if op == "neg":
        return f.neg(a)
    if op == "inv":
        return f.inv(a)
    raise FieldError(f"unknown operation {op!r}")


def frobenius_orbit(f: FieldSpec) -> list[np.ndarray]:
    """All field automorphisms x -> x^(p^j), j = 0..k-1, as lookup tables."""
    tables = []
    current = np.arange(f.q, dtype=np.uint8)
    for _ in range(f.k):
        t = current.copy()
        t.setflags(write=False)
        tables.append(t)
        # raise every element to the p-th power once more
        nxt = current.copy()
        for a in range(f.q):
            v = 1
            for _ in range(f.p):
                v = int(f.mul_table[v, current[a]])
            nxt[a] = v
        current = nxt
    return tables
