import itertools

import numpy as np
import pytest

from subspace_lab.field import FieldError, arith, frobenius_orbit, is_irreducible, make_field

PRIME_POWERS = [(p, k) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)
                for k in range(1, 7) if p**k <= 64]


def _has_root(coeffs, p):
    return any(sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def test_gf2_elements():
    f = make_field(2, 1)
    assert f.q == 2 and list(f.elements()) == [0, 1]
    assert arith(f, "mul", 1, 1) == 1


def test_gf3_inverse_of_two():
    f = make_field(3, 1)
    assert arith(f, "inv", 2) == 2


def test_gf4_modulus_is_smallest_irreducible():
    # the four monic quadratics over GF(2); irreducible iff rootless for degree 2
    candidates = [(c0, c1, 1) for c1 in (0, 1) for c0 in (0, 1)]
    irreducible = [c for c in sorted(candidates, key=lambda c: (c[1], c[0])) if not _has_root(c, 2)]
    assert irreducible[0] == (1, 1, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_gf4_x_squared():
    f = make_field(2, 2)
    # x * x = x + 1 under x^2 + x + 1
    assert arith(f, "mul", 2, 2) == 3


def test_gf8_modulus():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


@pytest.mark.parametrize("p,k", PRIME_POWERS)
def test_field_axioms_exhaustive(p, k):
    f = make_field(p, k)
    q = f.q
    A, M = f.add_table.astype(int), f.mul_table.astype(int)
    a = np.arange(q)
    assert np.array_equal(A, A.T) and np.array_equal(M, M.T)
    assert np.array_equal(A[A[:, :, None], a[None, None, :]], A[a[:, None, None], A[None, :, :]])
    assert np.array_equal(M[M[:, :, None], a[None, None, :]], M[a[:, None, None], M[None, :, :]])
    left = M[a[:, None, None], A[None, :, :]]
    right = A[M[:, :, None], M[:, None, :]]
    assert np.array_equal(left, right)
    assert np.all(A[a, f.neg_table] == 0)
    assert np.all(M[a[1:], f.inv_table[1:]] == 1)
    assert np.all(A[0] == a) and np.all(M[1] == a)


@pytest.mark.parametrize("p,k", PRIME_POWERS)
def test_exp_log_tables(p, k):
    f = make_field(p, k)
    assert f.exp_table.size == f.q - 1
    assert sorted(f.exp_table.tolist()) == list(range(1, f.q))
    for i, v in enumerate(f.exp_table):
        assert f.log_table[v] == i


@pytest.mark.parametrize("p,k", PRIME_POWERS)
def test_frobenius_automorphisms(p, k):
    f = make_field(p, k)
    tables = frobenius_orbit(f)
    assert len(tables) == k
    assert np.array_equal(tables[0], np.arange(f.q))
    M, A = f.mul_table, f.add_table
    for t in tables:
        assert sorted(t.tolist()) == list(range(f.q))
        assert np.array_equal(t[A], A[t[:, None], t[None, :]])
        assert np.array_equal(t[M], M[t[:, None], t[None, :]])
        assert np.array_equal(t[:p], np.arange(p))  # prime subfield fixed


def test_frobenius_examples():
    assert [t.tolist() for t in frobenius_orbit(make_field(2))] == [[0, 1]]
    assert [t.tolist() for t in frobenius_orbit(make_field(3))] == [[0, 1, 2]]
    assert [t.tolist() for t in frobenius_orbit(make_field(2, 2))] == [[0, 1, 2, 3], [0, 1, 3, 2]]


def test_deterministic_construction():
    a, b = make_field(3, 3), make_field(3, 3)
    assert a == b and hash(a) == hash(b)
    assert np.array_equal(a.mul_table, b.mul_table)


@pytest.mark.parametrize("p,k", [(4, 1), (1, 1), (2, 7), (3, 4), (67, 1)])
def test_rejects_bad_parameters(p, k):
    with pytest.raises(FieldError):
        make_field(p, k)


def test_rejects_reducible_modulus():
    with pytest.raises(FieldError):
        make_field(2, 2, modulus=(1, 0, 1))  # (x + 1)^2


def test_explicit_modulus():
    f = make_field(2, 3, modulus=(1, 0, 1, 1))
    assert f.modulus == (1, 0, 1, 1)
    assert is_irreducible((1, 0, 1, 1), 2)


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        arith(make_field(5), "inv", 0)


def test_operand_range_checked():
    with pytest.raises(FieldError):
        arith(make_field(3), "add", 3, 1)


def test_irreducibility_by_brute_force_factoring():
    # every monic cubic over GF(3): irreducible iff no root
    for c0, c1, c2 in itertools.product(range(3), repeat=3):
        coeffs = (c0, c1, c2, 1)
        assert is_irreducible(coeffs, 3) == (not _has_root(coeffs, 3))
