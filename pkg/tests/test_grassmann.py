import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subspace_lab.field import make_field
from subspace_lab.grassmann import (
    Grassmannian,
    SizeError,
    annihilator,
    enumerate_subspaces,
    full_space,
    gaussian_binomial,
    is_complement,
    is_subspace,
    join,
    meet,
    pencil,
    pencil_through,
    span,
    subspace_from_json,
    subspace_from_rows,
    zero_subspace,
)
from subspace_lab.linalg import Matrix, invert, matmul

from conftest import grassmannian

GF2, GF3 = make_field(2), make_field(3)
e1, e2, e3, e4 = ([int(i == j) for j in range(4)] for i in range(4))


def S(f, *vs):
    return span(f, 4, vs)


def vectors(f, n):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(f.q), repeat=n)]


def members(X):
    """Brute-force element set of a subspace."""
    f = X.field
    out = set()
    for coeffs in itertools.product(range(f.q), repeat=X.dim):
        v = np.zeros(X.ambient_dim, dtype=np.int64)
        for c, r in zip(coeffs, X.basis.entries):
            v = f.add_table[v, f.mul_table[c, r]]
        out.add(tuple(int(x) for x in v))
    return out


def brute_force_subspaces(f, n, k):
    """All k-subspaces as frozensets of vectors, from every k-tuple of vectors."""
    found = set()
    nonzero = [v for v in vectors(f, n) if v.any()]
    for combo in itertools.combinations(range(len(nonzero)), k):
        X = span(f, n, [nonzero[i] for i in combo])
        if X.dim == k:
            found.add(frozenset(members(X)))
    return found


def test_subspace_from_rows_examples():
    X = subspace_from_rows(Matrix(GF2, [e1, e2]))
    assert X.basis.tolist() == [e1, e2] and X.dim == 2
    Y = subspace_from_rows(Matrix(GF2, [[1, 1, 0, 0], [1, 0, 0, 0]]))
    assert Y.basis.tolist() == [e1, e2]
    Z = subspace_from_rows(Matrix(GF2, np.zeros((0, 4)), cols=4))
    assert Z.dim == 0 and Z == zero_subspace(GF2, 4)


def test_join_examples():
    assert join(S(GF2, e1), S(GF2, e2)) == S(GF2, e1, e2)
    X = S(GF2, e1, e2)
    assert join(X, X) == X
    assert join(X, S(GF2, e3, e4)) == full_space(GF2, 4)


def test_meet_examples():
    X, Y = S(GF2, e1, e2), S(GF2, e2, e3)
    assert meet(X, Y) == S(GF2, e2)
    assert members(meet(X, Y)) == members(X) & members(Y)
    assert meet(X, X) == X
    assert meet(X, S(GF2, e3, e4)).dim == 0


def test_annihilator_examples():
    assert annihilator(S(GF2, e1, e2)) == S(GF2, e3, e4)
    X = S(GF2, [1, 1, 0, 0], [0, 0, 1, 1])
    assert annihilator(annihilator(X)) == X
    assert annihilator(zero_subspace(GF2, 4)) == full_space(GF2, 4)


def test_is_complement_examples():
    assert is_complement(S(GF2, e1, e2), S(GF2, e3, e4))
    X = S(GF2, e1, e2)
    assert not is_complement(X, X)
    assert not is_complement(X, S(GF2, e2, e3))


@pytest.mark.parametrize("p,m,expected", [(2, 1, 3), (2, 2, 35), (3, 2, 130), (2, 3, 1395)])
def test_grassmannian_sizes(p, m, expected):
    G = grassmannian(p, m)
    assert len(G) == expected == gaussian_binomial(2 * m, m, p)


@pytest.mark.parametrize("p,n,k", [(2, 2, 1), (2, 4, 2), (3, 4, 2), (2, 4, 1), (2, 4, 3), (2, 5, 2)])
def test_enumeration_matches_brute_force(p, n, k):
    f = make_field(p)
    enumerated = enumerate_subspaces(f, n, k)
    as_sets = [frozenset(members(X)) for X in enumerated]
    assert len(set(as_sets)) == len(as_sets)
    assert set(as_sets) == brute_force_subspaces(f, n, k)


def test_gaussian_binomial_formula_values():
    assert gaussian_binomial(4, 2, 3) == (3**4 - 1) * (3**4 - 3) // ((3**2 - 1) * (3**2 - 3)) == 130
    assert gaussian_binomial(2, 1, 2) == 3


def test_grassmannian_order_and_index(G22):
    keys = [X.sort_key() for X in G22]
    assert keys == sorted(keys)
    for i, X in enumerate(G22):
        assert G22.index_of(X) == i
        assert X.dim == 2


def test_size_cap():
    with pytest.raises(SizeError, match="1395"):
        Grassmannian(GF2, 3, max_size=1000)


def test_meet_matches_brute_force_all_pairs(G22):
    for X, Y in itertools.combinations(G22.elements, 2):
        Z = meet(X, Y)
        assert members(Z) == members(X) & members(Y)
        assert X.dim + Y.dim == join(X, Y).dim + Z.dim


def test_modular_law_instances():
    # (P + X) ∩ R = P + (X ∩ R) whenever P ≤ R
    f = GF2
    subs = [X for k in range(5) for X in enumerate_subspaces(f, 4, k)]
    rng = np.random.default_rng(7)
    for _ in range(400):
        P, X, R = (subs[i] for i in rng.integers(0, len(subs), size=3))
        if not is_subspace(P, R):
            continue
        assert meet(join(P, X), R) == join(P, meet(X, R))


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 1), (3, 1)])
def test_annihilator_involution_and_dimension(p, m):
    G = grassmannian(p, m)
    for X in G:
        A = annihilator(X)
        assert A.dim == G.n - X.dim
        assert annihilator(A) == X
        for v in members(A):
            for w in X.basis.entries:
                assert int(np.dot(v, w)) % p == 0


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_complement_count(p, m):
    G = grassmannian(p, m)
    X = G[0]
    assert sum(is_complement(X, Y) for Y in G) == p ** (m * m)
    rng = np.random.default_rng(0)
    for i in rng.integers(0, len(G), size=3):
        assert sum(is_complement(G[int(i)], Y) for Y in G) == p ** (m * m)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(0, 2**32 - 1))
def test_canonicity_under_change_of_basis(pm, seed):
    p, m = pm
    G = grassmannian(p, m)
    rng = np.random.default_rng(seed)
    X = G[int(rng.integers(0, len(G)))]
    while True:
        T = Matrix(G.field, rng.integers(0, p, size=(m, m)))
        if invert(T) is not None:
            break
    assert subspace_from_rows(matmul(T, X.basis)) == X


def test_pencil_example_gf2():
    G = grassmannian(2, 2)
    pen = pencil(G, S(GF2, e1), S(GF2, e1, e2, e3))
    got = {G[i] for i in pen.members}
    assert got == {S(GF2, e1, e2), S(GF2, e1, e3), S(GF2, e1, [0, 1, 1, 0])}
    assert len(pen) == 3


def test_pencil_size_gf3():
    G = grassmannian(3, 2)
    for M, N in [(S(GF3, e1), S(GF3, e1, e2, e3)), (S(GF3, [1, 2, 0, 1]), S(GF3, [1, 2, 0, 1], e2, e4))]:
        assert len(pencil(G, M, N)) == 4


def test_pencil_rejects_bad_flags():
    G = grassmannian(2, 2)
    with pytest.raises(ValueError):
        pencil(G, S(GF2, e4), S(GF2, e1, e2, e3))
    with pytest.raises(ValueError):
        pencil(G, S(GF2, e1, e2), S(GF2, e1, e2, e3))


def test_pencil_through_examples():
    G = grassmannian(2, 2)
    P, Q = S(GF2, e1, e2), S(GF2, e1, e3)
    pen = pencil_through(G, P, Q)
    assert pen.M == S(GF2, e1) and pen.N == S(GF2, e1, e2, e3)
    assert G.index_of(P) in pen.members and G.index_of(Q) in pen.members
    with pytest.raises(ValueError):
        pencil_through(G, P, P)


def test_json_round_trip(G32):
    for X in G32.elements[::7]:
        assert subspace_from_json(G32.field, X.to_json()) == X
    lines = G32.dump_jsonl().splitlines()
    assert len(lines) == 130
    assert subspace_from_json(G32.field, lines[17]) == G32[17]


def test_zero_dimensional_grassmannian():
    G = Grassmannian(GF2, 0)
    assert len(G) == 1 and G[0].dim == 0 and G[0].ambient_dim == 0
