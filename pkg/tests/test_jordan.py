"""Nilpotent structure theory: partitions from defect sequences, the
closed form for polynomials of a single cell, semisimplicity and the
semisimple-plus-nilpotent decomposition."""

import random

import pytest

from nilclose.errors import NotNilpotent, OutOfRange, PartitionTooLarge
from nilclose.field import Poly, galois, rationals
from nilclose.jordan import (
    GSet,
    Partition,
    g_set,
    is_semisimple,
    jordan_chevalley,
    jordan_matrix,
    jordan_partition,
    nilpotency_index,
    predicted_poly_partition,
    squarefree_part,
)
from nilclose.matrices import ExactMatrix, defect, minimal_polynomial, poly_eval

Q = rationals()
GF2 = galois(2)
GF7 = galois(7)
GF4 = galois(2, 2)


def jcell(spec, m):
    return ExactMatrix.jordan_cell(spec, spec.zero(), m)


def test_partition_normal_form():
    p = Partition([2, 3, 2])
    assert p.parts == (3, 2, 2)
    assert p.total == 7
    assert str(p) == "[3,2,2]"
    assert p.g_set().sizes == frozenset({3, 2})
    assert str(GSet([2, 3])) == "[3,2]"


def test_nilpotency_index():
    x = ExactMatrix.block_diag(Q, [jcell(Q, 3), jcell(Q, 2)], 5)
    assert nilpotency_index(x) == 3
    assert nilpotency_index(ExactMatrix.zeros(Q, 4)) == 1
    with pytest.raises(NotNilpotent):
        nilpotency_index(ExactMatrix.identity(Q, 2))


def test_jordan_partition_examples():
    x = ExactMatrix.block_diag(Q, [jcell(Q, 3), jcell(Q, 2)], 5)
    assert jordan_partition(x) == Partition([3, 2])
    assert jordan_partition(jcell(Q, 7).power(3)) == Partition([3, 2, 2])
    # N(x)I + I(x)N over GF(3): rank 2, square nonzero, cube zero
    n4 = ExactMatrix.from_ints(galois(3), [[0, 1, 1, 0], [0, 0, 0, 1],
                                           [0, 0, 0, 1], [0, 0, 0, 0]])
    assert jordan_partition(n4) == Partition([3, 1])


def test_jordan_matrix():
    x = jordan_matrix(Partition([2, 2]), 4, Q)
    assert jordan_partition(x) == Partition([2, 2])
    y = jordan_matrix(Partition([3]), 5, Q)
    assert jordan_partition(y) == Partition([3, 1, 1])
    assert jordan_matrix(Partition([4]), 4, Q) == jcell(Q, 4)
    with pytest.raises(PartitionTooLarge):
        jordan_matrix(Partition([3, 2]), 4, Q)


def test_g_set():
    x = jordan_matrix(Partition([3, 2]), 7, Q)
    assert g_set(x).sizes == frozenset({3, 2})
    assert len(g_set(ExactMatrix.zeros(Q, 3))) == 0
    assert g_set(jcell(Q, 4).power(3)).sizes == frozenset({2})


def test_partition_invariants():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 6)
        parts = []
        left = n
        while left > 0:
            p = rng.randint(1, left)
            parts.append(p)
            left -= p
        x = jordan_matrix(Partition(parts), n, GF7)
        got = jordan_partition(x)
        assert got.total == n
        assert len(got) == defect(x)
        assert max(got.parts) == nilpotency_index(x)


def test_predicted_poly_partition():
    assert predicted_poly_partition(7, 3) == Partition([3, 2, 2])
    assert predicted_poly_partition(5, 5) == Partition([1, 1, 1, 1, 1])
    assert predicted_poly_partition(5, 1) == Partition([5])
    with pytest.raises(OutOfRange):
        predicted_poly_partition(3, 4)
    # distinct sizes are exactly the two halves of the division
    for m in range(1, 11):
        for k in range(1, m + 1):
            sizes = set(predicted_poly_partition(m, k).parts)
            assert sizes <= {m // k, -(-m // k)}


def test_poly_of_cell_matches_prediction():
    rng = random.Random(13)
    for m in range(2, 8):
        for k in range(1, m + 1):
            coeffs = [0] * k + [rng.randint(1, 5)]
            coeffs += [rng.randint(-3, 3) for _ in range(3)]
            f = Poly.from_ints(Q, coeffs)
            y = poly_eval(f, jcell(Q, m))
            assert jordan_partition(y) == predicted_poly_partition(m, k)


def test_squarefree_part():
    f = Poly.from_ints(Q, [0, 0, 1]) * Poly.from_ints(Q, [1, 1])  # t^2 (t+1)
    assert squarefree_part(f) == Poly.from_ints(Q, [0, 1, 1])
    # characteristic-p path with vanishing derivative: t^2 over GF(2)
    g = Poly.from_ints(GF2, [0, 0, 1])
    assert squarefree_part(g) == Poly.from_ints(GF2, [0, 1])
    # GF(4): (t - c)^2 with c a generator exercises the p-th root of c
    GF4_ = GF4
    c = GF4_.element_from_index(2)
    lin = Poly(GF4_, [-c, GF4_.one()])
    assert squarefree_part(lin * lin) == lin


def test_is_semisimple():
    assert is_semisimple(ExactMatrix.from_ints(Q, [[1, 0, 0], [0, 2, 0],
                                                   [0, 0, 2]]))
    assert not is_semisimple(jcell(Q, 2))
    rot = ExactMatrix.from_ints(Q, [[0, 1], [-1, 0]])
    assert is_semisimple(rot)  # t^2 + 1 is squarefree


def test_jordan_chevalley_examples():
    lam = ExactMatrix.from_ints(Q, [[3, 1, 0], [0, 3, 1], [0, 0, 3]])
    s, u = jordan_chevalley(lam)
    assert s == ExactMatrix.identity(Q, 3).scale(Q.from_int(3))
    assert u == jcell(Q, 3)
    d = ExactMatrix.from_ints(Q, [[1, 0], [0, 2]])
    s, u = jordan_chevalley(d)
    assert s == d and u.is_zero
    ones = ExactMatrix.from_ints(Q, [[1, 1], [0, 1]])
    s, u = jordan_chevalley(ones)
    assert s == ExactMatrix.identity(Q, 2)
    assert u == ExactMatrix.from_ints(Q, [[0, 1], [0, 0]])


def test_jordan_chevalley_properties():
    rng = random.Random(19)
    for spec in (Q, GF7, GF4):
        for _ in range(40):
            n = rng.randint(1, 4)
            if spec.is_finite:
                x = ExactMatrix.from_ints(
                    spec, [[rng.randrange(spec.char) for _ in range(n)]
                           for _ in range(n)])
            else:
                x = ExactMatrix.from_ints(
                    spec, [[rng.randint(-2, 2) for _ in range(n)]
                           for _ in range(n)])
            s, u = jordan_chevalley(x)
            assert s + u == x
            assert s.commutator(u).is_zero
            assert u.power(n).is_zero
            assert is_semisimple(s)
            # both parts are polynomials in x, hence commute with x
            assert s.commutator(x).is_zero
