"""Exact rational linear algebra.

Core claims:
    - rank, rref, and kernel are exact and reproducible
    - rank(m) = rank(transpose(m))
    - kernel vectors satisfy m v = 0 exactly and span cols - rank dimensions
    - subspace intersection obeys the Grassmann dimension identity
    - quotient_complement returns exactly codim many representatives
    - EchelonBasis insert/contains/reduce are mutually consistent
"""

from fractions import Fraction

import pytest

from quiverdiff.errors import DimensionMismatchError
from quiverdiff.linalg import (
    EchelonBasis,
    LinearSolver,
    RationalMatrix,
    intersect_row_spaces,
    quotient_complement,
)

from helpers import seeded


# -- Helpers -----------------------------------------------------------------

def _random_matrix(rng, rows, cols, span=4):
    return RationalMatrix(
        [
            [Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(cols)]
            for _ in range(rows)
        ],
        cols,
    )


# -- Rank and rref -----------------------------------------------------------

def test_rank_examples():
    assert RationalMatrix.zeros(3, 3).rank() == 0
    assert RationalMatrix.identity(4).rank() == 4
    assert RationalMatrix([[2, -2], [-2, 2]], 2).rank() == 1
    assert RationalMatrix([[1], [-1]], 1).rank() == 1


def test_rank_equals_transpose_rank_randomized():
    rng = seeded(3101)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert m.rank() == m.transpose().rank()


def test_rref_idempotent_and_deterministic():
    rng = seeded(3102)
    for _ in range(10):
        m = _random_matrix(rng, 4, 5)
        r1, pivots1 = m.rref()
        r2, pivots2 = m.rref()
        assert r1 == r2 and pivots1 == pivots2
        again, pivots_again = r1.rref()
        assert again == r1 and pivots_again == pivots1


def test_rref_pivots_are_unit_columns():
    rng = seeded(3103)
    for _ in range(10):
        m = _random_matrix(rng, 4, 6)
        r, pivots = m.rref()
        for k, col in enumerate(pivots):
            assert r.entry(k, col) == 1
            for i in range(len(r.rows)):
                if i != k:
                    assert r.entry(i, col) == 0


# -- Kernel ------------------------------------------------------------------

def test_kernel_examples():
    assert RationalMatrix.identity(3).kernel() == ()
    (v,) = RationalMatrix([[1, 1]], 2).kernel()
    assert v == (1, -1) or v == (Fraction(1), Fraction(-1))
    (w,) = RationalMatrix([[2, -2], [-2, 2]], 2).kernel()
    assert w[0] == w[1] != 0


def test_kernel_dimension_and_exactness_randomized():
    rng = seeded(3104)
    for _ in range(20):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        kern = m.kernel()
        assert len(kern) == m.num_cols - m.rank()
        for v in kern:
            assert all(x == 0 for x in m.mat_vec(v))
        if kern:
            assert RationalMatrix(list(kern), m.num_cols).rank() == len(kern)


# -- Row spaces, intersection, complement ------------------------------------

def test_intersection_examples():
    a = RationalMatrix([[1, 0]], 2)
    b = RationalMatrix([[0, 1]], 2)
    assert intersect_row_spaces(a, b).rank() == 0
    same = intersect_row_spaces(a, a)
    assert same.rank() == 1
    assert same.rows[0][1] == 0


def test_grassmann_identity_randomized():
    rng = seeded(3105)
    for _ in range(20):
        cols = rng.randint(2, 5)
        a = _random_matrix(rng, rng.randint(1, 4), cols)
        b = _random_matrix(rng, rng.randint(1, 4), cols)
        inter = intersect_row_spaces(a, b)
        total = RationalMatrix.stack(a, b)
        assert a.rank() + b.rank() == total.rank() + inter.rank()


def test_intersection_vectors_lie_in_both():
    rng = seeded(3106)
    for _ in range(10):
        cols = 4
        a = _random_matrix(rng, 2, cols)
        b = _random_matrix(rng, 3, cols)
        inter = intersect_row_spaces(a, b)
        for side in (a, b):
            basis = EchelonBasis(cols)
            for row in side.rows:
                basis.insert(row)
            for v in inter.rows:
                assert basis.contains(v)


def test_intersection_column_mismatch():
    with pytest.raises(DimensionMismatchError):
        intersect_row_spaces(RationalMatrix([[1]], 1), RationalMatrix([[1, 0]], 2))


def test_quotient_complement_examples():
    full = RationalMatrix.identity(3)
    assert quotient_complement(full) == []
    zero = RationalMatrix.zeros(1, 2)
    comp = quotient_complement(zero)
    assert len(comp) == 2
    assert RationalMatrix(comp, 2).rank() == 2


def test_quotient_complement_prefers_candidates():
    sub = RationalMatrix([[1, 0, 0]], 3)
    preferred = [(0, 2, 0), (0, 0, 5), (0, 1, 0)]
    comp = quotient_complement(sub, preferred)
    assert comp == [(0, 2, 0), (0, 0, 5)]


def test_quotient_complement_length_is_codimension():
    rng = seeded(3107)
    for _ in range(10):
        cols = rng.randint(1, 5)
        sub = _random_matrix(rng, rng.randint(0, 3), cols)
        comp = quotient_complement(sub)
        assert len(comp) == cols - sub.rank()
        combined = RationalMatrix.stack(sub, RationalMatrix(list(comp), cols)) if comp else sub
        assert combined.rank() == cols


# -- EchelonBasis and LinearSolver -------------------------------------------

def test_echelon_basis_insert_and_contains():
    rng = seeded(3108)
    basis = EchelonBasis(4)
    inserted = []
    for _ in range(10):
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
        if basis.insert(v):
            inserted.append(v)
    assert basis.rank == len(inserted)
    for v in inserted:
        assert basis.contains(v)
    assert basis.rows().rank() == basis.rank


def test_echelon_basis_rejects_dependent_vectors():
    basis = EchelonBasis(3)
    assert basis.insert((1, 2, 3))
    assert basis.insert((0, 1, 1))
    assert not basis.insert((2, 5, 7))
    assert not basis.insert((0, 0, 0))


def test_linear_solver_expresses_row_combinations():
    # solve(t) returns x with x * M = t, or None outside the row space
    m = RationalMatrix([[1, 1, 0], [0, 1, 1]], 3)
    solver = LinearSolver(m)
    x = solver.solve((2, 5, 3))
    assert x is not None
    combo = [
        sum(x[i] * m.entry(i, j) for i in range(2)) for j in range(3)
    ]
    assert combo == [2, 5, 3]
    assert solver.solve((1, 0, 1)) is None


def test_linear_solver_randomized_roundtrip():
    rng = seeded(3109)
    for _ in range(10):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        solver = LinearSolver(m)
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(m.num_rows)]
        target = [
            sum(coeffs[i] * m.entry(i, j) for i in range(m.num_rows))
            for j in range(m.num_cols)
        ]
        x = solver.solve(target)
        assert x is not None
        back = [
            sum(x[i] * m.entry(i, j) for i in range(m.num_rows))
            for j in range(m.num_cols)
        ]
        assert back == target


def test_matrix_arithmetic_shapes():
    a = RationalMatrix([[1, 2]], 2)
    b = RationalMatrix([[1], [1]], 1)
    assert (a * b).entry(0, 0) == 3
    with pytest.raises(DimensionMismatchError):
        a + b
    with pytest.raises(DimensionMismatchError):
        RationalMatrix.stack(a, b)
