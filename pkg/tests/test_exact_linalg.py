from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polarfol.exact_linalg import (ExactMatrix, GaussianRational, Subspace,
                                   kernel, rref, solve)

from conftest import small_fractions

gauss = st.builds(GaussianRational, small_fractions, small_fractions)


def matrices(rows, cols):
    return st.lists(st.lists(small_fractions, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


def test_gaussian_arithmetic():
    z = GaussianRational(1, 2)
    w = GaussianRational(Fraction(1, 2), -1)
    assert z * w == GaussianRational(Fraction(5, 2), 0)
    assert z * z.conjugate() == 5
    assert z.norm2() == 5
    assert (z / w) * w == z
    assert complex(z) == 1 + 2j
    assert GaussianRational(3).is_real


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a


def test_rref_small():
    red, piv = rref([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert piv == [0, 1]
    assert red == [[1, 0, 1], [0, 1, 1]]


@given(matrices(3, 5))
def test_rank_nullity(rows):
    _, piv = rref(rows)
    ker = kernel(rows, 5)
    assert len(piv) + ker.dim == 5
    for v in ker.vectors:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0


@given(matrices(4, 4))
def test_rank_matches_numpy(rows):
    _, piv = rref(rows)
    A = np.array([[float(x) for x in r] for r in rows])
    assert len(piv) == np.linalg.matrix_rank(A)


@given(matrices(3, 3), st.lists(small_fractions, min_size=3, max_size=3))
def test_solve(rows, x):
    rhs = [sum(a * b for a, b in zip(r, x)) for r in rows]
    y = solve(rows, rhs)
    assert [sum(a * b for a, b in zip(r, y)) for r in rows] == rhs


def test_inverse_and_identity():
    m = ExactMatrix.from_rows([[1, GaussianRational(0, 1)], [2, 3]])
    assert m @ m.inverse() == ExactMatrix.identity(2)
    assert m.trace() == 4


@given(matrices(3, 4), matrices(2, 4))
def test_subspace_intersection(a, b):
    U, W = Subspace(4, a), Subspace(4, b)
    I = U.intersect(W)
    S = Subspace(4, list(a) + list(b))
    assert U.dim + W.dim == S.dim + I.dim
    assert I.is_subspace_of(U) and I.is_subspace_of(W)


@given(matrices(3, 4))
def test_subspace_equality_is_basis_free(rows):
    U = Subspace(4, rows)
    shuffled = Subspace(4, list(reversed(rows)) + [[0, 0, 0, 0]])
    assert U == shuffled
    for v in rows:
        assert U.contains(v)
