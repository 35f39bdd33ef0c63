from hypothesis import given, strategies as st

from polarfol.catalog import as_root_data
from polarfol.solvable import (ANVector, an_bracket, an_gram, an_metric,
                               from_matrix, to_matrix)
from polarfol.su1n import bracket

from conftest import small_fractions

RD = as_root_data(3)


def an_vectors(rd=RD):
    m = 2 * (rd.n - 1)
    return st.builds(lambda a, u, x: ANVector(a, tuple(u), x),
                     small_fractions,
                     st.lists(small_fractions, min_size=m, max_size=m),
                     small_fractions)


@given(an_vectors(), an_vectors())
def test_bracket_formula_matches_matrix(v, w):
    lhs = to_matrix(RD, an_bracket(RD, v, w))
    assert lhs == bracket(to_matrix(RD, v), to_matrix(RD, w))


@given(an_vectors())
def test_round_trip(v):
    assert from_matrix(RD, to_matrix(RD, v)) == v


def test_basis_orthonormal():
    g = an_gram(RD)
    assert all(g[i][j] == (i == j) for i in range(6) for j in range(6))


@given(an_vectors(), an_vectors())
def test_metric_symmetric(v, w):
    assert an_metric(RD, v, w) == an_metric(RD, w, v)
