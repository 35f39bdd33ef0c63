import numpy as np
import pytest
from hypothesis import given

from polarfol.root_space import J_alpha, ROOTS, verify_structure
from polarfol.su1n import bracket, inner, theta

from conftest import elements


def _float_ad_eigenvalues(n):
    """Independent oracle: eigenvalues of ad(B) from numpy commutators."""
    size = n + 1
    B = np.zeros((size, size))
    B[0, 1] = B[1, 0] = 0.5
    basis = []
    for i in range(size):
        for j in range(size):
            E = np.zeros((size, size))
            E[i, j] = 1
            basis.append(E)
    A = np.array([(B @ E - E @ B).ravel() for E in basis]).T
    # ad(B) on gl(n+1); su(1,n) is invariant, multiplicities scale with that
    ev = np.linalg.eigvals(A).real
    return sorted(np.round(ev, 9))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_root_space_dims(n):
    from polarfol.catalog import as_root_data
    rd = as_root_data(n)
    dims = [rd.spaces[k].dim for k in (-2, -1, 0, 1, 2)]
    # oracle on gl(n+1): eigenvalue multiplicities, minus one scalar in g_0
    ev = _float_ad_eigenvalues(n)
    oracle = [ev.count(v) for v in (-1.0, -0.5, 0.0, 0.5, 1.0)]
    oracle[2] -= 1
    assert dims == oracle
    assert dims == [1, 2 * (n - 1), (n - 1) ** 2 + 1, 2 * (n - 1), 1]
    assert sum(dims) == rd.ctx.dim


def test_n2_dims(rd2):
    assert [rd2.spaces[k].dim for k in (-2, -1, 0, 1, 2)] == [1, 2, 2, 2, 1]


def test_structure_suite(rd):
    assert verify_structure(rd, trials=20) == []


def test_B_and_Z(rd):
    assert bracket(rd.B, rd.Z) == rd.Z
    assert inner(rd.B, rd.B) == 1
    assert inner(rd.Z, rd.Z) == 2
    for lab, lam in ROOTS.items():
        for v in rd.spaces[lab].vectors:
            x = rd.ctx.element(v)
            assert bracket(rd.B, x) == x * lam


def test_subalgebra_dims(rd):
    n = rd.n
    assert rd.t.dim == n - 1
    assert rd.k0.dim == (n - 1) ** 2
    assert rd.n_space.dim == 2 * n - 1
    assert rd.an.dim == 2 * n
    assert rd.borel.dim == 3 * n - 1


def test_J_alpha(rd):
    for u in rd.alpha_basis:
        ju = J_alpha(rd, u)
        assert J_alpha(rd, ju) == -u
        assert inner(ju, u) == 0
        assert bracket(theta(u), rd.Z) == -ju


@given(elements(3))
def test_components_sum(x):
    from polarfol.catalog import as_root_data
    rd = as_root_data(3)
    parts = rd.components(x)
    total = rd.ctx.zero()
    for v in parts.values():
        total = total + v
    assert total == x


def test_components_labels_n2(rd2):
    assert "k0rest" not in rd2.components(rd2.B)
