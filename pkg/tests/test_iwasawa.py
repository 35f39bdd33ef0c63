from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm

from polarfol.errors import ConvergenceFailure, NotInBorel
from polarfol.iwasawa import iwasawa_group_factor, unipotent_log


def test_pure_nilpotent_is_exact(rd3):
    X = rd3.alpha_basis[0] + rd3.Z * 3
    f = iwasawa_group_factor(rd3, rd3.ctx.zero(), 0, X)
    assert f.exact and f.Y == X and f.residual == 0.0


def test_no_nilpotent_part(rd3):
    T = rd3.t_basis[0]
    f = iwasawa_group_factor(rd3, T, Fraction(1, 2), rd3.ctx.zero())
    assert f.exact and f.Y.is_zero() and f.b == Fraction(1, 2)


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(-2), 1])
def test_general_factor(rd, a):
    T = rd.t_basis[0] * 2
    X = rd.alpha_basis[0] - rd.alpha_basis[1] * 3 + rd.Z
    f = iwasawa_group_factor(rd, T, a, X)
    assert not f.exact
    assert f.residual < 1e-10
    M = expm(T.matrix.to_numpy() + float(a) * rd.B.matrix.to_numpy()
             + X.matrix.to_numpy())
    assert np.allclose(f.product(rd), M, atol=1e-10)
    # Y is nilpotent
    assert np.allclose(np.linalg.matrix_power(f.Y, rd.n + 1), 0, atol=1e-9)


def test_rejects_inputs_outside_borel(rd2):
    with pytest.raises(NotInBorel):
        iwasawa_group_factor(rd2, rd2.B, 0, rd2.Z)
    with pytest.raises(NotInBorel):
        iwasawa_group_factor(rd2, rd2.ctx.zero(), 0, rd2.B)


def test_unipotent_log():
    N = np.array([[0, 1, 2], [0, 0, 3], [0, 0, 0]], dtype=float)
    assert np.allclose(unipotent_log(expm(N)), N)
    with pytest.raises(ConvergenceFailure):
        unipotent_log(np.diag([2.0, 1.0, 1.0]))
