"""Factor Exp(T + aB + X) in the Borel group as Exp(S) Exp(bB) Exp(Y)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from .catalog import as_root_data
from .errors import ConvergenceFailure, NotInBorel
from .root_space import RootData
from .su1n import AlgebraElement, exp_nilpotent

__all__ = ["IwasawaFactors", "iwasawa_group_factor", "unipotent_log"]


@dataclass
class IwasawaFactors:
    S: AlgebraElement
    b: Fraction
    Y: AlgebraElement | np.ndarray    # exact element, or float matrix
    exact: bool
    residual: float                   # |Exp(S)Exp(bB)Exp(Y) - input|

    def product(self, rd: RootData) -> np.ndarray:
        Y = self.Y.matrix.to_numpy() if self.exact else self.Y
        return (expm(self.S.matrix.to_numpy())
                @ expm(float(self.b) * rd.B.matrix.to_numpy()) @ expm(Y))


def unipotent_log(R: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """log R = sum (-1)^(k+1) (R - 1)^k / k, finite for unipotent R."""
    d = R.shape[0]
    N = R - np.eye(d)
    Nd = np.linalg.matrix_power(N, d)
    if np.max(np.abs(Nd)) > tol * max(1.0, np.max(np.abs(N))) ** d:
        raise ConvergenceFailure("matrix is not unipotent to working precision")
    out = np.zeros_like(N)
    P = np.eye(d, dtype=N.dtype)
    for k in range(1, d):
        P = P @ N
        out = out + ((-1) ** (k + 1) / k) * P
    return out


def iwasawa_group_factor(rd, T: AlgebraElement, a, X: AlgebraElement,
                         tol: float = 1e-9) -> IwasawaFactors:
    """S = T, b = a and Y = log(Exp(-bB) Exp(-S) Exp(T + aB + X)) in n.

    t + a is abelian and normalizes n, so the middle factor is unipotent and
    its logarithm is a finite series (the closed form of the BCH sum here).
    When T = 0 and a = 0 the result is exact: Y = X.
    """
    rd = as_root_data(rd)
    ctx = rd.ctx
    a = Fraction(a)
    if not rd.t.contains(T.coords):
        raise NotInBorel("T is not in t")
    if not rd.n_space.contains(X.coords):
        raise NotInBorel("X is not in n")
    if T.is_zero() and a == 0:
        exp_nilpotent(X)
        return IwasawaFactors(ctx.zero(), a, X, True, 0.0)
    if X.is_zero():
        return IwasawaFactors(T, a, ctx.zero(), True, 0.0)
    Tm = T.matrix.to_numpy()
    Bm = rd.B.matrix.to_numpy()
    M = expm(Tm + float(a) * Bm + X.matrix.to_numpy())
    R = expm(-float(a) * Bm) @ expm(-Tm) @ M
    Y = unipotent_log(R, tol)
    # Y must lie in n: compare with its least squares projection
    basis = np.array([ctx.element(v).matrix.to_numpy().ravel()
                      for v in rd.n_space.vectors]).T
    coef, *_ = np.linalg.lstsq(basis, Y.ravel(), rcond=None)
    if np.max(np.abs(basis @ coef - Y.ravel())) > tol:
        raise ConvergenceFailure("logarithm left n")
    out = IwasawaFactors(T, a, Y, False, 0.0)
    out.residual = float(np.max(np.abs(out.product(rd) - M)))
    return out
