"""Coordinates (a, U, x) <-> aB + U + xZ on the solvable algebra a + n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ContextMismatch, NotInSolvablePart
from .exact_linalg import as_fraction
from .root_space import RootData
from .su1n import AlgebraElement, inner

__all__ = ["ANVector", "an_bracket", "an_metric", "an_gram", "to_matrix",
           "from_matrix", "killing_J_pairing"]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ANVector:
    """aB + U + xZ with U given in the J-adapted basis of g_alpha."""

    a: Fraction
    U: tuple
    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "x", as_fraction(self.x))
        object.__setattr__(self, "U", tuple(as_fraction(u) for u in self.U))

    @classmethod
    def zero(cls, n: int) -> "ANVector":
        return cls(0, (0,) * (2 * (n - 1)), 0)

    def __add__(self, o: "ANVector") -> "ANVector":
        self._check(o)
        return ANVector(self.a + o.a, tuple(p + q for p, q in
                                            zip(self.U, o.U)), self.x + o.x)

    def __sub__(self, o: "ANVector") -> "ANVector":
        return self + o * -1

    def __mul__(self, c) -> "ANVector":
        c = as_fraction(c)
        return ANVector(self.a * c, tuple(c * u for u in self.U), self.x * c)

    __rmul__ = __mul__

    def _check(self, o: "ANVector"):
        if len(self.U) != len(o.U):
            raise ContextMismatch("a+n vectors of different rank")

    def as_tuple(self) -> tuple:
        return (self.a,) + self.U + (self.x,)


def killing_J_pairing(rd: RootData, u: Sequence, v: Sequence) -> Fraction:
    """<JU, V> in the Killing metric, for J-adapted coordinate vectors."""
    ju = rd.J_matrix_apply(u)
    # the J-adapted basis is orthogonal with Killing norm^2 = 2
    return 2 * sum((p * q for p, q in zip(ju, v)), Fraction(0))


def an_bracket(rd: RootData, v: ANVector, w: ANVector) -> ANVector:
    """[aB+U+xZ, bB+V+yZ] = -b/2 U + a/2 V + (-bx + ay + <JU,V>/2) Z."""
    v._check(w)
    if len(v.U) != len(rd.alpha_basis):
        raise ContextMismatch("vector rank does not match the root data")
    a, b = v.a, w.a
    U = tuple(-b * HALF * p + a * HALF * q for p, q in zip(v.U, w.U))
    z = -b * v.x + a * w.x + HALF * killing_J_pairing(rd, v.U, w.U)
    return ANVector(0, U, z)


def an_gram(rd: RootData) -> list[list[Fraction]]:
    """Gram matrix of <,>_AN on the (B, g_alpha basis, Z) coordinates."""
    m = 2 * rd.n
    gram = [[Fraction(0)] * m for _ in range(m)]
    gram[0][0] = inner(rd.B, rd.B)
    for i, e in enumerate(rd.alpha_basis):
        for j, f in enumerate(rd.alpha_basis):
            gram[1 + i][1 + j] = HALF * inner(e, f)
    gram[m - 1][m - 1] = HALF * inner(rd.Z, rd.Z)
    return gram


def an_metric(rd: RootData, v: ANVector, w: ANVector) -> Fraction:
    """<X,Y>_AN = <X_a,Y_a> + <X_n,Y_n>/2; the adapted basis is AN-orthonormal."""
    v._check(w)
    return v.a * w.a + sum((p * q for p, q in zip(v.U, w.U)),
                           Fraction(0)) + v.x * w.x


def to_matrix(rd: RootData, v: ANVector) -> AlgebraElement:
    return rd.B * v.a + rd.from_alpha_coords(v.U) + rd.Z * v.x


def from_matrix(rd: RootData, X: AlgebraElement) -> ANVector:
    if X.ctx is not rd.ctx:
        raise ContextMismatch("element from another context")
    if not rd.an.contains(X.coords):
        raise NotInSolvablePart("element is not in a + n")
    comp = rd.components(X)
    a = inner(comp["a"], rd.B)
    x = inner(comp["g2a"], rd.Z) / 2
    return ANVector(a, rd.alpha_coords(comp["ga"]), x)
