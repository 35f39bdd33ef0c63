"""Hand-built subalgebras that exercise the edges of the classification.

* complex-line and other non-totally-real variants of s_{V,w} (not polar);
* the two-dimensional-pi shape, which passes the polarity criterion but
  does not foliate (n = 2);
* t-graphs over s_{V,w}: valid ones whose t-part centralizes w and an
  adversarial one whose t-part does not.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .catalog import (RealSubspace, as_root_data, k0_element, conjugate,
                      random_unitary, s_vw, standard_real_subspace)
from .errors import BadParameters
from .exact_linalg import Subspace, solve
from .polar import Subalgebra, close_check
from .root_space import RootData
from .sampling import rand_fraction, rand_nonzero_fraction
from .solvable import killing_J_pairing
from .su1n import AlgebraElement, bracket, inner

__all__ = [
    "torus_weights",
    "torus_with_weights",
    "complex_line_fixture",
    "non_totally_real_variants",
    "NonFoliatingFixture",
    "non_foliating_fixture",
    "random_non_foliating_fixture",
    "adversarial_t_fixture",
    "valid_t_fixtures",
]


def torus_weights(rd: RootData, T: AlgebraElement) -> list[Fraction]:
    """c_j with [T, e_j] = c_j J e_j: T acts on z_j as multiplication by i c_j."""
    al = rd.alpha_basis
    out = []
    for j in range(rd.n - 1):
        img = bracket(T, al[2 * j])
        c = inner(img, al[2 * j + 1]) / 2
        if img != al[2 * j + 1] * c:
            raise BadParameters("element does not act diagonally on g_alpha")
        out.append(c)
    return out


def torus_with_weights(rd: RootData, weights) -> AlgebraElement:
    """The element of t with prescribed weights c_1, ..., c_{n-1}."""
    W = [torus_weights(rd, T) for T in rd.t_basis]
    cols = [[W[t][j] for t in range(len(W))] for j in range(rd.n - 1)]
    c = solve(cols, [Fraction(x) for x in weights])
    out = rd.ctx.zero()
    for ci, T in zip(c, rd.t_basis):
        out = out + T * ci
    return out


def complex_line_fixture(rd, V: int = 1) -> Subspace:
    """V + (g_alpha - C e_1) + g_2alpha: w is a complex line."""
    rd = as_root_data(rd)
    al = rd.alpha_basis
    return s_vw(rd, V, [al[0], al[1]], check=False)


def non_totally_real_variants(rd, rng: random.Random, count: int = 5
                              ) -> list[Subspace]:
    """Random s_{V,w} with w not totally real, rotated by a random K0 element."""
    rd = as_root_data(rd)
    ctx = rd.ctx
    m = 2 * (rd.n - 1)
    out = []
    while len(out) < count:
        V = rng.randint(0, 1)
        dim = rng.randint(2, m) if m > 2 else 2
        vecs = [[rand_fraction(rng, 3) for _ in range(m)] for _ in range(dim)]
        if Subspace(m, vecs).dim != dim:
            continue
        if all(killing_J_pairing(rd, u, v) == 0 for u in vecs for v in vecs):
            continue
        s = s_vw(rd, V, vecs, check=False)
        h = close_check(ctx, s, "non-totally-real w")
        k = k0_element(rd, random_unitary(rng, rd.n - 1))
        out.append(conjugate(h, k).basis)
    return out


@dataclass
class NonFoliatingFixture:
    h: Subalgebra
    X: AlgebraElement
    Y: AlgebraElement
    gamma: Fraction
    T_X: AlgebraElement
    T_JX: AlgebraElement
    T_Y: AlgebraElement

    @property
    def g_nilpotent(self) -> AlgebraElement:
        return self.X * (Fraction(-2) / inner(self.X, self.X))


def non_foliating_fixture(rd, X: AlgebraElement | None = None,
                  gamma=Fraction(0)) -> NonFoliatingFixture:
    """A subalgebra at n = 2 with normal space

        R(B + (1-theta)X) + R((1-theta)Y + (1-theta)Z),
        Y = gamma X - JX/|X|^2,

    built from the elements T_U - <U,X>B + U - <U,Y>Z/2 (U = X, JX) with
    T_X = 0 and [T_JX, X] = -(|X|^2/2) JX.  It satisfies the polarity
    criterion but its orbits do not form a foliation.
    """
    rd = as_root_data(rd)
    if rd.n != 2:
        raise BadParameters("the two-dimensional-pi fixture is built for n=2")
    ctx = rd.ctx
    X = rd.alpha_basis[0] if X is None else X
    if not rd.g_a.contains(X.coords) or X.is_zero():
        raise BadParameters("X must be a nonzero element of g_alpha")
    gamma = Fraction(gamma)
    nX = inner(X, X)
    JX = rd.J_an(X)
    Y = X * gamma - JX / nX

    def A(U):
        return rd.B * (-inner(U, X)) + U - rd.Z * (inner(U, Y) / 2)

    # ad(t) acts on g_alpha as c J for n = 2
    c = torus_weights(rd, rd.t_basis[0])[0]
    T_JX = rd.t_basis[0] * (-nX / (2 * c))
    T_X = ctx.zero()
    h = close_check(ctx, [T_X + A(X), T_JX + A(JX)], "two-dimensional pi")
    # T_Y from Y = gamma X - JX/|X|^2
    T_Y = T_X * gamma - T_JX / nX
    return NonFoliatingFixture(h, X, Y, gamma, T_X, T_JX, T_Y)


def random_non_foliating_fixture(rng: random.Random, rd=None) -> NonFoliatingFixture:
    rd = as_root_data(2 if rd is None else rd)
    while True:
        a, b = rand_fraction(rng, 3), rand_fraction(rng, 3)
        if a or b:
            break
    X = rd.from_alpha_coords((a, b))
    return non_foliating_fixture(rd, X, rand_fraction(rng, 3))


def adversarial_t_fixture(rd) -> Subalgebra:
    """span(T + Je_1) + (g_alpha - C e_1) + g_2alpha with [T, e_1] != 0.

    The a+n-projection is s_{0, R e_1}; T acts by the same weight on every
    coordinate, so the span closes, but F_{e_1}(Je_1) = [e_1, T] != 0."""
    rd = as_root_data(rd)
    al = rd.alpha_basis
    T = torus_with_weights(rd, [1] * (rd.n - 1))
    gens = [T + al[1]] + list(al[2:]) + [rd.Z]
    return close_check(rd.ctx, gens, "adversarial t-graph")


def valid_t_fixtures(rd) -> list[Subalgebra]:
    """t-graphs over s_{V,w} whose t-part centralizes w."""
    rd = as_root_data(rd)
    ctx = rd.ctx
    n = rd.n
    al = rd.alpha_basis
    out = []
    # R(T + B) + (g_alpha - w) + g_2alpha with w = span(e_1..e_b), b < n-1
    for b in range(n - 1):
        T = torus_with_weights(rd, [0] * b + [1] * (n - 1 - b))
        comp = standard_real_subspace(rd, b).complement_elements()
        out.append(close_check(ctx, [T + rd.B] + comp + [rd.Z],
                               f"t-graph over s_(1,{b})"))
    # span(T + Je_1) + (g_alpha - C e_1) + g_2alpha with [T, e_1] = 0
    if n >= 3:
        T = torus_with_weights(rd, [0] + [1] * (n - 2))
        gens = [T + al[1]] + list(al[2:]) + [rd.Z]
        out.append(close_check(ctx, gens, "t-graph over s_(0,1)"))
    return out
