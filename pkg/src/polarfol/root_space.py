"""Restricted root space decomposition of su(1,n) with respect to a = R B.

B = (E_01 + E_10)/2 has ad-eigenvalues {0, +-1/2, +-1}, so alpha(B) = 1/2 and
every eigenspace is an exact kernel.  The J-adapted basis of g_alpha is
``(e_2, J e_2, ..., e_n, J e_n)`` where e_k has X[0,k] = X[1,k] = 1/2; these
vectors are mutually orthogonal with Killing norm^2 equal to 2, i.e. they are
orthonormal for the a+n metric.  (A Killing-orthonormal rational basis does
not exist: it would need entries 1/(2 sqrt 2).)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import InconsistentModel, NotInRootSpace
from .exact_linalg import Subspace, kernel, rref
from .sampling import make_rng, rand_combination, rand_nonzero_combination
from .su1n import (AlgebraContext, AlgebraElement, bracket, inner,
                   make_context, theta)

__all__ = [
    "RootData",
    "PSpaces",
    "root_decomposition",
    "p_spaces",
    "define_Z",
    "J_alpha",
    "verify_structure",
    "ROOTS",
]

HALF = Fraction(1, 2)

# eigenvalues of ad(B) labelled by multiples of alpha
ROOTS = {-2: Fraction(-1), -1: Fraction(-1, 2), 0: Fraction(0),
         1: Fraction(1, 2), 2: Fraction(1)}


@dataclass(frozen=True)
class PSpaces:
    p_alpha: Subspace
    p_2alpha: Subspace
    k_alpha: Subspace
    k_2alpha: Subspace


def _elements(ctx: AlgebraContext, s: Subspace) -> tuple[AlgebraElement, ...]:
    return tuple(ctx.element(v) for v in s.vectors)


def _span(ctx: AlgebraContext, elems) -> Subspace:
    return Subspace(ctx.dim, [e.coords for e in elems])


@dataclass(frozen=True, eq=False)
class RootData:
    ctx: AlgebraContext = field(repr=False)
    B: AlgebraElement
    Z: AlgebraElement
    spaces: dict = field(repr=False)           # root label -> Subspace
    k0: Subspace = field(repr=False)
    alpha_basis: tuple = field(repr=False)     # (e_2, Je_2, ..., e_n, Je_n)
    J: tuple = field(repr=False)               # matrix of J on alpha_basis
    t_basis: tuple = field(repr=False)
    pspaces: PSpaces = field(repr=False)

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def a(self) -> Subspace:
        return _span(self.ctx, [self.B])

    @property
    def g_minus2a(self) -> Subspace:
        return self.spaces[-2]

    @property
    def g_minus_a(self) -> Subspace:
        return self.spaces[-1]

    @property
    def g0(self) -> Subspace:
        return self.spaces[0]

    @property
    def g_a(self) -> Subspace:
        return self.spaces[1]

    @property
    def g_2a(self) -> Subspace:
        return self.spaces[2]

    @cached_property
    def p(self) -> Subspace:
        ctx = self.ctx
        return _span(ctx, [ctx.unit(k) for k in ctx.p_indices])

    @cached_property
    def k(self) -> Subspace:
        ctx = self.ctx
        p = set(ctx.p_indices)
        return _span(ctx, [ctx.unit(k) for k in range(ctx.dim) if k not in p])

    @cached_property
    def t(self) -> Subspace:
        return _span(self.ctx, self.t_basis)

    @cached_property
    def n_space(self) -> Subspace:
        return self.g_a + self.g_2a

    @cached_property
    def an(self) -> Subspace:
        return self.a + self.n_space

    @cached_property
    def borel(self) -> Subspace:
        return self.t + self.an

    @cached_property
    def _adapted(self):
        """Basis adapted to the root decomposition and its inverse."""
        ctx = self.ctx
        k0_rest = []
        acc = _span(ctx, self.t_basis)
        for v in self.k0.vectors:
            if not acc.contains(v):
                k0_rest.append(ctx.element(v))
                acc = acc + _span(ctx, [k0_rest[-1]])
        blocks = [
            ("g-2a", [theta(self.Z)]),
            ("g-a", [theta(u) for u in self.alpha_basis]),
            ("t", list(self.t_basis)),
            ("k0rest", k0_rest),
            ("a", [self.B]),
            ("ga", list(self.alpha_basis)),
            ("g2a", [self.Z]),
        ]
        vecs, owners = [], []
        for name, elems in blocks:
            for e in elems:
                vecs.append(e.coords)
                owners.append(name)
        d = ctx.dim
        if len(vecs) != d:
            raise InconsistentModel("adapted basis has the wrong size")
        # solve for the inverse: columns of vecs
        aug = [[vecs[c][r] for c in range(d)] +
               [Fraction(int(r == j)) for j in range(d)] for r in range(d)]
        red, piv = rref(aug)
        if piv[:d] != list(range(d)):
            raise InconsistentModel("adapted basis is not a basis")
        inv = [row[d:] for row in red]
        return vecs, owners, inv

    def adapted_coords(self, x: AlgebraElement) -> list[Fraction]:
        _, _, inv = self._adapted
        c = x.coords
        return [sum((r[j] * c[j] for j in range(len(c)) if c[j] and r[j]),
                    Fraction(0)) for r in inv]

    def components(self, x: AlgebraElement) -> dict[str, AlgebraElement]:
        """Split x along g_{-2a}, g_{-a}, t, k0 rest, a, g_a, g_2a."""
        vecs, owners, _ = self._adapted
        ctx = self.ctx
        out = {name: ctx.zero() for name in dict.fromkeys(owners)}
        for c, v, name in zip(self.adapted_coords(x), vecs, owners):
            if c:
                out[name] = out[name] + ctx.element(v) * c
        return out

    def alpha_coords(self, u: AlgebraElement) -> tuple[Fraction, ...]:
        """Coordinates of u in the J-adapted basis of g_alpha."""
        if not self.g_a.contains(u.coords):
            raise NotInRootSpace("element is not in g_alpha")
        # the basis is orthogonal with squared norm 2
        return tuple(inner(u, e) / 2 for e in self.alpha_basis)

    def from_alpha_coords(self, c: Sequence) -> AlgebraElement:
        out = self.ctx.zero()
        for x, e in zip(c, self.alpha_basis):
            if x:
                out = out + e * Fraction(x)
        return out

    def J_matrix_apply(self, c: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((row[j] * c[j] for j in range(len(c))), Fraction(0))
                     for row in self.J)

    def i_p(self, x: AlgebraElement) -> AlgebraElement:
        """Complex structure of p (multiplication by i on the (0,j) block)."""
        if not self.ctx.is_p(x.coords):
            raise InconsistentModel("complex structure applied outside p")
        return AlgebraElement(self.ctx, self.ctx.complex_structure_p(x.coords))

    def J_an(self, x: AlgebraElement) -> AlgebraElement:
        """Complex structure J on a+n: JB = Z, JZ = -B, J on g_alpha."""
        comp = self.components(x)
        a = comp["a"]
        z = comp["g2a"]
        ca = inner(a, self.B)
        cz = inner(z, self.Z) / 2
        u = comp["ga"]
        ju = J_alpha(self, u) if not u.is_zero() else self.ctx.zero()
        return self.Z * ca - self.B * cz + ju


def _ad_rows(ctx: AlgebraContext, x: AlgebraElement) -> list[list[Fraction]]:
    cols = [ctx.bracket_coords(x.coords, e.coords) for e in ctx.basis]
    return [[cols[c][r] for c in range(ctx.dim)] for r in range(ctx.dim)]


def p_spaces(ctx: AlgebraContext, spaces: dict) -> PSpaces:
    def image(s: Subspace, sign: int) -> Subspace:
        out = []
        for v in s.vectors:
            x = ctx.element(v)
            out.append((x - theta(x)) if sign < 0 else (x + theta(x)))
        return _span(ctx, out)
    return PSpaces(p_alpha=image(spaces[1], -1), p_2alpha=image(spaces[2], -1),
                   k_alpha=image(spaces[1], +1), k_2alpha=image(spaces[2], +1))


def define_Z(ctx: AlgebraContext, B: AlgebraElement, g_2a: Subspace,
             ps: PSpaces | None = None) -> AlgebraElement:
    """The element Z of g_2alpha with (1 - theta) Z = 2 i B."""
    target = AlgebraElement(ctx, ctx.complex_structure_p(B.coords)) * 2
    if g_2a.dim != 1:
        raise InconsistentModel("g_2alpha is not one-dimensional")
    z0 = ctx.element(g_2a.vectors[0])
    img = z0 - theta(z0)
    # solve c * img = target
    k = next(i for i, v in enumerate(img.coords) if v != 0)
    c = target.coords[k] / img.coords[k]
    z = z0 * c
    if (z - theta(z)) != target:
        raise InconsistentModel("no Z with (1 - theta) Z = 2 i B")
    if ps is not None and not ps.p_2alpha.contains(target.coords):
        raise InconsistentModel("i B is not in p_2alpha")
    return z


def J_alpha(rd: RootData, u: AlgebraElement) -> AlgebraElement:
    """J U := -[theta U, Z] for U in g_alpha."""
    if not rd.g_a.contains(u.coords):
        raise NotInRootSpace("J_alpha needs an element of g_alpha")
    return -bracket(theta(u), rd.Z)


def standard_torus(ctx: AlgebraContext) -> tuple[AlgebraElement, ...]:
    """Diagonal torus of k0: i*diag(phi, phi, d_2, ..., d_n), trace zero."""
    out = []
    d1 = ctx.index[("diag", 1, 1)]
    for k in range(2, ctx.size):
        c = [Fraction(0)] * ctx.dim
        c[ctx.index[("diag", k, k)]] = Fraction(2)
        c[d1] = Fraction(-1)
        out.append(ctx.element(c))
    return tuple(out)


@lru_cache(maxsize=None)
def root_decomposition(ctx: AlgebraContext | int) -> RootData:
    if isinstance(ctx, int):
        ctx = make_context(ctx)
    n = ctx.n
    half = HALF
    B = ctx.element([0] * ctx.dim)
    B = B + ctx.unit(ctx.index[("re", 0, 1)]) * half
    ad = _ad_rows(ctx, B)
    spaces = {}
    for label, lam in ROOTS.items():
        m = [[ad[r][c] - (lam if r == c else 0) for c in range(ctx.dim)]
             for r in range(ctx.dim)]
        spaces[label] = kernel(m, ctx.dim)
    expected = {-2: 1, -1: 2 * (n - 1), 0: (n - 1) ** 2 + 1, 1: 2 * (n - 1),
                2: 1}
    for label, d in expected.items():
        if spaces[label].dim != d:
            raise InconsistentModel(
                f"dim g_{label}alpha = {spaces[label].dim}, expected {d}")
    k = Subspace(ctx.dim, [ctx.unit(i).coords for i in range(ctx.dim)
                           if i not in set(ctx.p_indices)])
    k0 = spaces[0].intersect(k)
    ps = p_spaces(ctx, spaces)
    Z = define_Z(ctx, B, spaces[2], ps)

    alpha = []
    for j in range(2, ctx.size):
        c = [Fraction(0)] * ctx.dim
        c[ctx.index[("re", 0, j)]] = half
        c[ctx.index[("re", 1, j)]] = half
        e = ctx.element(c)
        if not spaces[1].contains(e.coords):
            raise InconsistentModel("e_k is not in g_alpha")
        je = -bracket(theta(e), Z)
        alpha += [e, je]
    alpha = tuple(alpha)
    gram = [[inner(x, y) for y in alpha] for x in alpha]
    for i in range(len(alpha)):
        for j in range(len(alpha)):
            if gram[i][j] != (2 if i == j else 0):
                raise InconsistentModel("J-adapted basis is not orthogonal")
    # matrix of J on the adapted basis: column j = coords of J(alpha_j)
    cols = []
    for e in alpha:
        je = -bracket(theta(e), Z)
        cols.append([inner(je, f) / 2 for f in alpha])
    J = tuple(tuple(cols[c][r] for c in range(len(alpha)))
              for r in range(len(alpha)))
    t_basis = standard_torus(ctx)
    for t in t_basis:
        if not k0.contains(t.coords):
            raise InconsistentModel("torus element outside k0")
    return RootData(ctx=ctx, B=B, Z=Z, spaces=spaces, k0=k0,
                    alpha_basis=alpha, J=J, t_basis=t_basis, pspaces=ps)


def with_torus(rd: RootData, t_basis: Sequence[AlgebraElement]) -> RootData:
    """Copy of ``rd`` using another maximal abelian subspace of k0."""
    t_basis = tuple(t_basis)
    for t in t_basis:
        if not rd.k0.contains(t.coords):
            raise NotInRootSpace("torus element outside k0")
    for x in t_basis:
        for y in t_basis:
            if not bracket(x, y).is_zero():
                raise NotInRootSpace("torus is not abelian")
    return RootData(ctx=rd.ctx, B=rd.B, Z=rd.Z, spaces=rd.spaces, k0=rd.k0,
                    alpha_basis=rd.alpha_basis, J=rd.J, t_basis=t_basis,
                    pspaces=rd.pspaces)


def _root_of_sum(a: int, b: int) -> int | None:
    s = a + b
    return s if s in ROOTS else None


def verify_structure(rd: RootData, trials: int = 100,
                     seed: int = 0) -> list[str]:
    """Exact identity suite; returns the descriptions of violated checks."""
    ctx = rd.ctx
    bad: list[str] = []
    rng = make_rng(seed, "verify_structure", ctx.n)
    els = {lab: _elements(ctx, s) for lab, s in rd.spaces.items()}

    for lab, lam in ROOTS.items():
        for x in els[lab]:
            if bracket(rd.B, x) != x * lam:
                bad.append(f"ad(B) eigenvalue on g_{lab}alpha")
                break

    for la in ROOTS:
        for mu in ROOTS:
            target = _root_of_sum(la, mu)
            for x in els[la]:
                for y in els[mu]:
                    z = bracket(x, y)
                    if target is None:
                        ok = z.is_zero()
                    else:
                        ok = rd.spaces[target].contains(z.coords)
                    if not ok:
                        bad.append(f"[g_{la}a, g_{mu}a] not in g_{target}a")
                        break
                else:
                    continue
                break

    for lab in ROOTS:
        img = Subspace(ctx.dim, [theta(x).coords for x in els[lab]])
        if img != rd.spaces[-lab]:
            bad.append(f"theta g_{lab}a != g_{-lab}a")

    if inner(rd.B, rd.B) != 1:
        bad.append("<B,B> != 1")
    if inner(rd.Z, rd.Z) != 2:
        bad.append("<Z,Z> != 2")
    if bracket(rd.B, rd.Z) != rd.Z:
        bad.append("[B,Z] != Z")
    if rd.i_p(rd.B) != (rd.Z - theta(rd.Z)) * HALF:
        bad.append("iB != (1-theta)Z/2")

    for t in rd.t_basis:
        if not bracket(t, rd.B).is_zero():
            bad.append("[t,a] != 0")
        if not bracket(t, rd.Z).is_zero():
            bad.append("[t,g_2a] != 0")
        for u in rd.alpha_basis:
            if not rd.g_a.contains(bracket(t, u).coords):
                bad.append("[t,g_a] not in g_a")

    alpha = rd.alpha_basis
    for u in alpha:
        ju = J_alpha(rd, u)
        if not rd.g_a.contains(ju.coords):
            bad.append("J U not in g_a")
        if J_alpha(rd, ju) != -u:
            bad.append("J^2 != -1")
        if inner(ju, ju) != inner(u, u):
            bad.append("J not orthogonal")
        # second half of the identity relating i on p to J on g_alpha
        if rd.i_p(u - theta(u)) != ju - theta(ju):
            bad.append("i(1-theta)U != (1-theta)JU")
        lhs = bracket(theta(u), rd.Z)
        if lhs != -ju:
            bad.append("[theta U, Z] != -JU")
        # J from the a+n bracket: <Z,[U,V]> = <JU,V> <Z,Z>/2 for all V
        for v in alpha:
            if inner(rd.Z, bracket(u, v)) != inner(ju, v):
                bad.append("<Z,[U,V]> != <JU,V>")

    k0 = _elements(ctx, rd.k0)
    for _ in range(trials):
        T = rand_combination(rng, k0)
        U = rand_combination(rng, alpha)
        V = rand_combination(rng, alpha)
        W = rand_combination(rng, alpha)
        x = bracket(theta(U), V)
        lhs = inner(T, x + theta(x))
        if lhs != 2 * inner(bracket(T, U), V):
            bad.append("<T,(1+theta)[theta U,V]> != 2<[T,U],V>")
            break
        if bracket(rd.B, W - theta(W)) != (W + theta(W)) * HALF:
            bad.append("[B,(1-theta)W] != (1+theta)W/2")
            break
        JU = J_alpha(rd, U)
        if bracket(U, JU) != rd.Z * (inner(U, U) / 2):
            bad.append("[U,JU] != |U|^2 Z/2")
            break
        if inner(JU, U) != 0:
            bad.append("<JU,U> != 0")
            break

    for _ in range(max(1, trials // 2)):
        T = rand_nonzero_combination(rng, k0)
        U = rand_combination(rng, alpha)
        if J_alpha(rd, bracket(T, U)) != bracket(T, J_alpha(rd, U)):
            bad.append("J does not commute with ad(k0)")
            break

    n_basis = list(alpha) + [rd.Z]
    nn = Subspace(ctx.dim, [bracket(x, y).coords for x in n_basis
                            for y in n_basis])
    if nn != rd.g_2a:
        bad.append("[n,n] != g_2a")
    for x in n_basis:
        for y in n_basis:
            for z in n_basis:
                if not bracket(x, bracket(y, z)).is_zero():
                    bad.append("[n,[n,n]] != 0")
                    break
            else:
                continue
            break
        else:
            continue
        break
    if rd.n_space.dim != 2 * ctx.n - 1:
        bad.append("dim n != 2n-1")
    return bad
