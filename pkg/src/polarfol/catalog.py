"""The canonical polar foliations S_{V,w} of CH^n and the K0-action on them.

For a subspace V of a and a totally real subspace w of g_alpha,

    s_{V,w} = V + (g_alpha - w) + g_2alpha

is a subalgebra of a + n whose orbits form a polar foliation.  Up to
congruence only a = dim V and b = dim w matter.
"""

from __future__ import annotations

import random
from math import isqrt
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BadParameters, ContextMismatch, NotTotallyReal
from .exact_linalg import ExactMatrix, GaussianRational, Subspace, kernel
from .polar import Subalgebra, check_polar, close_check
from .root_space import RootData, root_decomposition
from .sampling import rand_fraction
from .solvable import killing_J_pairing
from .su1n import (AlgebraContext, AlgebraElement, _group_inverse,
                   ad_conjugate, ad_series)

__all__ = [
    "CanonicalClass",
    "RealSubspace",
    "CanonicalMap",
    "as_root_data",
    "standard_real_subspace",
    "s_vw",
    "build_example",
    "points_subalgebra",
    "one_leaf_subalgebra",
    "catalog",
    "canonicalize_real_subspace",
    "cayley_unitary",
    "random_unitary",
    "k0_element",
    "conjugate",
    "conjugate_nilpotent",
    "alpha_to_complex",
    "complex_to_alpha",
]


def as_root_data(x: RootData | AlgebraContext | int) -> RootData:
    if isinstance(x, RootData):
        return x
    return root_decomposition(x)


@dataclass(frozen=True)
class CanonicalClass:
    """Congruence class of a homogeneous polar foliation.

    ``kind`` separates the two trivial foliations (``points``, ``one-leaf``)
    from the families S_{a,b}.  For the point foliation ``a`` and ``b`` are
    placeholders (0, 0); its leaves lie in horospheres trivially.
    """

    a: int
    b: int
    cohomogeneity: int
    horosphere_contained: bool
    trivial: bool
    kind: str = "S"

    @classmethod
    def of(cls, n: int, a: int, b: int) -> "CanonicalClass":
        if a not in (0, 1) or not 0 <= b <= n - 1:
            raise BadParameters(f"no class S_{{{a},{b}}} for n={n}")
        if a == 1 and b == 0:
            return cls.one_leaf()
        return cls(a, b, b if a == 1 else b + 1, a == 0, False)

    @classmethod
    def one_leaf(cls) -> "CanonicalClass":
        return cls(1, 0, 0, False, True, "one-leaf")

    @classmethod
    def points(cls, n: int) -> "CanonicalClass":
        return cls(0, 0, 2 * n, True, True, "points")

    @property
    def key(self) -> tuple:
        return (self.kind, self.a, self.b)

    @property
    def label(self) -> str:
        if self.kind != "S":
            return self.kind
        return f"S_{{{self.a},{self.b}}}"

    def to_dict(self) -> dict:
        return {"label": self.label, "a": self.a, "b": self.b,
                "cohomogeneity": self.cohomogeneity,
                "horosphere_contained": self.horosphere_contained,
                "trivial": self.trivial}


# -- totally real subspaces ------------------------------------------------

def alpha_to_complex(c: Sequence) -> list[GaussianRational]:
    """J-adapted coordinates (x_1, y_1, ...) -> z_k = x_k + i y_k."""
    return [GaussianRational(c[2 * k], c[2 * k + 1]) for k in range(len(c) // 2)]


def complex_to_alpha(z: Sequence) -> tuple[Fraction, ...]:
    out = []
    for v in z:
        v = GaussianRational.coerce(v)
        out += [v.re, v.im]
    return tuple(out)


class RealSubspace:
    """Totally real subspace w of g_alpha, in J-adapted coordinates."""

    def __init__(self, rd: RootData, vectors: Sequence):
        self.rd = rd
        vecs = []
        for v in vectors:
            if isinstance(v, AlgebraElement):
                if v.ctx is not rd.ctx:
                    raise ContextMismatch("vector from another context")
                v = rd.alpha_coords(v)
            v = tuple(Fraction(x) for x in v)
            if len(v) != 2 * (rd.n - 1):
                raise BadParameters("vector has the wrong length for g_alpha")
            vecs.append(v)
        self.space = Subspace(2 * (rd.n - 1), vecs)
        self.vectors = self.space.vectors
        for i, u in enumerate(self.vectors):
            for v in self.vectors[i:]:
                if killing_J_pairing(rd, u, v) != 0:
                    raise NotTotallyReal("<JW1, W2> != 0 for a basis pair")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def elements(self) -> list[AlgebraElement]:
        return [self.rd.from_alpha_coords(v) for v in self.vectors]

    def as_subspace(self) -> Subspace:
        """w as a subspace of g in the ambient coordinates."""
        return Subspace(self.rd.ctx.dim, [e.coords for e in self.elements])

    def complement_elements(self) -> list[AlgebraElement]:
        """Basis of g_alpha - w (Killing orthogonal complement)."""
        m = 2 * (self.rd.n - 1)
        # the J-adapted basis is orthogonal with equal norms, so the
        # Killing complement is the Euclidean one in these coordinates
        comp = kernel([list(v) for v in self.vectors], m) if self.vectors \
            else Subspace.full(m)
        return [self.rd.from_alpha_coords(v) for v in comp.vectors]

    def __eq__(self, other):
        if not isinstance(other, RealSubspace):
            return NotImplemented
        return self.rd.ctx is other.rd.ctx and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"RealSubspace(dim={self.dim}, n={self.rd.n})"


def standard_real_subspace(rd: RootData, b: int) -> RealSubspace:
    """span(e_1, ..., e_b) in the J-adapted basis."""
    m = 2 * (rd.n - 1)
    if not 0 <= b <= rd.n - 1:
        raise BadParameters(f"b must lie in 0..{rd.n - 1}")
    vecs = []
    for k in range(b):
        v = [Fraction(0)] * m
        v[2 * k] = Fraction(1)
        vecs.append(v)
    return RealSubspace(rd, vecs)


def s_vw(rd: RootData, V: int, w: RealSubspace | Sequence, note: str = "",
         check: bool = True) -> Subalgebra | Subspace:
    """V + (g_alpha - w) + g_2alpha.

    With ``check=False`` a raw span is returned and w need not be totally
    real; this is how negative controls are built.
    """
    if V not in (0, 1):
        raise BadParameters("V must be 0 or 1 (dim of V inside a)")
    if isinstance(w, RealSubspace):
        comp = w.complement_elements()
    else:
        m = 2 * (rd.n - 1)
        vecs = [rd.alpha_coords(v) if isinstance(v, AlgebraElement) else v
                for v in w]
        comp_s = kernel([list(v) for v in vecs], m) if vecs else \
            Subspace.full(m)
        comp = [rd.from_alpha_coords(v) for v in comp_s.vectors]
    gens = ([rd.B] if V else []) + comp + [rd.Z]
    if check:
        return close_check(rd.ctx, gens, note or f"s_(V={V},w)")
    return Subspace(rd.ctx.dim, [g.coords for g in gens])


def build_example(ctx, a: int, b: int) -> Subalgebra:
    """The standard representative of S_{a,b} (w = span(e_1..e_b))."""
    rd = as_root_data(ctx)
    if a not in (0, 1):
        raise BadParameters("a must be 0 or 1")
    if not 0 <= b <= rd.n - 1:
        raise BadParameters(f"b must lie in 0..{rd.n - 1} for n={rd.n}")
    h = s_vw(rd, a, standard_real_subspace(rd, b), f"S_{{{a},{b}}}")
    verdict = check_polar(h, rd)
    if not verdict.is_polar:
        raise AssertionError(f"S_{{{a},{b}}} failed the polarity criterion")
    return h


def points_subalgebra(ctx) -> Subalgebra:
    rd = as_root_data(ctx)
    return Subalgebra(rd.ctx, Subspace.zero(rd.ctx.dim), "points")


def one_leaf_subalgebra(ctx) -> Subalgebra:
    rd = as_root_data(ctx)
    return Subalgebra(rd.ctx, rd.an, "one-leaf (a+n)")


def catalog(ctx) -> list[tuple[CanonicalClass, Subalgebra]]:
    """The 2n+1 classes: two trivial ones, then S_{0,b} and S_{1,b}."""
    rd = as_root_data(ctx)
    n = rd.n
    out = [(CanonicalClass.points(n), points_subalgebra(rd)),
           (CanonicalClass.one_leaf(), one_leaf_subalgebra(rd))]
    for b in range(n):
        out.append((CanonicalClass.of(n, 0, b), build_example(rd, 0, b)))
    for b in range(1, n):
        out.append((CanonicalClass.of(n, 1, b), build_example(rd, 1, b)))
    return out


# -- the K0-action -----------------------------------------------------------

def _mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))),
                 GaussianRational(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def _mat_inverse(m):
    return ExactMatrix.from_rows(m).inverse().to_rows()


def cayley_unitary(S: Sequence[Sequence]) -> list[list[GaussianRational]]:
    """(I - S)^{-1}(I + S) for skew-Hermitian S: an exact unitary matrix."""
    d = len(S)
    S = [[GaussianRational.coerce(x) for x in row] for row in S]
    for i in range(d):
        for j in range(d):
            if S[i][j] != -S[j][i].conjugate():
                raise BadParameters("Cayley parameter is not skew-Hermitian")
    eye = [[GaussianRational(int(i == j)) for j in range(d)] for i in range(d)]
    plus = [[eye[i][j] + S[i][j] for j in range(d)] for i in range(d)]
    minus = [[eye[i][j] - S[i][j] for j in range(d)] for i in range(d)]
    return _mat_mul(_mat_inverse(minus), plus)


def random_unitary(rng: random.Random, d: int,
                   bound: int = 2) -> list[list[GaussianRational]]:
    S = [[GaussianRational(0)] * d for _ in range(d)]
    for i in range(d):
        S[i][i] = GaussianRational(0, rand_fraction(rng, bound))
        for j in range(i + 1, d):
            z = GaussianRational(rand_fraction(rng, bound),
                                 rand_fraction(rng, bound))
            S[i][j] = z
            S[j][i] = -z.conjugate()
    return cayley_unitary(S)


def k0_element(rd: RootData, M) -> ExactMatrix | np.ndarray:
    """diag(1, 1, M): its adjoint action is z -> M z on g_alpha.

    Exact when M has exact entries, otherwise a complex numpy matrix.  The
    determinant need not be one; the adjoint action ignores central scalars.
    """
    n = rd.n
    if isinstance(M, np.ndarray):
        g = np.eye(n + 1, dtype=complex)
        g[2:, 2:] = M
        return g
    rows = [[GaussianRational(int(i == j)) for j in range(n + 1)]
            for i in range(n + 1)]
    for i in range(n - 1):
        for j in range(n - 1):
            rows[2 + i][2 + j] = GaussianRational.coerce(M[i][j])
    return ExactMatrix.from_rows(rows)


def conjugate(h: Subalgebra, g: ExactMatrix, note: str = "") -> Subalgebra:
    """Ad(g) h for an exact group element g."""
    inv = _group_inverse(g)
    elems = [ad_conjugate(g, x, inv) for x in h.elements]
    return Subalgebra(h.ctx, Subspace(h.ctx.dim, [e.coords for e in elems]),
                      note or h.origin_note)


def conjugate_nilpotent(h: Subalgebra, N: AlgebraElement,
                        note: str = "") -> Subalgebra:
    """Ad(Exp N) h = exp(ad N) h, computed with the bracket series."""
    elems = [ad_series(N, x) for x in h.elements]
    return Subalgebra(h.ctx, Subspace(h.ctx.dim, [e.coords for e in elems]),
                      note or h.origin_note)


@dataclass
class CanonicalMap:
    """Unitary M on C^{n-1} (z_k = x_k + i y_k) with M w = span(e_1..e_b)."""

    matrix: object            # list of GaussianRational rows, or ndarray
    exact: bool
    b: int

    def apply(self, c: Sequence):
        """Image of a g_alpha coordinate vector."""
        if self.exact:
            z = alpha_to_complex(c)
            out = [sum((row[j] * z[j] for j in range(len(z))),
                       GaussianRational(0)) for row in self.matrix]
            return complex_to_alpha(out)
        z = np.array([complex(c[2 * k], c[2 * k + 1])
                      for k in range(len(c) // 2)])
        v = self.matrix @ z
        return np.column_stack([v.real, v.imag]).ravel()

    def numpy(self) -> np.ndarray:
        if self.exact:
            return np.array([[complex(x) for x in row] for row in self.matrix])
        return self.matrix

    def inverse(self) -> "CanonicalMap":
        if self.exact:
            inv = [[self.matrix[j][i].conjugate()
                    for j in range(len(self.matrix))]
                   for i in range(len(self.matrix))]
            return CanonicalMap(inv, True, self.b)
        return CanonicalMap(self.matrix.conj().T, False, self.b)

    def compose(self, other: "CanonicalMap") -> "CanonicalMap":
        """self after other."""
        if self.exact and other.exact:
            return CanonicalMap(_mat_mul(self.matrix, other.matrix), True,
                                self.b)
        return CanonicalMap(self.numpy() @ other.numpy(), False, self.b)

    def group_element(self, rd: RootData):
        return k0_element(rd, self.matrix)


def _hermitian(u, v) -> GaussianRational:
    return sum((x.conjugate() * y for x, y in zip(u, v)), GaussianRational(0))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def canonicalize_real_subspace(w: RealSubspace) -> CanonicalMap:
    """Unitary map of g_alpha carrying w onto span(e_1, ..., e_b).

    Hermitian Gram-Schmidt on w (whose Hermitian products are real, so the
    orthonormal basis stays inside w), completed by the standard vectors.
    The result is exact when every norm that occurs is a rational square.
    """
    d = w.rd.n - 1
    cols = []
    for v in w.vectors:
        cols.append(alpha_to_complex(v))
    for k in range(d):
        cols.append([GaussianRational(int(i == k)) for i in range(d)])
    ortho, norms2 = [], []
    for v in cols:
        u = list(v)
        for q, nq in zip(ortho, norms2):
            c = _hermitian(q, v) / nq
            u = [a - c * b for a, b in zip(u, q)]
        n2 = _hermitian(u, u).re
        if n2 == 0:
            continue
        ortho.append(u)
        norms2.append(n2)
        if len(ortho) == d:
            break
    roots = [_rational_sqrt(n2) for n2 in norms2]
    if all(r is not None for r in roots):
        # rows of M are the conjugated orthonormal vectors: M = U^H
        M = [[x.conjugate() / r for x in u] for u, r in zip(ortho, roots)]
        return CanonicalMap(M, True, w.dim)
    U = np.array([[complex(x) for x in u] for u in ortho]).T
    U = U / np.sqrt(np.array([float(n2) for n2 in norms2]))
    return CanonicalMap(U.conj().T, False, w.dim)
