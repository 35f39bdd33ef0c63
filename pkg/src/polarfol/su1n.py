"""Matrix model of su(1,n).

g = {X : X^* I + I X = 0, tr X = 0} with I = diag(-1, 1, ..., 1) and Cartan
involution theta(X) = I X I.  Elements are stored as real coordinate vectors
with respect to a fixed basis ordered lexicographically by matrix position:

* for each position (i, j) with i < j two elements, ``re(i,j)`` and
  ``im(i,j)``, whose coordinate is the real / imaginary part of X[i, j];
* for each diagonal position (k, k) with k >= 1 one element ``diag(k)`` whose
  coordinate is Im X[k, k] (X[0, 0] is then fixed by the trace condition).

The diagonal block is walked in the same row-major order, so the sequence is
``re(0,1), im(0,1), ..., re(0,n), im(0,n), diag(1), re(1,2), im(1,2), ...``.

With this basis every structure constant is an integer, which is what
:meth:`AlgebraContext.bracket_coords` exploits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import (ContextMismatch, InvalidRank, NotInAlgebra, NotNilpotent,
                     SingularGroupElement)
from .exact_linalg import ExactMatrix, GaussianRational, as_fraction

__all__ = [
    "AlgebraContext",
    "AlgebraElement",
    "CartanSplit",
    "make_context",
    "bracket",
    "theta",
    "cartan_split",
    "inner",
    "define_metric_scale",
    "exp_nilpotent",
    "ad_conjugate",
    "ad_series",
    "signature_matrix",
    "is_form_preserving",
]

_ZERO = Fraction(0)


def _basis_labels(n: int) -> list[tuple]:
    labels = []
    for i in range(n + 1):
        for j in range(i, n + 1):
            if i == j:
                if i >= 1:
                    labels.append(("diag", i, i))
            else:
                labels.append(("re", i, j))
                labels.append(("im", i, j))
    return labels


def _sparse_basis_element(label) -> dict:
    """Entries of a basis element as {(row, col): (re, im)} with ints."""
    kind, i, j = label
    if kind == "diag":
        return {(i, i): (0, 1), (0, 0): (0, -1)}
    if i == 0:
        # X[0, j] = conj(X[j, 0])
        if kind == "re":
            return {(0, j): (1, 0), (j, 0): (1, 0)}
        return {(0, j): (0, 1), (j, 0): (0, -1)}
    # skew-Hermitian block: X[j, i] = -conj(X[i, j])
    if kind == "re":
        return {(i, j): (1, 0), (j, i): (-1, 0)}
    return {(i, j): (0, 1), (j, i): (0, 1)}


def _sparse_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (r, k), (ar, ai) in a.items():
        for (k2, c), (br, bi) in b.items():
            if k != k2:
                continue
            re, im = out.get((r, c), (0, 0))
            out[(r, c)] = (re + ar * br - ai * bi, im + ar * bi + ai * br)
    return out


def signature_matrix(n: int) -> ExactMatrix:
    return ExactMatrix(n + 1, n + 1,
                       [(-1 if i == 0 else 1) if i == j else 0
                        for i in range(n + 1) for j in range(n + 1)])


class AlgebraContext:
    """su(1,n) together with its fixed basis, bracket and inner product."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise InvalidRank(f"n must be an integer >= 2, got {n!r}")
        self.n = n
        self.size = n + 1
        self.labels = _basis_labels(n)
        self.dim = len(self.labels)
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        self.signature = signature_matrix(n)
        self._sparse = [_sparse_basis_element(lab) for lab in self.labels]
        self._struct = self._structure_constants()
        # coordinate positions of the off-diagonal block (0, j): these span p
        self.p_indices = tuple(k for k, (kind, i, j) in enumerate(self.labels)
                               if kind != "diag" and i == 0)
        self._p_set = frozenset(self.p_indices)
        self.diag_indices = tuple(k for k, lab in enumerate(self.labels)
                                  if lab[0] == "diag")
        self.metric_scale = define_metric_scale(self)

    def __repr__(self):
        return f"AlgebraContext(n={self.n})"

    @cached_property
    def basis(self) -> tuple["AlgebraElement", ...]:
        return tuple(self.unit(k) for k in range(self.dim))

    def unit(self, k: int) -> "AlgebraElement":
        c = [_ZERO] * self.dim
        c[k] = Fraction(1)
        return AlgebraElement(self, tuple(c))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (_ZERO,) * self.dim)

    def element(self, coords: Sequence) -> "AlgebraElement":
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        return AlgebraElement(self, tuple(as_fraction(c) for c in coords))

    # -- coordinates <-> matrices -------------------------------------------

    def _coords_from_entries(self, get) -> tuple[Fraction, ...]:
        out = []
        for kind, i, j in self.labels:
            z = get(i, j)
            out.append(z.re if kind == "re" else z.im)
        return tuple(out)

    def matrix_of(self, coords: Sequence[Fraction]) -> ExactMatrix:
        s = self.size
        re = [[_ZERO] * s for _ in range(s)]
        im = [[_ZERO] * s for _ in range(s)]
        for c, sp in zip(coords, self._sparse):
            if c == 0:
                continue
            for (r, k), (a, b) in sp.items():
                if a:
                    re[r][k] += c * a
                if b:
                    im[r][k] += c * b
        return ExactMatrix(s, s, [GaussianRational(re[r][k], im[r][k])
                                  for r in range(s) for k in range(s)])

    def is_member(self, m: ExactMatrix) -> bool:
        if m.shape != (self.size, self.size):
            return False
        sig = self.signature
        lhs = m.H @ sig + sig @ m
        return lhs.is_zero() and m.trace() == 0

    def from_matrix(self, m: ExactMatrix) -> "AlgebraElement":
        if not self.is_member(m):
            raise NotInAlgebra("matrix does not lie in su(1,n)")
        return AlgebraElement(self, self._coords_from_entries(
            lambda i, j: m[i, j]))

    def coords_from_numpy(self, m) -> list[float]:
        """Float coordinates of a complex matrix, read off without checks."""
        out = []
        for kind, i, j in self.labels:
            z = complex(m[i, j])
            out.append(z.real if kind == "re" else z.imag)
        return out

    # -- structure ----------------------------------------------------------

    def _structure_constants(self):
        """struct[i][j] = ((k, c), ...) with [E_i, E_j] = sum c E_k."""
        table = []
        for a in self._sparse:
            row = []
            for b in self._sparse:
                ab = _sparse_mul(a, b)
                ba = _sparse_mul(b, a)
                for key, (r, i) in ba.items():
                    r0, i0 = ab.get(key, (0, 0))
                    ab[key] = (r0 - r, i0 - i)
                terms = []
                for k, (kind, i, j) in enumerate(self.labels):
                    re, im = ab.get((i, j), (0, 0))
                    c = re if kind == "re" else im
                    if c:
                        terms.append((k, c))
                row.append(tuple(terms))
            table.append(row)
        return table

    def bracket_coords(self, x: Sequence[Fraction],
                       y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        xs = [(i, v) for i, v in enumerate(x) if v != 0]
        ys = [(j, v) for j, v in enumerate(y) if v != 0]
        if not xs or not ys:
            return (_ZERO,) * self.dim
        dx = math.lcm(*(v.denominator for _, v in xs))
        dy = math.lcm(*(v.denominator for _, v in ys))
        xi = [(i, v.numerator * (dx // v.denominator)) for i, v in xs]
        yj = [(j, v.numerator * (dy // v.denominator)) for j, v in ys]
        acc = [0] * self.dim
        struct = self._struct
        for i, a in xi:
            row = struct[i]
            for j, b in yj:
                ab = a * b
                for k, c in row[j]:
                    acc[k] += ab * c
        d = dx * dy
        return tuple(Fraction(v, d) if v else _ZERO for v in acc)

    def theta_coords(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        p = self._p_set
        return tuple(-v if k in p else v for k, v in enumerate(x))

    def inner_coords(self, x: Sequence[Fraction],
                     y: Sequence[Fraction]) -> Fraction:
        """-c tr(theta(X) Y) = c Re tr(X^* Y), computed from coordinates."""
        s = _ZERO
        sx = sy = _ZERO
        diag = 0
        for k, (kind, _, _) in enumerate(self.labels):
            a, b = x[k], y[k]
            if kind == "diag":
                sx += a
                sy += b
                if a and b:
                    diag += a * b
            elif a and b:
                s += a * b
        return self.metric_scale * (2 * s + diag + sx * sy)

    def is_p(self, x: Sequence[Fraction]) -> bool:
        p = self._p_set
        return all(v == 0 for k, v in enumerate(x) if k not in p)

    def complex_structure_p(self, x: Sequence[Fraction]) -> tuple:
        """Multiplication by i on p, viewed as v in C^n (X[j, 0] = v_j)."""
        out = [_ZERO] * self.dim
        for j in range(1, self.size):
            r = self.index[("re", 0, j)]
            m = self.index[("im", 0, j)]
            # v_j = x_re - i x_im  ->  i v_j = x_im + i x_re
            out[r] = x[m]
            out[m] = -x[r]
        return tuple(out)


@lru_cache(maxsize=None)
def make_context(n: int) -> AlgebraContext:
    return AlgebraContext(n)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    ctx: AlgebraContext = field(repr=False)
    coords: tuple[Fraction, ...]

    @cached_property
    def matrix(self) -> ExactMatrix:
        return self.ctx.matrix_of(self.coords)

    def _coerce(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise ContextMismatch("elements from different contexts")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.ctx, tuple(a + b for a, b in
                                              zip(self.coords, o.coords)))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.ctx, tuple(a - b for a, b in
                                              zip(self.coords, o.coords)))

    def __neg__(self):
        return AlgebraElement(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, c):
        try:
            c = as_fraction(c)
        except TypeError:
            return NotImplemented
        return AlgebraElement(self.ctx, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / as_fraction(c))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coords == other.coords

    def __hash__(self):
        return hash((self.ctx.n, self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class CartanSplit:
    k_part: AlgebraElement
    p_part: AlgebraElement


def _same(x: AlgebraElement, y: AlgebraElement):
    if x.ctx is not y.ctx:
        raise ContextMismatch("elements from different contexts")


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same(x, y)
    return AlgebraElement(x.ctx, x.ctx.bracket_coords(x.coords, y.coords))


def theta(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.ctx, x.ctx.theta_coords(x.coords))


def cartan_split(x: AlgebraElement) -> CartanSplit:
    t = theta(x)
    half = Fraction(1, 2)
    return CartanSplit(k_part=(x + t) * half, p_part=(x - t) * half)


def inner(x: AlgebraElement, y: AlgebraElement) -> Fraction:
    _same(x, y)
    return x.ctx.inner_coords(x.coords, y.coords)


def define_metric_scale(ctx: AlgebraContext) -> Fraction:
    """Positive c with -c tr(theta(B) B) = 1 for B = (E_01 + E_10)/2."""
    n = ctx.n
    b = ExactMatrix(n + 1, n + 1, [Fraction(1, 2) if (i, j) in ((0, 1), (1, 0))
                                   else 0 for i in range(n + 1)
                                   for j in range(n + 1)])
    theta_b = ctx.signature @ b @ ctx.signature
    t = (theta_b @ b).trace()
    if t.im != 0 or t.re >= 0:
        raise InvalidRank("unexpected sign of tr(theta(B) B)")
    return -1 / t.re


def _exp_series(m: ExactMatrix, max_degree: int) -> ExactMatrix:
    out = ExactMatrix.identity(m.rows)
    term = ExactMatrix.identity(m.rows)
    for j in range(1, max_degree + 1):
        term = (term @ m).scale(Fraction(1, j))
        if term.is_zero():
            return out
        out = out + term
    raise NotNilpotent("powers do not vanish by degree n+1")


def exp_nilpotent(x: AlgebraElement | ExactMatrix) -> ExactMatrix:
    """exp(X) as the finite sum sum_j X^j / j! for a nilpotent X."""
    m = x.matrix if isinstance(x, AlgebraElement) else x
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    if not m.power(m.rows).is_zero():
        raise NotNilpotent("X^(n+1) != 0")
    return _exp_series(m, m.rows)


def is_form_preserving(g: ExactMatrix, n: int | None = None) -> bool:
    sig = signature_matrix(g.rows - 1 if n is None else n)
    return g.H @ sig @ g == sig


def _group_inverse(g: ExactMatrix) -> ExactMatrix:
    sig = signature_matrix(g.rows - 1)
    if g.H @ sig @ g == sig:
        return sig @ g.H @ sig
    try:
        return g.inverse()
    except ZeroDivisionError as exc:
        raise SingularGroupElement("group element is not invertible") from exc


def ad_conjugate(g: ExactMatrix, x: AlgebraElement,
                 g_inv: ExactMatrix | None = None) -> AlgebraElement:
    """Ad(g) X = g X g^{-1}."""
    if g.shape != (x.ctx.size, x.ctx.size):
        raise ContextMismatch("group element of the wrong size")
    inv = _group_inverse(g) if g_inv is None else g_inv
    return x.ctx.from_matrix(g @ x.matrix @ inv)


def ad_series(nil: AlgebraElement, x: AlgebraElement) -> AlgebraElement:
    """exp(ad N) X = X + [N, X] + [N, [N, X]]/2 + ... for nilpotent ad N."""
    _same(nil, x)
    out = x
    term = x
    for k in range(1, 2 * x.ctx.size + 1):
        term = bracket(nil, term) * Fraction(1, k)
        if term.is_zero():
            return out
        out = out + term
    raise NotNilpotent("ad(N) is not nilpotent")
