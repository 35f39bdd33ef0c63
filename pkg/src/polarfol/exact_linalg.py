"""Exact linear algebra over Q and Q(i).

Elimination routines are generic over any field whose elements support the
usual arithmetic operators and compare equal to ``0``; in practice that means
:class:`fractions.Fraction` and :class:`GaussianRational`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DegenerateForm, NoSolution, PolarfolError

__all__ = [
    "GaussianRational",
    "ExactMatrix",
    "Subspace",
    "rref",
    "kernel",
    "solve",
    "orth_complement",
    "span_contains",
    "as_fraction",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class GaussianRational:
    """A complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x, 0)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2, always rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        try:
            f = as_fraction(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * f, self.im * f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        d = o.norm2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianRational(0, 1)


class ExactMatrix:
    """Dense immutable matrix with exact entries (stored row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(GaussianRational.coerce(e) for e in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = [x for row in rows for x in row]
        return cls(r, c, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n)
                          for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _check_same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols,
                           [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols,
                           [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational.coerce(c)
        return ExactMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __rmul__(self, c):
        if isinstance(c, (int, Rational, GaussianRational)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            nz = [(k, x) for k, x in enumerate(arow) if x]
            for j in range(p):
                s = GaussianRational()
                for k, x in nz:
                    y = b[k * p + j]
                    if y:
                        s = s + x * y
                out.append(s)
        return ExactMatrix(n, p, out)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            s = GaussianRational()
            for x, y in zip(self.row(i), v):
                if x and y:
                    s = s + x * y
            out.append(s)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self[i, j] for j in range(self.cols)
                            for i in range(self.rows)])

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols,
                           [a.conjugate() for a in self.entries])

    @property
    def H(self) -> "ExactMatrix":
        """Conjugate transpose."""
        return self.transpose().conjugate()

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        s = GaussianRational()
        for i in range(self.rows):
            s = s + self[i, i]
        return s

    def is_zero(self) -> bool:
        return not any(self.entries)

    def power(self, k: int) -> "ExactMatrix":
        out = ExactMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [GaussianRational(1 if i == j else 0)
                                    for j in range(n)] for i in range(n)]
        red, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix(n, n, [x for row in red for x in row[n:]])

    def to_numpy(self):
        import numpy as np
        return np.array([complex(e) for e in self.entries],
                        dtype=complex).reshape(self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i))
                         for i in range(self.rows))
        return f"ExactMatrix([{body}])"


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the reduced form and their pivot columns.
    Input rows are not modified.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [x * inv for x in pr]
            m[r] = pr
        nzc = [j for j in range(c, ncols) if pr[j] != 0]
        for i in range(len(m)):
            if i == r:
                continue
            f = m[i][c]
            if f != 0:
                row = m[i]
                for j in nzc:
                    row[j] = row[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _as_rows(m) -> list[list]:
    if isinstance(m, ExactMatrix):
        return m.to_rows()
    return [list(r) for r in m]


def _ncols(m) -> int:
    if isinstance(m, ExactMatrix):
        return m.cols
    return len(m[0]) if len(m) else 0


def kernel(m, ncols: int | None = None) -> "Subspace":
    """Basis of the null space ``{v : m v = 0}``."""
    rows = _as_rows(m)
    n = _ncols(m) if ncols is None else ncols
    red, piv = rref(rows)
    free = [c for c in range(n) if c not in set(piv)]
    zero = _zero_like(rows)
    vecs = []
    for f in free:
        v = [zero] * n
        v[f] = zero + 1
        for row, p in zip(red, piv):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace(n, vecs, _trusted=True)


def _zero_like(rows) -> object:
    for r in rows:
        for x in r:
            if isinstance(x, GaussianRational):
                return GaussianRational()
            return Fraction(0)
    return Fraction(0)


def solve(m, rhs: Sequence) -> list:
    """One exact solution of ``m x = rhs``; raises :class:`NoSolution`."""
    rows = _as_rows(m)
    n = _ncols(m)
    if len(rows) != len(rhs):
        raise ValueError("right-hand side length mismatch")
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if piv and piv[-1] == n:
        raise NoSolution("right-hand side is outside the column space")
    zero = _zero_like(aug)
    x = [zero] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


class Subspace:
    """A subspace of ``K^ambient_dim`` with a canonical echelon basis.

    ``vectors`` keeps a linearly independent subset of the generators in the
    order given; ``echelon`` is the reduced row echelon form used for
    equality and membership.
    """

    __slots__ = ("ambient_dim", "vectors", "echelon", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (),
                 _trusted: bool = False):
        self.ambient_dim = ambient_dim
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(
                    f"vector of length {len(v)} in ambient dim {ambient_dim}")
        if _trusted:
            self.vectors = tuple(vecs)
            red, piv = rref(vecs)
        else:
            kept: list[tuple] = []
            red, piv = [], []
            for v in vecs:
                r = _reduce(red, piv, v)
                p = next((j for j, x in enumerate(r) if x != 0), None)
                if p is None:
                    continue
                inv = 1 / r[p]
                r = [x * inv for x in r]
                nz = [j for j in range(p, ambient_dim) if r[j] != 0]
                for row in red:
                    f = row[p]
                    if f != 0:
                        for j in nz:
                            row[j] = row[j] - f * r[j]
                k = next((i for i, q in enumerate(piv) if q > p), len(piv))
                red.insert(k, r)
                piv.insert(k, p)
                kept.append(v)
            self.vectors = tuple(kept)
        self.echelon = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [[Fraction(int(i == j)) for j in
                                  range(ambient_dim)]
                                 for i in range(ambient_dim)], _trusted=True)

    @property
    def dim(self) -> int:
        return len(self.echelon)

    def __len__(self):
        return self.dim

    def basis(self) -> tuple[tuple, ...]:
        return self.vectors

    def contains(self, v: Sequence) -> bool:
        """Exact membership test by reduction against the echelon basis."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        return not any(self.reduce(v))

    def reduce(self, v: Sequence) -> list:
        """Residual of ``v`` after elimination against the echelon rows."""
        return _reduce(self.echelon, self.pivots, v)

    def coordinates(self, v: Sequence) -> list:
        """Coefficients of ``v`` in :attr:`vectors`; raises NoSolution."""
        cols = [[vec[i] for vec in self.vectors]
                for i in range(self.ambient_dim)]
        if not self.vectors:
            if any(v):
                raise NoSolution("vector is not in the zero subspace")
            return []
        return solve(cols, v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.echelon)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.vectors + other.vectors)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.vectors or not other.vectors:
            return Subspace.zero(self.ambient_dim)
        a, b = self.vectors, other.vectors
        # x in span(a) ∩ span(b): sum c_i a_i - sum d_j b_j = 0
        cols = [[v[i] for v in a] + [-w[i] for w in b]
                for i in range(self.ambient_dim)]
        ker = kernel(cols, len(a) + len(b))
        out = []
        for k in ker.vectors:
            vec = [sum((k[i] * a[i][t] for i in range(len(a))), Fraction(0))
                   for t in range(self.ambient_dim)]
            out.append(vec)
        return Subspace(self.ambient_dim, out)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise PolarfolError("ambient dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.echelon == other.echelon)

    def __hash__(self):
        return hash((self.ambient_dim, self.echelon))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _reduce(echelon, pivots, v) -> list:
    r = list(v)
    n = len(r)
    for row, p in zip(echelon, pivots):
        f = r[p]
        if f != 0:
            for j in range(p, n):
                if row[j] != 0:
                    r[j] = r[j] - f * row[j]
    return r


def _bilinear(form, u, v):
    s = Fraction(0)
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        row = form[i]
        for j, vj in enumerate(v):
            if vj != 0 and row[j] != 0:
                s = s + ui * row[j] * vj
    return s


def orth_complement(s: Subspace, form, within: Subspace | None = None,
                    pairing=None) -> Subspace:
    """``{v in within : form(v, s_i) = 0 for every basis vector s_i}``.

    ``form`` is a square matrix (sequence of rows); alternatively a callable
    ``pairing(u, v)`` may be supplied and ``form`` set to ``None``.
    """
    n = s.ambient_dim
    within = Subspace.full(n) if within is None else within
    if pairing is None:
        rows = _as_rows(form)

        def pairing(u, v):
            return _bilinear(rows, u, v)
    w = within.vectors
    if not w:
        return Subspace.zero(n)
    gram = [[pairing(wi, wj) for wj in w] for wi in w]
    if len(rref(gram)[0]) < len(w):
        raise DegenerateForm("form is singular on the given subspace")
    eqs = [[pairing(wi, si) for wi in w] for si in s.vectors]
    if not eqs:
        return within
    ker = kernel(eqs, len(w))
    out = []
    for c in ker.vectors:
        out.append([sum((c[i] * w[i][t] for i in range(len(w))), Fraction(0))
                    for t in range(n)])
    return Subspace(n, out)


def span_contains(s: Subspace, v: Sequence) -> bool:
    return s.contains(v)
