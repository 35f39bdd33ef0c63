"""Decision procedure for polarity of a homogeneous foliation.

The action of H is polar iff the normal space h_p^perp of h inside p is a Lie
triple system and h is orthogonal to the section algebra
[h_p^perp, h_p^perp] + h_p^perp.  The criterion is only meaningful when the
orbits form a foliation; subalgebras of a+n always do, subalgebras of the
Borel t+a+n with a nonzero t-component are marked ``conditional``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotClosed, NotInBorel, NotInP
from .exact_linalg import Subspace, orth_complement
from .root_space import RootData, root_decomposition
from .su1n import AlgebraContext, AlgebraElement, bracket, theta

__all__ = [
    "Subalgebra",
    "SectionKind",
    "SectionType",
    "FailureReason",
    "PolarVerdict",
    "close_check",
    "closure",
    "h_p_perp",
    "p_projection",
    "is_lie_triple_system",
    "section_algebra",
    "classify_lts",
    "check_polar",
]


@dataclass(frozen=True, eq=False)
class Subalgebra:
    ctx: AlgebraContext = field(repr=False)
    basis: Subspace
    origin_note: str = ""

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def elements(self) -> list[AlgebraElement]:
        return [self.ctx.element(v) for v in self.basis.vectors]

    def contains(self, x: AlgebraElement) -> bool:
        return self.basis.contains(x.coords)

    def __eq__(self, other):
        if not isinstance(other, Subalgebra):
            return NotImplemented
        return self.ctx is other.ctx and self.basis == other.basis

    def __hash__(self):
        return hash((self.ctx.n, self.basis))


def _span(ctx: AlgebraContext, elems: Iterable[AlgebraElement]) -> Subspace:
    return Subspace(ctx.dim, [e.coords for e in elems])


def close_check(ctx: AlgebraContext, s: Subspace | Sequence[AlgebraElement],
                note: str = "") -> Subalgebra:
    """Typed subalgebra, or :class:`NotClosed` naming the first bad pair."""
    if not isinstance(s, Subspace):
        s = _span(ctx, s)
    elems = [ctx.element(v) for v in s.vectors]
    for i, j in combinations(range(len(elems)), 2):
        z = bracket(elems[i], elems[j])
        if not s.contains(z.coords):
            raise NotClosed(i, j, z)
    return Subalgebra(ctx, s, note)


def closure(ctx: AlgebraContext, generators: Sequence[AlgebraElement],
            note: str = "", max_dim: int | None = None) -> Subalgebra:
    """Smallest subalgebra containing the generators.

    Stops early (returning the span reached so far, unchecked) if the
    dimension exceeds ``max_dim``.
    """
    span = _span(ctx, generators)
    elems = [ctx.element(v) for v in span.vectors]
    frontier = list(range(len(elems)))
    while frontier:
        new = []
        for i in frontier:
            for j in range(len(elems)):
                if j == i or (j in frontier and j < i):
                    continue
                z = bracket(elems[i], elems[j])
                r = span.reduce(z.coords)
                if any(r):
                    span = Subspace(ctx.dim, list(span.vectors) + [z.coords])
                    elems.append(z)
                    new.append(len(elems) - 1)
                    if max_dim is not None and span.dim > max_dim:
                        return Subalgebra(ctx, span, note)
        frontier = new
    return Subalgebra(ctx, span, note)


def p_projection(ctx: AlgebraContext, s: Subspace) -> Subspace:
    out = []
    for v in s.vectors:
        x = ctx.element(v)
        out.append((x - theta(x)).coords)
    return Subspace(ctx.dim, out)


def h_p_perp(h: Subalgebra, rd: RootData | None = None) -> Subspace:
    """{xi in p : <xi, Y> = 0 for all Y in h}."""
    rd = rd or root_decomposition(h.ctx)
    ctx = h.ctx
    return orth_complement(h.basis, None, within=rd.p,
                           pairing=ctx.inner_coords)


def _check_p(ctx: AlgebraContext, m: Subspace):
    for v in m.vectors:
        if not ctx.is_p(v):
            raise NotInP("subspace is not contained in p")


def is_lie_triple_system(ctx: AlgebraContext, m: Subspace) -> bool:
    """[[xi, eta], zeta] in m for every basis triple."""
    _check_p(ctx, m)
    elems = [ctx.element(v) for v in m.vectors]
    for i, j in combinations(range(len(elems)), 2):
        xy = bracket(elems[i], elems[j])
        if xy.is_zero():
            continue
        for z in elems:
            if not m.contains(bracket(xy, z).coords):
                return False
    return True


def section_algebra(ctx: AlgebraContext, m: Subspace) -> Subspace:
    elems = [ctx.element(v) for v in m.vectors]
    brackets = [bracket(elems[i], elems[j]).coords
                for i, j in combinations(range(len(elems)), 2)]
    return Subspace(ctx.dim, list(m.vectors) + brackets)


class SectionKind(enum.Enum):
    REAL = "Real"
    COMPLEX = "Complex"
    NEITHER = "Neither"


@dataclass(frozen=True)
class SectionType:
    kind: SectionKind
    dim: int | None = None      # real dim for Real, complex dim for Complex

    def __str__(self):
        if self.kind is SectionKind.NEITHER:
            return "Neither"
        return f"{self.kind.value}({self.dim})"

    @classmethod
    def parse(cls, s: str) -> "SectionType":
        if s == "Neither":
            return cls(SectionKind.NEITHER)
        kind, rest = s.split("(")
        return cls(SectionKind(kind), int(rest.rstrip(")")))


def classify_lts(ctx: AlgebraContext, m: Subspace) -> SectionType:
    """Complex if i m = m, Real if <i m, m> = 0, Neither otherwise."""
    _check_p(ctx, m)
    im = [ctx.complex_structure_p(v) for v in m.vectors]
    if all(m.contains(v) for v in im):
        return SectionType(SectionKind.COMPLEX, m.dim // 2)
    if all(ctx.inner_coords(u, v) == 0 for u in im for v in m.vectors):
        return SectionType(SectionKind.REAL, m.dim)
    return SectionType(SectionKind.NEITHER)


class FailureReason(str, enum.Enum):
    NOT_LTS = "NotLTS"
    NOT_ORTHOGONAL = "NotOrthogonal"
    NOT_SUBALGEBRA = "NotSubalgebra"


@dataclass(frozen=True)
class PolarVerdict:
    is_polar: bool
    h_p_perp: Subspace
    section_algebra: Subspace | None
    section_type: SectionType
    failure_reason: FailureReason | None = None
    conditional: bool = False   # t-component present: foliation assumed

    @property
    def cohomogeneity(self) -> int:
        return self.h_p_perp.dim


def check_polar(h: Subalgebra | Subspace, rd: RootData | None = None,
                ctx: AlgebraContext | None = None) -> PolarVerdict:
    """Evaluate the polarity criterion (LTS first, then orthogonality)."""
    if isinstance(h, Subspace):
        if ctx is None:
            raise ValueError("a context is needed for a raw subspace")
        try:
            h = close_check(ctx, h)
        except NotClosed:
            rd = rd or root_decomposition(ctx)
            return PolarVerdict(False, Subspace.zero(ctx.dim), None,
                                SectionType(SectionKind.NEITHER),
                                FailureReason.NOT_SUBALGEBRA)
    ctx = h.ctx
    rd = rd or root_decomposition(ctx)
    if h.dim == ctx.dim:
        # h = g: one leaf, empty section
        zero = Subspace.zero(ctx.dim)
        return PolarVerdict(True, zero, zero,
                            SectionType(SectionKind.COMPLEX, 0))
    if not h.basis.is_subspace_of(rd.borel):
        raise NotInBorel("subalgebra is not contained in t + a + n")
    conditional = not h.basis.is_subspace_of(rd.an)
    m = h_p_perp(h, rd)
    stype = classify_lts(ctx, m)
    if not is_lie_triple_system(ctx, m):
        return PolarVerdict(False, m, None, stype, FailureReason.NOT_LTS,
                            conditional)
    s = section_algebra(ctx, m)
    for y in h.basis.vectors:
        for v in s.vectors:
            if ctx.inner_coords(y, v) != 0:
                return PolarVerdict(False, m, s, stype,
                                    FailureReason.NOT_ORTHOGONAL, conditional)
    return PolarVerdict(True, m, s, stype, None, conditional)
