"""Normal form, invariants and congruence for polar subalgebras of t + a + n.

A polar subalgebra h of the Borel algebra has a real normal space

    h_p^perp = R(aB + (1-theta)X) + (1-theta)w,    X in g_alpha - w,

and after conjugating by Exp(-2X/|X|^2) (when a != 0 and X != 0) its
a+n-projection is one of the canonical s_{V,v}.  The invariants are read off
this normal form.  A naive projection of h onto a and g_alpha would not be
invariant under conjugation by N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .catalog import (CanonicalClass, CanonicalMap, RealSubspace, as_root_data,
                      canonicalize_real_subspace, conjugate_nilpotent, s_vw)
from .errors import (NoSolution, NotInBorel, NotPolarInput, NotTotallyReal,
                     WrongShape)
from .exact_linalg import (ExactMatrix, Subspace, kernel, orth_complement,
                           solve)
from .polar import (SectionKind, Subalgebra, check_polar, classify_lts,
                    h_p_perp, p_projection)
from .root_space import RootData
from .su1n import AlgebraElement, bracket, exp_nilpotent, inner, theta

__all__ = [
    "SectionShape",
    "NormalForm",
    "TPartReport",
    "FoliationStatus",
    "section_shape",
    "adg_normal_form",
    "invariants",
    "congruent",
    "congruence_witness",
    "split_borel",
    "an_projection",
    "t_part_report",
    "t_part_centralizes",
    "isotropy_dim",
    "foliation_probe",
]


def _one_minus_theta(x: AlgebraElement) -> AlgebraElement:
    return x - theta(x)


@dataclass
class SectionShape:
    """Decomposition of a real normal space along a + p_alpha + p_2alpha.

    ``pi_dim`` is the rank of the projection pi onto a + p_2alpha.  When it
    is 1, ``xi = a B + (1-theta)X + b (1-theta)Z`` spans the complement of
    ker(pi) in m, scaled so that a = 1 whenever a != 0.  When it is 2, ``xi``
    and ``eta`` are the preimages of B and (1-theta)Z.
    """

    m: Subspace
    ker_pi: Subspace
    w: RealSubspace
    pi_dim: int
    xi: AlgebraElement | None = None
    eta: AlgebraElement | None = None
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    X: AlgebraElement | None = None
    Y: AlgebraElement | None = None


def _pi_coeffs(rd: RootData, x: AlgebraElement) -> tuple[Fraction, Fraction]:
    """(B-coefficient, (1-theta)Z-coefficient) of x in p."""
    pz = _one_minus_theta(rd.Z)
    return inner(x, rd.B), inner(x, pz) / inner(pz, pz)


def _alpha_part(rd: RootData, x: AlgebraElement) -> AlgebraElement:
    return rd.components(x)["ga"]


def section_shape(h: Subalgebra, rd: RootData | None = None,
                  m: Subspace | None = None) -> SectionShape:
    rd = rd or as_root_data(h.ctx)
    ctx = rd.ctx
    m = h_p_perp(h, rd) if m is None else m
    st = classify_lts(ctx, m)
    if st.kind is not SectionKind.REAL and m.dim:
        raise WrongShape(f"normal space is {st}, not real")
    p_alpha = rd.pspaces.p_alpha
    ker_pi = m.intersect(p_alpha)
    try:
        w = RealSubspace(rd, [_alpha_part(rd, ctx.element(v))
                              for v in ker_pi.vectors])
    except NotTotallyReal as exc:
        raise WrongShape("ker(pi) is not totally real") from exc
    pi_dim = m.dim - ker_pi.dim
    shape = SectionShape(m, ker_pi, w, pi_dim)
    if pi_dim == 0:
        return shape
    comp = orth_complement(ker_pi, None, within=m, pairing=ctx.inner_coords)
    elems = [ctx.element(v) for v in comp.vectors]
    if pi_dim == 1:
        xi = elems[0]
        a, b = _pi_coeffs(rd, xi)
        scale = a if a else b
        xi = xi / scale
        shape.xi, shape.a, shape.b = xi, a / scale, b / scale
        shape.X = _alpha_part(rd, xi)
        return shape
    # pi is onto a + p_2alpha: solve for the preimages of B and (1-theta)Z
    coeffs = [_pi_coeffs(rd, e) for e in elems]
    M = [[coeffs[0][0], coeffs[1][0]], [coeffs[0][1], coeffs[1][1]]]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    inv = [[M[1][1] / det, -M[0][1] / det], [-M[1][0] / det, M[0][0] / det]]
    shape.xi = elems[0] * inv[0][0] + elems[1] * inv[1][0]
    shape.eta = elems[0] * inv[0][1] + elems[1] * inv[1][1]
    shape.a, shape.b = Fraction(1), Fraction(0)
    shape.X = _alpha_part(rd, shape.xi)
    shape.Y = _alpha_part(rd, shape.eta)
    return shape


def split_borel(h: Subalgebra | Sequence[AlgebraElement], rd: RootData
                ) -> list[tuple[AlgebraElement, AlgebraElement]]:
    """(t-part, a+n-part) of each basis element; NotInBorel otherwise."""
    elems = h.elements if isinstance(h, Subalgebra) else list(h)
    out = []
    for y in elems:
        c = rd.components(y)
        if not (c["g-2a"].is_zero() and c["g-a"].is_zero()
                and c.get("k0rest", rd.ctx.zero()).is_zero()):
            raise NotInBorel("element has a component outside t + a + n")
        out.append((c["t"], c["a"] + c["ga"] + c["g2a"]))
    return out


def an_projection(h: Subalgebra, rd: RootData) -> Subspace:
    return Subspace(rd.ctx.dim, [u.coords for _, u in split_borel(h, rd)])


@dataclass
class NormalForm:
    conjugator: ExactMatrix
    nilpotent: AlgebraElement | None   # N with conjugator = Exp(N), or None
    conjugated: Subalgebra
    V: int
    v: RealSubspace
    shape: SectionShape | None
    kind: str = "S"

    @property
    def is_identity(self) -> bool:
        return self.nilpotent is None

    @property
    def canonical_class(self) -> CanonicalClass:
        n = self.conjugated.ctx.n
        if self.kind == "points":
            return CanonicalClass.points(n)
        return CanonicalClass.of(n, self.V, self.v.dim)


def adg_normal_form(h: Subalgebra, rd: RootData | None = None) -> NormalForm:
    """Conjugate h so that its a+n-projection is exactly some s_{V,v}.

    Raises WrongShape when the normal space is not of the form
    R(aB + (1-theta)X) + (1-theta)w or when the projection check fails;
    both signal an input that is not polar or not foliating.
    """
    rd = rd or as_root_data(h.ctx)
    ctx = rd.ctx
    eye = ExactMatrix.identity(ctx.size)
    if h.dim == 0:
        return NormalForm(eye, None, h, 0, RealSubspace(rd, []), None,
                          "points")
    if not h.basis.is_subspace_of(rd.borel):
        raise NotInBorel("subalgebra is not contained in t + a + n")
    shape = section_shape(h, rd)
    if shape.pi_dim == 2:
        raise WrongShape("pi(h_p^perp) is two-dimensional")
    if shape.pi_dim == 1 and shape.b != 0:
        raise WrongShape("normal space has a (1-theta)Z component")
    N = None
    if shape.pi_dim == 0:
        V, v, hh = 1, shape.w, h
    elif shape.X.is_zero():
        V, v, hh = 0, shape.w, h
    else:
        X = shape.X
        N = X * (Fraction(-2) / inner(X, X))
        try:
            v = RealSubspace(rd, [X] + shape.w.elements)
        except NotTotallyReal as exc:
            raise WrongShape("RX + w is not totally real") from exc
        V = 1
        hh = conjugate_nilpotent(h, N, h.origin_note)
    expected = s_vw(rd, V, v, check=False)
    if an_projection(hh, rd) != expected:
        raise WrongShape("a+n-projection is not of the form s_{V,v}")
    g = eye if N is None else exp_nilpotent(N)
    return NormalForm(g, N, hh, V, v, shape)


def invariants(h: Subalgebra, rd: RootData | None = None) -> CanonicalClass:
    rd = rd or as_root_data(h.ctx)
    if h.dim == rd.ctx.dim:
        return CanonicalClass.one_leaf()
    verdict = check_polar(h, rd)
    if not verdict.is_polar:
        raise NotPolarInput(f"not polar ({verdict.failure_reason.value})")
    return adg_normal_form(h, rd).canonical_class


def _s_shape(h: Subalgebra, rd: RootData) -> tuple[int, RealSubspace] | None:
    """(V, w) if h is literally some s_{V,w}, else None."""
    if not h.basis.is_subspace_of(rd.an):
        return None
    V = 1 if h.contains(rd.B) else 0
    inter = h.basis.intersect(rd.g_a)
    m = 2 * (rd.n - 1)
    coords = [list(rd.alpha_coords(rd.ctx.element(v))) for v in inter.vectors]
    comp = kernel(coords, m) if coords else Subspace.full(m)
    try:
        w = RealSubspace(rd, comp.vectors)
    except NotTotallyReal:
        return None
    if s_vw(rd, V, w, check=False) != h.basis:
        return None
    return V, w


def congruence_witness(h1: Subalgebra, h2: Subalgebra,
                       rd: RootData | None = None) -> CanonicalMap | None:
    """K0-element M on g_alpha with Ad(diag(1,1,M)) h1 = h2, when both are
    of the literal s_{V,w} shape with equal V and dim w."""
    rd = rd or as_root_data(h1.ctx)
    s1, s2 = _s_shape(h1, rd), _s_shape(h2, rd)
    if s1 is None or s2 is None:
        return None
    (V1, w1), (V2, w2) = s1, s2
    if V1 != V2 or w1.dim != w2.dim:
        return None
    c1 = canonicalize_real_subspace(w1)
    c2 = canonicalize_real_subspace(w2)
    return c2.inverse().compose(c1)


def congruent(h1: Subalgebra, h2: Subalgebra,
              rd: RootData | None = None) -> bool:
    rd = rd or as_root_data(h1.ctx)
    return invariants(h1, rd).key == invariants(h2, rd).key


# -- the t-part -------------------------------------------------------------

@dataclass
class TPartReport:
    V: int
    w: RealSubspace
    h_t: Subspace
    centralizes: bool          # [h_t, w] = 0
    F_zero: bool               # F_W(U) = [W, T_U] = 0 for all W, U
    normalizes: bool           # h_t normalizes V + (n - w)
    F_maps: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.centralizes and self.F_zero and self.normalizes


def t_part_report(h: Subalgebra, rd: RootData | None = None) -> TPartReport:
    rd = rd or as_root_data(h.ctx)
    ctx = rd.ctx
    parts = split_borel(h, rd)
    an = Subspace(ctx.dim, [u.coords for _, u in parts])
    V = 1 if an.contains(rd.B.coords) else 0
    m = 2 * (rd.n - 1)
    inter = an.intersect(rd.g_a)
    coords = [list(rd.alpha_coords(ctx.element(v))) for v in inter.vectors]
    comp = kernel(coords, m) if coords else Subspace.full(m)
    try:
        w = RealSubspace(rd, comp.vectors)
    except NotTotallyReal as exc:
        raise WrongShape("g_alpha - (h_{a+n} cap g_alpha) is not real") from exc
    target = s_vw(rd, V, w, check=False)
    if target != an:
        raise WrongShape("a+n-projection is not of the form s_{V,w}")
    h_t = Subspace(ctx.dim, [t.coords for t, _ in parts])
    t_elems = [ctx.element(v) for v in h_t.vectors]
    w_elems = w.elements
    centralizes = all(bracket(T, W).is_zero() for T in t_elems
                      for W in w_elems)
    # T_U: the t-part of an element of h whose a+n-part is U
    an_vecs = [u.coords for _, u in parts]
    cols = [[v[i] for v in an_vecs] for i in range(ctx.dim)]
    F_maps = {}
    F_zero = True
    for U in [ctx.element(v) for v in target.vectors]:
        c = solve(cols, U.coords)
        T_U = ctx.zero()
        for ci, (t, _) in zip(c, parts):
            if ci:
                T_U = T_U + t * ci
        for k, W in enumerate(w_elems):
            F = bracket(W, T_U)
            F_maps[(k, U.coords)] = F
            if not F.is_zero():
                F_zero = False
    normalizes = all(target.contains(bracket(T, ctx.element(x)).coords)
                     for T in t_elems for x in target.vectors)
    return TPartReport(V, w, h_t, centralizes, F_zero, normalizes, F_maps)


def t_part_centralizes(h: Subalgebra, rd: RootData | None = None) -> bool:
    """[h_t, w] = 0, every F_W vanishes, and h_t normalizes V + (n - w)."""
    return t_part_report(h, rd).ok


# -- foliation probe ----------------------------------------------------------

def isotropy_dim(h: Subalgebra | Subspace, rd: RootData) -> int:
    """dim(h cap k) = dim h - rank of the projection of h to p."""
    s = h.basis if isinstance(h, Subalgebra) else h
    return s.dim - p_projection(rd.ctx, s).dim


@dataclass
class FoliationStatus:
    status: str                       # unconditional | conditional | rejected
    reason: str = ""
    witness: AlgebraElement | None = None

    @property
    def rejected(self) -> bool:
        return self.status == "rejected"


def _rational_eigenvalues(L: list[list[Fraction]]) -> list[Fraction]:
    """Rational eigenvalues of a rational matrix (candidates from floats,
    confirmed exactly by a nonzero kernel)."""
    if not L:
        return []
    cand = np.linalg.eigvals(np.array(L, dtype=float))
    out = []
    for z in cand:
        if abs(z.imag) > 1e-9:
            continue
        lam = Fraction(float(z.real)).limit_denominator(10 ** 4)
        if lam in out:
            continue
        d = len(L)
        shifted = [[L[i][j] - (lam if i == j else 0) for j in range(d)]
                   for i in range(d)]
        if kernel(shifted, d).dim:
            out.append(lam)
    return out


def _F_eigen_probes(h: Subalgebra, rd: RootData) -> list[AlgebraElement]:
    """-W/lambda for rational eigenvalues lambda != 0 of U -> [W, T_U]."""
    try:
        rep = t_part_report(h, rd)
    except WrongShape:
        return []
    ctx = rd.ctx
    parts = split_borel(h, rd)
    an_vecs = [u.coords for _, u in parts]
    cols = [[v[i] for v in an_vecs] for i in range(ctx.dim)]
    probes = []
    basis = rd.alpha_basis
    comp_proj = rep.w.complement_elements()
    comp_space = Subspace(ctx.dim, [e.coords for e in comp_proj])
    for W in rep.w.elements:
        rows = []
        for e in basis:
            # project e onto g_alpha - w, then U -> [W, T_U]
            if comp_space.contains(e.coords):
                U = e
            else:
                wpart = ctx.zero()
                for wv in rep.w.elements:
                    wpart = wpart + wv * (inner(e, wv) / inner(wv, wv))
                U = e - wpart
            if U.is_zero():
                rows.append([Fraction(0)] * len(basis))
                continue
            try:
                c = solve(cols, U.coords)
            except NoSolution:
                return probes
            T_U = ctx.zero()
            for ci, (t, _) in zip(c, parts):
                if ci:
                    T_U = T_U + t * ci
            F = bracket(W, T_U)
            img = rd.components(F)["ga"]
            rows.append(list(rd.alpha_coords(img)))
        # rows[j] is the image of basis j; transpose to a matrix
        L = [[rows[j][i] for j in range(len(basis))]
             for i in range(len(basis))]
        for lam in _rational_eigenvalues(L):
            if lam:
                probes.append(W * (Fraction(-1) / lam))
    return probes


def foliation_probe(h: Subalgebra, rd: RootData | None = None
                    ) -> FoliationStatus:
    """Look for a conjugate Ad(Exp N)h whose isotropy at o jumps.

    Subalgebras of a+n always foliate.  For the rest, the probes are the
    conjugators that expose non-foliating shapes: Exp(-2X/|X|^2) built from
    the normal space and Exp(-W/lambda) for eigenvalues of the maps F_W.
    A nonvanishing F_W without a witness also rejects; otherwise the result
    is conditional.
    """
    rd = rd or as_root_data(h.ctx)
    if h.basis.is_subspace_of(rd.an):
        return FoliationStatus("unconditional")
    base = isotropy_dim(h, rd)
    probes: list[AlgebraElement] = []
    try:
        shape = section_shape(h, rd)
        if shape.X is not None and not shape.X.is_zero():
            probes.append(shape.X * (Fraction(-2) / inner(shape.X, shape.X)))
    except WrongShape:
        shape = None
    target = h
    try:
        nf = adg_normal_form(h, rd)
        target = nf.conjugated
    except WrongShape:
        nf = None
    for N in probes:
        if isotropy_dim(conjugate_nilpotent(h, N), rd) != base:
            return FoliationStatus("rejected", "isotropy jumps along the "
                                   "normal-space conjugator", N)
    for N in _F_eigen_probes(target, rd):
        if isotropy_dim(conjugate_nilpotent(target, N), rd) != base:
            if nf is not None and nf.nilpotent is not None:
                N = None   # witness lives on the conjugated subalgebra
            return FoliationStatus("rejected", "isotropy jumps along "
                                   "Exp(-W/lambda)", N)
    if nf is not None:
        rep = t_part_report(target, rd)
        if not rep.ok:
            return FoliationStatus("rejected", "F_W does not vanish")
    return FoliationStatus("conditional", "foliation assumed")
