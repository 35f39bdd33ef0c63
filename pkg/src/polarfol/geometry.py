"""Floating-point geometry of CH^n in the hyperboloid and ball models.

Points are vectors z in C^{1,n} with <z,z> = z^* I z = -1, taken modulo
phase (z_0 is kept real positive).  The metric is

    g_q(v, w) = 4 Re <v_h, w_h>,   v_h = v + <q, v> q,

which makes the holomorphic sectional curvature -1 and agrees with the
algebraic inner product on p and with the left-invariant metric on AN.
The distance is d(p, q) = 2 arccosh |<p, q>|.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .catalog import as_root_data
from .errors import GaugeFailure, NotInSolvablePart, NotPolarInput
from .exact_linalg import ExactMatrix
from .polar import Subalgebra, check_polar, h_p_perp, section_algebra
from .root_space import RootData
from .sampling import make_rng
from .solvable import ANVector, from_matrix, to_matrix
from .su1n import AlgebraElement, bracket

__all__ = [
    "METRIC_SCALE",
    "HyperboloidPoint",
    "BallPoint",
    "OrbitSample",
    "origin",
    "hermitian",
    "group_exp",
    "act",
    "to_ball",
    "from_ball",
    "metric",
    "distance",
    "busemann",
    "ideal_point",
    "sample_orbit",
    "tangent_vectors",
    "section_orthogonality",
    "second_fundamental_form",
    "second_fundamental_form_norm",
    "holomorphic_curvature_probe",
    "geodesic_defect",
    "export_json",
    "export_csv",
]

METRIC_SCALE = 4.0


def hermitian(z: np.ndarray, w: np.ndarray) -> complex:
    """<z, w> = -conj(z_0) w_0 + sum conj(z_k) w_k."""
    return complex(-np.conj(z[0]) * w[0] + np.vdot(z[1:], w[1:]))


@dataclass(frozen=True)
class HyperboloidPoint:
    z: np.ndarray

    @classmethod
    def normalize(cls, z, tol: float = 1e-12) -> "HyperboloidPoint":
        z = np.asarray(z, dtype=complex)
        if abs(z[0]) < tol:
            raise GaugeFailure("z_0 vanishes; the point is not in CH^n")
        q = -hermitian(z, z).real
        if q <= 0:
            raise GaugeFailure("vector is not timelike")
        z = z * (abs(z[0]) / z[0]) / math.sqrt(q)
        return cls(z)

    @property
    def form_value(self) -> float:
        return hermitian(self.z, self.z).real

    def to_list(self) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in self.z]


@dataclass(frozen=True)
class BallPoint:
    w: np.ndarray

    def __post_init__(self):
        if np.linalg.norm(self.w) >= 1 - 1e-12:
            raise GaugeFailure("point lies outside the open ball")


def origin(n: int) -> HyperboloidPoint:
    z = np.zeros(n + 1, dtype=complex)
    z[0] = 1
    return HyperboloidPoint(z)


def _as_matrix(rd: RootData, v) -> np.ndarray:
    if isinstance(v, ANVector):
        v = to_matrix(rd, v)
    if isinstance(v, AlgebraElement):
        return v.matrix.to_numpy()
    return np.asarray(v, dtype=complex)


def group_exp(v, rd: RootData | None = None, t: float = 1.0) -> np.ndarray:
    """exp(t v) by scaling and squaring (scipy)."""
    if isinstance(v, ANVector) and rd is None:
        raise ValueError("an a+n coordinate vector needs its root data")
    return expm(t * _as_matrix(rd, v))


def act(g: np.ndarray, p: HyperboloidPoint) -> HyperboloidPoint:
    return HyperboloidPoint.normalize(g @ p.z)


def to_ball(p: HyperboloidPoint) -> BallPoint:
    if abs(p.z[0]) < 1e-12:
        raise GaugeFailure("z_0 vanishes")
    return BallPoint(p.z[1:] / p.z[0])


def from_ball(b: BallPoint) -> HyperboloidPoint:
    return HyperboloidPoint.normalize(np.concatenate([[1.0], b.w]))


def metric(q: HyperboloidPoint, v: np.ndarray, w: np.ndarray) -> float:
    """g_q(v, w) for vectors v, w in C^{n+1} tangent at q (mod q)."""
    z = q.z
    vh = v + hermitian(z, v) * z
    wh = w + hermitian(z, w) * z
    return METRIC_SCALE * hermitian(vh, wh).real


def distance(p: HyperboloidPoint, q: HyperboloidPoint) -> float:
    c = abs(hermitian(p.z, q.z))
    return 2.0 * math.acosh(max(c, 1.0))


def ideal_point(n: int) -> np.ndarray:
    """Null vector l = (1, 1, 0, ...): forward limit of exp(tB) o."""
    l = np.zeros(n + 1, dtype=complex)
    l[0] = l[1] = 1
    return l


def busemann(p: HyperboloidPoint) -> float:
    """log |<z, l>|; decreases at unit rate 1/2 along exp(tB) o.

    Only level sets are meaningful: the function is constant on horospheres
    centred at the ideal point l, which n fixes.
    """
    return math.log(abs(hermitian(p.z, ideal_point(len(p.z) - 1))))


@dataclass
class OrbitSample:
    class_id: str
    base: HyperboloidPoint
    points: list[HyperboloidPoint]
    logs: list[list[list[float]]] = field(default_factory=list)

    def ball_coordinates(self) -> np.ndarray:
        return np.array([to_ball(p).w for p in self.points])


def _float_basis(h: Subalgebra | Sequence[AlgebraElement]) -> list[np.ndarray]:
    elems = h.elements if isinstance(h, Subalgebra) else list(h)
    return [e.matrix.to_numpy() for e in elems]


def sample_orbit(h: Subalgebra, p: HyperboloidPoint | None = None,
                 count: int = 20, seed: int | None = 0, steps: int = 3,
                 step_size: float = 0.7, class_id: str = "",
                 rd: RootData | None = None) -> OrbitSample:
    """Points g_1 ... g_m p, g_i = exp of a random element of h."""
    rd = rd or as_root_data(h.ctx)
    if not h.basis.is_subspace_of(rd.an):
        raise NotInSolvablePart("orbit sampling needs h inside a+n")
    p = p or origin(rd.n)
    rng = np.random.default_rng(make_rng(seed, "orbit").getrandbits(64))
    basis = _float_basis(h)
    points, logs = [], []
    for _ in range(count):
        g = np.eye(rd.n + 1, dtype=complex)
        log = []
        for _ in range(steps if basis else 0):
            c = rng.uniform(-step_size, step_size, len(basis))
            Y = sum(ci * b for ci, b in zip(c, basis))
            g = g @ expm(Y)
            log.append([float(x) for x in c])
        points.append(act(g, p))
        logs.append(log)
    return OrbitSample(class_id or h.origin_note, p, points, logs)


def tangent_vectors(elems: Sequence[np.ndarray], q: HyperboloidPoint,
                    tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal basis (for g_q) of span{Y q} over the given matrices."""
    out = []
    for Y in elems:
        v = Y @ q.z
        v = v + hermitian(q.z, v) * q.z
        for u in out:
            v = v - metric(q, u, v) * u
        nv = metric(q, v, v)
        if nv > tol:
            out.append(v / math.sqrt(nv))
    return out


def section_orthogonality(h: Subalgebra, samples: int = 20,
                          seed: int | None = 0, require_polar: bool = True,
                          rd: RootData | None = None,
                          include_origin: bool = True) -> float:
    """Max |g(u, v)| between unit orbit and section tangent vectors at
    points q of the section leaf through o."""
    rd = rd or as_root_data(h.ctx)
    ctx = rd.ctx
    if require_polar and not check_polar(h, rd).is_polar:
        raise NotPolarInput("section orthogonality needs a polar input")
    m = h_p_perp(h, rd)
    if m.dim == 0:
        return 0.0
    s = section_algebra(ctx, m)
    m_f = _float_basis([ctx.element(v) for v in m.vectors])
    s_f = _float_basis([ctx.element(v) for v in s.vectors])
    h_f = _float_basis(h)
    rng = np.random.default_rng(make_rng(seed, "section").getrandbits(64))
    pts = [origin(rd.n)] if include_origin else []
    for _ in range(samples):
        c = rng.uniform(-1.0, 1.0, len(m_f))
        pts.append(act(expm(sum(ci * b for ci, b in zip(c, m_f))),
                       origin(rd.n)))
    worst = 0.0
    for q in pts:
        T_orbit = tangent_vectors(h_f, q)
        T_sec = tangent_vectors(s_f, q)
        for u in T_orbit:
            for v in T_sec:
                worst = max(worst, abs(metric(q, u, v)))
    return worst


# -- second fundamental form at o ----------------------------------------------

def _an_coords(rd: RootData, x: AlgebraElement) -> list[Fraction]:
    return list(from_matrix(rd, x).as_tuple())


def _an_elem(rd: RootData, c: Sequence[Fraction]) -> AlgebraElement:
    m = 2 * (rd.n - 1)
    return to_matrix(rd, ANVector(c[0], tuple(c[1:1 + m]), c[1 + m]))


def _levi_civita(rd: RootData, x: AlgebraElement,
                 y: AlgebraElement) -> list[Fraction]:
    """nabla_x y for left-invariant fields, in the orthonormal basis
    (B, J-adapted basis of g_alpha, Z) of the AN metric (Koszul)."""
    dim = 2 * rd.n
    basis = [_an_elem(rd, [Fraction(int(i == k)) for i in range(dim)])
             for k in range(dim)]
    xy = _an_coords(rd, bracket(x, y))
    cx, cy = _an_coords(rd, x), _an_coords(rd, y)
    out = []
    for k, e in enumerate(basis):
        ye = _an_coords(rd, bracket(y, e))
        ex = _an_coords(rd, bracket(e, x))
        val = (xy[k] - sum(a * b for a, b in zip(ye, cx))
               + sum(a * b for a, b in zip(ex, cy)))
        out.append(val / 2)
    return out


def second_fundamental_form(h: Subalgebra, rd: RootData | None = None
                            ) -> tuple[Fraction, list]:
    """Exact |II|^2 at o of the orbit H.o and the matrix of II vectors.

    With G the Gram matrix of the basis x_i of h, II_ij is the normal part
    of nabla_{x_i} x_j and |II|^2 = sum G^{ik} G^{jl} <II_ij, II_kl>.
    """
    rd = rd or as_root_data(h.ctx)
    if not h.basis.is_subspace_of(rd.an):
        raise NotInSolvablePart("second fundamental form needs h inside a+n")
    elems = h.elements
    k = len(elems)
    if k == 0:
        return Fraction(0), []
    H = [_an_coords(rd, x) for x in elems]
    G = [[sum(a * b for a, b in zip(u, v)) for v in H] for u in H]
    Ginv = _inverse(G)

    def normal(v):
        # v - sum_ij x_i G^{ij} <x_j, v>
        c = [sum(a * b for a, b in zip(u, v)) for u in H]
        d = [sum(Ginv[i][j] * c[j] for j in range(k)) for i in range(k)]
        return [v[t] - sum(d[i] * H[i][t] for i in range(k))
                for t in range(len(v))]

    II = [[normal(_levi_civita(rd, x, y)) for y in elems] for x in elems]
    total = Fraction(0)
    for i in range(k):
        for j in range(k):
            for a in range(k):
                for b in range(k):
                    g = Ginv[i][a] * Ginv[j][b]
                    if g:
                        total += g * sum(p * q for p, q in
                                         zip(II[i][j], II[a][b]))
    return total, II


def _inverse(G):
    inv = ExactMatrix.from_rows(G).inverse()
    return [[inv[i, j].re for j in range(len(G))] for i in range(len(G))]


def second_fundamental_form_norm(h: Subalgebra, rd: RootData | None = None
                                 ) -> tuple[float, Fraction]:
    """(float norm, exact squared norm).

    The float value is computed independently with numpy from float
    brackets and an orthonormalized basis of h.
    """
    rd = rd or as_root_data(h.ctx)
    exact, _ = second_fundamental_form(h, rd)
    return _sff_float(h, rd), exact


def _sff_float(h: Subalgebra, rd: RootData) -> float:
    d = 2 * rd.n
    if h.dim == 0:
        return 0.0
    E = [_an_elem(rd, [Fraction(int(i == k)) for i in range(d)])
         for k in range(d)]
    Em = [e.matrix.to_numpy() for e in E]
    # coordinates of a matrix in the orthonormal AN basis
    A = np.array([m.ravel() for m in Em]).T

    def coords(M):
        c, *_ = np.linalg.lstsq(A, M.ravel(), rcond=None)
        return c.real

    def br(P, Q):
        return P @ Q - Q @ P

    Hc = np.array([coords(x.matrix.to_numpy()) for x in h.elements])
    Q, _ = np.linalg.qr(Hc.T)
    Q = Q[:, :h.dim]
    onb = [sum(Q[t, i] * Em[t] for t in range(d)) for i in range(h.dim)]
    P_norm = np.eye(d) - Q @ Q.T
    total = 0.0
    for X in onb:
        for Y in onb:
            xy = coords(br(X, Y))
            cx, cy = coords(X), coords(Y)
            nab = np.array([
                xy[k] - coords(br(Y, Em[k])) @ cx + coords(br(Em[k], X)) @ cy
                for k in range(d)]) / 2
            v = P_norm @ nab
            total += float(v @ v)
    return math.sqrt(total)


# -- probes -------------------------------------------------------------------

def _conformal_factor(n: int, x: float, y: float) -> float:
    """E with g = E (dx^2 + dy^2) on the complex line {(w, 0, ..., 0)}."""
    u = np.zeros(n + 1, dtype=complex)
    u[0], u[1] = 1, complex(x, y)
    du = np.zeros(n + 1, dtype=complex)
    du[1] = 1
    uu = hermitian(u, u).real
    vh = du - (hermitian(u, du) / uu) * u
    return METRIC_SCALE * hermitian(vh, vh).real / (-uu)


def holomorphic_curvature_probe(n: int, point: tuple[float, float] = (0.0, 0.0),
                                step: float = 1e-3) -> float:
    """Gauss curvature -(1/2E) Laplacian(log E) of a complex line, by
    central differences."""
    x, y = point

    def L(a, b):
        return math.log(_conformal_factor(n, a, b))

    lap = (L(x + step, y) + L(x - step, y) + L(x, y + step) + L(x, y - step)
           - 4 * L(x, y)) / step ** 2
    return -lap / (2 * _conformal_factor(n, x, y))


def geodesic_defect(points: Sequence[HyperboloidPoint]) -> tuple[float, float]:
    """(max triangle defect over consecutive triples, speed spread)."""
    d = [distance(points[i], points[i + 1]) for i in range(len(points) - 1)]
    defect = 0.0
    for i in range(len(points) - 2):
        defect = max(defect, abs(distance(points[i], points[i + 2])
                                 - d[i] - d[i + 1]))
    return defect, (max(d) - min(d)) if d else 0.0


# -- export -------------------------------------------------------------------

def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def export_json(samples: Sequence[OrbitSample], path: str | None = None,
                tolerance: float = 1e-12) -> dict:
    data = {"schema_version": 1, "tolerance": tolerance, "samples": [
        {"class_id": s.class_id, "base": s.base.to_list(),
         "points": [p.to_list() for p in s.points],
         "ball": [[[float(c.real), float(c.imag)] for c in to_ball(p).w]
                  for p in s.points]}
        for s in samples]}
    if path:
        _atomic_write(path, json.dumps(data, indent=1))
    return data


def export_csv(samples: Sequence[OrbitSample], path: str) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    n = len(samples[0].base.z) - 1 if samples else 0
    header = ["class_id", "index"]
    for k in range(1, n + 1):
        header += [f"re_{k}", f"im_{k}"]
    writer.writerow(header)
    for s in samples:
        for i, p in enumerate(s.points):
            row = [s.class_id, i]
            for c in to_ball(p).w:
                row += [repr(float(c.real)), repr(float(c.imag))]
            writer.writerow(row)
    _atomic_write(path, buf.getvalue())
