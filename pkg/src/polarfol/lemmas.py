"""Named exact identity checks for a given rank, one result per identity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import as_root_data
from .exact_linalg import Subspace
from .root_space import ROOTS, J_alpha, RootData
from .sampling import make_rng, rand_combination
from .solvable import an_bracket, from_matrix, to_matrix
from .su1n import bracket, inner, theta

__all__ = ["LemmaResult", "run_identity_suite", "IDENTITIES"]

HALF = Fraction(1, 2)


@dataclass
class LemmaResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "checked": self.checked, "detail": self.detail}


def _random_an(rng, rd):
    return rand_combination(rng, [rd.B, *rd.alpha_basis, rd.Z], bound=3)


def _check_BB(rd, rng, trials):
    return [inner(rd.B, rd.B) == 1], "<B,B> = 1"


def _check_ZZ(rd, rng, trials):
    return [inner(rd.Z, rd.Z) == 2], "<Z,Z> = 2"


def _check_thetaUZ(rd, rng, trials):
    out = [bracket(theta(u), rd.Z) == -J_alpha(rd, u) for u in rd.alpha_basis]
    for _ in range(trials):
        u = rand_combination(rng, rd.alpha_basis)
        out.append(bracket(theta(u), rd.Z) == -J_alpha(rd, u))
    return out, "[theta U, Z] = -JU"


def _check_T_theta(rd, rng, trials):
    k0 = [rd.ctx.element(v) for v in rd.k0.vectors]
    out = []
    for _ in range(trials):
        T = rand_combination(rng, k0)
        U = rand_combination(rng, rd.alpha_basis)
        V = rand_combination(rng, rd.alpha_basis)
        x = bracket(theta(U), V)
        out.append(inner(T, x + theta(x)) == 2 * inner(bracket(T, U), V))
    return out, "<T,(1+theta)[theta U,V]> = 2<[T,U],V>"


def _check_B_W(rd, rng, trials):
    out = []
    for _ in range(trials):
        W = rand_combination(rng, rd.alpha_basis)
        out.append(bracket(rd.B, W - theta(W)) == (W + theta(W)) * HALF)
    return out, "[B,(1-theta)W] = (1+theta)W/2"


def _check_U_JU(rd, rng, trials):
    out = []
    for _ in range(trials):
        U = rand_combination(rng, rd.alpha_basis)
        out.append(bracket(U, J_alpha(rd, U)) == rd.Z * (inner(U, U) / 2))
    return out, "[U,JU] = |U|^2 Z/2"


def _check_an_bracket(rd, rng, trials):
    out = []
    for _ in range(trials):
        x, y = _random_an(rng, rd), _random_an(rng, rd)
        lhs = an_bracket(rd, from_matrix(rd, x), from_matrix(rd, y))
        mat = x.matrix @ y.matrix - y.matrix @ x.matrix
        out.append(to_matrix(rd, lhs).matrix == mat)
    return out, "a+n bracket formula = matrix commutator"


def _check_root_grading(rd, rng, trials):
    out = []
    els = {lab: [rd.ctx.element(v) for v in s.vectors]
           for lab, s in rd.spaces.items()}
    for la in ROOTS:
        for mu in ROOTS:
            target = la + mu
            for x in els[la]:
                for y in els[mu]:
                    z = bracket(x, y)
                    if target in ROOTS:
                        out.append(rd.spaces[target].contains(z.coords))
                    else:
                        out.append(z.is_zero())
    return out, "[g_lambda, g_mu] in g_(lambda+mu)"


def _check_theta_roots(rd, rng, trials):
    out = []
    for lab, s in rd.spaces.items():
        img = Subspace(rd.ctx.dim, [theta(rd.ctx.element(v)).coords
                                    for v in s.vectors])
        out.append(img == rd.spaces[-lab])
    return out, "theta g_lambda = g_(-lambda)"


IDENTITIES = (
    ("B_unit", _check_BB),
    ("Z_norm", _check_ZZ),
    ("theta_U_Z", _check_thetaUZ),
    ("T_theta_pairing", _check_T_theta),
    ("B_on_p_alpha", _check_B_W),
    ("U_JU", _check_U_JU),
    ("an_bracket", _check_an_bracket),
    ("root_grading", _check_root_grading),
    ("theta_roots", _check_theta_roots),
)


def run_identity_suite(ctx, trials: int = 100, seed: int | None = 0
                       ) -> list[LemmaResult]:
    rd: RootData = as_root_data(ctx)
    out = []
    for name, fn in IDENTITIES:
        rng = make_rng(seed, "lemmas", rd.n, name)
        checks, label = fn(rd, rng, trials)
        failures = checks.count(False)
        detail = label if not failures else f"{label}: {failures} failures"
        out.append(LemmaResult(name, failures == 0, len(checks), detail))
    return out
