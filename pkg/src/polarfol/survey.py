"""Randomized search for homogeneous polar foliations inside t + a + n.

Each trial draws generators, closes them under the bracket and classifies
the result.  A polar foliating subalgebra whose normal form is not one of
the catalog classes counts as a violation.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import (CanonicalClass, RealSubspace, alpha_to_complex,
                      as_root_data, catalog, complex_to_alpha, conjugate,
                      conjugate_nilpotent, k0_element, random_unitary, s_vw,
                      standard_real_subspace)
from .errors import NotInBorel, WrongShape
from .exact_linalg import GaussianRational, Subspace
from .normal_form import adg_normal_form, foliation_probe, t_part_report
from .polar import SectionKind, Subalgebra, check_polar, closure
from .root_space import RootData
from .sampling import make_rng, rand_combination, rand_nonzero_combination
from .su1n import AlgebraElement

__all__ = ["SurveyReport", "TrialResult", "survey", "run_trial",
           "STRATEGIES"]

STRATEGIES = ("structured", "sparse", "t-graph", "borel")


@dataclass
class TrialResult:
    trial: int
    strategy: str
    dim: int
    outcome: str                  # non-polar | non-foliating | polar
    label: str | None = None
    conditional: bool = False
    violation: str | None = None


@dataclass
class SurveyReport:
    n: int
    trials: int
    seed: int | None
    classes: Counter = field(default_factory=Counter)
    outcomes: Counter = field(default_factory=Counter)
    strategies: Counter = field(default_factory=Counter)
    conditional: int = 0
    violations: list = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, r: TrialResult):
        self.outcomes[r.outcome] += 1
        self.strategies[r.strategy] += 1
        if r.label is not None:
            self.classes[r.label] += 1
        if r.conditional and r.outcome == "polar":
            self.conditional += 1
        if r.violation:
            self.violations.append({"trial": r.trial, "strategy": r.strategy,
                                    "message": r.violation})

    def merge(self, other: "SurveyReport") -> "SurveyReport":
        if other.n != self.n:
            raise ValueError("cannot merge surveys of different rank")
        out = SurveyReport(self.n, self.trials + other.trials, self.seed)
        for name in ("classes", "outcomes", "strategies"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.conditional = self.conditional + other.conditional
        out.violations = self.violations + other.violations
        out.elapsed = self.elapsed + other.elapsed
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"n": self.n, "trials": self.trials, "seed": self.seed,
                "classes": dict(sorted(self.classes.items())),
                "outcomes": dict(sorted(self.outcomes.items())),
                "strategies": dict(sorted(self.strategies.items())),
                "conditional": self.conditional,
                "violations": list(self.violations),
                "elapsed": round(self.elapsed, 3)}


def _an_units(rd: RootData) -> list[AlgebraElement]:
    return [rd.B, *rd.alpha_basis, rd.Z]


def _random_real_subspace(rng: random.Random, rd: RootData,
                          b: int) -> tuple[RealSubspace, object]:
    """K0-rotation of span(e_1..e_b), with the unitary used."""
    U = random_unitary(rng, rd.n - 1)
    std = standard_real_subspace(rd, b)
    vecs = []
    for v in std.vectors:
        z = alpha_to_complex(v)
        vecs.append(complex_to_alpha(
            [sum((row[j] * z[j] for j in range(len(z))), 0 * z[0])
             for row in U]))
    return RealSubspace(rd, vecs), U


def _generators(rng: random.Random, rd: RootData, strategy: str
                ) -> list[AlgebraElement]:
    n = rd.n
    units = _an_units(rd)
    if strategy == "structured":
        V, b = rng.randint(0, 1), rng.randint(0, n - 1)
        w, _ = _random_real_subspace(rng, rd, b)
        h = s_vw(rd, V, w)
        if rng.random() < 0.7:
            N = rand_combination(rng, units[1:], bound=2, sparsity=0.5)
            h = conjugate_nilpotent(h, N)
        return h.elements
    if strategy == "sparse":
        k = rng.randint(1, 3)
        return [rand_nonzero_combination(rng, units, bound=2, sparsity=0.6)
                for _ in range(k)]
    if strategy == "t-graph":
        V, b = rng.randint(0, 1), rng.randint(0, n - 1)
        w = standard_real_subspace(rd, b)
        h = s_vw(rd, V, w)
        gens = []
        for x in h.elements:
            if rng.random() < 0.4:
                x = x + rand_combination(rng, rd.t_basis, bound=2,
                                         sparsity=0.3)
            gens.append(x)
        if rng.random() < 0.5:
            g = k0_element(rd, _diagonal_phase(rng, n - 1))
            gens = conjugate(
                Subalgebra(rd.ctx, _span(rd, gens)), g).elements
        return gens
    if strategy == "borel":
        k = rng.randint(1, 3)
        pool = list(rd.t_basis) + units
        return [rand_nonzero_combination(rng, pool, bound=2, sparsity=0.6)
                for _ in range(k)]
    raise ValueError(f"unknown strategy {strategy!r}")


_PYTHAGOREAN = ((1, 0), (0, 1), (3, 4), (4, 3), (5, 12), (8, 15))


def _diagonal_phase(rng: random.Random, d: int):
    """Diagonal rational unitary; it centralizes t, so the Borel is kept."""
    rows = [[GaussianRational(0)] * d for _ in range(d)]
    for i in range(d):
        p, q = rng.choice(_PYTHAGOREAN)
        c = Fraction(1, int(round((p * p + q * q) ** 0.5)))
        rows[i][i] = GaussianRational(rng.choice((1, -1)) * p * c,
                                      rng.choice((1, -1)) * q * c)
    return rows


def _span(rd: RootData, elems):
    return Subspace(rd.ctx.dim, [e.coords for e in elems])


_CATALOG_KEYS: dict[int, set] = {}


def _catalog_keys(rd: RootData) -> set:
    if rd.n not in _CATALOG_KEYS:
        _CATALOG_KEYS[rd.n] = {c.key for c, _ in catalog(rd)}
    return _CATALOG_KEYS[rd.n]


def classify_candidate(h: Subalgebra, rd: RootData, trial: int = 0,
                       strategy: str = "given") -> TrialResult:
    """Run the full pipeline on one subalgebra of the Borel algebra."""
    n = rd.n
    verdict = check_polar(h, rd)
    st = verdict.section_type
    complex_mid = (st.kind is SectionKind.COMPLEX and 0 < st.dim < n)
    if not verdict.is_polar:
        return TrialResult(trial, strategy, h.dim, "non-polar")
    if complex_mid:
        return TrialResult(trial, strategy, h.dim, "polar",
                           conditional=verdict.conditional,
                           violation=f"polar with section {st}")
    status = foliation_probe(h, rd)
    if status.rejected:
        if not verdict.conditional:
            return TrialResult(trial, strategy, h.dim, "non-foliating",
                               violation="a+n subalgebra rejected as "
                                         "non-foliating")
        return TrialResult(trial, strategy, h.dim, "non-foliating",
                           conditional=True)
    try:
        nf = adg_normal_form(h, rd)
    except WrongShape as exc:
        return TrialResult(trial, strategy, h.dim, "polar",
                           conditional=verdict.conditional,
                           violation=f"no normal form: {exc}")
    cls: CanonicalClass = nf.canonical_class
    res = TrialResult(trial, strategy, h.dim, "polar", cls.label,
                      verdict.conditional)
    if cls.key not in _catalog_keys(rd):
        res.violation = f"class {cls.label} is not in the catalog"
    elif cls.cohomogeneity != verdict.cohomogeneity:
        res.violation = (f"cohomogeneity {verdict.cohomogeneity} does not "
                         f"match {cls.label}")
    elif verdict.conditional and nf.kind != "points" and \
            not t_part_report(nf.conjugated, rd).ok:
        res.violation = "accepted t-part does not centralize w"
    return res


def run_trial(rd: RootData, seed: int | None, trial: int) -> TrialResult:
    rng = make_rng(seed, "survey", rd.n, trial)
    strategy = STRATEGIES[trial % len(STRATEGIES)]
    gens = _generators(rng, rd, strategy)
    h = closure(rd.ctx, gens, f"survey trial {trial} ({strategy})")
    try:
        return classify_candidate(h, rd, trial, strategy)
    except NotInBorel as exc:
        return TrialResult(trial, strategy, h.dim, "non-polar",
                           violation=f"closure left the Borel: {exc}")


def survey(ctx, trials: int, seed: int | None = 0) -> SurveyReport:
    rd = as_root_data(ctx)
    report = SurveyReport(rd.n, trials, seed)
    start = time.perf_counter()
    for trial in range(trials):
        report.add(run_trial(rd, seed, trial))
    report.elapsed = time.perf_counter() - start
    return report
