"""Acceptance criteria 1-7, each at its stated tolerance and time budget.

Every test appends one PASS/FAIL line, which is printed in the terminal
summary (and directly when this file is run as a script).
"""

import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

import pytest

from polarfol.catalog import (RealSubspace, alpha_to_complex, as_root_data,
                              catalog, complex_to_alpha, conjugate,
                              conjugate_nilpotent, k0_element,
                              random_unitary, s_vw, standard_real_subspace)
from polarfol.exact_linalg import GaussianRational, Subspace
from polarfol.fixtures import (adversarial_t_fixture, complex_line_fixture,
                               non_totally_real_variants,
                               random_non_foliating_fixture, valid_t_fixtures)
from polarfol.geometry import (busemann, holomorphic_curvature_probe,
                               sample_orbit, second_fundamental_form_norm,
                               section_orthogonality)
from polarfol.lemmas import run_identity_suite
from polarfol.normal_form import (adg_normal_form, an_projection, congruent,
                                  foliation_probe, invariants,
                                  t_part_centralizes)
from polarfol.polar import FailureReason, check_polar
from polarfol.sampling import make_rng, rand_combination
from polarfol.su1n import ad_series, bracket, inner, make_context, theta
from polarfol.survey import survey

from conftest import ACCEPTANCE

SURVEY_SEED = 42


@contextmanager
def criterion(number: int, title: str, budget: float | None = None):
    start = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed >= budget:
            detail = f" (over budget: {elapsed:.2f}s >= {budget}s)"
            raise AssertionError(f"criterion {number}{detail}")
        status = "PASS"
        detail = f" ({elapsed:.2f}s)"
    finally:
        line = f"criterion {number}: {status} {title}{detail}"
        ACCEPTANCE.append(line)
        print(line)


def _rotated_real_subspace(rng, rd, b):
    U = random_unitary(rng, rd.n - 1)
    vecs = []
    for v in standard_real_subspace(rd, b).vectors:
        z = alpha_to_complex(v)
        vecs.append(complex_to_alpha(
            [sum((row[j] * z[j] for j in range(len(z))), GaussianRational(0))
             for row in U]))
    return RealSubspace(rd, vecs)


# -- 1 ------------------------------------------------------------------------

def test_criterion_1_catalog_count():
    with criterion(1, "catalog has exactly 2n+1 non-congruent classes"):
        for n in (2, 3, 4):
            start = time.perf_counter()
            ctx = make_context(n)
            items = catalog(ctx)
            assert len(items) == 2 * n + 1
            kinds = [c.kind for c, _ in items]
            assert kinds.count("points") == 1 and kinds.count("one-leaf") == 1
            assert sum(c.kind == "S" and c.a == 0 for c, _ in items) == n
            assert sum(c.kind == "S" and c.a == 1 for c, _ in items) == n - 1
            rd = as_root_data(ctx)
            for cls, h in items:
                assert check_polar(h, rd).is_polar
                assert invariants(h, rd) == cls
            for (_, h1), (_, h2) in combinations(items, 2):
                assert not congruent(h1, h2, rd)
            assert len({c.key for c, _ in items}) == 2 * n + 1
            assert time.perf_counter() - start < 10, f"n={n} over 10 s"


# -- 2 ------------------------------------------------------------------------

def test_criterion_2_criterion_exactness():
    with criterion(2, "s_{V,w} polar exactly, normal space and "
                      "cohomogeneity match"):
        for n in (2, 3, 4):
            rd = as_root_data(n)
            rng = make_rng(0, "criterion2", n)
            for V in (0, 1):
                for b in range(n):
                    for w in (standard_real_subspace(rd, b),
                              _rotated_real_subspace(rng, rd, b)):
                        h = s_vw(rd, V, w)
                        v = check_polar(h, rd)
                        assert v.is_polar
                        gens = [] if V else [rd.B.coords]
                        gens += [(e - theta(e)).coords for e in w.elements]
                        assert v.h_p_perp == Subspace(rd.ctx.dim, gens)
                        assert v.cohomogeneity == (b if V == 1 else b + 1)


# -- 3 ------------------------------------------------------------------------

def test_criterion_3_negative_control():
    with criterion(3, "complex-line w and non-totally-real variants "
                      "rejected"):
        allowed = (FailureReason.NOT_ORTHOGONAL, FailureReason.NOT_LTS)
        for n in (2, 3, 4):
            rd = as_root_data(n)
            for V in (0, 1):
                v = check_polar(complex_line_fixture(rd, V), ctx=rd.ctx)
                assert not v.is_polar and v.failure_reason in allowed
            variants = non_totally_real_variants(
                rd, make_rng(0, "criterion3", n), 6)
            assert len(variants) >= 5
            for s in variants:
                v = check_polar(s, ctx=rd.ctx)
                assert not v.is_polar and v.failure_reason in allowed


# -- 4 ------------------------------------------------------------------------

def test_criterion_4_identity_suite():
    with criterion(4, "exact identity suite, n = 2, 3, 4", budget=5.0):
        for n in (2, 3, 4):
            res = run_identity_suite(make_context(n), trials=100, seed=0)
            assert len(res) == 9
            bad = [r.detail for r in res if not r.passed]
            assert not bad, f"n={n}: {bad}"
            an = next(r for r in res if r.name == "an_bracket")
            assert an.checked >= 100


# -- 5 ------------------------------------------------------------------------

def test_criterion_5_machinery_replay():
    with criterion(5, "normal form, two-dimensional-pi identities, "
                      "t-part check"):
        for n in (2, 3, 4):
            rd = as_root_data(n)
            rng = make_rng(0, "criterion5", n)
            for k in range(20):
                a = k % 2
                b = rng.randint(1 if a else 0, n - 1)
                w = _rotated_real_subspace(rng, rd, b)
                N = rand_combination(rng, [*rd.alpha_basis, rd.Z], bound=2)
                h = conjugate_nilpotent(s_vw(rd, a, w), N)
                nf = adg_normal_form(h, rd)
                assert an_projection(nf.conjugated, rd) == \
                    s_vw(rd, nf.V, nf.v, check=False)
                assert nf.canonical_class.key == ("S", a, b)
            for h in valid_t_fixtures(rd):
                assert t_part_centralizes(h, rd)
            assert not t_part_centralizes(adversarial_t_fixture(rd), rd)
        rd2 = as_root_data(2)
        rng = make_rng(0, "criterion5-nonfol")
        for _ in range(20):
            fx = random_non_foliating_fixture(rng, rd2)
            X, Y, JX = fx.X, fx.Y, rd2.J_an(fx.X)
            nX = inner(X, X)
            assert bracket(fx.T_JX, X) == JX * (-nX / 2)
            assert ad_series(fx.g_nilpotent,
                             fx.T_JX + JX + rd2.Z * Fraction(1, 2)) == fx.T_JX
            assert inner(bracket(fx.T_Y, Y), X) == Fraction(1, 2)
            assert nX * inner(Y, Y) - inner(X, Y) ** 2 == 1
            assert Y == X * fx.gamma - JX / nX
            assert foliation_probe(fx.h, rd2).rejected


# -- 6 ------------------------------------------------------------------------

def test_criterion_6_survey():
    with criterion(6, "survey n=2 x500 and n=3 x200 with zero violations",
                   budget=60.0):
        for n, trials in ((2, 500), (3, 200)):
            rep = survey(make_context(n), trials, SURVEY_SEED)
            assert rep.ok, rep.violations[:3]
            assert sum(rep.outcomes.values()) == trials
            assert rep.outcomes["polar"] > 0
            keys = {c.label for c, _ in catalog(make_context(n))}
            assert set(rep.classes) <= keys


# -- 7 ------------------------------------------------------------------------

def test_criterion_7_geometry():
    with criterion(7, "Busemann, orthogonality, second fundamental form, "
                      "curvature", budget=30.0):
        for n in (2, 3, 4):
            rd = as_root_data(n)
            for cls, h in catalog(rd):
                if cls.kind == "S":
                    pts = sample_orbit(h, count=20, seed=0, rd=rd).points
                    vals = [busemann(p) for p in pts]
                    spread = max(vals) - min(vals)
                    if cls.a == 0:
                        assert spread <= 1e-9, (cls.label, spread)
                    else:
                        assert spread > 1e-3, (cls.label, spread)
                    fl, exact = second_fundamental_form_norm(h, rd)
                    assert fl > 1e-8 and exact != 0, cls.label
                dev = section_orthogonality(h, samples=10, seed=0, rd=rd)
                assert dev <= 1e-8, (cls.label, dev)
            for point in ((0.0, 0.0), (0.25, -0.4), (-0.5, 0.3)):
                K = holomorphic_curvature_probe(n, point)
                assert K == pytest.approx(-1.0, abs=1e-4)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
