from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polarfol.catalog import (RealSubspace, as_root_data, catalog,
                              conjugate, conjugate_nilpotent, k0_element,
                              random_unitary, s_vw, standard_real_subspace)
from polarfol.errors import NotPolarInput, WrongShape
from polarfol.fixtures import (adversarial_t_fixture, non_foliating_fixture,
                               complex_line_fixture, random_non_foliating_fixture,
                               torus_weights, valid_t_fixtures)
from polarfol.normal_form import (adg_normal_form, an_projection,
                                  congruence_witness, foliation_probe,
                                  invariants, isotropy_dim, section_shape,
                                  t_part_centralizes)
from polarfol.polar import check_polar, close_check
from polarfol.sampling import make_rng, rand_combination
from polarfol.su1n import ad_series, bracket, inner

RD2 = as_root_data(2)


def conjugated_fixture(rd, rng, a, b):
    U = random_unitary(rng, rd.n - 1)
    h = conjugate(s_vw(rd, a, standard_real_subspace(rd, b)),
                  k0_element(rd, U))
    N = rand_combination(rng, [*rd.alpha_basis, rd.Z], bound=2)
    return conjugate_nilpotent(h, N)


def test_normal_form_recovers_projection(rd):
    rng = make_rng(5, "nf", rd.n)
    for k in range(20):
        a, b = k % 2, (k // 2) % rd.n
        if a == 1 and b == 0:
            b = 1 if rd.n > 1 else 0
        h = conjugated_fixture(rd, rng, a, b)
        nf = adg_normal_form(h, rd)
        assert an_projection(nf.conjugated, rd) == s_vw(rd, nf.V, nf.v,
                                                       check=False)
        assert nf.canonical_class.key == ("S", a, b)


def test_normal_form_idempotent(rd):
    rng = make_rng(6, "idem", rd.n)
    h = conjugated_fixture(rd, rng, 1, rd.n - 1)
    nf = adg_normal_form(h, rd)
    again = adg_normal_form(nf.conjugated, rd)
    assert again.is_identity
    assert again.conjugated.basis == nf.conjugated.basis


def test_invariants_reject_non_polar(rd2):
    h = close_check(rd2.ctx, complex_line_fixture(rd2))
    with pytest.raises(NotPolarInput):
        invariants(h, rd2)


def test_points_normal_form(rd):
    cls, h = catalog(rd)[0]
    assert adg_normal_form(h, rd).canonical_class == cls


def test_congruence_witness(rd3):
    rng = make_rng(2, "wit")
    h1 = s_vw(rd3, 0, standard_real_subspace(rd3, 1))
    h2 = conjugate(h1, k0_element(rd3, random_unitary(rng, 2)))
    wit = congruence_witness(h1, h2, rd3)
    assert wit is not None
    if wit.exact:
        assert conjugate(h1, wit.group_element(rd3)).basis == h2.basis
    assert congruence_witness(h1, s_vw(rd3, 1, standard_real_subspace(
        rd3, 1)), rd3) is None


# -- two-dimensional pi fixtures (n = 2) --------------------------------------

def test_non_foliating_torus_coefficient_oracle():
    # frozen from an independent symbolic solve of the closure relations:
    # with X = e_1 the only admissible t-parts are T_X = 0, T_JX = -1/3 t_0,
    # and in general T_JX = -(|X|^2 / 6) t_0
    fx = non_foliating_fixture(RD2)
    assert fx.T_X.is_zero()
    assert fx.T_JX == RD2.t_basis[0] * Fraction(-1, 3)
    assert torus_weights(RD2, RD2.t_basis[0]) == [Fraction(3)]
    X = RD2.from_alpha_coords((2, 1))
    assert non_foliating_fixture(RD2, X).T_JX == RD2.t_basis[0] * Fraction(-10, 6)


@given(st.integers(0, 10_000))
def test_non_foliating_Ad_identity(seed):
    fx = random_non_foliating_fixture(make_rng(seed, "nonfol"))
    X, JX = fx.X, RD2.J_an(fx.X)
    nX = inner(X, X)
    assert bracket(fx.T_JX, X) == JX * (-nX / 2)
    out = ad_series(fx.g_nilpotent, fx.T_JX + JX + RD2.Z * Fraction(1, 2))
    assert out == fx.T_JX


@given(st.integers(0, 10_000))
def test_non_foliating_y_relation(seed):
    fx = random_non_foliating_fixture(make_rng(seed, "nonfol"))
    X, Y = fx.X, fx.Y
    nX = inner(X, X)
    # hypotheses
    assert inner(bracket(fx.T_Y, Y), X) == Fraction(1, 2)
    assert nX * inner(Y, Y) - inner(X, Y) ** 2 == 1
    # conclusion
    assert Y == X * fx.gamma - RD2.J_an(X) / nX


def test_non_foliating_passes_criterion_but_does_not_foliate():
    fx = non_foliating_fixture(RD2)
    v = check_polar(fx.h, RD2)
    assert v.is_polar and v.conditional
    assert section_shape(fx.h, RD2).pi_dim == 2
    with pytest.raises(WrongShape):
        adg_normal_form(fx.h, RD2)
    status = foliation_probe(fx.h, RD2)
    assert status.rejected
    jumped = conjugate_nilpotent(fx.h, fx.g_nilpotent)
    assert isotropy_dim(jumped, RD2) > isotropy_dim(fx.h, RD2)


# -- t-part -------------------------------------------------------------------

def test_t_part_valid_fixtures(rd):
    fixtures = valid_t_fixtures(rd)
    assert fixtures
    for h in fixtures:
        assert check_polar(h, rd).is_polar
        assert t_part_centralizes(h, rd)
        assert foliation_probe(h, rd).status == "conditional"


def test_t_part_adversarial(rd):
    h = adversarial_t_fixture(rd)
    assert check_polar(h, rd).is_polar
    assert not t_part_centralizes(h, rd)
    assert foliation_probe(h, rd).rejected


def test_an_subalgebras_foliate(rd):
    for _, h in catalog(rd):
        if h.dim < rd.ctx.dim:
            assert foliation_probe(h, rd).status == "unconditional"
