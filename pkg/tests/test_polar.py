import pytest

from polarfol.catalog import (as_root_data, points_subalgebra, s_vw,
                              standard_real_subspace)
from polarfol.errors import NotClosed, NotInBorel
from polarfol.exact_linalg import Subspace
from polarfol.fixtures import complex_line_fixture, non_totally_real_variants
from polarfol.polar import (FailureReason, SectionKind, SectionType,
                            Subalgebra, check_polar, close_check, closure,
                            h_p_perp, is_lie_triple_system)
from polarfol.sampling import make_rng
from polarfol.su1n import theta


def expected_normal_space(rd, V, w):
    gens = [] if V else [rd.B.coords]
    gens += [(e - theta(e)).coords for e in w.elements]
    return Subspace(rd.ctx.dim, gens)


@pytest.mark.parametrize("V", [0, 1])
def test_s_vw_exact(rd, V):
    for b in range(rd.n):
        w = standard_real_subspace(rd, b)
        h = s_vw(rd, V, w)
        v = check_polar(h, rd)
        assert v.is_polar and v.failure_reason is None
        assert v.h_p_perp == expected_normal_space(rd, V, w)
        d = b + 1 - V
        kind = SectionKind.REAL if d else SectionKind.COMPLEX
        assert v.section_type == SectionType(kind, d)
        assert v.cohomogeneity == (b if V else b + 1)


def test_an_and_zero(rd):
    an = Subalgebra(rd.ctx, rd.an)
    assert str(check_polar(an, rd).section_type) == "Complex(0)"
    assert str(check_polar(points_subalgebra(rd), rd).section_type) == \
        f"Complex({rd.n})"


def test_whole_algebra_is_polar(rd):
    v = check_polar(Subalgebra(rd.ctx, Subspace.full(rd.ctx.dim)), rd)
    assert v.is_polar and v.cohomogeneity == 0


def test_complex_line_rejected(rd2, rd3):
    v = check_polar(complex_line_fixture(rd2), ctx=rd2.ctx)
    assert not v.is_polar
    assert v.failure_reason is FailureReason.NOT_ORTHOGONAL
    for V in (0, 1):
        v = check_polar(complex_line_fixture(rd3, V), ctx=rd3.ctx)
        assert not v.is_polar
        assert v.failure_reason in (FailureReason.NOT_ORTHOGONAL,
                                    FailureReason.NOT_LTS)


def test_non_totally_real_variants(rd):
    rng = make_rng(3, "nontr")
    for s in non_totally_real_variants(rd, rng, 5):
        v = check_polar(s, ctx=rd.ctx)
        assert not v.is_polar


def test_close_check_reports_pair(rd2):
    with pytest.raises(NotClosed) as exc:
        close_check(rd2.ctx, [rd2.alpha_basis[0], rd2.alpha_basis[1]])
    assert (exc.value.i, exc.value.j) == (0, 1)


def test_closure(rd2):
    h = closure(rd2.ctx, [rd2.alpha_basis[0], rd2.alpha_basis[1]])
    assert h.dim == 3 and h.contains(rd2.Z)


def test_not_in_borel(rd2):
    h = close_check(rd2.ctx, [theta(rd2.Z)])
    with pytest.raises(NotInBorel):
        check_polar(h, rd2)


def test_lts_of_real_normal_space(rd3):
    w = standard_real_subspace(rd3, 2)
    m = expected_normal_space(rd3, 0, w)
    assert is_lie_triple_system(rd3.ctx, m)
    h = s_vw(rd3, 0, w)
    assert h_p_perp(h, rd3) == m


def test_section_type_parse():
    for s in ("Real(3)", "Complex(0)", "Neither"):
        assert str(SectionType.parse(s)) == s
