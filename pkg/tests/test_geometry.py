from fractions import Fraction

import numpy as np
import pytest

from polarfol.catalog import as_root_data, catalog, s_vw
from polarfol.errors import GaugeFailure, NotInSolvablePart, NotPolarInput
from polarfol.fixtures import complex_line_fixture
from polarfol.geometry import (HyperboloidPoint, busemann, distance,
                               export_csv, export_json, from_ball, group_exp,
                               holomorphic_curvature_probe, metric, origin,
                               sample_orbit, second_fundamental_form,
                               second_fundamental_form_norm,
                               section_orthogonality, to_ball,
                               geodesic_defect)
from polarfol.polar import Subalgebra, close_check
from polarfol.su1n import exp_nilpotent


def expected_sff_sq(n, cls):
    """|II|^2 at o: horosphere (n+1)/2, plus 1/4 per real direction of w;
    b/2 for S_{1,b}."""
    if cls.trivial:
        return Fraction(0)
    if cls.a == 0:
        return Fraction(n + 1, 2) + Fraction(cls.b, 4)
    return Fraction(cls.b, 2)


def test_sff_frozen_values(rd):
    for cls, h in catalog(rd):
        fl, exact = second_fundamental_form_norm(h, rd)
        assert exact == expected_sff_sq(rd.n, cls)
        assert fl == pytest.approx(float(exact) ** 0.5, abs=1e-10)


def test_sff_n2_values(rd2):
    got = {c.label: second_fundamental_form(h, rd2)[0]
           for c, h in catalog(rd2)}
    assert got["S_{0,0}"] == Fraction(3, 2)
    assert got["S_{0,1}"] == Fraction(7, 4)
    assert got["S_{1,1}"] == Fraction(1, 2)


def test_busemann_on_horospheres(rd):
    for cls, h in catalog(rd):
        if cls.kind != "S":
            continue
        pts = sample_orbit(h, count=15, seed=1, rd=rd).points
        vals = [busemann(p) for p in pts]
        spread = max(vals) - min(vals)
        if cls.a == 0:
            assert spread <= 1e-9
        else:
            assert spread > 1e-3


def test_orthogonality(rd):
    for _, h in catalog(rd):
        assert section_orthogonality(h, samples=5, seed=0, rd=rd) <= 1e-8


def test_orthogonality_fails_on_complex_line(rd2):
    h = close_check(rd2.ctx, complex_line_fixture(rd2))
    with pytest.raises(NotPolarInput):
        section_orthogonality(h, rd=rd2)
    dev = section_orthogonality(h, samples=5, require_polar=False, rd=rd2)
    assert dev > 1e-3


@pytest.mark.parametrize("point", [(0.0, 0.0), (0.3, -0.4), (-0.6, 0.1)])
def test_curvature(point):
    assert holomorphic_curvature_probe(3, point) == pytest.approx(-1, abs=1e-4)


def test_ball_round_trip():
    p = HyperboloidPoint.normalize(np.array([2.0, 0.5 + 1j, -0.3]))
    q = from_ball(to_ball(p))
    assert distance(p, q) < 1e-7
    assert p.form_value == pytest.approx(-1)
    with pytest.raises(GaugeFailure):
        HyperboloidPoint.normalize(np.array([0.0, 1.0, 0.0]))


def test_distance_along_geodesic(rd2):
    # exp(tB) o is a unit speed geodesic
    pts = [origin(2)]
    pts += [HyperboloidPoint.normalize(group_exp(rd2.B, t=t) @ origin(2).z)
            for t in (0.5, 1.0, 1.5)]
    assert distance(pts[0], pts[2]) == pytest.approx(1.0, abs=1e-12)
    defect, spread = geodesic_defect(pts)
    assert defect < 1e-10 and spread < 1e-10


def test_metric_normalization(rd2):
    o = origin(2)
    v = rd2.B.matrix.to_numpy() @ o.z
    assert metric(o, v, v) == pytest.approx(1.0)


def test_group_exp_matches_exact(rd3):
    N = rd3.alpha_basis[1] + rd3.Z
    assert np.allclose(group_exp(N), exp_nilpotent(N).to_numpy(), atol=1e-14)


def test_sampling_needs_an(rd2):
    h = Subalgebra(rd2.ctx, s_vw(rd2, 0, [], check=False))
    sample_orbit(h, count=2, rd=rd2)
    with pytest.raises(NotInSolvablePart):
        sample_orbit(close_check(rd2.ctx, [rd2.t_basis[0]]), rd=rd2)


def test_exports(tmp_path, rd2):
    h = catalog(rd2)[3][1]
    s = sample_orbit(h, count=3, seed=0, class_id="S01", rd=rd2)
    data = export_json([s], str(tmp_path / "o.json"))
    assert data["schema_version"] == 1 and "tolerance" in data
    export_csv([s], str(tmp_path / "o.csv"))
    lines = (tmp_path / "o.csv").read_text().splitlines()
    assert lines[0] == "class_id,index,re_1,im_1,re_2,im_2"
    assert len(lines) == 4
