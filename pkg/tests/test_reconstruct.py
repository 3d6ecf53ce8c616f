import pytest

from morin import curves
from morin import linalg as la
from morin import planecurves as pc
from morin import reconstruct as rc
from morin import vthreefold as vt
from morin.errors import DegeneratePosition, MorinError

SIX_LINES = vt.six_line_sextic(rc.P2)


@pytest.fixture(scope="module")
def rec_lines():
    return rc.reconstruct_from_sextic(SIX_LINES)


@pytest.fixture(scope="module")
def rec_ten(ten_nodal):
    return rc.reconstruct_from_sextic(ten_nodal.gamma)


def test_six_line_dimensions(rec_lines):
    assert rec_lines.jc22_dim == 3
    assert rec_lines.image_dim == 1
    ic = rc.check_IC23(rec_lines)
    assert ic["J_C_23_dim"] == 9 and ic["mu_rank"] == 9 and ic["mu_image_in_J"]
    assert ic["Y_h_plus_O11_contained"] and ic["containment_checks"] == 6


def test_six_line_round_trip(rec_lines):
    assert rec_lines.sextic_scale is not None
    sextic = vt.branch_sextic(rec_lines.v, "x")
    assert sextic.proportional_to(vt.six_line_sextic()) is not None


def test_six_line_image_is_vram_up_to_coordinates(rec_lines):
    loc = vt.singular_locus(rec_lines.v, (31, 37, 41))
    assert loc.consistent and len(loc.rational) == 19


def test_net_contains_y_h_multiples(rec_lines):
    s, t = rc.SY.gens()[:2]
    net = rec_lines.jc22
    mons = sorted(set().union(*[f.terms for f in net]) | set((rec_lines.y_h * s).terms) | set((rec_lines.y_h * t).terms))
    rows = [f.coeff_vector(mons) for f in net]
    assert la.rank(rows) == 3
    for a in (s, t):
        assert la.in_span((rec_lines.y_h * a).coeff_vector(mons), rows)


def test_ten_nodal_sextic(ten_nodal):
    g = ten_nodal.gamma
    assert g.total_degree() == 6
    assert len(ten_nodal.nodes) == 10
    assert all(pc.is_ordinary_double(g, p) for p in ten_nodal.nodes)
    assert len(pc.sympy_factor(g)) == 1
    base = {la.normalize_projective(p) for p in rc.STANDARD}
    assert base <= set(ten_nodal.nodes)


def test_ten_nodal_dimensions(rec_ten):
    assert rec_ten.jc22_dim == 3
    ic = rc.check_IC23(rec_ten)
    assert ic["J_C_23_dim"] == 9 and ic["mu_rank"] == 9
    assert ic["Y_h_plus_O11_contained"]
    assert vt.branch_sextic(rec_ten.v, "x").proportional_to(rec_ten.gamma.change_ring(vt.XY, [3, 4, 5])) is not None


def test_ten_nodal_curve(y_std, ten_nodal):
    c = curves.nodal_curve_from_sextic(y_std, ten_nodal.gamma, plane_nodes=ten_nodal.nodes)
    assert len(c.sing_points) == 6
    assert c.genus_identity() == (0, 6, 1, 6)
    assert la.rank([list(p) for p in c.sing_points]) == 6


def test_sextic_must_be_singular_at_base_points():
    x, y, z = rc.P2.gens()
    with pytest.raises(MorinError):
        rc.reconstruct_from_sextic(x ** 6 + y ** 6 + z ** 6)


def test_collinear_base_points():
    with pytest.raises(DegeneratePosition):
        rc.reconstruct_from_sextic(SIX_LINES, points=[(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])


def test_common_rational_zeros():
    x, y, z = rc.P2.gens()
    f = x * y - z * z
    g = (x - y) * (x + y - 2 * z)
    zeros = pc.common_rational_zeros([f, g])
    assert zeros == sorted({la.normalize_projective(p) for p in [(1, 1, 1), (1, 1, -1)]})
    assert all(f.evaluate(p) == 0 and g.evaluate(p) == 0 for p in zeros)
