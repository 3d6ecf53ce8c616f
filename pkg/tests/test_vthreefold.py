import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morin import linalg as la
from morin import vthreefold as vt
from morin.errors import BadPrimeError, CollinearPoints

from conftest import SMALL_PRIMES

XY = vt.XY
U = [tuple(Fraction(a) for a in p) for p in vt.STANDARD_POINTS]


def _linear(c):
    return sum((g.scale(a) for g, a in zip(XY.gens()[3:], c)), XY.zero())


def test_form_must_be_bihomogeneous():
    x1, _, _, y1, _, _ = XY.gens()
    with pytest.raises(ValueError):
        vt.BidegreeForm22(x1 * y1)


def test_vector_round_trip():
    v = vt.random_form(random.Random(2))
    assert vt.BidegreeForm22.from_vector(v.vector()) == v
    assert vt.BidegreeForm22.from_json(v.to_json()) == v


def test_vram_branch_sextic_is_six_lines():
    b = vt.branch_sextic(vt.vram(), "x")
    for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)):
        b = b.exact_div(_linear(c))
    assert b.total_degree() == 0 and not b.is_zero()
    assert vt.branch_sextic(vt.vram(), "x").proportional_to(vt.six_line_sextic()) == Fraction(-1, 4)


def test_vram_swap_symmetry():
    v = vt.vram()
    assert v.swap().f == -v.f


def test_vram_forms_lie_in_i4(i4_std):
    assert i4_std.dimension == 4
    assert vt.in_span_of_forms(vt.vram(), i4_std.basis) is not None
    assert vt.in_span_of_forms(vt.vram_verbatim(), i4_std.basis) is not None


def test_i4_is_tensor_of_conic_pencils(i4_std):
    rows = [b.vector() for b in i4_std.basis]
    assert la.row_space(rows) == la.row_space([t.vector() for t in i4_std.tensor_basis])


def test_i4_collinear():
    with pytest.raises(CollinearPoints):
        vt.linear_system_I4([(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1)], vt.STANDARD_POINTS)


def test_vram_singular_points():
    loc = vt.singular_locus(vt.vram(), SMALL_PRIMES)
    assert loc.consistent
    assert len(loc.rational) == 19
    assert sum(r.tangential for r in loc.rational) == 16
    assert all(r.ordinary_double for r in loc.rational)


def test_printed_form_has_sixteen_points():
    loc = vt.singular_locus(vt.vram_verbatim(), SMALL_PRIMES)
    assert loc.consistent and len(loc.rational) == 16


def test_general_i4_member_tangential_points(i4_std):
    rng = random.Random(1)
    m = i4_std.member([rng.randint(-50, 50) for _ in range(4)])
    loc = vt.singular_locus(m, SMALL_PRIMES)
    assert loc.consistent
    expected = {vt.point_key(u, w) for u in U for w in U}
    assert {vt.point_key(r.x, r.y) for r in loc.rational} == expected
    assert all(r.tangential for r in loc.rational)


def test_verify_singular_rejects_smooth_point():
    v = vt.vram()
    pt = ((1, 2, 5), (3, -1, 7))
    assert v(*pt) != 0 or not vt.verify_singular(v, pt)
    assert not vt.verify_singular(v, pt)


def test_small_prime_rejected():
    with pytest.raises(BadPrimeError):
        vt.enumerate_singular_modp(vt.vram(), 13)


@given(st.integers(0, 10**6))
@settings(max_examples=5, deadline=None)
def test_grid_and_kernel_scans_agree(seed):
    v = vt.random_form(random.Random(seed), height=3)
    for p in (31, 37):
        a = vt.enumerate_singular_modp(v, p, method="grid")
        b = vt.enumerate_singular_modp(v, p, method="kernel")
        assert sorted(a.points) == sorted(b.points)


def test_scans_agree_on_vram():
    for p in SMALL_PRIMES:
        a = vt.enumerate_singular_modp(vt.vram(), p, method="grid")
        b = vt.enumerate_singular_modp(vt.vram(), p, method="kernel")
        assert sorted(a.points) == sorted(b.points) and a.count == 19


def test_vram_planes():
    inv = vt.planes_in(vt.vram(), SMALL_PRIMES)
    assert inv.t_x == 4 and inv.t_y == 4
    assert vt.general_position(inv.P_x) and vt.general_position(inv.P_y)
    assert {la.normalize_projective(p) for p in inv.P_x} == {la.normalize_projective(u) for u in U}


def test_normalization_round_trip(i4_std):
    rng = random.Random(3)
    while True:
        mx = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        my = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if la.det(mx) and la.det(my):
            break
    moved = vt.transform(vt.vram(), mx, my)
    norm, _, _ = vt.normalize_to_standard(moved, vt.planes_in(moved, SMALL_PRIMES))
    assert vt.in_span_of_forms(norm, i4_std.basis) is not None
    assert vt.branch_sextic(norm, "x").proportional_to(vt.six_line_sextic()) is not None


@given(st.integers(0, 10**6), st.integers(0, 4))
@settings(max_examples=8, deadline=None)
def test_singular_count_bounds(seed, t):
    # forms containing t planes on each side, otherwise random
    rng = random.Random(seed)
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)][:t]
    basis = vt.forms_containing_planes(pts, pts)
    vec = [sum(rng.randint(-4, 4) * b[k] for b in basis) for k in range(36)]
    if not any(vec):
        return
    v = vt.BidegreeForm22.from_vector(vec)
    inv = vt.planes_in(v, SMALL_PRIMES)
    loc = vt.singular_locus(v, SMALL_PRIMES)
    # finiteness certificate: equal counts at every prime, all lifted exactly
    if loc.consistent:
        count = len(loc.rational)
        assert count <= 20
        assert count <= 15 + inv.t


def test_random_marked_lagrangian_is_smooth():
    # DERIVED: random Lagrangians through u give smooth threefolds
    from morin import grassmann as gr

    v = gr.build_v_threefold(gr.random_marked_lagrangian(random.Random(0)))
    assert vt.singular_locus(v, SMALL_PRIMES).counts == {p: 0 for p in SMALL_PRIMES}


def test_fiber_vertices_of_vram():
    # over a point of the six lines the x-conic of V^ram is a line pair
    v = vt.vram()
    y = (Fraction(1), Fraction(1), Fraction(3))
    (cand,) = vt.fiber_vertices(v, [y])
    assert v(*cand) == 0
    assert not vt.fiber_vertices(v, [(1, 2, 5)])
