import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morin import grassmann as gr
from morin import linalg as la
from morin.errors import DegenerateMarking, IncidenceError, NotDecomposable, RankError

seeds = st.integers(0, 10**6)


def _plane(rows):
    return gr.PlaneP5.of(rows)


def _incident_pair(rng):
    p = gr.random_plane(rng)
    pt = la.vec_mat([rng.randint(-3, 3) or 1 for _ in range(3)], p.rows())
    while True:
        other = [pt] + [[Fraction(rng.randint(-4, 4)) for _ in range(6)] for _ in range(2)]
        if la.rank(other) == 3 and la.rank(p.rows() + other) == 5:
            return p, _plane(other)


def test_coordinate_planes():
    p = _plane([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    q = _plane([[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    assert gr.plucker_of_plane(p) == gr.Wedge3Vector.unit((0, 1, 2))
    assert gr.symplectic_pairing(gr.plucker_of_plane(p), gr.plucker_of_plane(q)) == 1
    assert not gr.planes_incident(p, q)


def test_rank_error():
    with pytest.raises(RankError):
        gr.PlaneP5.of([[1, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])


@given(seeds)
@settings(max_examples=30)
def test_plucker_round_trip(seed):
    p = gr.random_plane(random.Random(seed))
    v = gr.plucker_of_plane(p)
    assert v.is_decomposable()
    assert gr.plane_from_plucker(v) == p


def test_sum_of_two_planes_is_not_decomposable():
    v = gr.Wedge3Vector.unit((0, 1, 2)) + gr.Wedge3Vector.unit((3, 4, 5))
    assert not v.is_decomposable()
    with pytest.raises(NotDecomposable):
        gr.plane_from_plucker(v)


@given(seeds)
@settings(max_examples=30)
def test_pairing_detects_incidence(seed):
    rng = random.Random(seed)
    p, q = _incident_pair(rng)
    assert gr.planes_incident(p, q)
    assert gr.symplectic_pairing(gr.plucker_of_plane(p), gr.plucker_of_plane(q)) == 0
    r = gr.random_plane(rng)
    assert gr.planes_incident(p, r) == (gr.symplectic_pairing(gr.plucker_of_plane(p), gr.plucker_of_plane(r)) == 0)


@given(seeds)
@settings(max_examples=30)
def test_pairing_is_antisymmetric(seed):
    rng = random.Random(seed)
    v = [Fraction(rng.randint(-3, 3)) for _ in range(20)]
    w = [Fraction(rng.randint(-3, 3)) for _ in range(20)]
    assert gr.symplectic_pairing(v, w) == -gr.symplectic_pairing(w, v)
    assert gr.symplectic_pairing(v, v) == 0


@given(seeds)
@settings(max_examples=20)
def test_random_lagrangian(seed):
    lag = gr.random_lagrangian(random.Random(seed))
    assert gr.is_lagrangian(lag.rows())


def test_nine_dimensional_span_is_not_lagrangian():
    lag = gr.random_lagrangian(random.Random(1))
    assert not gr.is_lagrangian(lag.rows()[:9])


def test_filtration_dimensions():
    u = gr.random_plane(random.Random(3))
    w1, w2, w3 = gr.filtration(u)
    assert (len(w1), len(w2), len(w3)) == (19, 10, 1)
    pu = list(gr.plucker_of_plane(u).coords)
    assert la.row_space(w3) == la.row_space([pu])
    assert all(la.in_span(r, w1) for r in w2)
    assert all(la.in_span(r, w2) for r in w3)
    assert all(gr.symplectic_pairing(r, pu) == 0 for r in w1)


@given(seeds)
@settings(max_examples=20)
def test_tangential_x_is_the_intersection_point(seed):
    e, u = _incident_pair(random.Random(seed))
    x, y = gr.tangential_coordinates(e, u)
    point = la.vec_mat(list(x), u.rows())
    assert e.contains_point(point)
    assert any(y)


def test_tangential_coordinates_errors():
    u = _plane([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    far = _plane([[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    line = _plane([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]])
    with pytest.raises(IncidenceError):
        gr.tangential_coordinates(far, u)
    with pytest.raises(IncidenceError):
        gr.tangential_coordinates(line, u)


def test_marking_outside_a_is_rejected():
    rng = random.Random(5)
    lag = gr.random_lagrangian(rng)
    u = gr.random_plane(rng)
    with pytest.raises(DegenerateMarking):
        gr.MarkedLagrangian(lag, u)


def test_configuration_planes_give_singular_points(conf_ell):
    # each plane of the 20-configuration other than the marking is a singular point of V_A
    from morin import curves
    from morin import vthreefold as vt

    idx = conf_ell.labels.index("h5")
    form, tang = curves.marked_form(conf_ell, idx)
    assert len(tang) == 19
    for pt in tang:
        assert vt.verify_singular(form, pt)
