import random

import pytest

from morin import igusa as ig
from morin import linalg as la
from morin import vthreefold as vt
from morin.errors import CollinearPoints


@pytest.fixture(scope="module")
def phi():
    return ig.phi_map()


def test_forms_through_diagonal(phi):
    assert len(phi.forms) == 5
    for u in phi.points:
        assert not any(phi(u, u))


def test_degenerate_points():
    with pytest.raises(CollinearPoints):
        ig.phi_map([(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1)])


def test_ramification_is_vram(phi):
    ram = ig.ramification_form(phi)
    assert ram.f.proportional_to(vt.vram().f) is not None


def test_jacobian_ranks(phi):
    rng = random.Random(0)
    on = ig.points_on_form(vt.vram(), rng, 20, avoid=phi.points)
    off = ig.random_points_off(vt.vram(), rng, 20)
    assert all(vt.vram()(*p) == 0 for p in on)
    assert {phi.projective_rank(*p) for p in on} == {3}
    assert {phi.projective_rank(*p) for p in off} == {4}


def test_generic_fibers_have_two_points(phi):
    rng = random.Random(1)
    hyper = ig.exceptional_hyperplanes(phi)
    done = 0
    while done < 5:
        (x, y), = ig.random_points_off(vt.vram(), rng, 1)
        w = phi(x, y)
        if any(sum(a * b for a, b in zip(h, w)) == 0 for h in hyper):
            continue
        fib = ig.fiber(phi, x, y)
        assert len(fib) == 2
        assert (la.normalize_projective(x), la.normalize_projective(y)) in fib
        for p in fib:
            assert la.rank([phi(*p), w]) == 1
        done += 1


def test_fiber_over_exceptional_hyperplane(phi):
    # DERIVED: the second preimage lies on an exceptional divisor, so one point is found
    from fractions import Fraction as F

    x, y = (F(1), F(-1, 4), F(-1, 2)), (F(1), F(-1), F(-1, 2))
    w = phi(x, y)
    assert any(sum(a * b for a, b in zip(h, w)) == 0 for h in ig.exceptional_hyperplanes(phi))
    assert len(ig.fiber(phi, x, y)) == 1


def test_quartic_is_unique_with_enough_points():
    rep = ig.phi_and_igusa(vt.vram(), samples=100, jac_samples=10, fibers=2)
    assert rep.quartic_space_dim == 1 and rep.interpolation_rank == 69
    q = rep.quartic
    assert q.total_degree() == 4 and q.is_homogeneous()
    # held-out points of V^ram map onto the quartic, points off it do not
    phi = ig.phi_map()
    rng = random.Random(99)
    for p in ig.points_on_form(vt.vram(), rng, 20, avoid=phi.points):
        assert q.evaluate(phi(*p)) == 0
    assert any(q.evaluate(phi(*p)) != 0 for p in ig.random_points_off(vt.vram(), rng, 5))


def test_sixty_points_underdetermine_the_quartic():
    # 70 quartic monomials on P^4 cannot be pinned down by 60 conditions
    rep = ig.phi_and_igusa(vt.vram(), samples=60, jac_samples=10, fibers=2)
    assert rep.quartic_space_dim >= 10
