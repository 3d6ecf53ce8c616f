import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morin import delpezzo as dp
from morin import linalg as la
from morin.errors import CollinearPoints

# frozen output of discriminant_check on the standard surface; the square
# relation is re-checked below by point evaluation
DELTA_STD = (
    "s1^2*s5 + s1*s2*s5 + 2*s1*s3*s5 + s1*s5^2 + s2*s3*s4 + s2*s3*s5"
    " + s2*s5^2 + s3^2*s4 + s3^2*s5 + s3*s4^2 + s3*s5^2"
)
SCALE_STD = Fraction(-1, 64)


@pytest.fixture(scope="module")
def disc(y_std):
    return dp.discriminant_check(y_std)


def test_collinear_points_rejected():
    with pytest.raises(CollinearPoints):
        dp.build_del_pezzo([(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 3)])


def test_pic_lattice():
    assert dp.K.dot(dp.K) == 5
    assert dp.ANTICANONICAL_SQUARE == -(dp.K + dp.K)
    for i, j in itertools.combinations(range(1, 5), 2):
        ln = dp.line_class(i, j)
        assert ln.dot(ln) == -1 and ln.dot(dp.K) == -1


def test_quadrics_through_y(y_std):
    assert dp.restriction_rank(y_std) == 16
    wy = dp.quadrics_through(y_std)
    assert len(wy) == 5
    rng = random.Random(0)
    for _ in range(5):
        p = y_std.random_point(rng)
        assert all(dp.QuadricP5.from_vector(q)(p) == 0 for q in wy)


def test_embedding_degree(y_std):
    assert dp.slice_degree(y_std) == 5


def test_ten_lines_form_petersen(y_std):
    lines = dp.lines_on(y_std)
    assert len(lines) == 10
    assert all(len(ln.span) == 2 for ln in lines)
    g = dp.line_graph(lines)
    assert dp.is_petersen(g)
    assert nx.is_isomorphic(g, nx.petersen_graph())
    assert all(d == 3 for _, d in g.degree())
    assert g.number_of_edges() == 15 and nx.girth(g) == 5


def test_lines_lie_on_y(y_std):
    wy = dp.quadrics_through(y_std)
    for ln in dp.lines_on(y_std):
        for a, b in ((1, 0), (0, 1), (1, 1)):
            p = [a * u + b * v for u, v in zip(*ln.span)]
            assert all(dp.QuadricP5.from_vector(q)(p) == 0 for q in wy)


def test_five_conic_pencils(y_std):
    pencils = dp.conic_pencils(y_std)
    assert len(pencils) == 5
    for p in pencils:
        assert len(p.net) == 3
        assert p.pic.dot(p.pic) == 0 and p.pic.dot(dp.K) == -2
        # each net sits inside the quadrics through Y
        assert all(la.in_span(q, dp.quadrics_through(y_std)) for q in p.net)


def test_pencil_nets_meet_pairwise_in_a_quadric(y_std):
    pencils = dp.conic_pencils(y_std)
    for a, b in itertools.combinations(pencils, 2):
        assert len(dp.pencil_intersection(a, b)) == 1


def test_segre_discriminant(disc):
    assert disc.delta.total_degree() == 3
    assert disc.delta.to_str() == DELTA_STD
    assert disc.scale == SCALE_STD


def test_discriminant_square_by_evaluation(disc):
    rng = random.Random(7)
    for _ in range(20):
        pt = [Fraction(rng.randint(-9, 9)) for _ in range(5)]
        assert disc.sextic.evaluate(pt) == disc.scale * disc.delta.evaluate(pt) ** 2


def test_delta_has_no_rational_linear_factor(disc):
    assert dp.irreducibility_witness(disc.delta) is not None


def test_qij_are_nodes_of_delta(y_std, disc):
    reps = dp.qij_quadrics(y_std)
    assert len(reps) == 10
    grads = disc.delta.gradient()
    labels = set()
    for rep in reps:
        c = disc.qij_coords[rep.pair]
        assert disc.delta.evaluate(c) == 0
        assert all(g.evaluate(c) == 0 for g in grads)
        assert rep.rank == 4
        labels.add(rep.line_label)
    assert labels == {ln.label for ln in dp.lines_on(y_std)}


@given(st.integers(0, 10**6))
@settings(max_examples=3, deadline=None)
def test_random_surfaces(seed):
    y = dp.build_del_pezzo(dp.random_base_points(random.Random(seed)))
    assert len(dp.quadrics_through(y)) == 5
    assert dp.is_petersen(dp.line_graph(dp.lines_on(y)))
