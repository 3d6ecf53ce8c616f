import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morin import linalg as la
from morin import modp
from morin.poly import MultiPoly, NotASquare, Ring, det_poly, monomials, poly_sqrt

R3 = Ring([("z", 3)])
XY = Ring([("x", 3), ("y", 3)])

small = st.integers(-6, 6)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def ternary_forms(draw, degree=2):
    mons = monomials(3, degree)
    return MultiPoly.from_vector(R3, mons, [draw(small) for _ in mons])


@st.composite
def matrices(draw, rows=None, cols=None):
    r = rows or draw(st.integers(1, 5))
    c = cols or draw(st.integers(1, 5))
    return [[draw(fracs) for _ in range(c)] for _ in range(r)]


# Scalar


@given(fracs, fracs)
def test_fraction_lowest_terms(a, b):
    for v in (a + b, a * b, a - b):
        assert v.denominator > 0
        assert Fraction(v.numerator, v.denominator) == v


# MultiPoly


@given(ternary_forms(), ternary_forms(), ternary_forms(1))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h


@given(ternary_forms(3), st.lists(small, min_size=3, max_size=3))
def test_euler_identity(f, pt):
    lhs = f.scale(3)
    rhs = sum((R3.gens()[i] * d for i, d in enumerate(f.partials("z"))), R3.zero())
    assert lhs == rhs


def test_partials_block():
    x1, _, _, y1, _, _ = XY.gens()
    assert (x1 * x1 * y1).partials("x") == [(x1 * y1).scale(2), XY.zero(), XY.zero()]


def test_block_degree_and_bihomogeneity():
    x1, x2, _, y1, _, _ = XY.gens()
    f = x1 * x2 * y1 * y1
    assert f.block_degree("x") == 2 and f.block_degree("y") == 2
    assert f.is_multihomogeneous((2, 2))
    assert not (f + x1).is_multihomogeneous((2, 2))


def test_json_round_trip():
    x1, x2, _, y1, _, y3 = XY.gens()
    f = (x1 * y3).scale(Fraction(-3, 7)) + x2 * y1
    assert MultiPoly.from_json(f.to_json()) == f


# determinants


def test_det_diagonal():
    y1, y2, y3 = R3.gens()
    zero = R3.zero()
    assert det_poly([[y1, zero, zero], [zero, y2, zero], [zero, zero, y3]]) == y1 * y2 * y3


def test_det_two_by_two():
    x, y, _ = R3.gens()
    assert det_poly([[x, y], [y, x]]) == x * x - y * y


def test_det_non_square():
    x, y, _ = R3.gens()
    with pytest.raises(ValueError):
        det_poly([[x, y]])


def test_det_symmetric_linear_six_by_six_against_evaluation():
    # oracle: numeric determinant of the evaluated matrix at 10 points
    rng = random.Random(4)
    gens = R3.gens()
    m = [[None] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i, 6):
            m[i][j] = m[j][i] = sum((g.scale(rng.randint(-3, 3)) for g in gens), R3.zero())
    d = det_poly(m)
    assert d.is_homogeneous() and d.total_degree() == 6
    for _ in range(10):
        pt = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        num = [[e.evaluate(pt) for e in row] for row in m]
        assert d.evaluate(pt) == la.det(num)


@given(st.lists(st.lists(ternary_forms(1), min_size=3, max_size=3), min_size=3, max_size=3), small)
@settings(max_examples=25)
def test_det_multilinear_in_rows(rows, c):
    scaled = [rows[0]] + [[e.scale(c) for e in rows[1]]] + [rows[2]]
    assert det_poly(scaled) == det_poly(rows).scale(c)


# square roots


def test_sqrt_trivial():
    x, y, _ = R3.gens()
    assert poly_sqrt((x + y) * (x + y)) == x + y
    with pytest.raises(NotASquare):
        poly_sqrt(x * x + y * y)


@given(ternary_forms(3))
@settings(max_examples=40)
def test_sqrt_recovers_square(q):
    if q.is_zero():
        return
    r = poly_sqrt(q * q)
    assert r * r == q * q
    assert r.leading()[1] > 0


# linear algebra


def test_kernel_examples():
    assert la.kernel_basis(la.identity(3)) == []
    ker = la.kernel_basis([[1, 1]])
    assert len(ker) == 1 and la.proportional(ker[0], [1, -1]) is not None


@given(matrices())
def test_rank_nullity(m):
    cols = len(m[0])
    ker = la.kernel_basis(m, cols)
    assert la.rank(m) + len(ker) == cols
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(matrices(), st.randoms(use_true_random=False))
def test_rref_is_canonical(m, rnd):
    # row operations do not change the reduced form
    rows = [list(r) for r in m]
    rnd.shuffle(rows)
    rows = [[a * 3 for a in r] for r in rows]
    if len(rows) > 1:
        rows[0] = [a + b for a, b in zip(rows[0], rows[1])]
    r1, _ = la.rref(m, len(m[0]))
    r2, _ = la.rref(rows, len(m[0]))
    assert [r for r in r1 if any(r)] == [r for r in r2 if any(r)]


@given(matrices(3, 3), st.lists(fracs, min_size=3, max_size=3))
def test_solve(m, b):
    sol = la.solve(m, b)
    if sol is not None:
        assert la.vec_mat(sol, la.transpose(m)) == list(b)
    else:
        assert la.rank(m) < 3


# finite fields and lifting


@given(st.integers(-700, 700), st.integers(1, 700))
def test_rational_reconstruction(n, d):
    # both parts below sqrt(p / 2), where reconstruction is unique
    p = 1000003
    q = Fraction(n, d)
    a = q.numerator * pow(q.denominator, -1, p) % p
    assert la.rational_reconstruct(a, p) == q


def test_reduce_point_is_projective():
    # (1/31 : 1) = (1 : 31), which reduces to (1 : 0)
    assert modp.reduce_point([Fraction(1, 31), Fraction(1)], 31) == (1, 0)
    assert modp.reduce_point([Fraction(1, 2), Fraction(1)], 31) == (1, 2)
    assert modp.reduce_point([37, 74, 0], 37) == (1, 2, 0)
    assert modp.reduce_point([0, 0, 0], 37) is None


def test_is_prime():
    assert [n for n in range(90, 110) if la.is_prime(n)] == [97, 101, 103, 107, 109]
