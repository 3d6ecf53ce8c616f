"""Third exterior power of a 6-dimensional space, planes of P^5 and Lagrangians.

Coordinates of wedge^3 W are indexed by the 20 sorted triples in lexicographic
order (``TRIPLES``).  The volume form is the coefficient of e0^e1^...^e5.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from . import linalg as la
from .errors import DegenerateMarking, IncidenceError, NotDecomposable, RankError
from .poly import MultiPoly, Ring

if TYPE_CHECKING:
    from .vthreefold import BidegreeForm22

TRIPLES: tuple[tuple[int, int, int], ...] = tuple(itertools.combinations(range(6), 3))
TRIPLE_INDEX = {t: i for i, t in enumerate(TRIPLES)}

XY = Ring([("x", 3), ("y", 3)])

# pairs of {3,4,5} giving the basis of wedge^2(W/U) in adapted coordinates
Y_PAIRS = ((3, 4), (3, 5), (4, 5))


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting seq; 0 if there is a repeat."""
    seq = list(seq)
    if len(set(seq)) < len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _complement(t):
    return tuple(i for i in range(6) if i not in t)


COMPLEMENT = tuple(TRIPLE_INDEX[_complement(t)] for t in TRIPLES)
PAIR_SIGN = tuple(perm_sign(t + _complement(t)) for t in TRIPLES)


def triple_coord(v: Sequence[Fraction], idx: Sequence[int]) -> Fraction:
    """Coordinate of v at an unsorted index triple (antisymmetric)."""
    s = perm_sign(idx)
    if s == 0:
        return Fraction(0)
    return s * v[TRIPLE_INDEX[tuple(sorted(idx))]]


@dataclass(frozen=True)
class Wedge3Vector:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 20:
            raise ValueError("a vector of wedge^3 of a 6-space has 20 coordinates")

    @classmethod
    def of(cls, coords: Sequence) -> "Wedge3Vector":
        return cls(tuple(la.as_scalar(a) for a in coords))

    @classmethod
    def unit(cls, triple: Sequence[int]) -> "Wedge3Vector":
        c = [Fraction(0)] * 20
        c[TRIPLE_INDEX[tuple(triple)]] = Fraction(1)
        return cls(tuple(c))

    def __add__(self, other):
        return Wedge3Vector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "Wedge3Vector":
        c = la.as_scalar(c)
        return Wedge3Vector(tuple(a * c for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_decomposable(self) -> bool:
        return is_decomposable(self.coords)


def symplectic_pairing(v, w) -> Fraction:
    """Coefficient of e0^...^e5 in v ^ w."""
    v = v.coords if isinstance(v, Wedge3Vector) else v
    w = w.coords if isinstance(w, Wedge3Vector) else w
    total = Fraction(0)
    for i in range(20):
        a = v[i]
        if a:
            b = w[COMPLEMENT[i]]
            if b:
                total += PAIR_SIGN[i] * a * b
    return total


def pairing_matrix() -> list[list[int]]:
    m = [[0] * 20 for _ in range(20)]
    for i in range(20):
        m[i][COMPLEMENT[i]] = PAIR_SIGN[i]
    return m


def plucker_relations(v: Sequence[Fraction]) -> list[Fraction]:
    """Values of the quadratic Plucker relations of G(3,6) at v."""
    out = []
    for pair in itertools.combinations(range(6), 2):
        for quad in itertools.combinations(range(6), 4):
            s = Fraction(0)
            for l, j in enumerate(quad):
                rest = quad[:l] + quad[l + 1:]
                a = triple_coord(v, pair + (j,))
                if a:
                    b = triple_coord(v, rest)
                    if b:
                        s += (-1) ** l * a * b
            out.append(s)
    return out


def is_decomposable(v) -> bool:
    v = v.coords if isinstance(v, Wedge3Vector) else v
    if not any(v):
        return False
    return not any(plucker_relations(v))


def wedge_with_vector_matrix(v: Sequence[Fraction]) -> list[list[Fraction]]:
    """Matrix (6 x 15) of w -> v ^ w from W to wedge^4 W."""
    quads = list(itertools.combinations(range(6), 4))
    qi = {q: i for i, q in enumerate(quads)}
    m = [[Fraction(0)] * 15 for _ in range(6)]
    for t, c in zip(TRIPLES, v):
        if not c:
            continue
        for j in range(6):
            if j in t:
                continue
            s = perm_sign(t + (j,))
            m[j][qi[tuple(sorted(t + (j,)))]] += s * c
    return m


@dataclass(frozen=True)
class PlaneP5:
    """A plane of P^5, stored as the RREF of a 3 x 6 basis."""

    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "PlaneP5":
        red, piv = la.rref(rows, 6)
        if len(piv) != 3:
            raise RankError(f"plane basis has rank {len(piv)}, expected 3")
        return cls(tuple(tuple(r) for r in red))

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.basis]

    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a) for r in self.basis]

    def contains_point(self, p: Sequence) -> bool:
        return la.rank(self.rows() + [list(p)]) == 3

    def to_json(self) -> dict:
        return {"basis": [[str(a) for a in r] for r in self.basis]}

    @classmethod
    def from_json(cls, d: dict) -> "PlaneP5":
        return cls.of([[Fraction(a) for a in r] for r in d["basis"]])


def plucker_of_plane(p) -> Wedge3Vector:
    rows = p.rows() if isinstance(p, PlaneP5) else [list(r) for r in p]
    if la.rank(rows) != 3:
        raise RankError("rows do not span a plane")
    out = []
    for t in TRIPLES:
        out.append(la.det([[r[c] for c in t] for r in rows]))
    return Wedge3Vector(tuple(out))


def plane_from_plucker(v) -> PlaneP5:
    """Recover the plane from a decomposable vector via the kernel of w -> v ^ w."""
    coords = v.coords if isinstance(v, Wedge3Vector) else tuple(v)
    m = wedge_with_vector_matrix(coords)
    ker = la.kernel_basis(la.transpose(m), 6)
    if len(ker) != 3:
        raise NotDecomposable(f"annihilator has dimension {len(ker)}")
    plane = PlaneP5.of(ker)
    if la.proportional(plucker_of_plane(plane).coords, coords) is None:
        raise NotDecomposable("annihilator plane does not reproduce the vector")
    return plane


def planes_incident(p: PlaneP5, q: PlaneP5) -> bool:
    return la.rank(p.rows() + q.rows()) < 6


def is_lagrangian(rows: Sequence[Sequence]) -> bool:
    rows = [list(r.coords) if isinstance(r, Wedge3Vector) else list(r) for r in rows]
    if not rows or la.rank(rows) != 10:
        return False
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if symplectic_pairing(rows[i], rows[j]):
                return False
    return True


@dataclass(frozen=True)
class LagrangianSubspace:
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "LagrangianSubspace":
        rows = [list(r.coords) if isinstance(r, Wedge3Vector) else list(r) for r in rows]
        red = la.row_space(rows)
        if len(red) != 10:
            raise RankError(f"span has dimension {len(red)}, expected 10")
        if not is_lagrangian(red):
            raise ValueError("span is not isotropic")
        return cls(tuple(tuple(r) for r in red))

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.basis]

    def contains(self, v) -> bool:
        v = v.coords if isinstance(v, Wedge3Vector) else v
        return la.in_span(list(v), self.rows())

    def to_json(self) -> dict:
        return {"basis": [[str(a) for a in r] for r in self.basis]}


# ---------------------------------------------------------------------------
# adapted bases and the filtration


def adapted_basis(u: PlaneP5) -> list[list[Fraction]]:
    """Rows b0..b5: the RREF rows of U, then unit vectors at non-pivot columns."""
    rows = u.rows()
    piv = u.pivots()
    for c in range(6):
        if c not in piv:
            rows.append([Fraction(int(j == c)) for j in range(6)])
    return rows


def compound3(t: Sequence[Sequence]) -> list[list[Fraction]]:
    """Third compound matrix: entry (I, J) = det of rows I and columns J."""
    return [[la.det([[t[i][j] for j in J] for i in I]) for J in TRIPLES] for I in TRIPLES]


class AdaptedFrame:
    """Change of coordinates on wedge^3 W to a basis adapted to a plane U."""

    def __init__(self, u: PlaneP5):
        self.u = u
        self.t = adapted_basis(u)
        self.det_t = la.det(self.t)
        self.m3 = compound3(self.t)  # adapted -> standard (row vectors)
        self.m3_inv = compound3(la.inverse(self.t))  # standard -> adapted

    def to_adapted(self, v: Sequence) -> list[Fraction]:
        return la.vec_mat(list(v), self.m3_inv)

    def to_standard(self, v: Sequence) -> list[Fraction]:
        return la.vec_mat(list(v), self.m3)

    def point_coords(self, w: Sequence) -> list[Fraction]:
        """Coordinates of a vector of W in the adapted basis."""
        return la.vec_mat(list(w), la.inverse(self.t))


def u_level(t: Sequence[int]) -> int:
    return sum(1 for i in t if i < 3)


def filtration(u) -> tuple[list[list[Fraction]], list[list[Fraction]], list[list[Fraction]]]:
    """Bases (standard coordinates) of W^1_u, W^2_u, W^3_u."""
    plane = u if isinstance(u, PlaneP5) else plane_from_plucker(u)
    frame = AdaptedFrame(plane)
    out = []
    for i in (1, 2, 3):
        rows = [frame.m3[k] for k, t in enumerate(TRIPLES) if u_level(t) >= i]
        out.append(la.row_space(rows))
    return out[0], out[1], out[2]


@dataclass(frozen=True)
class MarkedLagrangian:
    A: LagrangianSubspace
    u: PlaneP5

    def __post_init__(self):
        pu = plucker_of_plane(self.u)
        if not self.A.contains(pu):
            raise DegenerateMarking("u is not in A")
        w1, w2, _ = filtration(self.u)
        if not all(la.in_span(r, w1) for r in self.A.rows()):
            raise DegenerateMarking("A is not contained in W^1_u")
        if len(la.intersect_spaces(self.A.rows(), w2)) != 1:
            raise DegenerateMarking("A meets W^2_u in more than wedge^3 U")

    @property
    def U(self) -> list[list[Fraction]]:
        return self.u.rows()


A1_TRIPLES = [tuple(sorted((i,) + pr)) for i in range(3) for pr in Y_PAIRS]  # index 3*i + l


def _a2_partner(i: int, l: int) -> tuple[tuple[int, int, int], int]:
    """Complement of {i} u Y_PAIRS[l] and the sign of pairing in the adapted orientation."""
    t = tuple(sorted((i,) + Y_PAIRS[l]))
    c = _complement(t)
    return c, perm_sign(t + c)


def build_v_threefold(m: MarkedLagrangian | tuple, check: bool = True) -> "BidegreeForm22":
    """The (2,2) form v_A on P(U) x P(wedge^2(W/U)) of a marked Lagrangian.

    x are coordinates in the RREF basis of U; y are coordinates in the basis
    b3^b4, b3^b5, b4^b5 of wedge^2(W/U).
    """
    from .vthreefold import BidegreeForm22

    if isinstance(m, tuple):
        rows, u = m
    else:
        rows, u = m.A.rows(), m.u
    frame = AdaptedFrame(u)
    ad = [frame.to_adapted(r) for r in rows]
    if check and any(r[TRIPLE_INDEX[(3, 4, 5)]] for r in ad):
        raise DegenerateMarking("A is not contained in W^1_u")
    a1_idx = [TRIPLE_INDEX[t] for t in A1_TRIPLES]
    rho = [[r[k] for k in a1_idx] for r in ad]  # rows of A -> 9 coordinates
    if la.rank(rho) != 9:
        raise DegenerateMarking("rho: A / wedge^3 U -> U (x) wedge^2(W/U) is not invertible")
    rho_t = la.transpose(rho)
    # preimage of each rank-one tensor e_k (x) f_l
    pre = {}
    for k in range(3):
        for l in range(3):
            target = [Fraction(int(j == 3 * k + l)) for j in range(9)]
            c = la.solve(rho_t, target)
            pre[(k, l)] = la.vec_mat(c, ad)
    terms: dict = {}
    for (k, l), vec in pre.items():
        for i in range(3):
            for lp in range(3):
                comp, sgn = _a2_partner(i, lp)
                val = vec[TRIPLE_INDEX[comp]]
                if not val:
                    continue
                e = [0] * 6
                e[i] += 1
                e[k] += 1
                e[3 + lp] += 1
                e[3 + l] += 1
                e = tuple(e)
                terms[e] = terms.get(e, 0) + sgn * val * frame.det_t
    f = MultiPoly(XY, terms)
    return BidegreeForm22(f)


def tangential_coordinates(e: PlaneP5, u: PlaneP5) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Point of P(U) x P(wedge^2(W/U)) attached to a plane meeting P_u in one point."""
    r = la.rank(e.rows() + u.rows())
    if r == 6:
        raise IncidenceError("planes are disjoint")
    if r < 5:
        raise IncidenceError("planes meet in a line or more")
    frame = AdaptedFrame(u)
    coords = [frame.point_coords(row) for row in e.rows()]
    # intersection point: combination of e-rows with zero complement part
    comp = [[c[j] for j in (3, 4, 5)] for c in coords]
    ker = la.kernel_basis(la.transpose(comp), 3)
    assert len(ker) == 1
    point = la.vec_mat(ker[0], coords)
    x = la.normalize_projective(point[:3])
    # image of e in W/U is 2-dimensional; its wedge gives y
    red = la.row_space(comp)
    a, b = red
    y = [a[p] * b[q] - a[q] * b[p] for p, q in ((0, 1), (0, 2), (1, 2))]
    return x, la.normalize_projective(y)


# ---------------------------------------------------------------------------
# random instances


def random_plane(rng: random.Random, height: int = 5) -> PlaneP5:
    while True:
        rows = [[Fraction(rng.randint(-height, height)) for _ in range(6)] for _ in range(3)]
        if la.rank(rows) == 3:
            return PlaneP5.of(rows)


def _graph_lagrangian(
    base: Sequence[int], rng: random.Random, height: int
) -> list[list[Fraction]]:
    """Graph of a random symmetric map over the coordinate Lagrangian ``base``.

    ``base`` lists triple indices spanning a coordinate Lagrangian whose
    complements span the dual coordinate Lagrangian.
    """
    n = len(base)
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s[i][j] = s[j][i] = rng.randint(-height, height)
    rows = []
    for i, bi in enumerate(base):
        v = [Fraction(0)] * 20
        v[bi] = Fraction(1)
        for j, bj in enumerate(base):
            # pairing(e_bi, e_comp(bj)) = PAIR_SIGN[bi] when i == j
            v[COMPLEMENT[bj]] += Fraction(s[i][j] * PAIR_SIGN[bj])
        rows.append(v)
    return rows


def random_lagrangian(rng: random.Random, height: int = 3) -> LagrangianSubspace:
    base = [i for i, t in enumerate(TRIPLES) if u_level(t) >= 2]
    return LagrangianSubspace.of(_graph_lagrangian(base, rng, height))


def random_marked_lagrangian(rng: random.Random, u: PlaneP5 | None = None, height: int = 3) -> MarkedLagrangian:
    """A random Lagrangian through u satisfying the marking assumptions."""
    if u is None:
        u = random_plane(rng)
    frame = AdaptedFrame(u)
    a1 = [TRIPLE_INDEX[t] for t in A1_TRIPLES]
    rows = _graph_lagrangian(a1, rng, height)
    rows.append([Fraction(int(i == TRIPLE_INDEX[(0, 1, 2)])) for i in range(20)])
    std = [frame.to_standard(r) for r in rows]
    return MarkedLagrangian(LagrangianSubspace.of(std), u)
