"""The quintic Del Pezzo surface as the blow-up of P^2 in four points.

Y is the image of P^2 under the cubics through the four base points.  Its
lines, conic pencils and the quadrics containing it are all computed from
this parametrization, with exact linear algebra.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx

from . import linalg as la
from .errors import CollinearPoints, NotASquareError, StructuralAnomaly
from .poly import MultiPoly, NotASquare, Ring, det_poly, monomials, poly_sqrt, rational_roots

P2 = Ring([("z", 3)])
P5 = Ring([("w", 6)])
S5 = Ring([("s", 5)])
CUBICS = monomials(3, 3)
SEXTICS = monomials(3, 6)
QUAD6 = monomials(6, 2)  # 21 monomials of quadrics on P^5
STANDARD_BASE_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))


# ---------------------------------------------------------------------------
# quadrics on P^5


def quad_pairs() -> list[tuple[int, int]]:
    out = []
    for e in QUAD6:
        idx = [i for i in range(6) for _ in range(e[i])]
        out.append((idx[0], idx[1]))
    return out


QPAIRS = quad_pairs()


@dataclass(frozen=True)
class QuadricP5:
    """A quadric of P^5 by its symmetric matrix."""

    matrix: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_vector(cls, vec: Sequence) -> "QuadricP5":
        m = [[Fraction(0)] * 6 for _ in range(6)]
        for (i, j), c in zip(QPAIRS, vec):
            c = la.as_scalar(c)
            if i == j:
                m[i][i] += c
            else:
                m[i][j] += c / 2
                m[j][i] += c / 2
        return cls(tuple(tuple(r) for r in m))

    def vector(self) -> list[Fraction]:
        return [self.matrix[i][j] * (1 if i == j else 2) for i, j in QPAIRS]

    def rank(self) -> int:
        return la.rank(self.matrix)

    def kernel(self) -> list[list[Fraction]]:
        return la.kernel_basis(self.matrix, 6)

    def __call__(self, w: Sequence) -> Fraction:
        w = [la.as_scalar(a) for a in w]
        return sum((self.matrix[i][j] * w[i] * w[j] for i in range(6) for j in range(6)), Fraction(0))

    def gradient_at(self, w: Sequence) -> list[Fraction]:
        w = [la.as_scalar(a) for a in w]
        return [2 * sum((self.matrix[i][j] * w[j] for j in range(6)), Fraction(0)) for i in range(6)]

    def poly(self) -> MultiPoly:
        return MultiPoly.from_vector(P5, QUAD6, self.vector())


def combine_quadrics(coeffs: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    return la.vec_mat([la.as_scalar(c) for c in coeffs], basis)


# ---------------------------------------------------------------------------
# Picard classes


@dataclass(frozen=True, order=True)
class PicClass:
    d: int
    m: tuple[int, int, int, int]

    def dot(self, other: "PicClass") -> int:
        return self.d * other.d - sum(a * b for a, b in zip(self.m, other.m))

    def __add__(self, other):
        return PicClass(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other):
        return PicClass(self.d - other.d, tuple(a - b for a, b in zip(self.m, other.m)))

    def __neg__(self):
        return PicClass(-self.d, tuple(-a for a in self.m))

    def label(self) -> str:
        if self.d == 0 and sorted(self.m) == [-1, 0, 0, 0]:
            return f"E{self.m.index(-1) + 1}"
        parts = [f"{self.d}H" if self.d not in (0, 1) else ("H" if self.d == 1 else "")]
        for i, a in enumerate(self.m):
            if a > 0:
                parts.append("-" + (f"{a}" if a > 1 else "") + f"E{i + 1}")
            elif a < 0:
                parts.append("+" + (f"{-a}" if a < -1 else "") + f"E{i + 1}")
        s = "".join(parts)
        return s.lstrip("+") or "0"


def H() -> PicClass:
    return PicClass(1, (0, 0, 0, 0))


def E(i: int) -> PicClass:
    """Exceptional class over base point i (1-based)."""
    m = [0, 0, 0, 0]
    m[i - 1] = -1
    return PicClass(0, tuple(m))


# (d; m) stands for dH - sum m_i E_i, so E_i itself has m_i = -1.
K = PicClass(-3, (-1, -1, -1, -1))
ANTICANONICAL_SQUARE = PicClass(6, (2, 2, 2, 2))


def line_class(i: int, j: int) -> PicClass:
    m = [0, 0, 0, 0]
    m[i - 1] = 1
    m[j - 1] = 1
    return PicClass(1, tuple(m))


def exceptional_class(i: int) -> PicClass:
    return E(i)


# ---------------------------------------------------------------------------
# the surface


def _collinear(a, b, c) -> bool:
    return la.det([list(a), list(b), list(c)]) == 0


def cubic_basis(points: Sequence[Sequence]) -> list[MultiPoly]:
    rows = [[P2.monomial(e).evaluate(p) for e in CUBICS] for p in points]
    ker = la.kernel_basis(rows, 10)
    return [MultiPoly.from_vector(P2, CUBICS, k) for k in ker]


@dataclass
class Line:
    pic: PicClass
    span: list[list[Fraction]]  # 2 x 6, canonical RREF

    @property
    def label(self) -> str:
        return self.pic.label()

    def contains(self, w) -> bool:
        return la.rank(self.span + [list(w)]) == 2


@dataclass
class DelPezzoQuintic:
    base_points: tuple[tuple[Fraction, ...], ...]
    cubics: list[MultiPoly]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def embed(self, z: Sequence) -> list[Fraction]:
        z = [la.as_scalar(a) for a in z]
        return [c.evaluate(z) for c in self.cubics]

    def jacobian_at(self, z: Sequence) -> list[list[Fraction]]:
        """6 x 3 matrix of partials of the cubics at z."""
        z = [la.as_scalar(a) for a in z]
        return [[c.diff(k).evaluate(z) for k in range(3)] for c in self.cubics]

    def exceptional_point(self, i: int, direction: Sequence) -> list[Fraction]:
        """Point of E_i corresponding to the tangent direction toward ``direction``."""
        jac = self.jacobian_at(self.base_points[i - 1])
        return [sum((row[k] * la.as_scalar(direction[k]) for k in range(3)), Fraction(0)) for row in jac]

    def pullback(self, quadric_vec: Sequence) -> MultiPoly:
        """Plane sextic q(c(z)) of a quadric given by its 21-vector."""
        q = MultiPoly.from_vector(P5, QUAD6, quadric_vec)
        return q.subs(self.cubics, P2)

    def pullback_matrix(self) -> list[list[Fraction]]:
        """28 x 21 matrix sending a quadric to the coefficients of its pullback sextic."""
        if "pullback" not in self._cache:
            cols = []
            for k in range(21):
                vec = [Fraction(int(j == k)) for j in range(21)]
                cols.append(self.pullback(vec).coeff_vector(SEXTICS))
            self._cache["pullback"] = la.transpose(cols)
        return self._cache["pullback"]

    def random_point(self, rng: random.Random, height: int = 20) -> list[Fraction]:
        while True:
            z = [Fraction(rng.randint(-height, height)) for _ in range(3)]
            w = self.embed(z)
            if any(w):
                return w

    def to_json(self) -> dict:
        return {
            "base_points": [[str(a) for a in p] for p in self.base_points],
            "cubics": [c.to_json() for c in self.cubics],
        }


def build_del_pezzo(points: Sequence[Sequence] = STANDARD_BASE_POINTS) -> DelPezzoQuintic:
    pts = tuple(tuple(la.as_scalar(a) for a in p) for p in points)
    if len(pts) != 4:
        raise ValueError("need exactly four base points")
    for a, b, c in itertools.combinations(pts, 3):
        if _collinear(a, b, c):
            raise CollinearPoints(f"base points {a}, {b}, {c} are collinear")
    cubics = cubic_basis(pts)
    if len(cubics) != 6:
        raise StructuralAnomaly(f"cubics through the points: dimension {len(cubics)}")
    return DelPezzoQuintic(pts, cubics)


def random_base_points(rng: random.Random, height: int = 6) -> list[tuple[Fraction, ...]]:
    while True:
        pts = [tuple(Fraction(rng.randint(-height, height)) for _ in range(3)) for _ in range(4)]
        if all(not _collinear(a, b, c) for a, b, c in itertools.combinations(pts, 3)):
            return pts


# ---------------------------------------------------------------------------
# quadrics through Y


def quadrics_through(y: DelPezzoQuintic) -> list[list[Fraction]]:
    """Basis (21-vectors) of the quadrics of P^5 containing Y."""
    if "wy" not in y._cache:
        y._cache["wy"] = la.kernel_basis(y.pullback_matrix(), 21)
    return y._cache["wy"]


def restriction_rank(y: DelPezzoQuintic) -> int:
    return la.rank(y.pullback_matrix())


# ---------------------------------------------------------------------------
# lines


def _plane_line_through(a, b) -> list[Fraction]:
    """Coefficients of the plane line through a and b (cross product)."""
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _meet(l1, l2) -> list[Fraction]:
    return _plane_line_through(l1, l2)


def lines_on(y: DelPezzoQuintic) -> list[Line]:
    """The ten lines: E_1..E_4 then H - E_i - E_j in lexicographic order."""
    if "lines" in y._cache:
        return y._cache["lines"]
    out = []
    for i in range(1, 5):
        jac = y.jacobian_at(y.base_points[i - 1])
        span = la.row_space(la.transpose(jac))
        if len(span) != 2:
            raise StructuralAnomaly(f"E{i} does not span a line")
        out.append(Line(E(i), span))
    for i, j in itertools.combinations(range(1, 5), 2):
        a, b = y.base_points[i - 1], y.base_points[j - 1]
        pts = [y.embed([a[k] + b[k] for k in range(3)]), y.embed([a[k] + 2 * b[k] for k in range(3)]),
               y.embed([2 * a[k] + 3 * b[k] for k in range(3)])]
        span = la.row_space(pts)
        if len(span) != 2:
            raise StructuralAnomaly(f"H-E{i}-E{j} does not span a line")
        out.append(Line(line_class(i, j), span))
    y._cache["lines"] = out
    return out


def line_graph(lines: Sequence[Line]) -> nx.Graph:
    g = nx.Graph()
    for k, ln in enumerate(lines):
        g.add_node(k, label=ln.label)
    for a, b in itertools.combinations(range(len(lines)), 2):
        if lines[a].pic.dot(lines[b].pic) == 1:
            g.add_edge(a, b)
    return g


def is_petersen(g: nx.Graph) -> bool:
    return nx.is_isomorphic(g, nx.petersen_graph())


def line_intersection_point(y: DelPezzoQuintic, a: Line, b: Line) -> list[Fraction] | None:
    """Image in P^5 of the intersection point of two lines meeting on Y."""
    if a.pic.dot(b.pic) != 1:
        return None
    ea, eb = a.pic.d == 0, b.pic.d == 0
    if ea and eb:
        return None
    if ea or eb:
        ex, ln = (a, b) if ea else (b, a)
        i = ex.pic.m.index(-1) + 1
        j = next(k + 1 for k, v in enumerate(ln.pic.m) if v == 1 and k + 1 != i)
        pt = y.exceptional_point(i, y.base_points[j - 1])
    else:
        ia = [k for k, v in enumerate(a.pic.m) if v == 1]
        ib = [k for k, v in enumerate(b.pic.m) if v == 1]
        la_ = _plane_line_through(y.base_points[ia[0]], y.base_points[ia[1]])
        lb_ = _plane_line_through(y.base_points[ib[0]], y.base_points[ib[1]])
        pt = y.embed(_meet(la_, lb_))
    if not (a.contains(pt) and b.contains(pt)):
        raise StructuralAnomaly("computed intersection point is not on both lines")
    return list(la.normalize_projective(pt))


# ---------------------------------------------------------------------------
# conic pencils and the five nets


PENCIL_CLASSES = [PicClass(1, tuple(int(k == i) for k in range(4))) for i in range(4)] + [
    PicClass(2, (1, 1, 1, 1))
]


@dataclass
class ConicPencil:
    pic: PicClass
    net: list[list[Fraction]]  # 3 quadrics (21-vectors) in canonical form
    sample_planes: list[list[list[Fraction]]]

    @property
    def label(self) -> str:
        return self.pic.label()


def _conic_member_points(y: DelPezzoQuintic, index: int, param: Fraction, count: int, rng: random.Random):
    """Plane points on one member curve of pencil ``index`` (0..3 lines, 4 conics)."""
    pts = y.base_points
    if index < 4:
        p = pts[index]
        # member: line through p and the point (param, 1, 0) + shifted to avoid degeneracy
        d = [param, Fraction(1), Fraction(param * param + 2)]
        if la.rank([list(p), d]) < 2:
            d = [param, Fraction(2), Fraction(1)]
        out = []
        lam = 1
        while len(out) < count:
            z = [p[k] + lam * d[k] for k in range(3)]
            if any(y.embed(z)):
                out.append(z)
            lam += 1
        return out
    # conic through the four base points and through r = (param, 1, param^2 + 3)
    q1, q2 = [MultiPoly.from_vector(P2, monomials(3, 2), v) for v in _conics_through_points(pts)]
    r = [param, Fraction(1), param * param + 3]
    q = q1.scale(q2.evaluate(r)) - q2.scale(q1.evaluate(r))
    p1 = pts[0]
    out = []
    k = 1
    while len(out) < count:
        d = [Fraction(k), Fraction(k * k - 3), Fraction(1)]
        k += 1
        qd = q.evaluate(d)
        b = sum((q.diff(i).evaluate(p1) * d[i] for i in range(3)), Fraction(0))  # 2 B(p1, d)
        if qd == 0 or b == 0:
            continue
        lam = -b / qd
        z = [p1[i] + lam * d[i] for i in range(3)]
        if any(y.embed(z)) and all(la.rank([z, list(bp)]) == 2 for bp in pts):
            out.append(z)
    return out


def _conics_through_points(points) -> list[list[Fraction]]:
    rows = [[P2.monomial(e).evaluate(p) for e in monomials(3, 2)] for p in points]
    return la.kernel_basis(rows, 6)


def _member_is_smooth(y: DelPezzoQuintic, index: int, param: Fraction) -> bool:
    """True when the pencil member for ``param`` avoids degenerate positions."""
    pts = y.base_points
    if index < 4:
        p = pts[index]
        d = [param, Fraction(1), Fraction(param * param + 2)]
        if la.rank([list(p), d]) < 2:
            return False
        line = _plane_line_through(p, d)
        return all(sum(a * b for a, b in zip(line, q)) != 0 for k, q in enumerate(pts) if k != index)
    q1, q2 = [MultiPoly.from_vector(P2, monomials(3, 2), v) for v in _conics_through_points(pts)]
    r = [param, Fraction(1), param * param + 3]
    q = q1.scale(q2.evaluate(r)) - q2.scale(q1.evaluate(r))
    if q.is_zero():
        return False
    from .poly import symmetric_from_quadric

    m = symmetric_from_quadric(q, "z")
    return la.det([[a.evaluate([0, 0, 0]) for a in row] for row in m]) != 0


def _member_plane(y: DelPezzoQuintic, index: int, param: Fraction, rng: random.Random) -> list[list[Fraction]]:
    while not _member_is_smooth(y, index, param):
        param += 11
    zs = _conic_member_points(y, index, param, 3, rng)
    span = la.row_space([y.embed(z) for z in zs])
    if len(span) != 3:
        raise StructuralAnomaly("conic of the pencil does not span a plane")
    return span


def _plane_samples(plane: list[list[Fraction]], rng: random.Random, count: int) -> list[list[Fraction]]:
    out = []
    while len(out) < count:
        c = [Fraction(rng.randint(-7, 7)) for _ in range(3)]
        if any(c):
            out.append(la.vec_mat(c, plane))
    return out


def _quadric_conditions(points: Sequence[Sequence], basis: Sequence[Sequence]) -> list[list[Fraction]]:
    """Rows: value at each point of each basis quadric."""
    qs = [QuadricP5.from_vector(b) for b in basis]
    return [[q(p) for q in qs] for p in points]


def conic_pencils(y: DelPezzoQuintic, seed: int = 0) -> list[ConicPencil]:
    if "pencils" in y._cache:
        return y._cache["pencils"]
    wy = quadrics_through(y)
    rng = random.Random(seed)
    out = []
    for idx, pic in enumerate(PENCIL_CLASSES):
        planes = [_member_plane(y, idx, Fraction(t), rng) for t in (1, 2, 3)]
        pts = [p for pl in planes for p in _plane_samples(pl, rng, 4)]
        ker = la.kernel_basis(_quadric_conditions(pts, wy), len(wy))
        if len(ker) != 3:
            raise StructuralAnomaly(f"net of pencil {pic.label()} has dimension {len(ker)}")
        net = la.row_space([combine_quadrics(k, wy) for k in ker])
        # fresh samples on other members
        fresh_planes = [_member_plane(y, idx, Fraction(t), rng) for t in (5, 7)]
        for pl in fresh_planes:
            for p in _plane_samples(pl, rng, 3):
                if any(QuadricP5.from_vector(q)(p) for q in net):
                    raise StructuralAnomaly(f"net of pencil {pic.label()} fails on a fresh sample")
        out.append(ConicPencil(pic, net, planes))
    y._cache["pencils"] = out
    return out


def pencil_intersection(a: ConicPencil, b: ConicPencil) -> list[list[Fraction]]:
    return la.intersect_spaces(a.net, b.net)


@dataclass
class QijReport:
    pair: tuple[int, int]
    quadric: list[Fraction]
    rank: int
    kernel: list[list[Fraction]]
    line_label: str | None


def qij_quadrics(y: DelPezzoQuintic) -> list[QijReport]:
    pencils = conic_pencils(y)
    lines = lines_on(y)
    out = []
    for i, j in itertools.combinations(range(5), 2):
        inter = pencil_intersection(pencils[i], pencils[j])
        if len(inter) != 1:
            raise StructuralAnomaly(f"P{i + 1} meets P{j + 1} in dimension {len(inter)}")
        q = QuadricP5.from_vector(inter[0])
        ker = la.row_space(q.kernel())
        label = None
        for ln in lines:
            if la.row_space(ln.span) == ker:
                label = ln.label
        out.append(QijReport((i + 1, j + 1), inter[0], q.rank(), ker, label))
    return out


# ---------------------------------------------------------------------------
# the discriminant of the web


@dataclass
class DiscriminantResult:
    sextic: MultiPoly
    delta: MultiPoly
    scale: Fraction
    qij_coords: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "scale": str(self.scale),
            "delta": self.delta.to_json(),
        }


def symbolic_web_matrix(wy: Sequence[Sequence]) -> list[list[MultiPoly]]:
    s = S5.gens()
    mats = [QuadricP5.from_vector(v).matrix for v in wy]
    return [[sum((s[k].scale(mats[k][i][j]) for k in range(5)), S5.zero()) for j in range(6)] for i in range(6)]


def discriminant_check(y: DelPezzoQuintic) -> DiscriminantResult:
    wy = quadrics_through(y)
    sextic = det_poly(symbolic_web_matrix(wy))
    if sextic.is_zero():
        raise StructuralAnomaly("discriminant of the web vanishes identically")
    lc = sextic.leading()[1]
    try:
        delta = poly_sqrt(sextic.scale(1 / lc))
    except NotASquare as exc:
        raise NotASquareError("the sextic discriminant is not a square") from exc
    coords = {}
    for rep in qij_quadrics(y):
        sol = la.solve(la.transpose(wy), rep.quadric)
        coords[rep.pair] = sol
    return DiscriminantResult(sextic, delta, lc, coords)


def restriction_to_line(f: MultiPoly, a: Sequence, b: Sequence) -> list[Fraction]:
    """Coefficients (constant first) of t -> f(a + t b)."""
    deg = f.total_degree()
    # interpolate from deg + 1 values
    ts = list(range(deg + 1))
    vals = [f.evaluate([la.as_scalar(ai) + t * la.as_scalar(bi) for ai, bi in zip(a, b)]) for t in ts]
    vand = [[Fraction(t) ** k for k in range(deg + 1)] for t in ts]
    return la.solve(vand, vals)


def irreducibility_witness(delta: MultiPoly, seed: int = 1, tries: int = 20) -> tuple | None:
    """A rational line on which delta has no rational root, if one is found.

    A cubic form with a linear factor over Q has a rational root on every
    rational line, so such a line shows delta has no linear factor over Q.
    """
    rng = random.Random(seed)
    n = delta.ring.arity
    for _ in range(tries):
        a = [rng.randint(-9, 9) for _ in range(n)]
        b = [rng.randint(-9, 9) for _ in range(n)]
        coeffs = restriction_to_line(delta, a, b)
        if coeffs[-1] == 0:
            continue  # the point b is on delta, root at infinity
        if not rational_roots(coeffs):
            return (a, b)
    return None


def slice_degree(y: DelPezzoQuintic, seed: int = 0) -> int:
    """Number of points of Y on a random codimension-2 linear space, by elimination.

    Two random hyperplanes pull back to plane cubics through the base points;
    their resultant (after a random coordinate change) is a binary form of
    degree 9 whose base-point factors are removed.
    """
    rng = random.Random(seed)
    while True:
        t = [[Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        if la.det(t) == 0:
            continue
        tinv = la.inverse(t)
        proj = [la.vec_mat(list(bp), la.transpose(tinv))[:2] for bp in y.base_points]
        # base points must project from (0:0:1) to distinct points
        if all(a[0] * b[1] != a[1] * b[0] for a, b in itertools.combinations(proj, 2)) and all(any(a) for a in proj):
            break
    z = P2.gens()
    img = [sum((z[j].scale(t[i][j]) for j in range(3)), P2.zero()) for i in range(3)]
    hs = []
    for _ in range(2):
        h = [rng.randint(-9, 9) for _ in range(6)]
        cub = sum((c.scale(hc) for c, hc in zip(y.cubics, h)), P2.zero())
        hs.append(cub.subs(img))
    res = _sylvester_resultant(hs[0], hs[1], 2)
    # remove one linear factor per base point (its image under t^-1)
    for bp in y.base_points:
        b = la.vec_mat(list(bp), la.transpose(tinv))
        lin = P2.gens()[0].scale(b[1]) - P2.gens()[1].scale(b[0])
        res = res.exact_div(lin)
    # the residual form should not vanish at the base-point ratios
    for bp in y.base_points:
        b = la.vec_mat(list(bp), la.transpose(tinv))
        if res.evaluate([b[0], b[1], 0]) == 0:
            raise StructuralAnomaly("slice not transversal at a base point")
    return res.total_degree()


def _sylvester_resultant(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    ring = f.ring

    def coeffs(h):
        d = h.degree_in(var)
        out = [ring.zero() for _ in range(d + 1)]
        for e, c in h.terms.items():
            e2 = list(e)
            k = e2[var]
            e2[var] = 0
            out[k] = out[k] + MultiPoly(ring, {tuple(e2): c})
        return out[::-1]

    a, b = coeffs(f), coeffs(g)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = ring.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return det_poly(rows)


def to_json(y: DelPezzoQuintic, disc: DiscriminantResult | None = None) -> dict:
    lines = lines_on(y)
    pencils = conic_pencils(y)
    out = {
        "base_points": [[str(a) for a in p] for p in y.base_points],
        "quadrics_through_Y": [[str(a) for a in r] for r in quadrics_through(y)],
        "lines": [
            {"label": ln.label, "class": [ln.pic.d, *ln.pic.m], "span": [[str(a) for a in r] for r in ln.span]}
            for ln in lines
        ],
        "pencils": [
            {"label": p.label, "class": [p.pic.d, *p.pic.m], "net": [[str(a) for a in r] for r in p.net]}
            for p in pencils
        ],
    }
    if disc is not None:
        out["discriminant"] = {
            "scale": str(disc.scale),
            "delta": disc.delta.to_json(),
            "delta_degree": disc.delta.total_degree(),
            "qij": {f"{i}{j}": [str(a) for a in v] for (i, j), v in sorted(disc.qij_coords.items())},
        }
    return out
