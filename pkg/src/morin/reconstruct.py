"""Reconstruction of a V-threefold from a plane sextic with four singular points.

The pencil of conics q1, q2 through the four points embeds P^2 birationally
in P^1 x P^2 with image Y_h = {s q2(y) - t q1(y) = 0}.  The curve C is the
strict transform of the sextic, and the net |J_C(2,2)| together with the
identity on P^2 maps P^1 x P^2 onto a (2,2) threefold.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from . import planecurves as pc
from .errors import DegeneratePosition, MorinError, StructuralAnomaly
from .poly import MultiPoly, Ring, monomials, multi_monomials
from .vthreefold import (
    BASIS22,
    XY,
    BidegreeForm22,
    branch_sextic,
    conics_through,
    general_position,
)

P2 = pc.P2
SY = Ring([("s", 2), ("y", 3)])
STANDARD = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def _to_p2(f: MultiPoly) -> MultiPoly:
    """Reinterpret a form in three variables (any ring of arity 3, or the y block of XY) in P2."""
    if f.ring is P2:
        return f
    if f.ring.arity == 3:
        return MultiPoly(P2, f.terms)
    if f.ring is XY:
        return MultiPoly(P2, {e[3:]: c for e, c in f.terms.items()})
    raise ValueError("not a ternary form")


def _pullback_matrix(bideg: tuple[int, int], q1: MultiPoly, q2: MultiPoly):
    """Columns: F(q1(y), q2(y), y) for each monomial F of the given bidegree in SY."""
    basis = multi_monomials((2, 3), bideg)
    out_deg = 2 * bideg[0] + bideg[1]
    tgt = monomials(3, out_deg)
    cols = []
    powers = {}
    for e in basis:
        a, b = e[0], e[1]
        key = (a, b)
        if key not in powers:
            powers[key] = q1 ** a * q2 ** b
        g = powers[key] * P2.monomial(e[2:])
        cols.append(g.coeff_vector(tgt))
    return basis, tgt, cols


def _divisible_space(bideg, q1, q2, gamma: MultiPoly) -> tuple[list, list[list[Fraction]]]:
    """Forms of the given bidegree on P^1 x P^2 whose pullback is a multiple of gamma."""
    basis, tgt, cols = _pullback_matrix(bideg, q1, q2)
    extra = bideg[1] + 2 * bideg[0] - 6
    mults = [P2.monomial(e) for e in monomials(3, extra)]
    cols = cols + [(gamma * m).coeff_vector(tgt) for m in mults]
    rows = la.transpose(cols)
    n = len(basis)
    ker = la.kernel_basis(rows, len(cols))
    return basis, la.row_space([k[:n] for k in ker])


@dataclass
class Reconstruction:
    gamma: MultiPoly
    points: list
    q1: MultiPoly
    q2: MultiPoly
    y_h: MultiPoly
    jc22: list[MultiPoly]
    jc22_dim: int
    v: BidegreeForm22
    image_dim: int
    sextic_scale: Fraction | None
    o_point: tuple
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma.to_json(),
            "points": [[str(a) for a in p] for p in self.points],
            "q1": self.q1.to_json(),
            "q2": self.q2.to_json(),
            "Y_h": self.y_h.to_json(),
            "J_C_22_dim": self.jc22_dim,
            "J_C_22": [f.to_json() for f in self.jc22],
            "V": self.v.to_json(),
            "image_equation_count": self.image_dim,
            "branch_scale": str(self.sextic_scale) if self.sextic_scale is not None else None,
            "plane_point": [str(a) for a in self.o_point],
        }


def _net_of_sextic(gamma, points):
    pts = [tuple(la.as_scalar(a) for a in p) for p in points]
    if len(pts) < 4:
        raise MorinError("need four singular points")
    pts = pts[:4]
    if not general_position(pts):
        raise DegeneratePosition("three of the four points are collinear")
    for p in pts:
        if not pc.is_singular_point(gamma, p):
            raise MorinError(f"the sextic is not singular at {p}")
    q1v, q2v = conics_through(pts)
    mons = monomials(3, 2)
    q1 = MultiPoly.from_vector(P2, mons, q1v)
    q2 = MultiPoly.from_vector(P2, mons, q2v)
    return pts, q1, q2


def reconstruct_from_sextic(gamma: MultiPoly, points: Sequence[Sequence] = STANDARD) -> Reconstruction:
    gamma = _to_p2(gamma)
    if gamma.total_degree() != 6 or not gamma.is_homogeneous():
        raise MorinError("need a homogeneous plane sextic")
    pts, q1, q2 = _net_of_sextic(gamma, points)
    s, t = SY.gens()[:2]
    yv = SY.gens()[2:]
    q1s = q1.change_ring(SY, [2, 3, 4])
    q2s = q2.change_ring(SY, [2, 3, 4])
    y_h = s * q2s - t * q1s
    basis, space = _divisible_space((2, 2), q1, q2, gamma)
    jc = [MultiPoly.from_vector(SY, basis, v) for v in space]
    if len(jc) != 3:
        raise StructuralAnomaly(f"|J_C(2,2)| has dimension {len(jc)}")
    # order the net so the first two members are the Y_h multiples
    yh_mult = la.row_space([(y_h * s).coeff_vector(basis), (y_h * t).coeff_vector(basis)])
    if not all(la.in_span(r, space) for r in yh_mult):
        raise StructuralAnomaly("Y_h multiples are not in |J_C(2,2)|")
    extra = next(v for v in space if not la.in_span(v, yh_mult))
    net = [MultiPoly.from_vector(SY, basis, r) for r in yh_mult] + [MultiPoly.from_vector(SY, basis, extra)]
    # equation of the image of (net, y): (2,2) forms G with G(net, y) = 0
    img = list(net) + list(yv)
    tgt = multi_monomials((2, 3), (4, 6))
    cols = []
    cache = {}
    for e in BASIS22:
        key = e[:3]
        if key not in cache:
            g = SY.one()
            for i in range(3):
                if e[i]:
                    g = g * img[i] ** e[i]
            cache[key] = g
        g = cache[key] * SY.monomial((0, 0) + e[3:])
        cols.append(g.coeff_vector(tgt))
    ker = la.kernel_basis(la.transpose(cols), 36)
    if len(ker) != 1:
        raise StructuralAnomaly(f"image equations: {len(ker)}")
    v = BidegreeForm22.from_vector(ker[0])
    sextic = _to_p2(branch_sextic(v, "x"))
    scale = sextic.proportional_to(gamma)
    o = (Fraction(0), Fraction(0), Fraction(1))
    return Reconstruction(gamma, pts, q1, q2, y_h, net, len(space), v, len(ker), scale, o)


def check_IC23(rec: Reconstruction) -> dict:
    """Dimension of |J_C(2,3)|, rank of the multiplication map, and the Y_h + |O(1,1)| containments."""
    basis, space = _divisible_space((2, 3), rec.q1, rec.q2, rec.gamma)
    yv = SY.gens()[2:]
    prods = [(f * y).coeff_vector(basis) for f in rec.jc22 for y in yv]
    mu_rank = la.rank(prods)
    in_space = all(la.in_span(p, space) for p in prods)
    s, t = SY.gens()[:2]
    contain = []
    for a in (s, t):
        for y in yv:
            contain.append(la.in_span((rec.y_h * a * y).coeff_vector(basis), space))
    return {
        "J_C_23_dim": len(space),
        "mu_rank": mu_rank,
        "mu_image_in_J": in_space,
        "Y_h_plus_O11_contained": all(contain),
        "containment_checks": len(contain),
    }


# ---------------------------------------------------------------------------
# a ten-nodal sextic with rational nodes


@dataclass
class TenNodalSextic:
    gamma: MultiPoly
    cubic: MultiPoly  # the nodal cubic E with gamma' = E(a x^2, b y^2, z^2)
    nodes: list[tuple[Fraction, ...]]
    frame: list[list[Fraction]]
    params: tuple
    seed: int

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma.to_json(),
            "cubic": self.cubic.to_json(),
            "nodes": [[str(a) for a in p] for p in self.nodes],
            "frame": [[str(a) for a in r] for r in self.frame],
            "params": [str(a) for a in self.params],
            "seed": self.seed,
        }


def _squarefree(q: Fraction) -> int:
    """Signed squarefree integer in the square class of a nonzero rational."""
    n = q.numerator * q.denominator
    sign = 1 if n > 0 else -1
    n = abs(n)
    out, k = 1, 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
        if n % k == 0:
            out *= k
            n //= k
        k += 1
    return sign * out * n


def _qsqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _tangent_cubic(r2, r1) -> list[Fraction]:
    """(s - r2)^2 (s - r1) as coefficients of s^3, s^2, s, 1."""
    a, b = Fraction(r2), Fraction(r1)
    return [Fraction(1), -(2 * a + b), a * a + 2 * a * b, -a * a * b]


def _ev3(c, s) -> Fraction:
    return ((c[0] * s + c[1]) * s + c[2]) * s + c[3]


def _nodal_cubic_data(params):
    """Square-class data of the cubic s -> (A, B, C) tangent to the three coordinate lines.

    Returns (A, B, C, node point, tangency ratios) or None when degenerate.
    """
    al, al2, be, be2, ga, ga2 = params
    A, B, C = _tangent_cubic(al, al2), _tangent_cubic(be, be2), _tangent_cubic(ga, ga2)
    cb, cc = _ev3(C, Fraction(al)), _ev3(C, Fraction(be))
    ca = _ev3(B, Fraction(ga))
    if 0 in (cb, cc, ca):
        return None
    r1 = _ev3(B, Fraction(al)) / cb  # Y/Z at the tangency with X = 0
    r2 = _ev3(A, Fraction(be)) / cc  # X/Z at the tangency with Y = 0
    r3 = _ev3(A, Fraction(ga)) / ca  # X/Y at the tangency with Z = 0
    if 0 in (r1, r2, r3):
        return None
    ker = la.kernel_basis([A, B, C], 4)
    if len(ker) != 1:
        return None
    k = ker[0]
    # k = a v(s) + b v(s') with v(s) = (s^3, s^2, s, 1): a two-term recurrence
    det = k[3] * k[1] - k[2] * k[2]
    if det == 0:
        return None
    s1 = (k[3] * k[0] - k[1] * k[2]) / det
    s2 = (k[2] * k[0] - k[1] * k[1]) / det
    if s1 * s1 - 4 * s2 == 0:
        return None  # cusp
    p = [Fraction(2), s1, s1 * s1 - 2 * s2, s1 ** 3 - 3 * s1 * s2]
    vec = [p[3], p[2], p[1], p[0]]
    node = [sum(r[i] * vec[i] for i in range(4)) for r in (A, B, C)]
    if 0 in node:
        return None
    return A, B, C, node, (r1, r2, r3)


def _ten_nodal_candidates(seed: int, bound: int = 4):
    rng = random.Random(seed)
    vals = list(range(-bound, bound + 1))
    combos = [c for c in itertools.product(vals, repeat=6) if len(set(c)) == 6]
    rng.shuffle(combos)
    for params in combos:
        data = _nodal_cubic_data(params)
        if data is None:
            continue
        A, B, C, node, (r1, r2, r3) = data
        r0x, r0y = node[0] / node[2], node[1] / node[2]
        if _squarefree(r0x * r2) == 1 and _squarefree(r0y * r1) == 1 and _squarefree(r1 * r2 * r3) == 1:
            yield params, data


def ten_nodal_sextic(seed: int = 0, base: Sequence[Sequence] = STANDARD, tries: int = 50) -> TenNodalSextic:
    """An integral rational sextic with ten rational nodes, four of them at the base points.

    A rational cubic E tangent to the three coordinate lines is pulled back
    by (x : y : z) -> (a x^2 : b y^2 : z^2).  Its node gives four nodes and
    each tangency gives two; the square classes a, b make all ten rational.
    Four nodes in general position are then moved to the base points.
    """
    from .delpezzo import build_del_pezzo

    y = build_del_pezzo(base)
    base = [tuple(la.as_scalar(c) for c in p) for p in base]
    bframe = _frame(base)
    mons3 = monomials(3, 3)
    for count, (params, data) in enumerate(_ten_nodal_candidates(seed)):
        if count >= tries:
            break
        A, B, C, node, (r1, r2, r3) = data
        a, b = Fraction(_squarefree(r2)), Fraction(_squarefree(r1))
        pts = [[a * _ev3(A, Fraction(s)), b * _ev3(B, Fraction(s)), _ev3(C, Fraction(s))] for s in range(-6, 7)]
        ker = la.kernel_basis([[P2.monomial(e).evaluate(p) for e in mons3] for p in pts], 10)
        if len(ker) != 1:
            continue
        cubic = MultiPoly.from_vector(P2, mons3, ker[0])
        zx, zy, zz = P2.gens()
        g0 = cubic.subs([zx * zx, zy * zy, zz * zz], P2)
        cands = []
        X0, Y0 = a * node[0] / node[2], b * node[1] / node[2]
        sx, sy = _qsqrt(X0), _qsqrt(Y0)
        t1, t2, t3 = _qsqrt(b * r1), _qsqrt(a * r2), _qsqrt(a * r3 / b)
        if None in (sx, sy, t1, t2, t3):
            continue
        for e1 in (1, -1):
            for e2 in (1, -1):
                cands.append((e1 * sx, e2 * sy, Fraction(1)))
            cands.append((Fraction(0), e1 * t1, Fraction(1)))
            cands.append((e1 * t2, Fraction(0), Fraction(1)))
            cands.append((e1 * t3, Fraction(1), Fraction(0)))
        cands = [la.normalize_projective(p) for p in cands]
        if len(set(cands)) != 10 or not all(pc.is_ordinary_double(g0, p) for p in cands):
            continue
        if len(pc.sympy_factor(g0)) != 1:
            continue
        for four in itertools.combinations(range(10), 4):
            quad = [cands[i] for i in four]
            if not general_position(quad):
                continue
            m = la.mat_mul(_frame(quad), la.inverse(bframe))  # base -> chosen nodes
            minv = la.inverse(m)
            img = [sum((P2.gens()[j].scale(m[i][j]) for j in range(3)), P2.zero()) for i in range(3)]
            gamma = g0.subs(img, P2)
            nodes = [la.normalize_projective(la.vec_mat(list(p), la.transpose(minv))) for p in cands]
            rest = [p for p in nodes if p not in [la.normalize_projective(q) for q in base]]
            if len(rest) != 6 or la.rank([y.embed(p) for p in rest]) != 6:
                continue
            return TenNodalSextic(gamma.monic(), cubic, sorted(nodes), m, params, seed)
    raise DegeneratePosition("no ten-nodal sextic found within the search budget")


def _frame(points) -> list[list[Fraction]]:
    """Matrix sending e1, e2, e3, (1,1,1) to the four points (up to scale)."""
    cols = la.transpose([list(p) for p in points[:3]])
    lam = la.solve(cols, list(points[3]))
    return [[cols[i][j] * lam[j] for j in range(3)] for i in range(3)]
