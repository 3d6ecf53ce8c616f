"""Bidegree (2,2) hypersurfaces of P^2 x P^2.

Forms live in the ring with blocks x (3 variables) and y (3 variables).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from . import modp
from .errors import (
    BadPrimeError,
    CollinearPoints,
    IdenticallySingular,
    PositiveDimensional,
    StructuralAnomaly,
)
from .poly import MultiPoly, Ring, det_poly, multi_monomials, monomials, rational_roots, symmetric_from_quadric

XY = Ring([("x", 3), ("y", 3)])
BASIS22 = multi_monomials((3, 3), (2, 2))  # 36 exponents
DEFAULT_PRIMES = (101, 103, 107)


@dataclass(frozen=True)
class BidegreeForm22:
    f: MultiPoly

    def __post_init__(self):
        if self.f.ring is not XY:
            raise ValueError("a (2,2) form must live in the x,y ring")
        if not self.f.is_multihomogeneous((2, 2)):
            raise ValueError("form is not of bidegree (2,2)")

    @classmethod
    def from_vector(cls, vec: Sequence) -> "BidegreeForm22":
        return cls(MultiPoly.from_vector(XY, BASIS22, vec))

    def vector(self) -> list[Fraction]:
        return self.f.coeff_vector(BASIS22)

    def matrix(self, side: str = "x") -> list[list[MultiPoly]]:
        """Symmetric a_ij with f = sum a_ij z_i z_j, z the chosen block."""
        return symmetric_from_quadric(self.f, side)

    def __call__(self, x, y) -> Fraction:
        return self.f.evaluate(list(x) + list(y))

    def swap(self) -> "BidegreeForm22":
        return BidegreeForm22(self.f.change_ring(XY, [3, 4, 5, 0, 1, 2]))

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def monic(self) -> "BidegreeForm22":
        return BidegreeForm22(self.f.monic())

    def to_json(self) -> dict:
        return self.f.to_json()

    @classmethod
    def from_json(cls, d: dict) -> "BidegreeForm22":
        f = MultiPoly.from_json(d)
        return cls(MultiPoly(XY, f.terms))


def random_form(rng: random.Random, height: int = 5) -> BidegreeForm22:
    return BidegreeForm22.from_vector([rng.randint(-height, height) for _ in BASIS22])


def vram_verbatim() -> BidegreeForm22:
    """The sum-of-three-products form as usually printed.

    It lies in |I_4(2,2)| but has only the 16 tangential singular points;
    see :func:`vram` for the 19-nodal member.
    """
    x1, x2, x3, y1, y2, y3 = XY.gens()
    f = (
        (x1 - x2) * x3 * (y1 - y2) * y3
        + x1 * (x2 - x3) * y1 * (y2 - y3)
        + x2 * (x1 - x3) * y2 * (y1 - y3)
    )
    return BidegreeForm22(f)


def vram() -> BidegreeForm22:
    """The 19-nodal member of |I_4(2,2)| for the standard points on both sides.

    With q1 = x1(x2 - x3) and q2 = x2(x1 - x3) this is
    q1(x) q2(y) - q2(x) q1(y), the ramification divisor of the (1,1)
    projection from the four diagonal points.  Swapping x and y changes its
    sign, so the hypersurface is swap-symmetric.
    """
    x1, x2, x3, y1, y2, y3 = XY.gens()
    f = x1 * (x2 - x3) * y2 * (y1 - y3) - x2 * (x1 - x3) * y1 * (y2 - y3)
    return BidegreeForm22(f)


# ---------------------------------------------------------------------------
# branch sextic


def branch_sextic(v: BidegreeForm22, side: str = "x") -> MultiPoly:
    """Determinant of the conic-bundle matrix in the ``side`` block.

    The result is a sextic in the other block.
    """
    d = det_poly(v.matrix(side))
    if d.is_zero():
        raise IdenticallySingular("conic-bundle determinant vanishes identically")
    return d


# ---------------------------------------------------------------------------
# exact singular-point checks


@dataclass(frozen=True)
class SingularPointReport:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    partial_values: tuple[Fraction, ...]
    hessian_rank: int
    tangential: bool

    @property
    def point(self):
        return (self.x, self.y)

    @property
    def ordinary_double(self) -> bool:
        return self.hessian_rank == 4

    def to_json(self) -> dict:
        return {
            "point": {"x": [str(a) for a in self.x], "y": [str(a) for a in self.y]},
            "tangential": self.tangential,
            "hessian_rank": self.hessian_rank,
        }


@dataclass(frozen=True)
class NotSingular:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    partial_values: tuple[Fraction, ...]

    def __bool__(self):
        return False


def _chart_hessian_rank(f: MultiPoly, x, y) -> int:
    a = next(i for i, c in enumerate(x) if c)
    b = next(i for i, c in enumerate(y) if c)
    xs = [c / x[a] for c in x]
    ys = [c / y[b] for c in y]
    local = f.partial_eval({a: 1, 3 + b: 1})
    free = [i for i in range(3) if i != a] + [3 + j for j in range(3) if j != b]
    pt = xs + ys
    hess = [[local.diff(i).diff(j).evaluate(pt) for j in free] for i in free]
    return la.rank(hess)


def contains_x_plane(v: BidegreeForm22, x) -> bool:
    """True when {x} x P^2 lies in V."""
    return v.f.partial_eval({i: c for i, c in enumerate(x)}).is_zero()


def contains_y_plane(v: BidegreeForm22, y) -> bool:
    return v.f.partial_eval({3 + i: c for i, c in enumerate(y)}).is_zero()


def verify_singular(v: BidegreeForm22, pt) -> SingularPointReport | NotSingular:
    x, y = pt
    x = tuple(la.as_scalar(a) for a in x)
    y = tuple(la.as_scalar(a) for a in y)
    point = list(x) + list(y)
    vals = tuple(g.evaluate(point) for g in v.f.gradient())
    if any(vals):
        return NotSingular(x, y, vals)
    rank = _chart_hessian_rank(v.f, x, y)
    tang = contains_x_plane(v, x) and contains_y_plane(v, y)
    return SingularPointReport(x, y, vals, rank, tang)


def point_key(x, y) -> tuple:
    return (la.normalize_projective(x), la.normalize_projective(y))


def fiber_vertices(v: BidegreeForm22, ys: Sequence[Sequence]) -> list[tuple]:
    """Candidate singular points over given y: the vertex of the x-conic when it is a line pair."""
    mat = v.matrix("x")
    out = []
    for y in ys:
        pt = [Fraction(0)] * 3 + [la.as_scalar(c) for c in y]
        ker = la.kernel_basis([[e.evaluate(pt) for e in row] for row in mat], 3)
        if len(ker) == 1:
            out.append((tuple(ker[0]), tuple(pt[3:])))
    return out


# ---------------------------------------------------------------------------
# mod-p enumeration and lifting


@dataclass
class ModpScan:
    prime: int
    points: list
    count: int


def enumerate_singular_modp(v: BidegreeForm22, p: int, tile: int = 256, method: str = "grid") -> ModpScan:
    if p < 31:
        raise BadPrimeError("primes below 31 are not accepted")
    if method == "grid":
        pts = modp.scan_grid(v.f, p, tile)
    elif method == "kernel":
        pts = modp.scan_kernel(v.f, p)
    else:
        raise ValueError(f"unknown scan method {method!r}")
    return ModpScan(p, pts, len(pts))


@dataclass
class SingularLocus:
    scans: list[ModpScan]
    rational: list[SingularPointReport]
    unlifted: dict = field(default_factory=dict)

    @property
    def counts(self) -> dict[int, int]:
        return {s.prime: s.count for s in self.scans}

    @property
    def consistent(self) -> bool:
        counts = set(self.counts.values())
        return len(counts) == 1 and not any(self.unlifted.values()) and len(self.rational) == next(iter(counts))

    def to_json(self) -> dict:
        return {
            "counts": {str(p): c for p, c in sorted(self.counts.items())},
            "points": [r.to_json() for r in self.rational],
            "unlifted": {str(p): c for p, c in sorted(self.unlifted.items())},
        }


def _reduce_pair(x, y, p):
    rx, ry = modp.reduce_point(x, p), modp.reduce_point(y, p)
    if rx is None or ry is None:
        return None
    return (rx, ry)


def singular_locus(
    v: BidegreeForm22,
    primes: Sequence[int] = DEFAULT_PRIMES,
    candidates: Sequence = (),
    lift_height: int = 10000,
    tile: int = 256,
    method: str = "grid",
    max_combinations: int = 200000,
) -> SingularLocus:
    """Mod-p scans at several primes, with rational lifting and exact verification.

    Lifting tries, in order: the supplied rational candidates, per-prime
    small-height reconstruction, and CRT combination across primes.  Every
    lifted point is re-verified over Q.
    """
    scans = [enumerate_singular_modp(v, p, tile, method) for p in primes]
    remaining = {s.prime: set(s.points) for s in scans}
    found: dict = {}

    def accept(x, y) -> bool:
        key = point_key(x, y)
        if key in found:
            return True
        rep = verify_singular(v, key)
        if not rep:
            return False
        found[key] = rep
        for p in primes:
            red = _reduce_pair(key[0], key[1], p)
            if red is not None:
                remaining[p].discard(red)
        return True

    for x, y in candidates:
        key = point_key(x, y)
        reds = [_reduce_pair(key[0], key[1], p) for p in primes]
        if all(r is not None and r in remaining[p] for r, p in zip(reds, primes)):
            accept(*key)

    for p in primes:
        for x, y in sorted(remaining[p]):
            lx = modp.lift_coordinate_tuple([x], [p], lift_height)
            ly = modp.lift_coordinate_tuple([y], [p], lift_height)
            if lx and ly and any(lx) and any(ly):
                accept(lx, ly)

    if all(remaining[p] for p in primes):
        pools = [sorted(remaining[p]) for p in primes]
        total = 1
        for pool in pools:
            total *= len(pool)
        if total <= max_combinations:
            for combo in itertools.product(*pools):
                lx = modp.lift_coordinate_tuple([c[0] for c in combo], list(primes), lift_height)
                if not lx or not any(lx):
                    continue
                ly = modp.lift_coordinate_tuple([c[1] for c in combo], list(primes), lift_height)
                if ly and any(ly):
                    accept(lx, ly)

    rational = [found[k] for k in sorted(found)]
    return SingularLocus(scans, rational, {p: len(remaining[p]) for p in primes})


# ---------------------------------------------------------------------------
# planes contained in V


@dataclass
class PlaneInventory:
    P_x: list[tuple[Fraction, ...]]
    P_y: list[tuple[Fraction, ...]]
    modp_counts: dict = field(default_factory=dict)

    @property
    def t_x(self) -> int:
        return len(self.P_x)

    @property
    def t_y(self) -> int:
        return len(self.P_y)

    @property
    def t(self) -> int:
        return min(self.t_x, self.t_y)

    def check_invariants(self) -> None:
        for pts in (self.P_x, self.P_y):
            if len(pts) > 4:
                raise StructuralAnomaly(f"{len(pts)} contained planes on one side")
            for a, b, c in itertools.combinations(pts, 3):
                if la.det([a, b, c]) == 0:
                    raise StructuralAnomaly("three contained planes with collinear vertices")

    def to_json(self) -> dict:
        return {
            "P_x": [[str(a) for a in p] for p in self.P_x],
            "P_y": [[str(a) for a in p] for p in self.P_y],
            "t_x": self.t_x,
            "t_y": self.t_y,
            "t": self.t,
            "modp_counts": {k: v for k, v in sorted(self.modp_counts.items())},
        }


P2 = Ring([("z", 3)])


def _coefficient_quadrics(v: BidegreeForm22, side: str) -> list[MultiPoly]:
    """The six quadrics in the ``side`` block multiplying each monomial of the other block."""
    off = 0 if side == "x" else 3
    other = 3 - off
    groups: dict = {}
    for e, c in v.f.terms.items():
        key = e[other:other + 3]
        groups.setdefault(key, {})[e[off:off + 3]] = c
    return [MultiPoly(P2, t) for _, t in sorted(groups.items())]


def common_zeros_of_conics(quads: Sequence[MultiPoly], seed: int = 0) -> list[tuple[Fraction, ...]]:
    """Rational common zeros in P^2 of a finite set of ternary quadrics.

    Raises PositiveDimensional when the common zero set contains a curve.
    """
    mons = monomials(3, 2)
    vecs = la.row_space([q.coeff_vector(mons) for q in quads if not q.is_zero()])
    if len(vecs) <= 1:
        raise PositiveDimensional(f"span of the quadrics has dimension {len(vecs)}")
    qs = [MultiPoly.from_vector(P2, mons, r) for r in vecs]
    rng = random.Random(seed)
    for _attempt in range(20):
        if len(qs) == 2:
            g1, g2 = qs
        else:
            g1 = sum((q.scale(rng.randint(-9, 9)) for q in qs), P2.zero())
            g2 = sum((q.scale(rng.randint(-9, 9)) for q in qs), P2.zero())
        t = [[Fraction(rng.randint(-4, 4)) for _ in range(3)] for _ in range(3)]
        if la.det(t) == 0:
            continue
        z = P2.gens()
        img = [sum((z[j].scale(t[i][j]) for j in range(3)), P2.zero()) for i in range(3)]
        h1, h2 = g1.subs(img), g2.subs(img)
        if h1.degree_in(2) < 2 or h2.degree_in(2) < 2:
            continue
        res = _resultant_z3(h1, h2)
        if res.is_zero():
            if len(qs) == 2:
                raise PositiveDimensional("the conics share a component")
            continue
        cand = set()
        # roots with z2 = 0: then z1 = 1 up to scale
        coeffs = [res.coeff((k, 4 - k, 0)) for k in range(5)]  # in z1/z2, constant first
        ratios = rational_roots(coeffs) if any(coeffs) else []
        lines = [(r, Fraction(1)) for r in ratios]
        if coeffs[4] == 0:
            lines.append((Fraction(1), Fraction(0)))
        for a, b in lines:
            u1 = h1.partial_eval({0: a, 1: b})
            u2 = h2.partial_eval({0: a, 1: b})
            c1 = [u1.coeff((0, 0, k)) for k in range(3)]
            for zval in rational_roots(c1):
                if u2.evaluate([0, 0, zval]) == 0:
                    cand.add((a, b, zval))
        inv = []
        for pt in cand:
            xpt = [sum(t[i][j] * pt[j] for j in range(3)) for i in range(3)]
            if all(q.evaluate(xpt) == 0 for q in qs):
                inv.append(la.normalize_projective(xpt))
        # (0:0:1) in transformed coordinates is not covered by the z1,z2 sweep
        far = [t[i][2] for i in range(3)]
        if all(q.evaluate(far) == 0 for q in qs):
            inv.append(la.normalize_projective(far))
        return sorted(set(inv))
    raise PositiveDimensional("could not find a finite elimination")


def _resultant_z3(h1: MultiPoly, h2: MultiPoly) -> MultiPoly:
    """Sylvester resultant in z3 of two ternary quadrics (degree 2 in z3)."""
    def coeffs(h):
        out = [P2.zero() for _ in range(3)]
        for e, c in h.terms.items():
            out[e[2]] = out[e[2]] + MultiPoly(P2, {(e[0], e[1], 0): c})
        return out[::-1]  # z3^2 coefficient first

    a, b = coeffs(h1), coeffs(h2)
    zero = P2.zero()
    m = [
        [a[0], a[1], a[2], zero],
        [zero, a[0], a[1], a[2]],
        [b[0], b[1], b[2], zero],
        [zero, b[0], b[1], b[2]],
    ]
    return det_poly(m)


def _modp_common_zero_count(quads: Sequence[MultiPoly], p: int) -> int:
    pts = modp.projective_points(p)
    count = 0
    mon = modp._mon_values(pts, p)
    ok = None
    for q in quads:
        cvec = []
        for e in modp.MON2:
            c = q.coeff(e)
            cvec.append(c.numerator * pow(c.denominator, -1, p) % p)
        import numpy as np

        vals = (mon @ np.array(cvec, dtype=np.int64)) % p
        z = vals == 0
        ok = z if ok is None else ok & z
    count = int(ok.sum()) if ok is not None else len(pts)
    return count


def planes_in(v: BidegreeForm22, primes: Sequence[int] = DEFAULT_PRIMES, check: bool = True) -> PlaneInventory:
    out = {}
    counts = {}
    for side in ("x", "y"):
        quads = _coefficient_quadrics(v, side)
        out[side] = common_zeros_of_conics(quads)
        for p in primes:
            counts[f"{side}:{p}"] = _modp_common_zero_count(quads, p)
    inv = PlaneInventory(out["x"], out["y"], counts)
    if check:
        inv.check_invariants()
    return inv


# ---------------------------------------------------------------------------
# the linear system of forms through eight planes


def conics_through(points: Sequence[Sequence]) -> list[list[Fraction]]:
    """Kernel basis (coefficient vectors over MON2) of conics through the points."""
    mons = monomials(3, 2)
    rows = [[P2.monomial(e).evaluate(pt) for e in mons] for pt in points]
    return la.kernel_basis(rows, 6)


def general_position(points: Sequence[Sequence]) -> bool:
    return all(la.det([list(a), list(b), list(c)]) != 0 for a, b, c in itertools.combinations(points, 3))


def _plane_conditions(pt, side: str) -> list[list[Fraction]]:
    """Linear conditions on the 36 coefficients for {pt} x P^2 (side x) or P^2 x {pt} to lie in V."""
    rows = {}
    off = 0 if side == "x" else 3
    for k, e in enumerate(BASIS22):
        mono_val = P2.monomial(e[off:off + 3]).evaluate(pt)
        if mono_val:
            key = e[3 - off:6 - off] if side == "x" else e[:3]
            rows.setdefault(key, [Fraction(0)] * 36)[k] += mono_val
    return list(rows.values())


def forms_containing_planes(src: Sequence, tgt: Sequence) -> list[list[Fraction]]:
    rows = []
    for pt in src:
        rows += _plane_conditions(pt, "x")
    for pt in tgt:
        rows += _plane_conditions(pt, "y")
    return la.kernel_basis(rows, 36)


def _embed(q: list[Fraction], side: str) -> MultiPoly:
    off = 0 if side == "x" else 3
    t = {}
    for e, c in zip(monomials(3, 2), q):
        if c:
            ex = [0] * 6
            ex[off:off + 3] = e
            t[tuple(ex)] = c
    return MultiPoly(XY, t)


@dataclass
class I4System:
    src: list
    tgt: list
    basis: list[BidegreeForm22]
    tensor_basis: list[BidegreeForm22]
    q_src: list
    q_tgt: list

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def member(self, coeffs: Sequence) -> BidegreeForm22:
        f = XY.zero()
        for c, b in zip(coeffs, self.basis):
            f = f + b.f.scale(c)
        return BidegreeForm22(f)


def linear_system_I4(src: Sequence, tgt: Sequence) -> I4System:
    src = [tuple(la.as_scalar(a) for a in p) for p in src]
    tgt = [tuple(la.as_scalar(a) for a in p) for p in tgt]
    if len(src) != 4 or len(tgt) != 4:
        raise ValueError("need four points on each side")
    if not general_position(src) or not general_position(tgt):
        raise CollinearPoints("three of the points are collinear")
    ker = forms_containing_planes(src, tgt)
    basis = [BidegreeForm22.from_vector(k) for k in ker]
    qs, qt = conics_through(src), conics_through(tgt)
    tensor = [BidegreeForm22(_embed(a, "x") * _embed(b, "y")) for a in qs for b in qt]
    return I4System(list(src), list(tgt), basis, tensor, qs, qt)


STANDARD_POINTS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def in_span_of_forms(v: BidegreeForm22, forms: Sequence[BidegreeForm22]) -> list[Fraction] | None:
    """Coefficients expressing v in the given forms, or None."""
    cols = la.transpose([b.vector() for b in forms])
    return la.solve(cols, v.vector())


# ---------------------------------------------------------------------------
# coordinate normalization


def frame_matrix(points: Sequence[Sequence]) -> list[list[Fraction]]:
    """Matrix M with M e_i ~ p_i (i = 1..3) and M (1,1,1) ~ p_4."""
    pts = [[la.as_scalar(a) for a in p] for p in points]
    if len(pts) != 4 or not general_position(pts):
        raise CollinearPoints("need four points, no three collinear")
    cols = la.transpose(pts[:3])
    lam = la.solve(cols, pts[3])
    return [[cols[i][j] * lam[j] for j in range(3)] for i in range(3)]


def transform(v: BidegreeForm22, mx: Sequence[Sequence], my: Sequence[Sequence]) -> BidegreeForm22:
    """The form (x, y) -> v(mx x, my y)."""
    g = XY.gens()
    img = [sum((g[j].scale(mx[i][j]) for j in range(3)), XY.zero()) for i in range(3)]
    img += [sum((g[3 + j].scale(my[i][j]) for j in range(3)), XY.zero()) for i in range(3)]
    return BidegreeForm22(v.f.subs(img, XY))


def normalize_to_standard(v: BidegreeForm22, inventory: PlaneInventory | None = None):
    """Move the contained planes of a form with t_x = t_y = 4 to the standard points.

    Returns (normalized form, mx, my).
    """
    inv = inventory if inventory is not None else planes_in(v)
    if inv.t_x != 4 or inv.t_y != 4:
        raise StructuralAnomaly(f"need four contained planes on each side, got {inv.t_x}, {inv.t_y}")
    mx, my = frame_matrix(inv.P_x), frame_matrix(inv.P_y)
    return transform(v, mx, my), mx, my


def six_line_sextic(ring: Ring | None = None) -> MultiPoly:
    """y1 y2 y3 (y1 - y2)(y1 - y3)(y2 - y3), in the y block of XY by default."""
    if ring is None:
        y1, y2, y3 = XY.gens()[3:]
    else:
        y1, y2, y3 = ring.gens()[:3]
    return y1 * y2 * y3 * (y1 - y2) * (y1 - y3) * (y2 - y3)
