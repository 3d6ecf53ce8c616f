"""The degree-two map phi: P^2 x P^2 -> P^4 and the quartic image of V^ram.

phi is given by the (1,1)-forms vanishing at the four diagonal points
(u_i, u_i).  Its ramification divisor is a (2,2) form and the image of
that divisor is a quartic threefold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from . import planecurves as pc
from .errors import CollinearPoints, StructuralAnomaly
from .poly import MultiPoly, Ring, det_poly, monomials, multi_monomials
from .vthreefold import XY, BidegreeForm22, STANDARD_POINTS, general_position

P4 = Ring([("w", 5)])
BASIS11 = multi_monomials((3, 3), (1, 1))


def forms_11_through(points: Sequence[Sequence]) -> list[MultiPoly]:
    """Basis of (1,1)-forms vanishing at the diagonal points (p, p)."""
    pts = [[la.as_scalar(a) for a in p] for p in points]
    if not general_position(pts):
        raise CollinearPoints("three of the diagonal points are collinear")
    rows = [[XY.monomial(e).evaluate(p + p) for e in BASIS11] for p in pts]
    return [MultiPoly.from_vector(XY, BASIS11, k) for k in la.kernel_basis(rows, 9)]


@dataclass
class PhiMap:
    points: list
    forms: list[MultiPoly]

    def __call__(self, x, y) -> list[Fraction]:
        pt = [la.as_scalar(a) for a in list(x) + list(y)]
        return [f.evaluate(pt) for f in self.forms]

    def jacobian(self, x, y) -> list[list[Fraction]]:
        pt = [la.as_scalar(a) for a in list(x) + list(y)]
        return [[f.diff(k).evaluate(pt) for k in range(6)] for f in self.forms]

    def projective_rank(self, x, y) -> int:
        """Rank of the differential of phi at (x, y) as a map of projective varieties."""
        return la.rank(self.jacobian(x, y)) - 1

    def bilinear_matrices(self) -> list[list[list[Fraction]]]:
        out = []
        for f in self.forms:
            m = [[Fraction(0)] * 3 for _ in range(3)]
            for e, c in f.terms.items():
                i = e.index(1)
                j = e.index(1, 3) - 3
                m[i][j] = c
            out.append(m)
        return out


def phi_map(points: Sequence[Sequence] = STANDARD_POINTS) -> PhiMap:
    forms = forms_11_through(points)
    if len(forms) != 5:
        raise StructuralAnomaly(f"(1,1)-forms through the diagonal points: {len(forms)}")
    return PhiMap([tuple(la.as_scalar(a) for a in p) for p in points], forms)


def ramification_form(phi: PhiMap) -> BidegreeForm22:
    """The (2,2) form cut out by the 5 x 5 minors of the Jacobian of phi.

    Each maximal minor of the 5 x 6 Jacobian equals (up to sign) a
    coordinate times the ramification form; the minor omitting the x1
    column is divided by x1.
    """
    jac = [[f.diff(k) for k in range(6)] for f in phi.forms]
    minor = det_poly([[row[k] for k in range(1, 6)] for row in jac])
    ram = minor.exact_div(XY.gens()[0])
    return BidegreeForm22(ram)


def exceptional_hyperplanes(phi: PhiMap) -> list[list[Fraction]]:
    """Linear forms on P^4 cutting out the images of the exceptional divisors over (u_i, u_i)."""
    out = []
    for u in phi.points:
        ker = la.kernel_basis(la.transpose(phi.jacobian(u, u)), 5)
        if len(ker) != 1:
            raise StructuralAnomaly("differential at a base point does not have rank 4")
        out.append(ker[0])
    return out


def fiber(phi: PhiMap, x, y, seed: int = 0) -> list[tuple[tuple, tuple]]:
    """All rational preimages of phi(x, y) outside the base points."""
    w = phi(x, y)
    if not any(w):
        raise ValueError("(x, y) is a base point of phi")
    perp = la.kernel_basis([w], 5)  # 4 linear forms vanishing at w
    mats = phi.bilinear_matrices()
    eqs = []
    for c in perp:
        eqs.append([[sum(c[k] * mats[k][i][j] for k in range(5)) for j in range(3)] for i in range(3)])
    # A(x')_{r, j} = sum_i x'_i eqs[r][i][j]; rank <= 2 at preimages
    z = pc.P2.gens()
    amat = [[sum((z[i].scale(eqs[r][i][j]) for i in range(3)), pc.P2.zero()) for j in range(3)] for r in range(4)]
    minors = []
    for drop in range(4):
        rows = [amat[r] for r in range(4) if r != drop]
        minors.append(det_poly(rows))
    xs = pc.common_rational_zeros(minors, seed=seed)
    base = {la.normalize_projective(p) for p in phi.points}
    out = []
    for xp in xs:
        num = [[sum(xp[i] * eqs[r][i][j] for i in range(3)) for j in range(3)] for r in range(4)]
        ker = la.kernel_basis(num, 3)
        for yp in ker:
            yp = la.normalize_projective(yp)
            if xp in base and yp == xp:
                continue
            if any(phi(xp, yp)) and la.rank([phi(xp, yp), w]) == 1:
                out.append((xp, yp))
    return sorted(set(out))


def points_on_form(
    v: BidegreeForm22, rng: random.Random, count: int, height: int = 6, avoid: Sequence = ()
) -> list[tuple[tuple, tuple]]:
    """Rational points of a (2,2) form whose x-conics pass through (1:0:0).

    For random y, the conic v(., y) is met by random lines through (1:0:0).
    Points with a coordinate in `avoid` are skipped.
    """
    avoid = {la.normalize_projective(p) for p in avoid}
    out = []
    ring = Ring([("s", 1)])
    (s,) = ring.gens()
    e1 = [Fraction(1), Fraction(0), Fraction(0)]
    while len(out) < count:
        y = [Fraction(rng.randint(-height, height)) for _ in range(3)]
        if not any(y):
            continue
        conic = v.f.partial_eval({3: y[0], 4: y[1], 5: y[2]})
        if conic.is_zero():
            continue
        if conic.evaluate(e1 + [0, 0, 0]) != 0:
            raise ValueError("the x-conics do not pass through (1:0:0)")
        d = [Fraction(rng.randint(-height, height)) for _ in range(3)]
        img = [ring.const(e1[i]) + s.scale(d[i]) for i in range(3)] + [ring.zero()] * 3
        g = conic.subs(img, ring)
        a1, a2 = g.coeff((1,)), g.coeff((2,))
        if a2 == 0 or a1 == 0:
            continue
        x = la.normalize_projective([e1[i] - a1 / a2 * d[i] for i in range(3)])
        pt = (x, la.normalize_projective(y))
        if v(*pt) != 0:
            raise StructuralAnomaly("sampled point is not on the form")
        if pt not in out and x not in avoid and pt[1] not in avoid:
            out.append(pt)
    return out


def random_points_off(v: BidegreeForm22, rng: random.Random, count: int, height: int = 6):
    out = []
    while len(out) < count:
        x = [Fraction(rng.randint(-height, height)) for _ in range(3)]
        y = [Fraction(rng.randint(-height, height)) for _ in range(3)]
        if any(x) and any(y) and v(x, y) != 0:
            out.append((la.normalize_projective(x), la.normalize_projective(y)))
    return out


def quartic_interpolation(images: Sequence[Sequence]) -> tuple[int, list[list[Fraction]]]:
    """(rank, kernel) of the quartic-monomial evaluation matrix at points of P^4."""
    mons = monomials(5, 4)
    rows = [[P4.monomial(e).evaluate(list(p)) for e in mons] for p in images]
    ker = la.kernel_basis(rows, len(mons))
    return len(mons) - len(ker), ker


@dataclass
class IgusaReport:
    forms_dim: int
    ramification_matches: bool
    samples_on: int
    interpolation_rank: int
    quartic_space_dim: int
    quartic: MultiPoly | None
    jac_on: list[int]
    jac_off: list[int]
    fiber_sizes: list[int]
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "forms_11_dim": self.forms_dim,
            "ramification_matches": self.ramification_matches,
            "samples_on": self.samples_on,
            "interpolation_rank": self.interpolation_rank,
            "quartic_space_dim": self.quartic_space_dim,
            "quartic": self.quartic.to_json() if self.quartic is not None else None,
            "jacobian_rank_on": sorted(set(self.jac_on)),
            "jacobian_rank_off": sorted(set(self.jac_off)),
            "fiber_sizes": self.fiber_sizes,
            **self.extra,
        }


def phi_and_igusa(
    v: BidegreeForm22,
    points: Sequence[Sequence] = STANDARD_POINTS,
    samples: int = 60,
    jac_samples: int = 50,
    fibers: int = 20,
    seed: int = 0,
) -> IgusaReport:
    phi = phi_map(points)
    ram = ramification_form(phi)
    matches = ram.f.proportional_to(v.f) is not None
    rng = random.Random(seed)
    # {u_i} x P^2 and P^2 x {u_i} are contracted by phi, so they are not sampled
    on = points_on_form(v, rng, max(samples, jac_samples), avoid=phi.points)
    images = [phi(*p) for p in on[:samples]]
    rank, ker = quartic_interpolation(images)
    quartic = MultiPoly.from_vector(P4, monomials(5, 4), ker[0]) if len(ker) == 1 else None
    jac_on = [phi.projective_rank(*p) for p in on[:jac_samples]]
    off = random_points_off(v, rng, jac_samples)
    jac_off = [phi.projective_rank(*p) for p in off]
    hyper = exceptional_hyperplanes(phi)
    sizes = []
    while len(sizes) < fibers:
        (x, y), = random_points_off(v, rng, 1)
        w = phi(x, y)
        # over these hyperplanes the second preimage lies on an exceptional divisor
        if any(sum(a * b for a, b in zip(h, w)) == 0 for h in hyper):
            continue
        sizes.append(len(fiber(phi, x, y, seed=seed)))
    return IgusaReport(len(phi.forms), matches, len(on), rank, len(ker), quartic, jac_on, jac_off, sizes)
