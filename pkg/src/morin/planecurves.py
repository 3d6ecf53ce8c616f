"""Plane curve helpers: multiplicities, tangent directions, singular points."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from . import modp
from .poly import MultiPoly, Ring, monomials, rational_roots

P2 = Ring([("z", 3)])
TUV = Ring([("t", 1), ("u", 2)])


def plane_line(a: Sequence, b: Sequence) -> MultiPoly:
    """Linear form vanishing at the points a and b."""
    a = [la.as_scalar(v) for v in a]
    b = [la.as_scalar(v) for v in b]
    c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    z = P2.gens()
    return sum((z[i].scale(c[i]) for i in range(3)), P2.zero())


def cross(a, b) -> list[Fraction]:
    a = [la.as_scalar(v) for v in a]
    b = [la.as_scalar(v) for v in b]
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _complement_pair(p: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Two vectors completing p to a basis of Q^3."""
    units = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    for a, b in itertools.combinations(units, 2):
        if la.det([list(p), a, b]) != 0:
            return a, b
    raise ValueError("zero point")


def local_expansion(f: MultiPoly, p: Sequence) -> MultiPoly:
    """f(t p + u1 a + u2 b) in the ring (t; u1, u2) for a basis completion a, b."""
    p = [la.as_scalar(v) for v in p]
    a, b = _complement_pair(p)
    t, u1, u2 = TUV.gens()
    img = [t.scale(p[i]) + u1.scale(a[i]) + u2.scale(b[i]) for i in range(3)]
    return f.subs(img, TUV)


def multiplicity_at(f: MultiPoly, p: Sequence) -> int:
    g = local_expansion(f, p)
    return min((e[1] + e[2] for e in g.terms), default=-1)


def tangent_cone(f: MultiPoly, p: Sequence) -> tuple[int, list[Fraction], list[Fraction], list[Fraction]]:
    """(multiplicity m, binary form coefficients in (u1:u2), a, b).

    The binary form is the degree-m part of f(p + u1 a + u2 b); coefficients
    are listed by the power of u1, constant first when u2 = 1.
    """
    p = [la.as_scalar(v) for v in p]
    a, b = _complement_pair(p)
    g = local_expansion(f, p)
    m = min(e[1] + e[2] for e in g.terms)
    coeffs = [Fraction(0)] * (m + 1)
    for e, c in g.terms.items():
        if e[1] + e[2] == m:
            coeffs[e[1]] += c
    return m, coeffs, a, b


def tangent_directions(f: MultiPoly, p: Sequence) -> list[list[Fraction]] | None:
    """Rational tangent directions at p as plane points, or None if they are not all rational and distinct."""
    m, coeffs, a, b = tangent_cone(f, p)
    roots = rational_roots(coeffs)
    dirs = [[r * a[i] + b[i] for i in range(3)] for r in roots]
    if coeffs[m] == 0:
        # u2 = 0 is a root: direction a
        k = 0
        while coeffs[m - k] == 0:
            k += 1
        if k == 1:
            dirs.append(list(a))
        else:
            return None
    if len(dirs) != m:
        return None
    return dirs


def is_ordinary_double(f: MultiPoly, p: Sequence) -> bool:
    """Multiplicity 2 with two distinct (possibly conjugate) tangents."""
    m, c, _, _ = tangent_cone(f, p)
    return m == 2 and c[1] * c[1] - 4 * c[0] * c[2] != 0


def points_on_line(f: MultiPoly, a: Sequence, b: Sequence) -> tuple[list[list[Fraction]], int]:
    """Rational points of f on the line a + t b (t in Q or infinity) away from a and b.

    Returns the points and the residual degree (degree of f restricted to the
    line with the vanishing orders at a and b removed).
    """
    a = [la.as_scalar(v) for v in a]
    b = [la.as_scalar(v) for v in b]
    s, t = Ring([("s", 2)]).gens()
    img = [s.scale(a[i]) + t.scale(b[i]) for i in range(3)]
    g = f.subs(img)
    d = f.total_degree()
    coeffs = [g.coeff((d - k, k)) for k in range(d + 1)]  # coefficient of t^k s^(d-k)
    if not any(coeffs):
        raise ValueError("the curve contains the line")
    lo = next(k for k in range(d + 1) if coeffs[k])
    hi = max(k for k in range(d + 1) if coeffs[k])
    reduced = coeffs[lo:hi + 1]
    roots = rational_roots(reduced)
    pts = [[a[i] + r * b[i] for i in range(3)] for r in roots if r != 0]
    return pts, hi - lo


def is_singular_point(f: MultiPoly, p: Sequence) -> bool:
    p = [la.as_scalar(v) for v in p]
    return f.evaluate(p) == 0 and all(g.evaluate(p) == 0 for g in f.gradient())


def _eval_mod_array(f: MultiPoly, pts: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(len(pts), dtype=np.int64)
    for e, c in f.terms.items():
        v = np.full(len(pts), c.numerator % p * pow(c.denominator, -1, p) % p, dtype=np.int64)
        for i, k in enumerate(e):
            for _ in range(k):
                v = v * pts[:, i] % p
        out = (out + v) % p
    return out


def singular_points_modp(f: MultiPoly, p: int) -> list[tuple[int, ...]]:
    pts = modp.projective_points(p)
    mask = np.ones(len(pts), dtype=bool)
    for g in f.gradient():
        mask &= _eval_mod_array(g, pts, p) == 0
    return [tuple(int(a) for a in pts[i]) for i in np.nonzero(mask)[0]]


def plane_singular_points(
    f: MultiPoly,
    primes: Sequence[int] = (1009, 1013, 1019),
    candidates: Sequence = (),
    height: int = 10000,
) -> tuple[list[tuple[Fraction, ...]], dict]:
    """Rational singular points of a plane curve, from mod-p scans with lifting.

    Returns (exactly verified points, per-prime counts).  A point that is
    singular mod every prime but does not lift is left out and shows up as a
    count mismatch.
    """
    scans = {p: set(singular_points_modp(f, p)) for p in primes}
    found = set()

    def accept(pt):
        if not any(pt):
            return
        q = la.normalize_projective(pt)
        if q in found or not is_singular_point(f, q):
            return
        found.add(q)
        for p in primes:
            r = modp.reduce_point(q, p)
            if r is not None:
                scans[p].discard(r)

    for c in candidates:
        accept(c)
    for p in primes:
        for r in sorted(scans[p]):
            q = modp.lift_coordinate_tuple([r], [p], height)
            if q:
                accept(q)
    pools = [sorted(scans[p]) for p in primes]
    if all(pools) and np.prod([len(x) for x in pools]) <= 200000:
        for combo in itertools.product(*pools):
            q = modp.lift_coordinate_tuple(list(combo), list(primes), height)
            if q:
                accept(q)
    counts = {p: len(set(singular_points_modp(f, p))) for p in primes}
    return sorted(found), counts


def plane_curve_from_points(points: Sequence[Sequence], degree: int) -> list[list[Fraction]]:
    """Kernel basis (coefficient vectors) of degree-d curves through the points."""
    mons = monomials(3, degree)
    rows = [[P2.monomial(e).evaluate(p) for e in mons] for p in points]
    return la.kernel_basis(rows, len(mons))


def multiplicity_conditions(p: Sequence, degree: int, mult: int) -> list[list[Fraction]]:
    """Linear conditions on degree-d curves for multiplicity >= mult at p."""
    mons = monomials(3, degree)
    rows = []
    for order in range(mult):
        for der in monomials(3, order):
            row = []
            for e in mons:
                g = P2.monomial(e)
                for i, k in enumerate(der):
                    for _ in range(k):
                        g = g.diff(i)
                row.append(g.evaluate(p))
            rows.append(row)
    return rows


def sympy_factor(f: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Factorization over Q of a polynomial, as (factor, exponent) pairs."""
    import sympy

    syms = sympy.symbols(" ".join(f.ring.names))
    if not isinstance(syms, tuple):
        syms = (syms,)
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** k for s, k in zip(syms, e)])
        for e, c in f.terms.items()
    )
    _, facs = sympy.factor_list(sympy.Poly(expr, *syms, domain="QQ"))
    out = []
    for fac, k in facs:
        terms = {}
        for mon, c in fac.terms():
            c = sympy.Rational(c)
            terms[tuple(int(a) for a in mon)] = Fraction(int(c.p), int(c.q))
        out.append((MultiPoly(f.ring, terms), int(k)))
    return out


def resultant_z3(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Sylvester resultant of two ternary forms with respect to the last variable."""
    from .poly import det_poly

    def coeffs(h):
        d = h.degree_in(2)
        out = [P2.zero() for _ in range(d + 1)]
        for e, c in h.terms.items():
            out[e[2]] = out[e[2]] + MultiPoly(P2, {(e[0], e[1], 0): c})
        return out[::-1]

    a, b = coeffs(f), coeffs(g)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = P2.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return det_poly(rows)


def common_rational_zeros(forms: Sequence[MultiPoly], seed: int = 0, attempts: int = 20) -> list[tuple[Fraction, ...]]:
    """Rational common zeros in P^2 of ternary forms with finitely many common zeros.

    Two random combinations are eliminated by a resultant after a random
    change of coordinates; each rational root is completed and checked
    against every form.
    """
    import random

    forms = [f for f in forms if not f.is_zero()]
    rng = random.Random(seed)
    z = P2.gens()
    for _ in range(attempts):
        t = [[Fraction(rng.randint(-4, 4)) for _ in range(3)] for _ in range(3)]
        if la.det(t) == 0:
            continue
        img = [sum((z[j].scale(t[i][j]) for j in range(3)), P2.zero()) for i in range(3)]
        tf = [f.subs(img) for f in forms]
        g = sum((f.scale(rng.randint(-9, 9)) for f in tf if f.total_degree() == tf[0].total_degree()), P2.zero())
        h = sum((f.scale(rng.randint(-9, 9)) for f in tf if f.total_degree() == tf[-1].total_degree()), P2.zero())
        if g.is_zero() or h.is_zero() or g.degree_in(2) < g.total_degree() or h.degree_in(2) < h.total_degree():
            continue
        res = resultant_z3(g, h)
        if res.is_zero():
            continue
        deg = res.total_degree()
        coeffs = [res.coeff((k, deg - k, 0)) for k in range(deg + 1)]  # in z1/z2, constant first
        ratios = [(r, Fraction(1)) for r in rational_roots(coeffs)]
        if coeffs[-1] == 0:
            ratios.append((Fraction(1), Fraction(0)))
        found = set()
        for a, b in ratios:
            restricted = [f.partial_eval({0: a, 1: b}) for f in tf]
            nz = [f for f in restricted if not f.is_zero()]
            if not nz:
                continue
            f0 = min(nz, key=lambda f: f.total_degree())
            c0 = [f0.coeff((0, 0, k)) for k in range(f0.degree_in(2) + 1)]
            for zv in rational_roots(c0):
                pt = [a, b, zv]
                if all(f.evaluate(pt) == 0 for f in tf):
                    found.add(la.normalize_projective(la.vec_mat(pt, la.transpose(t))))
        far = [t[i][2] for i in range(3)]
        if all(f.evaluate(far) == 0 for f in forms):
            found.add(la.normalize_projective(far))
        return sorted(found)
    raise ValueError("could not eliminate")
