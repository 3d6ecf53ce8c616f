"""Finite-field enumeration of singular points of (2,2) forms on P^2 x P^2.

The scan is exhaustive over P^2(F_p) x P^2(F_p).  Arithmetic uses int64
numpy arrays; every product is reduced mod p before the next accumulation,
so no intermediate exceeds 6 * p^2.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import BadPrimeError
from .poly import MultiPoly, monomials

MON2 = monomials(3, 2)  # x1^2, x1x2, x1x3, x2^2, x2x3, x3^2


def projective_points(p: int) -> np.ndarray:
    """Normalized representatives of P^2(F_p): (1,a,b), (0,1,b), (0,0,1)."""
    a, b = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    first = np.stack([np.ones(p * p, dtype=np.int64), a.ravel(), b.ravel()], axis=1)
    second = np.stack([np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64), np.arange(p)], axis=1)
    third = np.array([[0, 0, 1]], dtype=np.int64)
    return np.concatenate([first, second, third]).astype(np.int64)


def _mon_values(pts: np.ndarray, p: int) -> np.ndarray:
    cols = []
    for e in MON2:
        v = np.ones(len(pts), dtype=np.int64)
        for i, k in enumerate(e):
            for _ in range(k):
                v = v * pts[:, i] % p
        cols.append(v)
    return np.stack(cols, axis=1)


def _mon_partials(pts: np.ndarray, p: int) -> list[np.ndarray]:
    """For each variable j, the values of d(monomial)/d(z_j) at pts."""
    out = []
    for j in range(3):
        cols = []
        for e in MON2:
            if e[j] == 0:
                cols.append(np.zeros(len(pts), dtype=np.int64))
                continue
            e2 = list(e)
            e2[j] -= 1
            v = np.full(len(pts), e[j] % p, dtype=np.int64)
            for i, k in enumerate(e2):
                for _ in range(k):
                    v = v * pts[:, i] % p
            cols.append(v)
        out.append(np.stack(cols, axis=1))
    return out


def coefficient_matrix(f: MultiPoly, p: int) -> np.ndarray:
    """C with f = sum C[a, b] x^a y^b over degree-2 monomials, reduced mod p."""
    if p < 3:
        raise BadPrimeError("need an odd prime")
    idx = {e: i for i, e in enumerate(MON2)}
    c = np.zeros((6, 6), dtype=np.int64)
    for e, v in f.terms.items():
        if v.denominator % p == 0:
            raise BadPrimeError(f"prime {p} divides a denominator")
        c[idx[e[:3]], idx[e[3:]]] = v.numerator * pow(v.denominator, -1, p) % p
    return c


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # entries of a and b are < p and the inner dimension is 6, so int64 is exact
    return (a @ b) % p


def scan_grid(f: MultiPoly, p: int, tile: int = 256) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Literal scan of all pairs (x, y), checking f and the six partials.

    Processes x in tiles; for each tile the three y-partials are evaluated on
    the full y grid, and only survivors have f and the x-partials checked.
    """
    if not la.is_prime(p) or p == 2:
        raise BadPrimeError(f"{p} is not an odd prime")
    c = coefficient_matrix(f, p)
    pts = projective_points(p)
    ymon = _mon_values(pts, p)  # N x 6
    ydiff = _mon_partials(pts, p)  # 3 of N x 6
    xmon_all = _mon_values(pts, p)
    xdiff_all = _mon_partials(pts, p)
    ydiff_t = [d.T.copy() for d in ydiff]
    found = []
    n = len(pts)
    for start in range(0, n, tile):
        stop = min(n, start + tile)
        xc = _matmul_mod(xmon_all[start:stop], c, p)  # T x 6 : coefficients of the y-quadric
        mask = None
        for d in ydiff_t:
            vals = _matmul_mod(xc, d, p)
            z = vals == 0
            mask = z if mask is None else (mask & z)
            if not mask.any():
                break
        if not mask.any():
            continue
        for ti, yi in zip(*np.nonzero(mask)):
            xi = start + ti
            yv = ymon[yi]
            ok = int(xc[ti] @ yv % p) == 0
            if ok:
                for d in xdiff_all:
                    if int(((d[xi] @ c) % p) @ yv % p) != 0:
                        ok = False
                        break
            if ok:
                found.append((tuple(int(a) for a in pts[xi]), tuple(int(a) for a in pts[yi])))
    found.sort()
    return found


def _kernel_points_mod(m: list[list[int]], p: int) -> list[tuple[int, ...]]:
    """Projective points of the kernel of a 3 x 3 matrix mod p (normalized)."""
    rows = [list(r) for r in m]
    # row reduce
    piv_cols = []
    r = 0
    for col in range(3):
        piv = next((i for i in range(r, 3) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [a * inv % p for a in rows[r]]
        for i in range(3):
            if i != r and rows[i][col] % p:
                fct = rows[i][col]
                rows[i] = [(a - fct * b) % p for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    free = [c for c in range(3) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [0, 0, 0]
        v[fc] = 1
        for row, pc in zip(rows, piv_cols):
            v[pc] = -row[fc] % p
        basis.append(v)
    if not basis:
        return []
    if len(basis) == 3:
        return [tuple(int(a) for a in v) for v in projective_points(p)]
    pts = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [sum(cf * b[i] for cf, b in zip(coeffs, basis)) % p for i in range(3)]
        lead = next(a for a in v if a)
        inv = pow(lead, -1, p)
        pts.add(tuple(a * inv % p for a in v))
    return sorted(pts)


def scan_kernel(f: MultiPoly, p: int, tile: int = 4096) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Independent route: for each x, y must lie in the kernel of the conic matrix of f(x, .)."""
    if not la.is_prime(p) or p == 2:
        raise BadPrimeError(f"{p} is not an odd prime")
    c = coefficient_matrix(f, p)
    pts = projective_points(p)
    xmon = _mon_values(pts, p)
    inv2 = pow(2, -1, p)
    found = []
    xdiff = _mon_partials(pts, p)
    for start in range(0, len(pts), tile):
        q = _matmul_mod(xmon[start:start + tile], c, p)  # coefficients in MON2 of y
        # symmetric matrix of the y-conic
        a11, a12, a13, a22, a23, a33 = (q[:, i] for i in range(6))
        m = [
            [a11, a12 * inv2 % p, a13 * inv2 % p],
            [a12 * inv2 % p, a22, a23 * inv2 % p],
            [a13 * inv2 % p, a23 * inv2 % p, a33],
        ]
        det = (
            m[0][0] * ((m[1][1] * m[2][2] - m[1][2] * m[2][1]) % p)
            - m[0][1] * ((m[1][0] * m[2][2] - m[1][2] * m[2][0]) % p)
            + m[0][2] * ((m[1][0] * m[2][1] - m[1][1] * m[2][0]) % p)
        ) % p
        for ti in np.nonzero(det == 0)[0]:
            mat = [[int(m[i][j][ti]) for j in range(3)] for i in range(3)]
            xi = start + ti
            for y in _kernel_points_mod(mat, p):
                yv = np.array(y, dtype=np.int64)
                ym = _mon_values(yv[None, :], p)[0]
                if all(int(((d[xi] @ c) % p) @ ym % p) == 0 for d in xdiff):
                    found.append((tuple(int(a) for a in pts[xi]), y))
    found.sort()
    return found


def reduce_point(pt: Sequence[Fraction], p: int) -> tuple[int, ...] | None:
    """Normalized reduction of a rational projective point mod p (None if it degenerates).

    The point is first scaled to a primitive integer vector, so denominators
    divisible by p do not matter.
    """
    fr = [Fraction(a) for a in pt]
    den = math.lcm(*(a.denominator for a in fr))
    ints = [int(a * den) for a in fr]
    g = math.gcd(*ints)
    if g == 0:
        return None
    v = [(a // g) % p for a in ints]
    lead = next((a for a in v if a), None)
    if lead is None:
        return None
    inv = pow(lead, -1, p)
    return tuple(a * inv % p for a in v)


def lift_coordinate_tuple(
    residues: Sequence[Sequence[int]], primes: Sequence[int], height: int
) -> tuple[Fraction, ...] | None:
    """CRT-combine normalized residue vectors and rationally reconstruct each entry."""
    out = []
    n = len(residues[0])
    for i in range(n):
        a, m = la.crt([r[i] for r in residues], primes)
        bound = min(height, la.math.isqrt(m // 2))
        q = la.rational_reconstruct(a, m, bound)
        if q is None:
            return None
        out.append(q)
    return tuple(out)
