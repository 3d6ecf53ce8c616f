"""Exact linear algebra over Q and over prime fields.

Matrices are plain lists of rows.  Entries are coerced to ``Fraction`` on
entry, so integer input is fine.  Nothing here mutates its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def to_matrix(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[as_scalar(a) for a in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = to_matrix(rows)
    if not m:
        return [], []
    n = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        row = [a * inv for a in m[r]]
        m[r] = row
        nz = [j for j in range(c, n) if row[j] != 0]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    mi = m[i]
                    for j in nz:
                        mi[j] -= f * row[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Canonical basis of the right kernel, one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f`` and zeros at
    every other free column.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_space(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Canonical basis (RREF rows) of the row space."""
    return rref(rows)[0]


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of a x = b, or None when inconsistent.  Free variables are 0."""
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def in_span(vec: Sequence, rows: Sequence[Sequence]) -> bool:
    if not rows:
        return all(as_scalar(a) == 0 for a in vec)
    return rank(list(rows) + [vec]) == rank(rows)


def intersect_spaces(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis (canonical) of the intersection of two row spaces."""
    if not a or not b:
        return []
    n = len(a[0])
    # columns: coefficients of a-rows then b-rows; solve sum ca_i a_i = sum cb_j b_j
    cols = [list(r) for r in a] + [[-x for x in r] for r in b]
    m = [[as_scalar(cols[k][i]) for k in range(len(cols))] for i in range(n)]
    ker = kernel_basis(m, len(cols))
    out = []
    for v in ker:
        out.append([sum((v[k] * as_scalar(a[k][i]) for k in range(len(a))), Fraction(0)) for i in range(n)])
    return row_space(out) if out else []


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((as_scalar(x) * as_scalar(y) for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> list[Fraction]:
    n = len(m[0])
    out = [Fraction(0)] * n
    for vi, row in zip(v, m):
        if vi != 0:
            for j in range(n):
                if row[j] != 0:
                    out[j] += vi * row[j]
    return out


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*m)]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(m: Sequence[Sequence]) -> Fraction:
    """Bareiss fraction-free elimination."""
    a = to_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("det of a non-square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def normalize_projective(v: Sequence) -> tuple[Fraction, ...]:
    """Scale so the first nonzero coordinate is 1."""
    v = [as_scalar(a) for a in v]
    for a in v:
        if a != 0:
            return tuple(x / a for x in v)
    raise ValueError("zero vector is not a projective point")


def proportional(u: Sequence, v: Sequence) -> Fraction | None:
    """The scalar c with u = c v, or None.  Both vectors must be nonzero."""
    c = None
    for a, b in zip(u, v):
        a, b = as_scalar(a), as_scalar(b)
        if b == 0:
            if a != 0:
                return None
            continue
        if c is None:
            c = a / b
            if c == 0:
                return None
        elif a != c * b:
            return None
    return c


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix; thin wrapper over the list-of-rows helpers."""

    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "RatMatrix":
        return cls(tuple(tuple(as_scalar(a) for a in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        return rank(self.entries)

    def rref(self) -> "RatMatrix":
        return RatMatrix.of(rref(self.entries)[0])

    def kernel(self) -> list[list[Fraction]]:
        return kernel_basis(self.entries, self.cols)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


# ---------------------------------------------------------------------------
# prime fields


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class BadPrime(ValueError):
    pass


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise BadPrime(f"{self.p} is not an odd prime")

    def reduce(self, q) -> int:
        q = as_scalar(q)
        if q.denominator % self.p == 0:
            raise BadPrime(f"denominator {q.denominator} divisible by {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def rank(self, rows: Sequence[Sequence]) -> int:
        p = self.p
        m = [[self.reduce(a) for a in row] for row in rows]
        if not m:
            return 0
        n = len(m[0])
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = pow(m[r][c], -1, p)
            m[r] = [a * inv % p for a in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
        return r


def rational_reconstruct(a: int, m: int, bound: int | None = None) -> Fraction | None:
    """Find n/d = a mod m with |n|, d <= bound (default floor(sqrt(m/2)))."""
    if bound is None:
        bound = math.isqrt(m // 2)
    a %= m
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if (r1 - s1 * a) % m:
        return None
    return Fraction(r1, s1)


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    a, m = 0, 1
    for r, p in zip(residues, moduli):
        t = ((r - a) % p) * pow(m % p, -1, p) % p
        a, m = a + m * t, m * p
    return a % m, m
