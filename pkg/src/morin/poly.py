"""Sparse multivariate polynomials over Q with a block grading.

A polynomial lives in a ``Ring``: an ordered list of named blocks, each with a
number of variables.  Terms are stored as ``{exponent tuple: Fraction}`` with
no zero coefficients.  Monomials are compared by graded lex (total degree
first, then lex with the first variable largest).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .linalg import as_scalar


class NotASquare(Exception):
    """Raised by :func:`poly_sqrt` when the input is not a square over Q."""


class Ring:
    """Block structure and variable names.  Instances are interned."""

    _cache: dict = {}

    def __new__(cls, blocks: Sequence[tuple[str, int]]):
        key = tuple((str(n), int(k)) for n, k in blocks)
        r = cls._cache.get(key)
        if r is None:
            r = super().__new__(cls)
            r.blocks = key
            r.arity = sum(k for _, k in key)
            offs, o = {}, 0
            for n, k in key:
                offs[n] = (o, o + k)
                o += k
            r.offsets = offs
            r.names = tuple(f"{n}{i + 1}" for n, k in key for i in range(k))
            cls._cache[key] = r
        return r

    def __repr__(self):
        return f"Ring({list(self.blocks)})"

    def __reduce__(self):
        return (Ring, (self.blocks,))

    def block_range(self, name: str) -> range:
        if name not in self.offsets:
            raise KeyError(f"no block named {name!r}")
        a, b = self.offsets[name]
        return range(a, b)

    def gens(self, name: str | None = None) -> list["MultiPoly"]:
        idx = range(self.arity) if name is None else self.block_range(name)
        return [self.var(i) for i in idx]

    def var(self, i: int) -> "MultiPoly":
        e = [0] * self.arity
        e[i] = 1
        return MultiPoly(self, {tuple(e): Fraction(1)})

    def const(self, c) -> "MultiPoly":
        c = as_scalar(c)
        return MultiPoly(self, {(0,) * self.arity: c} if c else {})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def monomial(self, exp: Sequence[int], coeff=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exp): as_scalar(coeff)})


def grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, descending grlex."""
    return list(_monomials(nvars, degree))


@lru_cache(maxsize=None)
def _monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


def multi_monomials(sizes: Sequence[int], degrees: Sequence[int]) -> list[tuple[int, ...]]:
    """Exponents of a given multidegree over consecutive blocks."""
    parts = [monomials(k, d) for k, d in zip(sizes, degrees)]
    return [sum(p, ()) for p in itertools.product(*parts)]


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.ring = ring
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[tuple(e)] = c if isinstance(c, Fraction) else as_scalar(c)
        self.terms = t
        self._hash = None

    # -- basic protocol -------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({self.to_str()})"

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.sorted_exps():
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.ring.arity: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.blocks, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_exps(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = as_scalar(c)
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        t: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly(self.ring, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            raise TypeError("use divmod_var or exact_div for polynomial division")
        return self.scale(1 / as_scalar(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- degrees --------------------------------------------------------
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def block_degree(self, name: str) -> int:
        r = self.ring.block_range(name)
        return max((sum(e[i] for i in r) for e in self.terms), default=-1)

    def multidegrees(self) -> set[tuple[int, ...]]:
        out = set()
        for e in self.terms:
            out.add(tuple(sum(e[i] for i in self.ring.block_range(n)) for n, _ in self.ring.blocks))
        return out

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_multihomogeneous(self, degrees: Sequence[int] | None = None) -> bool:
        md = self.multidegrees()
        if degrees is None:
            return len(md) <= 1
        return md <= {tuple(degrees)}

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    # -- calculus and evaluation ----------------------------------------
    def diff(self, var: int) -> "MultiPoly":
        t = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = e[:var] + (k - 1,) + e[var + 1:]
                t[e2] = c * k
        return MultiPoly(self.ring, t)

    def partials(self, block: str) -> list["MultiPoly"]:
        return [self.diff(i) for i in self.ring.block_range(block)]

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.ring.arity)]

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [as_scalar(a) for a in point]
        if len(pt) != self.ring.arity:
            raise ValueError("point has wrong arity")
        cache: dict = {}
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    p = cache.get(key)
                    if p is None:
                        p = pt[i] ** k
                        cache[key] = p
                    v *= p
                    if not v:
                        break
            total += v
        return total

    def eval_mod(self, point: Sequence[int], p: int) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c.numerator * pow(c.denominator, -1, p)
            for i, k in enumerate(e):
                if k:
                    v = v * pow(point[i], k, p) % p
            total += v
        return total % p

    def subs(self, images: Sequence["MultiPoly"], ring: Ring | None = None) -> "MultiPoly":
        """Substitute variable i by images[i] (all in a common target ring)."""
        if len(images) != self.ring.arity:
            raise ValueError("need one image per variable")
        target = ring if ring is not None else images[0].ring
        imgs = [im if isinstance(im, MultiPoly) else target.const(im) for im in images]
        powers: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = imgs[i] ** k if k > 1 else imgs[i]
            return powers[key]

        out = target.zero()
        acc: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            for e2, c2 in term.terms.items():
                acc[e2] = acc.get(e2, 0) + c2
        out = MultiPoly(target, acc)
        return out

    def partial_eval(self, assignment: Mapping[int, Fraction]) -> "MultiPoly":
        """Substitute numbers for some variables, keeping the ring."""
        t: dict = {}
        for e, c in self.terms.items():
            v = c
            e2 = list(e)
            for i, val in assignment.items():
                if e[i]:
                    v *= as_scalar(val) ** e[i]
                    e2[i] = 0
            if v:
                k = tuple(e2)
                t[k] = t.get(k, 0) + v
        return MultiPoly(self.ring, t)

    def change_ring(self, ring: Ring, positions: Sequence[int]) -> "MultiPoly":
        """Relabel: variable i of self becomes variable positions[i] of ring."""
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.arity
            for i, k in enumerate(e):
                if k:
                    e2[positions[i]] += k
            t[tuple(e2)] = t.get(tuple(e2), 0) + c
        return MultiPoly(ring, t)

    # -- division -------------------------------------------------------
    def divmod_var(self, divisor: "MultiPoly", var: int) -> tuple["MultiPoly", "MultiPoly"]:
        """Division with remainder treating both as polynomials in ``var``.

        The coefficient of the top power of ``var`` in the divisor must be a
        nonzero constant.
        """
        d = divisor.degree_in(var)
        if d < 0:
            raise ZeroDivisionError("division by zero polynomial")
        top = {e: c for e, c in divisor.terms.items() if e[var] == d}
        if len(top) != 1 or any(k for i, k in enumerate(next(iter(top))) if i != var):
            raise ValueError("divisor is not monic (up to scalar) in the chosen variable")
        lc = next(iter(top.values()))
        rem = dict(self.terms)
        quo: dict = {}
        while True:
            dr = max((e[var] for e in rem), default=-1)
            if dr < d:
                break
            lead = [(e, c) for e, c in rem.items() if e[var] == dr]
            for e, c in lead:
                qe = e[:var] + (dr - d,) + e[var + 1:]
                qc = c / lc
                quo[qe] = quo.get(qe, 0) + qc
                for de, dc in divisor.terms.items():
                    k = tuple(a + b for a, b in zip(qe, de))
                    v = rem.get(k, 0) - qc * dc
                    if v:
                        rem[k] = v
                    else:
                        rem.pop(k, None)
        return MultiPoly(self.ring, quo), MultiPoly(self.ring, rem)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact quotient by multivariate division on leading terms; raises if inexact."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = divisor.leading()
        rem = self
        quo: dict = {}
        while rem.terms:
            e, c = rem.leading()
            q = tuple(a - b for a, b in zip(e, le))
            if min(q) < 0:
                raise ArithmeticError("not divisible")
            qc = c / lc
            quo[q] = qc
            rem = rem - divisor * MultiPoly(self.ring, {q: qc})
        return MultiPoly(self.ring, quo)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    # -- normalization --------------------------------------------------
    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading()[1])

    def proportional_to(self, other: "MultiPoly") -> Fraction | None:
        """c with self = c*other, or None."""
        if self.is_zero() or other.is_zero():
            return None
        if set(self.terms) != set(other.terms):
            return None
        e = next(iter(self.terms))
        c = self.terms[e] / other.terms[e]
        if all(self.terms[k] == c * other.terms[k] for k in self.terms):
            return c
        return None

    # -- coefficient vectors -------------------------------------------
    def coeff_vector(self, basis: Sequence[tuple[int, ...]]) -> list[Fraction]:
        idx = set(basis)
        extra = [e for e in self.terms if e not in idx]
        if extra:
            raise ValueError(f"term {extra[0]} outside the given monomial basis")
        return [self.terms.get(e, Fraction(0)) for e in basis]

    @classmethod
    def from_vector(cls, ring: Ring, basis: Sequence[tuple[int, ...]], vec: Sequence) -> "MultiPoly":
        return cls(ring, {e: as_scalar(c) for e, c in zip(basis, vec) if c})

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "blocks": [[n, k] for n, k in self.ring.blocks],
            "terms": [
                {
                    "exp": list(e),
                    "num": str(self.terms[e].numerator),
                    "den": str(self.terms[e].denominator),
                }
                for e in self.sorted_exps()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        ring = Ring([(n, k) for n, k in data["blocks"]])
        t = {}
        for term in data["terms"]:
            e = tuple(int(a) for a in term["exp"])
            if len(e) != ring.arity:
                raise ValueError("exponent length does not match blocks")
            t[e] = Fraction(int(term["num"]), int(term.get("den", "1")))
        return cls(ring, t)


def linear_form(ring: Ring, coeffs: Sequence, block: str | None = None) -> MultiPoly:
    gens = ring.gens(block)
    out = ring.zero()
    for c, g in zip(coeffs, gens):
        if c:
            out = out + g.scale(c)
    return out


def det_poly(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by Laplace expansion along rows, memoized on column sets."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("det_poly needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    ring = None
    for row in m:
        for a in row:
            if isinstance(a, MultiPoly):
                ring = a.ring
                break
        if ring:
            break
    if ring is None:
        raise ValueError("no polynomial entries to infer the ring from")
    mm = [[a if isinstance(a, MultiPoly) else ring.const(a) for a in row] for row in m]
    memo: dict = {}

    def minor(row: int, cols: int) -> MultiPoly:
        # determinant of rows row..n-1 with the column set encoded by bitmask cols
        if row == n:
            return ring.one()
        key = cols
        if key in memo:
            return memo[key]
        acc: dict = {}
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                a = mm[row][c]
                if a.terms:
                    sub = minor(row + 1, cols & ~(1 << c))
                    if sub.terms:
                        prod = a * sub
                        for e, v in prod.terms.items():
                            acc[e] = acc.get(e, 0) + (v if sign > 0 else -v)
                sign = -sign
        res = MultiPoly(ring, acc)
        memo[key] = res
        return res

    return minor(0, (1 << n) - 1)


def _qsqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    a, b = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if a * a == c.numerator and b * b == c.denominator:
        return Fraction(a, b)
    return None


def poly_sqrt(p: MultiPoly) -> MultiPoly:
    """Square root over Q, sign chosen so the leading coefficient is positive.

    Raises NotASquare when no such root exists.
    """
    ring = p.ring
    if p.is_zero():
        return p
    le, lc = p.leading()
    if any(k % 2 for k in le):
        raise NotASquare("leading monomial is not a square")
    s = _qsqrt(lc)
    if s is None:
        raise NotASquare("leading coefficient is not a rational square")
    qe = tuple(k // 2 for k in le)
    q_terms = {qe: s}
    twice_lead = (qe, 2 * s)
    q = MultiPoly(ring, q_terms)
    rem = p - q * q
    last = grlex_key(qe)
    while rem.terms:
        e, c = rem.leading()
        te = tuple(a - b for a, b in zip(e, twice_lead[0]))
        if min(te) < 0 or grlex_key(te) >= last:
            raise NotASquare("remainder leading term not reachable")
        t = MultiPoly(ring, {te: c / twice_lead[1]})
        last = grlex_key(te)
        # (q + t)^2 - q^2 = 2qt + t^2
        rem = rem - (q * t).scale(2) - t * t
        q = q + t
    return q


def symmetric_from_quadric(f: MultiPoly, block: str) -> list[list[MultiPoly]]:
    """Symmetric matrix a_ij (coefficients in the other variables) with f = sum a_ij x_i x_j."""
    rng = list(f.ring.block_range(block))
    n = len(rng)
    ring = f.ring
    mat = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for e, c in f.terms.items():
        degs = [e[v] for v in rng]
        if sum(degs) != 2:
            raise ValueError("form is not quadratic in the block")
        rest = list(e)
        for v in rng:
            rest[v] = 0
        mono = MultiPoly(ring, {tuple(rest): c})
        idx = [i for i in range(n) for _ in range(degs[i])]
        i, j = idx
        if i == j:
            mat[i][i] = mat[i][i] + mono
        else:
            half = mono.scale(Fraction(1, 2))
            mat[i][j] = mat[i][j] + half
            mat[j][i] = mat[j][i] + half
    return mat


def univariate_coeffs(f: MultiPoly, var: int) -> list[Fraction]:
    """Coefficients (constant term first) of a polynomial that only involves ``var``."""
    deg = f.degree_in(var)
    out = [Fraction(0)] * (deg + 1)
    for e, c in f.terms.items():
        if any(k for i, k in enumerate(e) if i != var):
            raise ValueError("polynomial involves other variables")
        out[e[var]] += c
    return out


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a univariate polynomial (constant term first)."""
    import sympy

    coeffs = [as_scalar(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    roots = set()
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.add(Fraction(int(r.p), int(r.q)))
    return sorted(roots)


def has_linear_factor(coeffs: Sequence[Fraction]) -> bool:
    """True if a binary form (given by dehomogenized coefficients) has a factor of degree 1 over Q."""
    coeffs = [as_scalar(c) for c in coeffs]
    # a root at infinity corresponds to a vanishing top coefficient
    if coeffs and coeffs[-1] == 0:
        return True
    return bool(rational_roots(coeffs))
