"""Nodal anticanonical-square curves on Y and the plane configurations they define.

A curve C in |-2K_Y| is stored through its plane model: a sextic S with
multiplicity m_i >= 2 at the base points, together with (m_i - 2) copies of
the exceptional line E_i.  The quadrics through C are those whose pullback
to P^2 is a multiple of S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx

from . import linalg as la
from . import delpezzo as dp
from . import planecurves as pc
from .errors import (
    MorinError,
    DegenerateMarking,
    NoRationalMemberFound,
    SingularLocusInHyperplane,
    StructuralAnomaly,
)
from .grassmann import (
    LagrangianSubspace,
    MarkedLagrangian,
    PlaneP5,
    build_v_threefold,
    plucker_of_plane,
    symplectic_pairing,
    tangential_coordinates,
)
from .poly import MultiPoly

P2 = pc.P2


@dataclass
class Component:
    """One component of C on Y."""

    pic: dp.PicClass
    genus: int
    kind: str  # "exceptional" or "plane"
    index: int | None = None  # base point for exceptional components
    plane_eq: MultiPoly | None = None

    @property
    def label(self) -> str:
        return self.pic.label()


@dataclass
class NodalCurve:
    surface: dp.DelPezzoQuintic
    plane_part: MultiPoly
    exceptional_mults: tuple[int, int, int, int]
    sing_points: list[tuple[Fraction, ...]]
    components: list[Component] = field(default_factory=list)
    node_labels: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def pic_class(self) -> dp.PicClass:
        d = self.plane_part.total_degree()
        m = [pc.multiplicity_at(self.plane_part, p) for p in self.surface.base_points]
        # dH - sum m_i E_i from the plane part, plus (m_i - 2) E_i components
        return dp.PicClass(d, tuple(mi - e for mi, e in zip(m, self.exceptional_mults)))

    def genus_identity(self) -> tuple[int, int, int, int]:
        """(sum of component genera, N, c, total) with total = sum g + N - c + 1."""
        g = sum(c.genus for c in self.components)
        n = len(self.sing_points)
        c = len(self.components)
        return g, n, c, g + n - c + 1

    def to_json(self) -> dict:
        return {
            "plane_part": self.plane_part.to_json(),
            "exceptional_mults": list(self.exceptional_mults),
            "pic_class": [self.pic_class.d, *self.pic_class.m],
            "sing_points": [[str(a) for a in p] for p in self.sing_points],
            "node_labels": list(self.node_labels),
            "components": [{"class": c.label, "genus": c.genus} for c in self.components],
        }


# ---------------------------------------------------------------------------
# C_l, the union of the ten lines


def line_plane_equation(y: dp.DelPezzoQuintic, ln: dp.Line) -> MultiPoly:
    ij = [k for k, v in enumerate(ln.pic.m) if v == 1]
    return pc.plane_line(y.base_points[ij[0]], y.base_points[ij[1]])


def curve_of_lines(y: dp.DelPezzoQuintic) -> NodalCurve:
    lines = dp.lines_on(y)
    plane = P2.one()
    comps = []
    for ln in lines:
        if ln.pic.d == 0:
            comps.append(Component(ln.pic, 0, "exceptional", index=ln.pic.m.index(-1) + 1))
        else:
            eq = line_plane_equation(y, ln)
            plane = plane * eq
            comps.append(Component(ln.pic, 0, "plane", plane_eq=eq))
    nodes, labels = [], []
    for a, b in itertools.combinations(range(10), 2):
        pt = dp.line_intersection_point(y, lines[a], lines[b])
        if pt is not None:
            nodes.append(tuple(pt))
            labels.append(f"{lines[a].label}.{lines[b].label}")
    return NodalCurve(y, plane, (1, 1, 1, 1), nodes, comps, labels, {"kind": "lines"})


# ---------------------------------------------------------------------------
# quadrics through C and nets at the nodes


def quadrics_through_curve(c: NodalCurve) -> list[list[Fraction]]:
    """Canonical basis (21-vectors) of quadrics whose pullback is a multiple of the plane sextic."""
    cache = c.info.setdefault("_cache", {})
    if "wc" in cache:
        return cache["wc"]
    y = c.surface
    pm = y.pullback_matrix()
    s = c.plane_part.coeff_vector(dp.SEXTICS)
    rows = [list(r) + [-si] for r, si in zip(pm, s)]
    ker = la.kernel_basis(rows, 22)
    wc = la.row_space([k[:21] for k in ker])
    cache["wc"] = wc
    return wc


def _gradients(basis: Sequence[Sequence], z: Sequence) -> list[list[Fraction]]:
    return [dp.QuadricP5.from_vector(q).gradient_at(z) for q in basis]


def node_rank(c: NodalCurve, z: Sequence) -> int:
    """Rank of the gradients at z of the quadrics through C (3 at a singular point of C on Y)."""
    return la.rank(_gradients(quadrics_through_curve(c), z))


def is_node_of(c: NodalCurve, z: Sequence) -> bool:
    wc = quadrics_through_curve(c)
    on = all(dp.QuadricP5.from_vector(q)(z) == 0 for q in wc)
    return on and node_rank(c, z) == 3


def net_at_node(c: NodalCurve, z: Sequence) -> list[list[Fraction]]:
    """Quadrics through C singular at z (canonical 21-vectors); dimension 3 at a node."""
    zt = la.normalize_projective(z)
    if zt not in {la.normalize_projective(p) for p in c.sing_points}:
        raise MorinError("z is not a listed singular point")
    wc = quadrics_through_curve(c)
    grads = _gradients(wc, z)  # rows: quadric k -> gradient vector
    ker = la.kernel_basis(la.transpose(grads), len(wc))
    if len(ker) != 3:
        raise StructuralAnomaly(f"net at node has dimension {len(ker)}")
    return la.row_space([dp.combine_quadrics(k, wc) for k in ker])


# ---------------------------------------------------------------------------
# configurations


@dataclass
class MorinConfiguration:
    planes: list[PlaneP5]
    labels: list[str]
    node_coords: list[tuple[Fraction, ...] | None]
    wc_basis: list[list[Fraction]]
    curve: NodalCurve | None = None

    def __len__(self):
        return len(self.planes)

    def plucker_vectors(self) -> list[list[Fraction]]:
        return [list(plucker_of_plane(p).coords) for p in self.planes]

    def span(self) -> list[list[Fraction]]:
        return la.row_space(self.plucker_vectors())

    def to_json(self) -> dict:
        out = {"ambient_dim": 6, "planes": [], "span_basis": [[str(a) for a in r] for r in self.span()]}
        for p, lab, z in zip(self.planes, self.labels, self.node_coords):
            d = {"label": lab, "basis": [[str(a) for a in r] for r in p.basis]}
            if z is not None:
                d["node_coords"] = [str(a) for a in z]
            out["planes"].append(d)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "MorinConfiguration":
        planes, labels, nodes = [], [], []
        for item in d["planes"]:
            planes.append(PlaneP5.of([[Fraction(a) for a in r] for r in item["basis"]]))
            labels.append(item["label"])
            nodes.append(tuple(Fraction(a) for a in item["node_coords"]) if "node_coords" in item else None)
        return cls(planes, labels, nodes, [], None)


def _net_in_wc(net: Sequence[Sequence], wc: Sequence[Sequence]) -> PlaneP5:
    wct = la.transpose(wc)
    coords = []
    for q in net:
        sol = la.solve(wct, q)
        if sol is None:
            raise StructuralAnomaly("net is not inside the quadrics through C")
        coords.append(sol)
    return PlaneP5.of(coords)


def build_configuration(c: NodalCurve) -> MorinConfiguration:
    y = c.surface
    if la.rank([list(p) for p in c.sing_points]) < 6:
        raise SingularLocusInHyperplane("the singular points of C lie in a hyperplane")
    wc = quadrics_through_curve(c)
    if len(wc) != 6:
        raise StructuralAnomaly(f"quadrics through C: dimension {len(wc)}")
    planes, labels, nodes = [], [], []
    for k, pen in enumerate(dp.conic_pencils(y)):
        planes.append(_net_in_wc(pen.net, wc))
        labels.append(f"h{k + 1}")
        nodes.append(None)
    for z in c.sing_points:
        planes.append(_net_in_wc(net_at_node(c, z), wc))
        labels.append("node")
        nodes.append(tuple(z))
    return MorinConfiguration(planes, labels, nodes, wc, c)


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    verdict: str
    length: int
    pairs_checked: int
    incidence_ok: bool
    witness: tuple[int, int] | None
    pairing_agrees: bool
    span_dim: int
    isotropic: bool
    marked_index: int | None = None
    expected_singular: int | None = None
    singular_counts: dict = field(default_factory=dict)
    lifted: int | None = None
    tangential_match: bool | None = None
    extra_points: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "length": self.length,
            "pairs_checked": self.pairs_checked,
            "incidence_ok": self.incidence_ok,
            "witness": list(self.witness) if self.witness else None,
            "pairing_agrees": self.pairing_agrees,
            "span_dim": self.span_dim,
            "isotropic": self.isotropic,
            "marked_index": self.marked_index,
            "expected_singular": self.expected_singular,
            "singular_counts": {str(k): v for k, v in sorted(self.singular_counts.items())},
            "lifted": self.lifted,
            "tangential_match": self.tangential_match,
            "extra_points": [{"x": [str(a) for a in x], "y": [str(a) for a in yv]} for x, yv in self.extra_points],
            "notes": list(self.notes),
        }


def marked_form(f: MorinConfiguration, index: int):
    """V_A of the span of f, marked at plane ``index``; also returns the tangential coordinates."""
    span = f.span()
    lag = LagrangianSubspace.of(span)
    u = f.planes[index]
    form = build_v_threefold(MarkedLagrangian(lag, u))
    tang = []
    for k, p in enumerate(f.planes):
        if k != index:
            tang.append(tangential_coordinates(p, u))
    return form, tang


def verify_morin(
    f: MorinConfiguration,
    primes: Sequence[int] = (101, 103, 107),
    marked: int | None = None,
    lift_height: int = 10000,
    tile: int = 256,
    completeness: bool = True,
) -> VerificationReport:
    from .vthreefold import point_key, singular_locus

    n = len(f.planes)
    witness = None
    agrees = True
    pl = f.plucker_vectors()
    for a, b in itertools.combinations(range(n), 2):
        inc = la.rank(f.planes[a].rows() + f.planes[b].rows()) < 6
        pair_zero = symplectic_pairing(pl[a], pl[b]) == 0
        if inc != pair_zero:
            agrees = False
        if not inc and witness is None:
            witness = (a, b)
    incidence_ok = witness is None
    span = la.row_space(pl)
    iso = all(symplectic_pairing(u, v) == 0 for u, v in itertools.combinations(span, 2))
    rep = VerificationReport(
        "fail", n, n * (n - 1) // 2, incidence_ok, witness, agrees, len(span), iso
    )
    if not incidence_ok:
        rep.notes.append(f"planes {witness[0]} and {witness[1]} are disjoint")
        return rep
    rep.verdict = "incident-but-incomplete"
    if len(span) != 10 or not iso:
        rep.notes.append("span is not a 10-dimensional isotropic subspace")
        return rep
    if not completeness:
        rep.notes.append("completeness cross-check skipped")
        return rep
    order = [marked] if marked is not None else [k for k, lab in enumerate(f.labels) if lab == "h5"] + list(range(n))
    form = tang = None
    for idx in order:
        try:
            form, tang = marked_form(f, idx)
        except (DegenerateMarking, MorinError) as exc:
            rep.notes.append(f"marking at plane {idx} rejected: {exc}")
            continue
        rep.marked_index = idx
        break
    if form is None:
        rep.notes.append("no plane of the configuration gives a valid marking")
        return rep
    rep.expected_singular = n - 1
    loc = singular_locus(form, primes, candidates=tang, lift_height=lift_height, tile=tile)
    rep.singular_counts = loc.counts
    rep.lifted = len(loc.rational)
    tang_keys = {point_key(*t) for t in tang}
    sing_keys = {point_key(r.x, r.y) for r in loc.rational}
    rep.tangential_match = tang_keys == sing_keys and len(tang_keys) == n - 1
    rep.extra_points = sorted(sing_keys - tang_keys)
    if all(c == n - 1 for c in loc.counts.values()) and rep.tangential_match and loc.consistent:
        rep.verdict = "morin"
    else:
        rep.notes.append("singular-point count of the marked threefold differs from |F| - 1")
    return rep


# ---------------------------------------------------------------------------
# curves from plane sextics


def nodal_curve_from_sextic(
    y: dp.DelPezzoQuintic,
    gamma: MultiPoly,
    plane_nodes: Sequence[Sequence] = (),
    primes: Sequence[int] = (1009, 1013, 1019),
) -> NodalCurve:
    """The curve on Y defined by a plane sextic with multiplicity >= 2 at the base points.

    Singular points of the sextic away from the base points map to nodes of
    C; a base point of multiplicity m >= 3 contributes E_i with multiplicity
    m - 2 and one node per tangent direction.
    """
    gamma = MultiPoly(P2, gamma.terms) if gamma.ring is not P2 else gamma
    if gamma.total_degree() != 6 or not gamma.is_homogeneous():
        raise MorinError("need a homogeneous plane sextic")
    mults = [pc.multiplicity_at(gamma, p) for p in y.base_points]
    if min(mults) < 2:
        raise MorinError("the sextic must be singular at every base point")
    sing, counts = pc.plane_singular_points(gamma, primes, candidates=plane_nodes)
    base = {la.normalize_projective(p) for p in y.base_points}
    nodes, labels = [], []
    for p in sing:
        if p in base:
            continue
        nodes.append(tuple(la.normalize_projective(y.embed(p))))
        labels.append("plane:" + ",".join(str(a) for a in p))
    ex = []
    for i, (p, m) in enumerate(zip(y.base_points, mults)):
        ex.append(m - 2)
        if m >= 3:
            dirs = pc.tangent_directions(gamma, p)
            if dirs is None:
                raise MorinError(f"tangent directions at base point {i + 1} are not rational and distinct")
            for d in dirs:
                nodes.append(tuple(la.normalize_projective(y.exceptional_point(i + 1, d))))
                labels.append(f"E{i + 1}:" + ",".join(str(a) for a in la.normalize_projective(d)))
        if m > 3:
            raise MorinError("multiplicity above 3 at a base point is not supported")
    comps = []
    for fac, k in pc.sympy_factor(gamma):
        if k != 1:
            raise MorinError("the sextic is not reduced")
        d = fac.total_degree()
        fm = [pc.multiplicity_at(fac, p) for p in y.base_points]
        delta = 0
        for p in sing:
            mu = pc.multiplicity_at(fac, p)
            if mu >= 2:
                delta += mu * (mu - 1) // 2
        genus = (d - 1) * (d - 2) // 2 - delta
        comps.append(Component(dp.PicClass(d, tuple(fm)), genus, "plane", plane_eq=fac))
    for i, e in enumerate(ex):
        for _ in range(e):
            comps.append(Component(dp.E(i + 1), 0, "exceptional", index=i + 1))
    curve = NodalCurve(y, gamma, tuple(ex), nodes, comps, labels, {"kind": "sextic", "plane_singular_counts": counts})
    for z in nodes:
        if not is_node_of(curve, z):
            raise StructuralAnomaly("a listed point is not singular on C")
    return curve


# ---------------------------------------------------------------------------
# partial smoothings


LINE_LABELS = ["E1", "E2", "E3", "E4", "L12", "L13", "L14", "L23", "L24", "L34"]


def parse_vertex(v) -> int:
    if isinstance(v, int):
        return v
    s = str(v).strip().upper().replace("H-E", "L").replace("-E", "")
    if s in LINE_LABELS:
        return LINE_LABELS.index(s)
    raise ValueError(f"unknown line label {v!r}")


@dataclass
class SmoothingReport:
    path: list[str]
    L: dp.PicClass
    n: int
    computed_nodes: int
    surviving_edges: int
    new_intersections: int
    paper_count: int  # the "15 - n" reading
    vertex_reading: int  # 16 - n
    genus_identity: tuple
    attempts: int
    D: MultiPoly | None = None

    def to_json(self) -> dict:
        return {
            "path": self.path,
            "L": self.L.label(),
            "n": self.n,
            "computed_nodes": self.computed_nodes,
            "surviving_edges": self.surviving_edges,
            "C_minus_L_dot_L": self.new_intersections,
            "count_15_minus_n": self.paper_count,
            "count_16_minus_n": self.vertex_reading,
            "genus_identity": list(self.genus_identity),
            "attempts": self.attempts,
            "D": self.D.to_json() if self.D is not None else None,
        }


def _grid_values(budget: int) -> list[Fraction]:
    vals = {Fraction(0)}
    for h in range(1, budget + 1):
        for num in range(-h, h + 1):
            for den in range(1, h + 1):
                vals.add(Fraction(num, den))
    return sorted(vals, key=lambda q: (max(abs(q.numerator), q.denominator), q < 0, abs(q)))


def _tuples_by_height(vals: list, k: int, limit: int):
    """Tuples of length k over vals, ordered by the largest index used."""
    count = 0
    if k == 0:
        yield ()
        return
    for top in range(len(vals)):
        for tup in itertools.product(range(top + 1), repeat=k):
            if max(tup) != top:
                continue
            yield tuple(vals[i] for i in tup)
            count += 1
            if count >= limit:
                return


def partial_smoothing(
    y: dp.DelPezzoQuintic,
    path: Sequence,
    budget: int = 8,
    max_attempts: int = 20000,
) -> tuple[NodalCurve, SmoothingReport]:
    lines = dp.lines_on(y)
    verts = [parse_vertex(v) for v in path]
    if len(set(verts)) != len(verts):
        raise ValueError("repeated vertex in path")
    n = len(verts)
    if not 2 <= n <= 5:
        raise ValueError("path must have between 2 and 5 vertices")
    g = dp.line_graph(lines)
    sub = g.subgraph(verts)
    if not nx.is_connected(sub):
        raise ValueError("vertex set is not connected in the Petersen graph")
    if not nx.is_tree(sub):
        raise ValueError("vertex set contains a cycle (genus-0 condition fails)")
    L = dp.PicClass(0, (0, 0, 0, 0))
    for v in verts:
        L = L + lines[v].pic
    if any(m < 0 for m in L.m) or L.d < 1:
        raise ValueError(f"class {L.label()} has a fixed exceptional component")
    d, m = L.d, L.m
    rest = [k for k in range(10) if k not in verts]
    new_int = sum(lines[k].pic.dot(L) for k in rest)
    # linear conditions on D
    base_rows = []
    for i, p in enumerate(y.base_points):
        if m[i]:
            base_rows += pc.multiplicity_conditions(p, d, m[i])
    old_nodes = []
    for a, b in itertools.combinations(rest, 2):
        pt = dp.line_intersection_point(y, lines[a], lines[b])
        if pt is not None:
            old_nodes.append((tuple(pt), f"{lines[a].label}.{lines[b].label}"))
    surviving = len(old_nodes)
    # lines of the plane needing prescribed points
    prescribe = []  # (line index, number of extra points)
    for k in rest:
        ln = lines[k]
        if ln.pic.d == 1:
            ij = [t for t, v in enumerate(ln.pic.m) if v == 1]
            r = d - m[ij[0]] - m[ij[1]]
            if r >= 2:
                prescribe.append((k, r - 1, ij))
        else:
            i = ln.pic.m.index(-1)
            if m[i] >= 2:
                prescribe.append((k, m[i] - 1, [i]))
    mons = pc.monomials(3, d)
    vals = _grid_values(budget)
    attempts = 0
    n_pres = sum(c for _, c, _ in prescribe)
    pres_vals = [v for v in vals if v not in (0,)]
    for pres in _tuples_by_height(pres_vals, n_pres, 200):
        rows = list(base_rows)
        pos = 0
        for k, cnt, ij in prescribe:
            for j in range(cnt):
                t = pres[pos]
                pos += 1
                if len(ij) == 2:
                    a, b = y.base_points[ij[0]], y.base_points[ij[1]]
                    pt = [a[s] + t * b[s] for s in range(3)]
                    rows.append([P2.monomial(e).evaluate(pt) for e in mons])
                else:
                    # prescribe a tangent direction at the base point
                    p = y.base_points[ij[0]]
                    a2, b2 = pc._complement_pair(list(p))
                    dvec = [t * a2[s] + b2[s] for s in range(3)]
                    rows.append(_tangent_condition(p, dvec, d, m[ij[0]], mons))
        ker = la.kernel_basis(rows, len(mons)) if rows else [[Fraction(int(i == j)) for j in range(len(mons))] for i in range(len(mons))]
        if not ker:
            continue
        for coeffs in _tuples_by_height(vals, len(ker) - 1, max_attempts):
            attempts += 1
            if attempts > max_attempts:
                break
            vec = list(ker[0])
            for c, kv in zip(coeffs, ker[1:]):
                if c:
                    vec = [a + c * b for a, b in zip(vec, kv)]
            D = MultiPoly.from_vector(P2, mons, vec)
            result = _try_member(y, lines, verts, rest, L, D, old_nodes, new_int)
            if result is not None:
                curve = result
                gi = curve.genus_identity()
                report = SmoothingReport(
                    [lines[v].label for v in verts], L, n, len(curve.sing_points), surviving, new_int,
                    15 - n, 16 - n, gi, attempts, D,
                )
                curve.info["smoothing"] = report
                return curve, report
        if attempts > max_attempts:
            break
    raise NoRationalMemberFound(
        f"no rational member of |{L.label()}| found", attempted={"budget": budget, "attempts": attempts}
    )


def _tangent_condition(p, dvec, d, mult, mons) -> list[Fraction]:
    """Linear condition: the degree-mult part of D at p vanishes in direction dvec."""
    return [_directional_part(P2.monomial(e), p, dvec, mult) for e in mons]


def _directional_part(f: MultiPoly, p, dvec, mult) -> Fraction:
    """Coefficient of s^mult in f(p + s dvec)."""
    ring = pc.Ring([("s", 1)])
    s = ring.gens()[0]
    img = [ring.const(p[i]) + s.scale(dvec[i]) for i in range(3)]
    g = f.subs(img, ring)
    return g.coeff((mult,))


def _try_member(y, lines, verts, rest, L, D: MultiPoly, old_nodes, new_int) -> NodalCurve | None:
    d = L.d
    m = L.m
    if D.is_zero():
        return None
    # exact multiplicities
    for i, p in enumerate(y.base_points):
        if pc.multiplicity_at(D, p) != m[i]:
            return None
    facs = pc.sympy_factor(D)
    if len(facs) != 1 or facs[0][1] != 1:
        return None
    if d == 2:
        mat = [[Fraction(0)] * 3 for _ in range(3)]
        for e, c in D.terms.items():
            idx = [i for i in range(3) for _ in range(e[i])]
            a, b = idx
            if a == b:
                mat[a][a] += c
            else:
                mat[a][b] += c / 2
                mat[b][a] += c / 2
        if la.det(mat) == 0:
            return None
    new_nodes = []
    for k in rest:
        ln = lines[k]
        if ln.pic.d == 0:
            i = ln.pic.m.index(-1)
            if m[i] == 0:
                continue
            dirs = pc.tangent_directions(D, y.base_points[i])
            if dirs is None:
                return None
            for dv in dirs:
                new_nodes.append((tuple(la.normalize_projective(y.exceptional_point(i + 1, dv))), f"D.{ln.label}"))
        else:
            ij = [t for t, v in enumerate(ln.pic.m) if v == 1]
            a, b = y.base_points[ij[0]], y.base_points[ij[1]]
            try:
                pts, resid = pc.points_on_line(D, a, b)
            except ValueError:
                return None
            expect = d - m[ij[0]] - m[ij[1]]
            if resid != expect or len(pts) != expect:
                return None
            for pt in pts:
                w = y.embed(pt)
                if not any(w):
                    return None
                new_nodes.append((tuple(la.normalize_projective(w)), f"D.{ln.label}"))
    if len(new_nodes) != new_int:
        return None
    allpts = [p for p, _ in old_nodes] + [p for p, _ in new_nodes]
    if len(set(allpts)) != len(allpts):
        return None
    # assemble the plane model
    plane = D
    comps = [Component(L, 0, "plane", plane_eq=D)]
    ex = [0, 0, 0, 0]
    for k in rest:
        ln = lines[k]
        if ln.pic.d == 0:
            ex[ln.pic.m.index(-1)] = 1
            comps.append(Component(ln.pic, 0, "exceptional", index=ln.pic.m.index(-1) + 1))
        else:
            eq = line_plane_equation(y, ln)
            plane = plane * eq
            comps.append(Component(ln.pic, 0, "plane", plane_eq=eq))
    curve = NodalCurve(
        y, plane, tuple(ex), allpts, comps,
        [lab for _, lab in old_nodes] + [lab for _, lab in new_nodes],
        {"kind": "smoothing"},
    )
    if curve.pic_class != dp.ANTICANONICAL_SQUARE:
        return None
    if len(quadrics_through_curve(curve)) != 6:
        return None
    if not all(is_node_of(curve, z) for z in allpts):
        return None
    return curve
