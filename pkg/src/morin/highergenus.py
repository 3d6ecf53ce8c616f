"""Canonical graph curves of even genus g = 2k in P^1 x P^(k-1) and their node spaces.

The curve is the union of the lines L_i = P^1 x {t_i} (i = 1..k+1) and of
three chains of k-1 lines u_j x R'_j, where each chain R'_j is a degenerate
rational normal curve of P^(k-1) through all the points t_i.  It sits in
P^(2k-1) by the Segre map.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import networkx as nx

from . import linalg as la
from .errors import NoRationalMemberFound, StructuralAnomaly


def zak_identity(g: int) -> bool:
    return (g - 3) + comb(g - 3, 2) == comb(g - 2, 2)


def generalized_petersen(n: int, k: int) -> nx.Graph:
    g = nx.Graph()
    for i in range(n):
        g.add_edge(("o", i), ("o", (i + 1) % n))
        g.add_edge(("o", i), ("i", i))
        g.add_edge(("i", i), ("i", (i + k) % n))
    return g


@dataclass
class GraphCurveModel:
    """Lines of P^(g-1) given by two points each, plus the nodes with the two lines through them."""

    k: int
    lines: list[tuple[tuple, tuple]]
    labels: list[str]
    nodes: list[tuple]
    node_lines: list[tuple[int, int]]
    graph: nx.Graph
    info: dict = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return self.graph.number_of_edges() - self.graph.number_of_nodes() + 1


def _segre(s: Sequence, y: Sequence) -> tuple:
    return tuple(a * b for a in s for b in y)


def _span_point(plane: Sequence[Sequence], line: Sequence[Sequence]) -> list[Fraction]:
    """The point where a line meets a linear space of complementary dimension."""
    inter = la.intersect_spaces(plane, line)
    if len(inter) != 1:
        raise StructuralAnomaly("line and linear space do not meet in a point")
    return inter[0]


def _chain(t: Sequence[Sequence], order: Sequence[int], k: int) -> list[tuple[list, list]]:
    """Lines of a chain of k-1 lines through all points of t.

    order lists the indices of t along the chain: the first two lie on the
    first line, the last two on the last line and the rest one per interior
    line.  The chain is built backwards from the last line; every step is a
    linear span intersection, so it stays rational.
    """
    pts = [list(t[i]) for i in order]
    first = [pts[0], pts[1]]
    last = [pts[-2], pts[-1]]
    inner = pts[2:-2]
    if len(inner) != k - 3:
        raise ValueError("order does not match k")
    lines = [None] * (k - 1)
    lines[-1] = last
    current = last
    for m in range(k - 3, 0, -1):
        # interior line m carries inner[m-1] and lies in span(first, inner[:m])
        space = first + inner[:m]
        p = _span_point(space, current)
        lines[m] = [p, inner[m - 1]]
        current = lines[m]
    lines[0] = first
    if la.rank(lines[0] + lines[1]) != 3:
        raise StructuralAnomaly("consecutive chain lines do not meet")
    return [tuple(map(list, ln)) for ln in lines]


def _general_position(pts: Sequence[Sequence], dim: int) -> bool:
    return all(la.rank(list(sub)) == dim for sub in itertools.combinations(pts, dim))


def _end_pairs(order):
    return {frozenset(order[:2]), frozenset(order[-2:])}


def graph_curve(k: int, seed: int = 0, tries: int = 200) -> GraphCurveModel:
    """The even-genus graph curve with three chains, realized over Q."""
    if k < 3:
        raise ValueError("k must be at least 3")
    rng = random.Random(seed)
    n = k + 1
    perms = list(itertools.permutations(range(n)))
    target = generalized_petersen(2 * k - 1, 1)
    for _ in range(tries):
        t = [[Fraction(rng.randint(-5, 5)) for _ in range(k)] for _ in range(n)]
        if not _general_position(t, k):
            continue
        us = [[Fraction(1), Fraction(a)] for a in rng.sample(range(-6, 7), 3)]
        orders = [tuple(range(n))]
        rng.shuffle(perms)
        for p in perms:
            if len(orders) == 3:
                break
            if all(not (_end_pairs(p) & _end_pairs(o)) for o in orders):
                orders.append(p)
        if len(orders) < 3:
            raise StructuralAnomaly("no three chain orderings without common end lines")
        try:
            chains = [_chain(t, o, k) for o in orders]
        except StructuralAnomaly:
            continue
        model = _assemble(k, t, us, chains, orders)
        if model is None:
            continue
        model.info["orders"] = [list(o) for o in orders]
        model.info["isomorphic_to_GP"] = nx.is_isomorphic(model.graph, target)
        model.info["seed"] = seed
        return model
    raise NoRationalMemberFound("no rational realization of the graph curve", {"tries": tries})


def _assemble(k, t, us, chains, orders) -> GraphCurveModel | None:
    e0 = [Fraction(1), Fraction(0)]
    e1 = [Fraction(0), Fraction(1)]
    lines, labels = [], []
    for i, ti in enumerate(t):
        lines.append((_segre(e0, ti), _segre(e1, ti)))
        labels.append(f"L{i + 1}")
    chain_idx = []
    for j, (u, chain) in enumerate(zip(us, chains)):
        idx = []
        for m, (a, b) in enumerate(chain):
            idx.append(len(lines))
            lines.append((_segre(u, a), _segre(u, b)))
            labels.append(f"R{j + 1}.{m + 1}")
        chain_idx.append(idx)
    nodes, node_lines = [], []
    for i, ti in enumerate(t):
        for j, u in enumerate(us):
            pos = orders[j].index(i)
            m = 0 if pos < 2 else (k - 2 if pos >= k - 1 else pos - 1)
            nodes.append(_segre(u, ti))
            node_lines.append((i, chain_idx[j][m]))
    for j, idx in enumerate(chain_idx):
        for m in range(k - 2):
            a, b = lines[idx[m]], lines[idx[m + 1]]
            p = _span_point(list(a), list(b))
            nodes.append(tuple(p))
            node_lines.append((idx[m], idx[m + 1]))
    nodes = [la.normalize_projective(p) for p in nodes]
    if len(set(nodes)) != len(nodes):
        return None
    # every node must lie on exactly the two lines recorded for it
    for p, pair in zip(nodes, node_lines):
        on = [i for i, ln in enumerate(lines) if la.rank(list(ln) + [list(p)]) == 2]
        if sorted(on) != sorted(pair):
            return None
    g = nx.Graph()
    g.add_nodes_from(labels)
    for a, b in node_lines:
        g.add_edge(labels[a], labels[b])
    return GraphCurveModel(k, lines, labels, nodes, node_lines, g)


def _quadric_monomials(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def _eval_row(p, mons):
    return [p[i] * p[j] for i, j in mons]


def _grad_rows(z, mons, n):
    rows = []
    for m in range(n):
        row = []
        for i, j in mons:
            c = Fraction(0)
            if i == m:
                c += z[j]
            if j == m:
                c += z[i]
            row.append(c)
        rows.append(row)
    return rows


def quadrics_through(model: GraphCurveModel) -> list[list[Fraction]]:
    """Basis of quadrics through the curve, sampling 3 points on every line."""
    n = 2 * model.k
    mons = _quadric_monomials(n)
    rows = []
    for a, b in model.lines:
        for s, t in ((1, 0), (0, 1), (1, 1)):
            rows.append(_eval_row([s * x + t * y for x, y in zip(a, b)], mons))
    return la.kernel_basis(rows, len(mons))


@dataclass
class HigherGenusReport:
    k: int
    genus: int
    vertices: int
    edges: int
    regular3: bool
    girth: int
    isomorphic_to_GP: bool
    node_count: int
    w_dim: int
    expected_w_dim: int
    pz_dims: list[int]
    expected_pz_dim: int
    pair_codims: dict
    expected_pair_codim: int
    pairs_total: int
    all_incident: bool
    pair_codim_matches: bool
    span_dim: int
    zak_identity: bool
    zak_consistent: bool
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "genus": self.genus,
            "graph": {
                "vertices": self.vertices,
                "edges": self.edges,
                "three_regular": self.regular3,
                "girth": self.girth,
                "isomorphic_to_generalized_petersen": self.isomorphic_to_GP,
            },
            "node_count": self.node_count,
            "w_dim": self.w_dim,
            "expected_w_dim": self.expected_w_dim,
            "pz_projective_dims": sorted(set(self.pz_dims)),
            "expected_pz_dim": self.expected_pz_dim,
            "pair_codim_counts": {str(c): m for c, m in sorted(self.pair_codims.items())},
            "expected_pair_codim": self.expected_pair_codim,
            "pairs_total": self.pairs_total,
            "all_pairs_incident": self.all_incident,
            "pair_codim_matches_expected": self.pair_codim_matches,
            "node_spaces_span_dim": self.span_dim,
            "zak_identity": self.zak_identity,
            "zak_consistent_with_spans": self.zak_consistent,
            **self.info,
        }


def higher_genus_family(k: int, seed: int = 0) -> HigherGenusReport:
    """Node spaces P_z of the genus 2k graph curve inside P(W_g), W_g dual to the quadrics through C."""
    model = graph_curve(k, seed=seed)
    g = 2 * k
    n = 2 * k
    mons = _quadric_monomials(n)
    ic = quadrics_through(model)
    dim_w = len(ic)
    # I_z inside I_C, in coordinates of the basis ic
    iz = []
    for z in model.nodes:
        grads = _grad_rows(list(z), mons, n)
        cond = [[sum(r[m] * q[m] for m in range(len(mons))) for q in ic] for r in grads]
        iz.append(la.kernel_basis(cond, dim_w))
    # P_z = annihilator of I_z in W_g = I_C^*, as row vectors in the dual basis
    pz = [la.kernel_basis(rows, dim_w) if rows else la.identity(dim_w) for rows in iz]
    pz_dims = [len(p) - 1 for p in pz]
    codims = {}
    for a, b in itertools.combinations(range(len(iz)), 2):
        c = dim_w - la.rank(iz[a] + iz[b])
        codims[c] = codims.get(c, 0) + 1
    expected = comb(g - 4, 2)
    incident = all(c > 0 for c in codims)
    span = la.rank([v for p in pz for v in p])
    # the identity splits W_g as P_z (dim g-3) plus wedge^2 of a (g-3)-space
    zak_ok = zak_identity(g) and all(d + 1 == g - 3 for d in pz_dims) and dim_w == comb(g - 2, 2)
    graph = model.graph
    return HigherGenusReport(
        k=k,
        genus=model.genus,
        vertices=graph.number_of_nodes(),
        edges=graph.number_of_edges(),
        regular3=all(d == 3 for _, d in graph.degree()),
        girth=nx.girth(graph),
        isomorphic_to_GP=model.info["isomorphic_to_GP"],
        node_count=len(model.nodes),
        w_dim=dim_w,
        expected_w_dim=comb(g - 2, 2),
        pz_dims=pz_dims,
        expected_pz_dim=g - 4,
        pair_codims=codims,
        expected_pair_codim=expected,
        pairs_total=comb(len(model.nodes), 2),
        all_incident=incident,
        pair_codim_matches=set(codims) == {expected},
        span_dim=span,
        zak_identity=zak_identity(g),
        zak_consistent=zak_ok,
        info={"seed": seed, "chain_orders": model.info["orders"]},
    )
