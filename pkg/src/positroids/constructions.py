"""Named matroids: uniform matroids, graphic matroids, wheels and whirls, and
the cycle-plus-bundle graphs with their rim relaxations.

Wheel and bundle graphs use the edge ordering that makes the whirl a
positroid: spokes (or bundle edges) carry the odd labels ``1, 3, ..., 2r-1``
and rim edges the even labels ``2, 4, ..., 2r``; spoke ``k`` meets the rim at
the vertex shared by rim edges ``k-1`` and ``k+1`` (mod ``2r``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BadRank, DuplicateLabel, RankTooSmall
from .matroid import Matroid, as_label, relax_circuit_hyperplane


def _ground(n, ground=None):
    if ground is None:
        return [as_label(i) for i in range(1, n + 1)]
    ground = [as_label(x) for x in ground]
    if len(ground) != n:
        raise BadRank(f"ground has {len(ground)} labels, expected {n}")
    return ground


def uniform(r: int, n: int, ground=None) -> Matroid:
    if not 0 <= r <= n:
        raise BadRank(f"need 0 <= r <= n, got r={r}, n={n}")
    g = sorted(_ground(n, ground))
    masks = []
    for combo in combinations(range(n), r):
        b = 0
        for i in combo:
            b |= 1 << i
        masks.append(b)
    return Matroid.from_masks(tuple(g), masks, check=False)


def circuit_matroid(ground) -> Matroid:
    """U^{n-1}_n on ``ground`` (an int ``n`` means ``1..n``)."""
    labels = _ground(ground) if isinstance(ground, int) else list(ground)
    return uniform(len(labels) - 1, len(labels), labels)


def cocircuit_matroid(ground) -> Matroid:
    labels = _ground(ground) if isinstance(ground, int) else list(ground)
    return uniform(1, len(labels), labels)


@dataclass(frozen=True)
class Graph:
    """Multigraph with labelled edges; loops and parallel edges allowed."""

    vertex_count: int
    edges: tuple  # of (u, v, label)

    def __post_init__(self):
        labels = [as_label(e[2]) for e in self.edges]
        if len(set(labels)) != len(labels):
            raise DuplicateLabel("edge labels must be distinct")
        for u, v, _ in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge endpoint out of range: {(u, v)}")

    @classmethod
    def from_edges(cls, edges, vertex_count=None):
        edges = tuple((int(u), int(v), as_label(lab)) for u, v, lab in edges)
        if vertex_count is None:
            vertex_count = 1 + max((max(u, v) for u, v, _ in edges), default=-1)
        return cls(vertex_count, edges)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def graphic_matroid(g: Graph) -> Matroid:
    """Cycle matroid: bases are the spanning forests."""
    edges = sorted(g.edges, key=lambda e: as_label(e[2]))
    ground = tuple(as_label(e[2]) for e in edges)
    parent = list(range(g.vertex_count))
    comps = g.vertex_count
    for u, v, _ in edges:
        a, b = _find(parent, u), _find(parent, v)
        if a != b:
            parent[a] = b
            comps -= 1
    rank = g.vertex_count - comps
    masks = []
    for combo in combinations(range(len(edges)), rank):
        parent = list(range(g.vertex_count))
        ok = True
        for i in combo:
            u, v, _ = edges[i]
            a, b = _find(parent, u), _find(parent, v)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            b = 0
            for i in combo:
                b |= 1 << i
            masks.append(b)
    return Matroid.from_masks(ground, masks, check=False)


def wheel_graph(r: int) -> Graph:
    if r < 2:
        raise RankTooSmall(f"wheel needs r >= 2, got {r}")
    # hub is vertex 0; rim vertex t (1..r) carries spoke 2t-1
    edges = []
    for t in range(1, r + 1):
        edges.append((0, t, 2 * t - 1))
        edges.append((t, t % r + 1, 2 * t))
    return Graph.from_edges(edges, r + 1)


def wheel(r: int):
    """``(graph, M(W_r))`` with the positroid edge ordering."""
    g = wheel_graph(r)
    return g, graphic_matroid(g)


def rim(r: int) -> list:
    return [as_label(2 * t) for t in range(1, r + 1)]


def whirl(r: int) -> Matroid:
    _, m = wheel(r)
    return relax_circuit_hyperplane(m, rim(r))


def n_graph_graph(r: int) -> Graph:
    if r < 2:
        raise RankTooSmall(f"N_r needs r >= 2, got {r}")
    # rim cycle on vertices 0..r-1 with edge 2t from t-1 to t; vertex 0 (where
    # rim edges 2r and 2 meet) also carries the bundle to vertex r
    edges = [(t - 1, t % r, 2 * t) for t in range(1, r + 1)]
    edges += [(0, r, 2 * t - 1) for t in range(1, r + 1)]
    return Graph.from_edges(edges, r + 1)


def n_graph(r: int):
    g = n_graph_graph(r)
    return g, graphic_matroid(g)


def n_relaxed(r: int) -> Matroid:
    _, m = n_graph(r)
    return relax_circuit_hyperplane(m, rim(r))
