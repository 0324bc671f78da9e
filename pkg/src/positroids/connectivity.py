"""Connectivity: the connectivity function, separations, direct sums, 2-sums
and canonical tree decompositions.

Tree nodes are joined along connector elements. Connectors get rational
labels squeezed into the gap just before the arc they stand in for, so that
each cut of the tree sees its connector where the missing arc used to be.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .cyclic import crossing_masks
from .errors import (
    InternalInconsistency,
    NotAPositroid,
    NotTwoConnected,
    OverlappingGrounds,
    PreconditionViolation,
)
from .matroid import Matroid, as_label, fmt_label, fmt_set, popcount

CIRCUIT = "circuit"
COCIRCUIT = "cocircuit"
THREE_CONNECTED = "three_connected"
WHOLE = "whole"


def lambda_mask(m: Matroid, x: int) -> int:
    return m.rank_mask(x) + m.rank_mask(m.full & ~x) - m.rank


def connectivity_lambda(m: Matroid, x: Iterable) -> int:
    return lambda_mask(m, m.mask_of(x))


def _separation_masks(m: Matroid, k: int, order: str = "first"):
    n = m.n
    full = m.full
    masks = range(1, full) if order == "first" else range(full - 1, 0, -1)
    for x in masks:
        size = popcount(x)
        if size < k or n - size < k:
            continue
        if lambda_mask(m, x) < k:
            yield x


def find_k_separation_mask(m: Matroid, k: int, order: str = "first") -> int | None:
    return next(_separation_masks(m, k, order), None)


def find_k_separation(m: Matroid, k: int):
    """The k-separation ``(X, E - X)`` with the numerically least mask ``X``."""
    x = find_k_separation_mask(m, k)
    if x is None:
        return None
    return m.labels_of(x), m.labels_of(m.full & ~x)


def is_n_connected(m: Matroid, n: int) -> bool:
    """No k-separation for any ``k < n``."""
    size = m.n
    for x in range(1, m.full):
        s = min(popcount(x), size - popcount(x))
        if lambda_mask(m, x) < min(s, n - 1):
            return False
    return True


def direct_sum(m: Matroid, n: Matroid) -> Matroid:
    if set(m.ground) & set(n.ground):
        raise OverlappingGrounds("direct sum needs disjoint ground sets")
    ground = tuple(sorted(m.ground + n.ground))
    pos = {x: i for i, x in enumerate(ground)}
    lift_m = [pos[x] for x in m.ground]
    lift_n = [pos[x] for x in n.ground]

    def lift(b, table):
        out = 0
        for i, j in enumerate(table):
            if b >> i & 1:
                out |= 1 << j
        return out

    left = [lift(b, lift_m) for b in m.masks]
    right = [lift(b, lift_n) for b in n.masks]
    return Matroid.from_masks(ground, [a | b for a in left for b in right], check=False)


def component_masks(m: Matroid) -> list[int]:
    """Connected components as index masks, ordered by least element."""
    parent = list(range(m.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in m.circuit_masks():
        first = (c & -c).bit_length() - 1
        rest = c & (c - 1)
        while rest:
            low = rest & -rest
            a, b = find(first), find(low.bit_length() - 1)
            if a != b:
                parent[a] = b
            rest ^= low
    groups = defaultdict(int)
    for i in range(m.n):
        groups[find(i)] |= 1 << i
    return sorted(groups.values(), key=lambda g: g & -g)


def connected_components(m: Matroid) -> list[Matroid]:
    return [m.restrict_mask(g) for g in component_masks(m)]


def _check_two_sum(m: Matroid, n: Matroid, e):
    if m.n < 2 or n.n < 2:
        raise PreconditionViolation("2-sum clause (i): both sides need at least two elements")
    if set(m.ground) & set(n.ground) != {e}:
        raise PreconditionViolation(
            f"2-sum clause (ii): ground sets must meet exactly in {fmt_label(e)}"
        )
    for side in (m, n):
        bit = 1 << side.index(e)
        if (side.loops_mask() | side.coloops_mask()) & bit:
            raise PreconditionViolation(
                f"2-sum clause (iii): {fmt_label(e)} is a loop or coloop of a summand"
            )


def is_nontrivial_two_sum(m: Matroid, n: Matroid) -> bool:
    return m.n > 2 and n.n > 2


def two_sum(m: Matroid, n: Matroid, e, with_flag: bool = False):
    """2-sum along ``e`` built from merged circuits.

    With ``with_flag`` the result is ``(matroid, nontrivial)``.
    """
    e = as_label(e)
    _check_two_sum(m, n, e)
    ground = tuple(sorted((set(m.ground) | set(n.ground)) - {e}))
    pos = {x: i for i, x in enumerate(ground)}

    def lift(side):
        table = [pos.get(x, -1) for x in side.ground]
        eb = 1 << side.index(e)
        plain, through = [], []
        for c in side.circuit_masks():
            out = 0
            for i, j in enumerate(table):
                if c >> i & 1 and j >= 0:
                    out |= 1 << j
            (through if c & eb else plain).append(out)
        return plain, through

    m_plain, m_through = lift(m)
    n_plain, n_through = lift(n)
    circuits = m_plain + n_plain + [a | b for a in m_through for b in n_through]
    result = Matroid.from_masks(ground, kernels.bases_from_circuits(circuits, len(ground)), check=False)
    if with_flag:
        return result, is_nontrivial_two_sum(m, n)
    return result


def _minimal(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=popcount)
    out = []
    for c in ordered:
        if not any(d & c == d for d in out):
            out.append(c)
    return out


def split(m: Matroid, x: int, e) -> tuple[Matroid, Matroid]:
    """Undo a 2-sum along the exact 2-separation ``(x, E - x)``.

    Returns ``(M1, M2)`` on ``x + e`` and ``(E - x) + e`` with
    ``two_sum(M1, M2, e) == m``.
    """
    e = as_label(e)
    sides = []
    for side in (x, m.full & ~x):
        labels = [m.ground[i] for i in range(m.n) if side >> i & 1]
        ground = tuple(sorted(labels + [e]))
        pos = {lab: i for i, lab in enumerate(ground)}
        table = [pos.get(lab, -1) if side >> i & 1 else -1 for i, lab in enumerate(m.ground)]
        eb = 1 << pos[e]
        fam = []
        for c in m.circuit_masks():
            if not c & side:
                continue
            out = 0
            for i, j in enumerate(table):
                if c >> i & 1 and j >= 0:
                    out |= 1 << j
            fam.append(out if c & ~side == 0 else out | eb)
        circ = _minimal(fam)
        sides.append(Matroid.from_masks(ground, kernels.bases_from_circuits(circ, len(ground)), check=False))
    left, right = sides
    if two_sum(left, right, e) != m:
        raise InternalInconsistency("2-separation split does not glue back")
    return left, right


def node_kind(m: Matroid) -> str:
    n = m.n
    if n < 3:
        return WHOLE
    if m.rank == n - 1 and len(m.masks) == n:
        return CIRCUIT
    if m.rank == 1 and len(m.masks) == n:
        return COCIRCUIT
    return THREE_CONNECTED


@dataclass
class TreeDecomposition:
    """Matroid-labelled tree; ``edges`` are ``(i, j, connector)`` with ``i < j``."""

    nodes: list
    kinds: list
    edges: list
    classes: list | None = None
    ground: tuple = field(default=())

    def neighbours(self, i: int) -> list[tuple[int, Fraction]]:
        out = []
        for a, b, lab in self.edges:
            if a == i:
                out.append((b, lab))
            elif b == i:
                out.append((a, lab))
        return out

    def glue(self, subset: Iterable[int] | None = None, nodes=None) -> Matroid:
        """2-sum the nodes of a connected ``subset`` (all nodes by default).

        ``nodes`` substitutes node matroids (same grounds), e.g. class members.
        """
        nodes = self.nodes if nodes is None else nodes
        keep = set(range(len(nodes)) if subset is None else subset)
        start = min(keep)
        result = nodes[start]
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j, lab in self.neighbours(i):
                if j in keep and j not in seen:
                    seen.add(j)
                    stack.append(j)
                    result = two_sum(result, nodes[j], lab)
        if seen != keep:
            raise PreconditionViolation("node subset is not connected in the tree")
        return result

    def sides(self, edge: int) -> tuple[set, set]:
        a, b, _ = self.edges[edge]
        comp = {a}
        stack = [a]
        while stack:
            i = stack.pop()
            for j, lab in self.neighbours(i):
                if (i, j) in ((a, b), (b, a)):
                    continue
                if j not in comp:
                    comp.add(j)
                    stack.append(j)
        return comp, set(range(len(self.nodes))) - comp

    def signature(self):
        """Node multiset up to connector names: ``(kind, size, rank, #bases)``."""
        return sorted((k, m.n, m.rank, len(m.masks)) for k, m in zip(self.kinds, self.nodes))

    def to_dot(self) -> str:
        lines = ["graph tree {"]
        for i, (m, kind) in enumerate(zip(self.nodes, self.kinds)):
            label = f"{kind} {fmt_set(m.ground)}"
            if self.classes is not None:
                label += f" class {len(self.classes[i])}"
            lines.append(f'  n{i} [label="{label}"];')
        for a, b, lab in self.edges:
            lines.append(f'  n{a} -- n{b} [label="{fmt_label(lab)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        lines = []
        for i, (m, kind) in enumerate(zip(self.nodes, self.kinds)):
            extra = f" class={len(self.classes[i])}" if self.classes is not None else ""
            lines.append(f"node {i}: {kind} rank={m.rank} ground={fmt_set(m.ground)}{extra}")
        for a, b, lab in self.edges:
            lines.append(f"edge {a} -- {b}: {fmt_label(lab)}")
        return "\n".join(lines)


def _split_all(m: Matroid, order: str):
    """Split until no piece has a 2-separation; connectors are temporary."""
    top = max(m.ground) if m.ground else Fraction(0)
    counter = 0
    done = []
    work = [m]
    while work:
        piece = work.pop()
        x = find_k_separation_mask(piece, 2, order) if piece.n >= 4 else None
        if x is None:
            done.append(piece)
            continue
        counter += 1
        left, right = split(piece, x, top + counter)
        work.extend([left, right])
    return done


def _edges_by_shared(nodes, original):
    where = defaultdict(list)
    for i, node in enumerate(nodes):
        for lab in node.ground:
            if lab not in original:
                where[lab].append(i)
    edges = []
    for lab, ends in where.items():
        if len(ends) != 2:  # pragma: no cover
            raise InternalInconsistency(f"connector {fmt_label(lab)} is not shared by two nodes")
        a, b = sorted(ends)
        edges.append((a, b, lab))
    return edges


def _merge_like(nodes, kinds, original):
    while True:
        edges = _edges_by_shared(nodes, original)
        for a, b, lab in edges:
            if kinds[a] == kinds[b] and kinds[a] in (CIRCUIT, COCIRCUIT):
                merged = two_sum(nodes[a], nodes[b], lab)
                nodes = [nd for i, nd in enumerate(nodes) if i not in (a, b)] + [merged]
                kinds = [k for i, k in enumerate(kinds) if i not in (a, b)] + [kinds[a]]
                break
        else:
            return nodes, kinds, edges


def _place_connectors(tree: TreeDecomposition, ground: tuple) -> dict:
    """Final rational label for each temporary connector."""
    pos = {x: i for i, x in enumerate(ground)}
    gaps = defaultdict(list)
    for k, (_, _, lab) in enumerate(tree.edges):
        left, right = tree.sides(k)
        mask = 0
        for i in left:
            for x in tree.nodes[i].ground:
                if x in pos:
                    mask |= 1 << pos[x]
        if mask & 1:
            mask = ((1 << len(ground)) - 1) & ~mask
        start = (mask & -mask).bit_length() - 1
        gaps[start].append((-popcount(mask), mask, lab))
    mapping = {}
    for start, items in gaps.items():
        items.sort()
        lo, hi = ground[start - 1], ground[start]
        for i, (_, _, lab) in enumerate(items):
            mapping[lab] = lo + (hi - lo) * Fraction(i + 1, len(items) + 1)
    return mapping


def canonical_tree_decomposition(m: Matroid, order: str = "first") -> TreeDecomposition:
    """Canonical tree of 3-connected, circuit and cocircuit pieces.

    ``order`` picks the numerically least (``"first"``) or greatest
    (``"last"``) 2-separation at each split; the result does not depend on it.
    """
    if not is_n_connected(m, 2):
        raise NotTwoConnected("canonical tree decompositions need a 2-connected matroid")
    if m.n < 3:
        return TreeDecomposition([m], [WHOLE], [], ground=m.ground)
    original = set(m.ground)
    pieces = _split_all(m, order)
    kinds = [node_kind(p) for p in pieces]
    nodes, kinds, edges = _merge_like(pieces, kinds, original)
    tree = TreeDecomposition(nodes, kinds, edges, ground=m.ground)
    mapping = _place_connectors(tree, m.ground)
    nodes = [nd.relabel(lambda x: mapping.get(x, x)) for nd in nodes]
    ranked = sorted(range(len(nodes)), key=lambda i: nodes[i].ground)
    nodes = [nodes[i] for i in ranked]
    kinds = [kinds[i] for i in ranked]
    tree = TreeDecomposition(nodes, kinds, _edges_by_shared(nodes, original), ground=m.ground)
    tree.edges.sort()
    if tree.glue() != m:
        raise InternalInconsistency("canonical tree does not glue back to the matroid")
    return tree


def _cut_is_positroid(tree: TreeDecomposition, edge: int, is_pos) -> bool:
    left, right = tree.sides(edge)
    a = tree.glue(left)
    b = tree.glue(right)
    lab = tree.edges[edge][2]
    ground = tuple(sorted(set(a.ground) | set(b.ground)))
    pos = {x: i for i, x in enumerate(ground)}
    ma = sum(1 << pos[x] for x in a.ground if x != lab)
    mb = sum(1 << pos[x] for x in b.ground if x != lab)
    if crossing_masks(len(ground), ma, mb):
        return False
    return is_pos(a) and is_pos(b)


def positroid_tree_check(m: Matroid, retries: int = 2) -> bool:
    """Every node is a positroid and every edge cut gives two positroids on
    non-crossing ground sets; split orders are retried when this fails."""
    from .maps import is_positroid

    if not is_n_connected(m, 2):
        raise NotTwoConnected("positroid tree check needs a 2-connected matroid")
    for order in ("first", "last")[: max(1, retries)]:
        tree = canonical_tree_decomposition(m, order)
        if all(is_positroid(nd) for nd in tree.nodes) and all(
            _cut_is_positroid(tree, k, is_positroid) for k in range(len(tree.edges))
        ):
            return True
    return False


def envelope_tree(p: Matroid, budget: int | None = None) -> TreeDecomposition:
    """Canonical tree of a 2-connected positroid with each node's envelope
    class attached; one glued product of members is checked against ``p``."""
    from .maps import DEFAULT_BUDGET, envelope_class_of, envelope_membership_check, is_positroid

    if not is_positroid(p):
        raise NotAPositroid("envelope trees are built for positroids")
    tree = canonical_tree_decomposition(p)
    budget = DEFAULT_BUDGET if budget is None else budget
    tree.classes = [envelope_class_of(nd, budget) for nd in tree.nodes]
    picks = [cls.members[0] for cls in tree.classes]
    if len(picks) > 1 and not envelope_membership_check(p, tree.glue(nodes=picks)):
        raise InternalInconsistency("glued class members left the envelope class")
    return tree
