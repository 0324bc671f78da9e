"""Binary and ternary classification of positroids and the ``4^w`` count of
envelope classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .connectivity import (
    THREE_CONNECTED,
    TreeDecomposition,
    canonical_tree_decomposition,
    connected_components,
)
from .constructions import n_graph, n_relaxed, uniform, wheel, whirl
from .errors import BudgetExceeded, InternalInconsistency, NotAPositroid, NotTernary
from .maps import envelope_class_of, envelope_membership_check, is_positroid
from .matroid import Matroid, as_label, fmt_label, has_minor_isomorphic, is_isomorphic

ENUMERATE_UP_TO = 3


def _fano() -> Matroid:
    points = [v for v in range(1, 8)]  # nonzero vectors of GF(2)^3 as ints
    bases = []
    for trio in combinations(range(7), 3):
        a, b, c = (points[i] for i in trio)
        if a ^ b ^ c:
            bases.append([t + 1 for t in trio])
    return Matroid(range(1, 8), bases)


_EXCLUDED = {}


def _excluded(name: str) -> Matroid:
    if name not in _EXCLUDED:
        if name == "U24":
            _EXCLUDED[name] = uniform(2, 4)
        elif name == "U25":
            _EXCLUDED[name] = uniform(2, 5)
        elif name == "U35":
            _EXCLUDED[name] = uniform(3, 5)
        elif name == "F7":
            _EXCLUDED[name] = _fano()
        elif name == "F7*":
            _EXCLUDED[name] = _fano().dual()
    return _EXCLUDED[name]


def is_binary(m: Matroid) -> bool:
    """No minor isomorphic to U(2,4)."""
    return not has_minor_isomorphic(m, _excluded("U24"))


def is_ternary(m: Matroid) -> bool:
    """No minor isomorphic to U(2,5), U(3,5), F7 or F7*."""
    return not any(has_minor_isomorphic(m, _excluded(k)) for k in ("U25", "U35", "F7", "F7*"))


def is_ternary_positroid(p: Matroid) -> bool:
    """A positroid is ternary exactly when it has no U(2,5) or U(3,5) minor."""
    if not is_positroid(p):
        raise NotAPositroid("this test applies to positroids")
    return not has_minor_isomorphic(p, _excluded("U25")) and not has_minor_isomorphic(
        p, _excluded("U35")
    )


def _whirl_rank(node: Matroid) -> int | None:
    if node.n % 2 or node.n < 4 or node.rank * 2 != node.n:
        return None
    r = node.rank
    return r if is_isomorphic(node, whirl(r)) else None


def _orientations(r: int):
    """Index maps from ``1..2r`` onto node positions: rotations, then reflections."""
    n = 2 * r
    for k in range(n):
        yield [(i + k) % n for i in range(n)]
    for k in range(n):
        yield [(k - i) % n for i in range(n)]


def whirl_candidates(node: Matroid, r: int) -> list[Matroid] | None:
    """``M(N_r), N^r, M(W_r), W^r`` carried onto ``node`` by an order-compatible
    relabelling under which ``W^r`` becomes ``node``; None if none exists."""
    base = [as_label(i) for i in range(1, 2 * r + 1)]
    for perm in _orientations(r):
        mapping = {base[i]: node.ground[perm[i]] for i in range(2 * r)}
        if whirl(r).relabel(mapping) == node:
            cands = [n_graph(r)[1], n_relaxed(r), wheel(r)[1], whirl(r)]
            return [c.relabel(mapping) for c in cands]
    return None


def ternary_by_structure(p: Matroid) -> bool:
    """Every 3-connected node of every component's canonical tree with four
    or more elements is a whirl."""
    if not is_positroid(p):
        raise NotAPositroid("this test applies to positroids")
    for comp in connected_components(p):
        if comp.n < 3:
            continue
        tree = canonical_tree_decomposition(comp)
        for node, kind in zip(tree.nodes, tree.kinds):
            if kind == THREE_CONNECTED and node.n >= 4 and _whirl_rank(node) is None:
                return False
    return True


@dataclass
class NodeReport:
    kind: str
    ground: tuple
    whirl_rank: int | None
    class_size: int
    verified_by: str


@dataclass
class ComponentReport:
    component: Matroid
    tree: TreeDecomposition | None
    nodes: list = field(default_factory=list)


@dataclass
class TernaryStructure:
    components: list

    @property
    def w(self) -> int:
        return sum(1 for c in self.components for nd in c.nodes if nd.whirl_rank is not None)

    def render(self) -> str:
        lines = []
        for k, comp in enumerate(self.components):
            lines.append(f"component {k}: ground={{{','.join(fmt_label(x) for x in comp.component.ground)}}}")
            for nd in comp.nodes:
                tag = f"whirl r={nd.whirl_rank}" if nd.whirl_rank is not None else "binary"
                lines.append(
                    f"  {nd.kind} {{{','.join(fmt_label(x) for x in nd.ground)}}}: "
                    f"{tag} class={nd.class_size} ({nd.verified_by})"
                )
        lines.append(f"w={self.w}")
        return "\n".join(lines)


def _check_whirl_node(node: Matroid, r: int) -> str:
    cands = whirl_candidates(node, r)
    if cands is None:
        raise InternalInconsistency("whirl node admits no order-compatible whirl labelling")
    if r <= ENUMERATE_UP_TO:
        members = envelope_class_of(node).members
        if len(members) != 4:
            raise InternalInconsistency(f"whirl node class has {len(members)} members, not 4")
        if set(members) != set(cands):
            raise InternalInconsistency("whirl node class differs from the four candidates")
        return "enumerated"
    for c in cands:
        if not envelope_membership_check(node, c):
            raise InternalInconsistency("whirl candidate outside the node's class")
    return "membership"


def ternary_structure(p: Matroid) -> TernaryStructure:
    if not is_positroid(p):
        raise NotAPositroid("ternary structure is defined for positroids")
    if not is_ternary_positroid(p):
        raise NotTernary("positroid has a U(2,5) or U(3,5) minor")
    comps = []
    for comp in connected_components(p):
        if comp.n < 3:
            comps.append(ComponentReport(comp, None, [NodeReport("whole", comp.ground, None, 1, "trivial")]))
            continue
        tree = canonical_tree_decomposition(comp)
        report = ComponentReport(comp, tree)
        for node, kind in zip(tree.nodes, tree.kinds):
            r = _whirl_rank(node) if kind == THREE_CONNECTED and node.n >= 4 else None
            if r is not None:
                report.nodes.append(NodeReport(kind, node.ground, r, 4, _check_whirl_node(node, r)))
            else:
                size = len(envelope_class_of(node).members)
                if size != 1:
                    raise InternalInconsistency("binary node with a non-trivial envelope class")
                report.nodes.append(NodeReport(kind, node.ground, None, 1, "enumerated"))
        comps.append(report)
    return TernaryStructure(comps)


def envelope_count(p: Matroid) -> int:
    """``4**w`` with ``w`` the number of whirl nodes over all components."""
    if not is_positroid(p):
        raise NotAPositroid("envelope counts are defined for positroids")
    if not is_ternary_positroid(p):
        raise NotTernary("positroid has a U(2,5) or U(3,5) minor")
    w = 0
    for node in _large_three_connected_nodes(p):
        if _whirl_rank(node) is None:  # pragma: no cover
            raise InternalInconsistency("ternary positroid has a non-whirl 3-connected node")
        w += 1
    return 4**w


def _large_three_connected_nodes(m: Matroid):
    for comp in connected_components(m):
        if comp.n < 4:
            continue
        tree = canonical_tree_decomposition(comp)
        for node, kind in zip(tree.nodes, tree.kinds):
            if kind == THREE_CONNECTED and node.n >= 4:
                yield node


@dataclass
class Classification:
    is_positroid: bool
    is_binary: bool
    is_ternary: bool
    non_binary_3conn_count: int
    envelope_size: int | None

    def as_pairs(self) -> list[tuple[str, str]]:
        def flag(v):
            return "true" if v else "false"

        size = "" if self.envelope_size is None else str(self.envelope_size)
        return [
            ("is_positroid", flag(self.is_positroid)),
            ("is_binary", flag(self.is_binary)),
            ("is_ternary", flag(self.is_ternary)),
            ("w", str(self.non_binary_3conn_count)),
            ("envelope_size", size),
        ]

    def render_kv(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.as_pairs())

    def render_text(self) -> str:
        width = max(len(k) for k, _ in self.as_pairs())
        return "".join(f"{k.ljust(width)}  {v or '-'}\n" for k, v in self.as_pairs())


def classify(m: Matroid, budget: int | None = None) -> Classification:
    """Positroid, binary and ternary flags; ``w`` and the envelope class size
    for positroids (``4**w`` when ternary, enumerated otherwise)."""
    pos = is_positroid(m)
    binary = is_binary(m)
    if pos:
        ternary = is_ternary_positroid(m)
    else:
        ternary = is_ternary(m)
    w = 0
    size = None
    if pos:
        # 3-connected positroid nodes on four or more elements are never binary
        w = sum(1 for _ in _large_three_connected_nodes(m))
    if pos and ternary:
        size = envelope_count(m)
    elif pos:
        try:
            size = len(envelope_class_of(m, budget) if budget else envelope_class_of(m))
        except BudgetExceeded:
            size = None
    return Classification(pos, binary, ternary, w, size)
