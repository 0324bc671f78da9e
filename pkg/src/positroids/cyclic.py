"""Cyclic orders on a totally ordered ground set.

A :class:`CyclicShiftedOrder` starting at ``i_k`` reads the ground set as
``i_k < i_{k+1} < ... < i_n < i_1 < ... < i_{k-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import LabelNotInGround, NotAPartition, UnequalCardinality
from .matroid import Matroid, _normalize_ground, as_label, fmt_label, popcount


def _ground_tuple(ground) -> tuple:
    if isinstance(ground, Matroid):
        return ground.ground
    return _normalize_ground(ground)


@dataclass(frozen=True)
class CyclicShiftedOrder:
    ground: tuple
    start: Fraction

    def __init__(self, ground, start):
        g = _ground_tuple(ground)
        s = as_label(start)
        if s not in g:
            raise LabelNotInGround(f"start {fmt_label(s)} not in ground")
        object.__setattr__(self, "ground", g)
        object.__setattr__(self, "start", s)

    @property
    def offset(self) -> int:
        return self.ground.index(self.start)

    def position(self, label) -> int:
        lab = as_label(label)
        try:
            i = self.ground.index(lab)
        except ValueError:
            raise LabelNotInGround(f"{fmt_label(lab)} not in ground") from None
        return (i - self.offset) % len(self.ground)

    def sort(self, labels: Iterable) -> list:
        return sorted((as_label(x) for x in labels), key=self.position)

    def labels(self) -> list:
        k = self.offset
        return list(self.ground[k:] + self.ground[:k])


def shifted_compare(o: CyclicShiftedOrder, a, b) -> int:
    """-1, 0 or 1 as ``a`` is before, equal to or after ``b`` in ``o``."""
    pa, pb = o.position(a), o.position(b)
    return (pa > pb) - (pa < pb)


def cyclic_interval(ground, a, b) -> frozenset:
    o = CyclicShiftedOrder(ground, a)
    end = o.position(b)
    return frozenset(o.labels()[: end + 1])


def interval_mask(n: int, i: int, j: int) -> int:
    """Indices from ``i`` to ``j`` inclusive, wrapping past ``n - 1``."""
    if i <= j:
        return ((1 << (j + 1)) - 1) & ~((1 << i) - 1)
    return ((1 << n) - 1) & ~(((1 << i) - 1) & ~((1 << (j + 1)) - 1))


def crossing_masks(n: int, x: int, y: int) -> bool:
    """Alternation test on the circle of indices ``0..n-1``.

    Shared elements are ignored; the marks of ``x - y`` and ``y - x`` read
    around the circle must change at least four times.
    """
    a = x & ~y
    b = y & ~x
    if popcount(a) < 2 or popcount(b) < 2:
        return False
    marks = []
    both = a | b
    for i in range(n):
        if both >> i & 1:
            marks.append(a >> i & 1)
    changes = 0
    prev = marks[-1]
    for mark in marks:
        if mark != prev:
            changes += 1
            if changes >= 4:
                return True
        prev = mark
    return False


def are_crossing(ground, x: Iterable, y: Iterable) -> bool:
    g = _ground_tuple(ground)
    index = {lab: i for i, lab in enumerate(g)}

    def mask(items):
        out = 0
        for it in items:
            lab = as_label(it)
            if lab not in index:
                raise LabelNotInGround(f"{fmt_label(lab)} not in ground")
            out |= 1 << index[lab]
        return out

    return crossing_masks(len(g), mask(x), mask(y))


def is_noncrossing_partition(ground, blocks) -> bool:
    g = _ground_tuple(ground)
    index = {lab: i for i, lab in enumerate(g)}
    masks = []
    seen = 0
    for block in blocks:
        mask = 0
        for it in block:
            lab = as_label(it)
            if lab not in index:
                raise NotAPartition(f"{fmt_label(lab)} not in ground")
            mask |= 1 << index[lab]
        if mask & seen:
            raise NotAPartition("blocks overlap")
        seen |= mask
        masks.append(mask)
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if crossing_masks(len(g), a, b):
                return False
    return True


def gale_leq_masks(n: int, start: int, s: int, t: int) -> bool:
    """Componentwise comparison of ``s`` and ``t`` read from index ``start``."""
    ps = [(i - start) % n for i in range(n) if s >> i & 1]
    pt = [(i - start) % n for i in range(n) if t >> i & 1]
    if len(ps) != len(pt):
        raise UnequalCardinality("Gale order compares equal-size sets only")
    ps.sort()
    pt.sort()
    return all(a <= b for a, b in zip(ps, pt))


def gale_leq(o: CyclicShiftedOrder, s: Iterable, t: Iterable) -> bool:
    s = [as_label(x) for x in s]
    t = [as_label(x) for x in t]
    if len(s) != len(t):
        raise UnequalCardinality("Gale order compares equal-size sets only")
    ps = sorted(o.position(x) for x in s)
    pt = sorted(o.position(x) for x in t)
    return all(a <= b for a, b in zip(ps, pt))


def lex_min_basis_mask(m: Matroid, start: int) -> int:
    """Greedy: walk from index ``start`` and keep what stays independent."""
    chosen = 0
    n = m.n
    for step in range(n):
        bit = 1 << ((start + step) % n)
        if m.is_independent_mask(chosen | bit):
            chosen |= bit
            if popcount(chosen) == m.rank:
                break
    return chosen


def lex_min_basis(m: Matroid, o: CyclicShiftedOrder) -> frozenset:
    if o.ground != m.ground:
        raise LabelNotInGround("order and matroid have different ground sets")
    return m.labels_of(lex_min_basis_mask(m, o.offset))
