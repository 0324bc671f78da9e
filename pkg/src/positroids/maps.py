"""Decorated permutations, Grassmann necklaces, positroid envelopes and
envelope classes.

Fixed points are coloured ``-1`` (coloop, rendered ``~x``) or ``+1`` (loop,
rendered ``_x``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Iterator

from . import kernels
from .cyclic import crossing_masks, gale_leq_masks, interval_mask, lex_min_basis_mask
from .errors import (
    BudgetExceeded,
    FixedConnector,
    GroundMismatch,
    InconsistentNecklace,
    InternalInconsistency,
    NotAPositroid,
    NotARealizablePermutationRank,
    OverlappingGrounds,
    ParseError,
    PreconditionViolation,
    RankMismatch,
    SharedElementNotUnique,
)
from .matroid import Matroid, _normalize_ground, as_label, fmt_label, fmt_set, popcount

COLOOP = -1
LOOP = 1

DEFAULT_BUDGET = 2**20


@dataclass(frozen=True)
class DecoratedPermutation:
    """A bijection of ``ground`` with coloured fixed points.

    ``image[i]`` is the image of ``ground[i]``; ``colors`` holds
    ``(label, color)`` pairs for the fixed points in label order.
    """

    ground: tuple
    image: tuple
    colors: tuple

    def __post_init__(self):
        if sorted(self.image) != list(self.ground):
            raise ValueError("image is not a permutation of the ground set")
        fixed = [x for x, y in zip(self.ground, self.image) if x == y]
        if [c[0] for c in self.colors] != fixed:
            raise ValueError("colors must be given exactly on the fixed points")
        if any(c[1] not in (COLOOP, LOOP) for c in self.colors):
            raise ValueError("fixed point colors are -1 or +1")

    @classmethod
    def from_mapping(cls, mapping: dict, colors: dict | None = None):
        mapping = {as_label(k): as_label(v) for k, v in mapping.items()}
        colors = {as_label(k): v for k, v in (colors or {}).items()}
        ground = tuple(sorted(mapping))
        image = tuple(mapping[x] for x in ground)
        fixed = tuple((x, colors.get(x)) for x in ground if mapping[x] == x)
        return cls(ground, image, fixed)

    def __call__(self, label) -> Fraction:
        return self.image[self.ground.index(as_label(label))]

    def color(self, label):
        return dict(self.colors).get(as_label(label))

    def as_dict(self) -> dict:
        return dict(zip(self.ground, self.image))

    def index_image(self) -> list[int]:
        pos = {x: i for i, x in enumerate(self.ground)}
        return [pos[y] for y in self.image]

    def cycles(self) -> list[tuple]:
        """Non-trivial cycles, each as read from its least element."""
        mapping = self.as_dict()
        seen = set()
        out = []
        for x in self.ground:
            if x in seen or mapping[x] == x:
                continue
            cyc = [x]
            seen.add(x)
            y = mapping[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = mapping[y]
            out.append(tuple(cyc))
        return out

    def render(self) -> str:
        """Cycle notation; fixed points follow as ``~x`` / ``_x``.

        The cycle through the least moved label is written from that label,
        every later cycle from its largest label, e.g. ``(1,3,5)(6,4,2)``.
        """
        parts = []
        for k, cyc in enumerate(self.cycles()):
            if k:
                top = cyc.index(max(cyc))
                cyc = cyc[top:] + cyc[:top]
            parts.append("(" + ",".join(fmt_label(x) for x in cyc) + ")")
        text = "".join(parts)
        fixed = [("~" if c == COLOOP else "_") + fmt_label(x) for x, c in self.colors]
        pieces = ([text] if text else []) + fixed
        return " ".join(pieces) if pieces else "()"

    def __str__(self):
        return self.render()


_TOKEN = re.compile(r"\(([^()]*)\)|([~_])([^\s()~_]+)|(\S)")


def parse_permutation(text: str, ground: Iterable | None = None) -> DecoratedPermutation:
    """Inverse of :meth:`DecoratedPermutation.render`.

    Labels not mentioned are coloured as loops when ``ground`` is given.
    """
    mapping = {}
    colors = {}
    stripped = text.strip()
    if stripped != "()":
        for m in _TOKEN.finditer(stripped):
            cyc, mark, lab, junk = m.groups()
            if junk is not None:
                raise ParseError(f"unexpected {junk!r} in permutation")
            if cyc is not None:
                items = [as_label(t) for t in cyc.split(",") if t.strip()]
                if len(items) < 2:
                    raise ParseError("cycles need at least two labels")
                for a, b in zip(items, items[1:] + items[:1]):
                    if a in mapping:
                        raise ParseError(f"label {fmt_label(a)} repeated")
                    mapping[a] = b
            else:
                x = as_label(lab)
                if x in mapping:
                    raise ParseError(f"label {fmt_label(x)} repeated")
                mapping[x] = x
                colors[x] = COLOOP if mark == "~" else LOOP
    if ground is not None:
        for x in _normalize_ground(ground):
            if x not in mapping:
                mapping[x] = x
                colors[x] = LOOP
    try:
        return DecoratedPermutation.from_mapping(mapping, colors)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class GrassmannNecklace:
    """``entries[j]`` is ``J`` at ``ground[j]``, held as index bitmasks."""

    ground: tuple
    masks: tuple

    def __post_init__(self):
        n = len(self.ground)
        if len(self.masks) != n:
            raise InconsistentNecklace(f"need {n} entries, got {len(self.masks)}")
        if len({popcount(b) for b in self.masks}) > 1:
            raise InconsistentNecklace("necklace entries have different sizes")
        for j in range(n):
            cur, nxt, bit = self.masks[j], self.masks[(j + 1) % n], 1 << j
            if cur & bit:
                if (cur & ~bit) & ~nxt:
                    raise InconsistentNecklace(f"entry after {fmt_label(self.ground[j])} drops more than one element")
            elif nxt != cur:
                raise InconsistentNecklace(f"entry after {fmt_label(self.ground[j])} must repeat")

    @classmethod
    def from_sets(cls, ground, entries):
        g = _normalize_ground(ground)
        pos = {x: i for i, x in enumerate(g)}
        masks = []
        for entry in entries:
            b = 0
            for x in entry:
                b |= 1 << pos[as_label(x)]
            masks.append(b)
        return cls(g, tuple(masks))

    @property
    def rank(self) -> int:
        return popcount(self.masks[0]) if self.masks else 0

    @property
    def entries(self) -> tuple:
        return tuple(
            frozenset(self.ground[i] for i in range(len(self.ground)) if b >> i & 1)
            for b in self.masks
        )

    def render(self) -> str:
        return "\n".join(
            f"J_{fmt_label(x)}: {fmt_set(e)}" for x, e in zip(self.ground, self.entries)
        )

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class EnvelopeClass:
    envelope: Matroid
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[Matroid]:
        return iter(self.members)

    def __contains__(self, m) -> bool:
        return m in self.members


# -- the maps ---------------------------------------------------------------


def decorated_permutation_of(m: Matroid) -> DecoratedPermutation:
    n = m.n
    loops = m.loops_mask()
    coloops = m.coloops_mask()
    image = [0] * n
    colors = []
    for j in range(n):
        bit = 1 << j
        if coloops & bit:
            image[j] = j
            colors.append((m.ground[j], COLOOP))
            continue
        if loops & bit:
            image[j] = j
            colors.append((m.ground[j], LOOP))
            continue
        for step in range(1, n):
            k = (j + step) % n
            span = interval_mask(n, (j + 1) % n, k)
            if m.rank_mask(span | bit) == m.rank_mask(span):
                image[j] = k
                break
        else:  # pragma: no cover - a non-coloop lies in cl(E - j)
            raise InternalInconsistency("closure scan did not terminate")
    return DecoratedPermutation(m.ground, tuple(m.ground[k] for k in image), tuple(colors))


def inverse_of(p: DecoratedPermutation) -> DecoratedPermutation:
    inv = {y: x for x, y in zip(p.ground, p.image)}
    return DecoratedPermutation(
        p.ground, tuple(inv[x] for x in p.ground), tuple((x, -c) for x, c in p.colors)
    )


def grassmann_necklace_of(m: Matroid) -> GrassmannNecklace:
    return GrassmannNecklace(m.ground, tuple(lex_min_basis_mask(m, j) for j in range(m.n)))


def necklace_to_permutation(j: GrassmannNecklace) -> DecoratedPermutation:
    n = len(j.ground)
    image = [0] * n
    colors = []
    for i in range(n):
        cur, nxt, bit = j.masks[i], j.masks[(i + 1) % n], 1 << i
        if not cur & bit:
            image[i] = i
            colors.append((j.ground[i], LOOP))
            continue
        added = nxt & ~(cur & ~bit)
        if popcount(added) != 1:
            raise InconsistentNecklace(f"no single swap after {fmt_label(j.ground[i])}")
        k = added.bit_length() - 1
        image[i] = k
        if k == i:
            colors.append((j.ground[i], COLOOP))
    return DecoratedPermutation(j.ground, tuple(j.ground[k] for k in image), tuple(colors))


def permutation_to_necklace(p: DecoratedPermutation, k: int | None = None) -> GrassmannNecklace:
    """Necklace of the positroid with decorated permutation ``p``.

    ``j`` lies in ``J_i`` when, reading from ``i``, ``j`` is reached before
    its preimage; coloops lie in every entry. ``k``, when given, must match.
    """
    n = len(p.ground)
    img = p.index_image()
    pre = [0] * n
    for x, y in enumerate(img):
        pre[y] = x
    coloops = 0
    for x, c in p.colors:
        if c == COLOOP:
            coloops |= 1 << p.ground.index(x)
    masks = []
    for i in range(n):
        b = coloops
        for j in range(n):
            if img[j] != j and (j - i) % n < (pre[j] - i) % n:
                b |= 1 << j
        masks.append(b)
    neck = GrassmannNecklace(p.ground, tuple(masks))
    if k is not None and neck.rank != k:
        raise NotARealizablePermutationRank(
            f"permutation determines rank {neck.rank}, not {k}"
        )
    return neck


def disjoint_union_perm(p1: DecoratedPermutation, p2: DecoratedPermutation) -> DecoratedPermutation:
    if set(p1.ground) & set(p2.ground):
        raise OverlappingGrounds("decorated permutations share labels")
    mapping = {**p1.as_dict(), **p2.as_dict()}
    colors = {**dict(p1.colors), **dict(p2.colors)}
    return DecoratedPermutation.from_mapping(mapping, colors)


def _crossing_labels(a: Iterable, b: Iterable) -> bool:
    """Crossing in the literal sense: four distinct labels alternating between
    ``a`` and ``b`` around the circle. A shared label may play either role."""
    ground = sorted(set(a) | set(b))
    pos = {x: i for i, x in enumerate(ground)}
    ma = sum(1 << pos[x] for x in set(a))
    mb = sum(1 << pos[x] for x in set(b))
    shared = ma & mb
    n = len(ground)
    if crossing_masks(n, ma & ~shared, mb & ~shared):
        return True
    for i in range(n):
        bit = 1 << i
        if shared & bit:
            rest = shared & ~bit
            if crossing_masks(n, ma & ~rest, mb & ~shared) or crossing_masks(n, ma & ~shared, mb & ~rest):
                return True
    return False


def two_sum_perm(pm: DecoratedPermutation, pn: DecoratedPermutation, e) -> DecoratedPermutation:
    """Decorated permutation of a 2-sum along ``e`` from those of its parts."""
    e = as_label(e)
    shared = set(pm.ground) & set(pn.ground)
    if shared != {e}:
        raise SharedElementNotUnique(
            f"grounds must meet exactly in {fmt_label(e)}, they meet in {fmt_set(shared)}"
        )
    if pm(e) == e or pn(e) == e:
        raise FixedConnector(f"{fmt_label(e)} is a loop or coloop; take the deletion branch")
    if _crossing_labels(pm.ground, pn.ground):
        raise PreconditionViolation("ground sets of a 2-sum permutation must be non-crossing")
    mapping = {}
    colors = {}
    for src, other in ((pm, pn), (pn, pm)):
        src_colors = dict(src.colors)
        for x, y in zip(src.ground, src.image):
            if x == e:
                continue
            if y == e:
                mapping[x] = other(e)
            else:
                mapping[x] = y
                if x == y:
                    colors[x] = src_colors[x]
    return DecoratedPermutation.from_mapping(mapping, colors)


# -- envelopes ----------------------------------------------------------------


def gale_intersection(ground: tuple, necklace_masks, k: int) -> list[int]:
    """Every k-subset ``B`` with ``J_j <=_j B`` for all ``j``."""
    n = len(ground)
    starts = [
        sorted((i - j) % n for i in range(n) if necklace_masks[j] >> i & 1) for j in range(n)
    ]
    out = []
    for combo in combinations(range(n), k):
        ok = True
        for j in range(n):
            pos = sorted((i - j) % n for i in combo)
            if any(a > b for a, b in zip(starts[j], pos)):
                ok = False
                break
        if ok:
            b = 0
            for i in combo:
                b |= 1 << i
            out.append(b)
    return out


def positroid_from_necklace(j: GrassmannNecklace) -> Matroid:
    return Matroid.from_masks(j.ground, gale_intersection(j.ground, j.masks, j.rank), check=False)


def positroid_from_permutation(p: DecoratedPermutation) -> Matroid:
    return positroid_from_necklace(permutation_to_necklace(p))


def envelope_positroid(m: Matroid) -> Matroid:
    return positroid_from_necklace(grassmann_necklace_of(m))


def is_positroid_crossing(m: Matroid) -> bool:
    """No circuit crosses a disjoint cocircuit."""
    n = m.n
    cocircuits = m.cocircuit_masks()
    for c in m.circuit_masks():
        if popcount(c) < 2:
            continue
        for d in cocircuits:
            if not c & d and crossing_masks(n, c, d):
                return False
    return True


def is_positroid_envelope(m: Matroid) -> bool:
    """The matroid is its own envelope."""
    return envelope_positroid(m) == m


def is_positroid(m: Matroid, cross_check: bool = True) -> bool:
    result = is_positroid_crossing(m)
    if cross_check and result != is_positroid_envelope(m):
        raise InternalInconsistency(
            f"positroid tests disagree on {m!r}: crossing={result}"
        )
    return result


def weak_map_leq(m: Matroid, n: Matroid) -> bool:
    """True when ``m >= n`` in the rank-preserving weak order."""
    if m.ground != n.ground:
        raise GroundMismatch("weak maps compare matroids on one ground set")
    if m.rank != n.rank:
        raise RankMismatch("weak maps here are rank preserving")
    return set(n.masks) <= set(m.masks)


def _member_key(m: Matroid):
    return (len(m.masks), [tuple(i for i in range(m.n) if b >> i & 1) for b in m.sorted_masks()])


def envelope_class_of(p: Matroid, budget: int = DEFAULT_BUDGET) -> EnvelopeClass:
    """All ordered matroids whose envelope is the positroid ``p``.

    Members contain every necklace entry and sit inside the bases of ``p``;
    any such basis-exchange family has the same necklace. The search space is
    ``2**(free bases)``; beyond ``budget`` :class:`BudgetExceeded` is raised.
    """
    if not is_positroid(p):
        raise NotAPositroid("envelope classes are indexed by positroids")
    neck = grassmann_necklace_of(p)
    required = set(neck.masks)
    bases = list(p.masks)
    forced = [b in required for b in bases]
    free = forced.count(False)
    if 2**free > budget:
        raise BudgetExceeded(
            f"envelope class search needs 2^{free} subsets, budget is {budget}",
            needed=2**free,
            budget=budget,
        )
    members = []
    for idx in kernels.envelope_members(bases, forced):
        member = Matroid.from_masks(p.ground, [bases[i] for i in idx], check=False)
        if grassmann_necklace_of(member) != neck:  # pragma: no cover
            raise InternalInconsistency("envelope class member changed the necklace")
        members.append(member)
    members.sort(key=_member_key)
    return EnvelopeClass(p, tuple(members))


def envelope_membership_check(p: Matroid, candidate: Matroid) -> bool:
    if p.ground != candidate.ground:
        raise GroundMismatch("candidate lives on a different ground set")
    if not is_positroid(p):
        raise NotAPositroid("membership is tested against a positroid")
    return grassmann_necklace_of(candidate) == grassmann_necklace_of(p)


def decorated_permutations(ground: Iterable) -> Iterator[DecoratedPermutation]:
    """Every decorated permutation of ``ground``."""
    g = _normalize_ground(ground)
    n = len(g)
    for perm in permutations(range(n)):
        fixed = [i for i in range(n) if perm[i] == i]
        image = tuple(g[i] for i in perm)
        for cols in product((COLOOP, LOOP), repeat=len(fixed)):
            yield DecoratedPermutation(g, image, tuple((g[i], c) for i, c in zip(fixed, cols)))


def positroids_on(ground: Iterable, rank: int | None = None) -> Iterator[Matroid]:
    """Every positroid on ``ground`` (optionally of one rank)."""
    for p in decorated_permutations(ground):
        neck = permutation_to_necklace(p)
        if rank is not None and neck.rank != rank:
            continue
        yield positroid_from_necklace(neck)
