"""Ordered matroids stored by their basis family.

Ground labels are exact rationals (:class:`fractions.Fraction`) kept in
ascending order; internal index ``i`` is the ``i``-th smallest label and every
subset is an ``int`` bitmask over those indices. At most 64 elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from . import kernels
from .errors import (
    DuplicateLabel,
    EmptyBases,
    ExchangeViolation,
    GroundTooLarge,
    LabelNotInGround,
    NotACircuitHyperplane,
    ParseError,
    UnequalCardinality,
)

MAX_GROUND = 64


def as_label(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad label {x!r}") from exc
    return Fraction(x)


def fmt_label(x: Fraction) -> str:
    return str(x)


def fmt_set(labels: Iterable[Fraction]) -> str:
    return "{" + ",".join(fmt_label(x) for x in sorted(labels)) + "}"


def popcount(x: int) -> int:
    return x.bit_count()


def remove_bit(mask: int, i: int) -> int:
    return ((mask >> (i + 1)) << i) | (mask & ((1 << i) - 1))


def permute_mask(mask: int, perm) -> int:
    out = 0
    for b in kernels.bits(mask):
        out |= 1 << perm[b.bit_length() - 1]
    return out


class Matroid:
    """An ordered matroid ``(E, B)``.

    Build one from labels with ``Matroid(ground, bases)``; the basis exchange
    axiom is verified unless constructed through :meth:`from_masks` with
    ``check=False``. Instances are immutable and hashable.
    """

    __slots__ = ("ground", "rank", "masks", "_index", "_packed", "_cache")

    def __init__(self, ground: Iterable, bases: Iterable[Iterable]):
        ground_t = _normalize_ground(ground)
        index = {x: i for i, x in enumerate(ground_t)}
        masks = set()
        for b in bases:
            mask = 0
            for x in b:
                lab = as_label(x)
                if lab not in index:
                    raise LabelNotInGround(f"basis element {fmt_label(lab)} not in ground")
                mask |= 1 << index[lab]
            masks.add(mask)
        self._setup(ground_t, masks, check=True, index=index)

    @classmethod
    def from_masks(cls, ground, masks, check: bool = True) -> "Matroid":
        obj = cls.__new__(cls)
        ground_t = ground if isinstance(ground, tuple) and all(
            isinstance(x, Fraction) for x in ground
        ) else _normalize_ground(ground)
        obj._setup(ground_t, set(masks), check=check)
        return obj

    def _setup(self, ground, masks, check, index=None):
        if len(ground) > MAX_GROUND:
            raise GroundTooLarge(f"{len(ground)} elements; at most {MAX_GROUND} supported")
        if not masks:
            raise EmptyBases("a matroid needs at least one basis")
        sizes = {popcount(b) for b in masks}
        if len(sizes) != 1:
            raise UnequalCardinality(f"bases have sizes {sorted(sizes)}")
        self.ground = ground
        self.rank = sizes.pop()
        self.masks = tuple(sorted(masks))
        self._index = index if index is not None else {x: i for i, x in enumerate(ground)}
        self._packed = kernels.pack(self.masks)
        self._cache = {}
        if check:
            bad = kernels.exchange_violation(self._packed)
            if bad is not None:
                b1, b2, x = bad
                witness = (self.labels_of(b1), self.labels_of(b2), self.labels_of(x))
                raise ExchangeViolation(
                    "basis exchange fails for B1={} B2={} x={}".format(
                        fmt_set(witness[0]), fmt_set(witness[1]), fmt_set(witness[2])
                    ),
                    witness,
                )

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    @property
    def packed(self):
        return self._packed

    @property
    def bases(self) -> tuple[frozenset, ...]:
        return tuple(self.labels_of(b) for b in self.sorted_masks())

    def sorted_masks(self) -> list[int]:
        """Bases in lexicographic order of their sorted index tuples."""
        return sorted(self.masks, key=lambda b: [i for i in range(self.n) if b >> i & 1])

    def index(self, label) -> int:
        try:
            return self._index[as_label(label)]
        except KeyError:
            raise LabelNotInGround(f"{label} not in ground set") from None

    def mask_of(self, labels: Iterable) -> int:
        mask = 0
        for x in labels:
            mask |= 1 << self.index(x)
        return mask

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self.ground[b.bit_length() - 1] for b in kernels.bits(mask))

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.ground == other.ground and self.masks == other.masks

    def __hash__(self):
        return hash((self.ground, self.masks))

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.masks)})"

    def _cached(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            value = fn()
            self._cache[key] = value
            return value

    # -- oracles ---------------------------------------------------------

    def rank_mask(self, x: int) -> int:
        return kernels.rank(self._packed, x)

    def is_independent_mask(self, x: int) -> bool:
        return kernels.is_independent(self._packed, x)

    def closure_mask(self, x: int) -> int:
        r = self.rank_mask(x)
        out = x
        for i in range(self.n):
            bit = 1 << i
            if not x & bit and self.rank_mask(x | bit) == r:
                out |= bit
        return out

    def circuit_masks(self) -> tuple[int, ...]:
        return self._cached(
            "circuits",
            lambda: tuple(sorted(kernels.circuits(self._packed, self.n, self.rank))),
        )

    def cocircuit_masks(self) -> tuple[int, ...]:
        return self._cached("cocircuits", lambda: self.dual().circuit_masks())

    def loops_mask(self) -> int:
        union = 0
        for b in self.masks:
            union |= b
        return self.full & ~union

    def coloops_mask(self) -> int:
        inter = self.full
        for b in self.masks:
            inter &= b
        return inter

    # -- derived matroids ------------------------------------------------

    def dual(self) -> "Matroid":
        def build():
            d = Matroid.from_masks(self.ground, [self.full ^ b for b in self.masks], check=False)
            d._cache["dual"] = self
            return d

        return self._cached("dual", build)

    def delete_index(self, i: int) -> "Matroid":
        bit = 1 << i
        if self.coloops_mask() & bit:
            masks = {remove_bit(b, i) for b in self.masks}
        else:
            masks = {remove_bit(b, i) for b in self.masks if not b & bit}
        return Matroid.from_masks(self.ground[:i] + self.ground[i + 1 :], masks, check=False)

    def contract_index(self, i: int) -> "Matroid":
        bit = 1 << i
        if self.loops_mask() & bit:
            masks = {remove_bit(b, i) for b in self.masks}
        else:
            masks = {remove_bit(b, i) for b in self.masks if b & bit}
        return Matroid.from_masks(self.ground[:i] + self.ground[i + 1 :], masks, check=False)

    def minor_mask(self, contract: int, delete: int) -> "Matroid":
        """M/contract\\delete in one pass (no iteration over elements)."""
        keep = self.full & ~(contract | delete)
        ground = tuple(x for i, x in enumerate(self.ground) if keep >> i & 1)
        masks = kernels.minor_masks(self._packed, contract, delete, self.n)
        return Matroid.from_masks(ground, masks, check=False)

    def restrict_mask(self, keep: int) -> "Matroid":
        return self.minor_mask(0, self.full & ~keep)

    def relabel(self, mapping) -> "Matroid":
        """Rename elements by ``mapping`` (dict or callable); bits are re-sorted."""
        get = mapping if callable(mapping) else (lambda x: mapping[x])
        new = [as_label(get(x)) for x in self.ground]
        if len(set(new)) != len(new):
            raise DuplicateLabel("relabelling is not injective")
        order = sorted(range(self.n), key=lambda i: new[i])
        perm = [0] * self.n
        for pos, i in enumerate(order):
            perm[i] = pos
        ground = tuple(new[i] for i in order)
        return Matroid.from_masks(ground, [permute_mask(b, perm) for b in self.masks], check=False)


def _normalize_ground(ground) -> tuple:
    labels = [as_label(x) for x in ground]
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("ground labels must be distinct")
    labels.sort()
    return tuple(labels)


@dataclass(frozen=True)
class SubsetFamily:
    """A family of subsets of ``ground`` held as bitmasks."""

    ground: tuple
    masks: frozenset

    def _labels(self, mask):
        return frozenset(self.ground[b.bit_length() - 1] for b in kernels.bits(mask))

    def _key(self, mask):
        return (popcount(mask), [i for i in range(len(self.ground)) if mask >> i & 1])

    def __iter__(self) -> Iterator[frozenset]:
        for mask in sorted(self.masks, key=self._key):
            yield self._labels(mask)

    def __len__(self):
        return len(self.masks)

    def __contains__(self, item) -> bool:
        index = {x: i for i, x in enumerate(self.ground)}
        mask = 0
        for x in item:
            lab = as_label(x)
            if lab not in index:
                return False
            mask |= 1 << index[lab]
        return mask in self.masks

    def as_sets(self) -> set[frozenset]:
        return set(self)


def _family(m: Matroid, masks) -> SubsetFamily:
    return SubsetFamily(m.ground, frozenset(masks))


# -- functional API -------------------------------------------------------


def matroid_from_bases(ground: Iterable, bases: Iterable[Iterable]) -> Matroid:
    return Matroid(ground, bases)


def rank_of(m: Matroid, x: Iterable) -> int:
    return m.rank_mask(m.mask_of(x))


def closure_of(m: Matroid, x: Iterable) -> frozenset:
    return m.labels_of(m.closure_mask(m.mask_of(x)))


def is_flat(m: Matroid, x: Iterable) -> bool:
    mask = m.mask_of(x)
    return m.closure_mask(mask) == mask


def circuits_of(m: Matroid) -> SubsetFamily:
    return _family(m, m.circuit_masks())


def cocircuits_of(m: Matroid) -> SubsetFamily:
    return _family(m, m.cocircuit_masks())


def loops_of(m: Matroid) -> frozenset:
    return m.labels_of(m.loops_mask())


def coloops_of(m: Matroid) -> frozenset:
    return m.labels_of(m.coloops_mask())


def dual_of(m: Matroid) -> Matroid:
    return m.dual()


def delete(m: Matroid, e) -> Matroid:
    return m.delete_index(m.index(e))


def contract(m: Matroid, e) -> Matroid:
    return m.contract_index(m.index(e))


def minor(m: Matroid, deletions: Iterable = (), contractions: Iterable = ()) -> Matroid:
    """Contract then delete, one element at a time in ascending label order."""
    dels = sorted({as_label(x) for x in deletions})
    cons = sorted({as_label(x) for x in contractions})
    if set(dels) & set(cons):
        raise ValueError("deletions and contractions must be disjoint")
    for x in dels + cons:
        m.index(x)
    out = m
    for x in cons:
        out = contract(out, x)
    for x in dels:
        out = delete(out, x)
    return out


def circuit_hyperplane_masks(m: Matroid) -> list[int]:
    target = m.rank - 1
    return [
        c
        for c in m.circuit_masks()
        if m.rank_mask(c) == target and m.closure_mask(c) == c
    ]


def circuit_hyperplanes_of(m: Matroid) -> SubsetFamily:
    return _family(m, circuit_hyperplane_masks(m))


def relax_circuit_hyperplane(m: Matroid, x: Iterable) -> Matroid:
    mask = m.mask_of(x)
    if mask not in circuit_hyperplane_masks(m):
        raise NotACircuitHyperplane(f"{fmt_set(m.labels_of(mask))} is not a circuit-hyperplane")
    return Matroid.from_masks(m.ground, set(m.masks) | {mask}, check=False)


# -- isomorphism and minors -----------------------------------------------


def _degree_profile(m: Matroid):
    deg = [0] * m.n
    pair = [[0] * m.n for _ in range(m.n)]
    for b in m.masks:
        idx = [i for i in range(m.n) if b >> i & 1]
        for a in idx:
            deg[a] += 1
            row = pair[a]
            for c in idx:
                row[c] += 1
    return deg, pair


def find_isomorphism(m: Matroid, n: Matroid) -> dict | None:
    """A basis-preserving bijection ``E(m) -> E(n)`` as a label dict, or None."""
    if m.n != n.n or m.rank != n.rank or len(m.masks) != len(n.masks):
        return None
    deg_m, pair_m = _degree_profile(m)
    deg_n, pair_n = _degree_profile(n)
    if sorted(deg_m) != sorted(deg_n):
        return None
    if sorted(map(sorted, pair_m)) != sorted(map(sorted, pair_n)):
        return None
    size = m.n
    classes: dict[tuple, list[int]] = {}
    for j in range(size):
        classes.setdefault((deg_n[j], tuple(sorted(pair_n[j]))), []).append(j)
    keys = [(deg_m[i], tuple(sorted(pair_m[i]))) for i in range(size)]
    if any(k not in classes for k in keys):
        return None
    order = sorted(range(size), key=lambda i: (len(classes[keys[i]]), i))
    target = set(n.masks)
    image = [-1] * size
    used = [False] * size

    def consistent(i, j):
        for a in order:
            ia = image[a]
            if ia < 0:
                break
            if pair_m[i][a] != pair_n[j][ia]:
                return False
        return True

    def search(pos):
        if pos == size:
            for b in m.masks:
                if permute_mask(b, image) not in target:
                    return False
            return True
        i = order[pos]
        for j in classes[keys[i]]:
            if used[j] or not consistent(i, j):
                continue
            image[i] = j
            used[j] = True
            if search(pos + 1):
                return True
            image[i] = -1
            used[j] = False
        return False

    if not search(0):
        return None
    return {m.ground[i]: n.ground[image[i]] for i in range(size)}


def is_isomorphic(m: Matroid, n: Matroid) -> bool:
    return find_isomorphism(m, n) is not None


def _is_uniform(t: Matroid) -> bool:
    from math import comb

    return len(t.masks) == comb(t.n, t.rank)


def find_minor(m: Matroid, target: Matroid):
    """``(contractions, deletions)`` label sets giving a minor isomorphic to
    ``target``, or None.

    Contraction sets range over independent sets of size ``r(m) - r(target)``;
    deletions over sets whose removal keeps the contraction spanning.
    """
    k = m.rank - target.rank
    d = m.n - target.n - k
    if k < 0 or d < 0:
        return None
    want = len(target.masks)
    uniform = _is_uniform(target)
    full = m.full
    for con in combinations(range(m.n), k):
        cmask = 0
        for i in con:
            cmask |= 1 << i
        if not m.is_independent_mask(cmask):
            continue
        rest = [i for i in range(m.n) if not cmask >> i & 1]
        for dl in combinations(rest, d):
            dmask = 0
            for i in dl:
                dmask |= 1 << i
            if m.rank_mask(full & ~dmask) != m.rank:
                continue
            masks = kernels.minor_masks(m.packed, cmask, dmask, m.n)
            if len(masks) != want:
                continue
            if uniform:
                found = True
            else:
                keep = full & ~(cmask | dmask)
                ground = tuple(x for i, x in enumerate(m.ground) if keep >> i & 1)
                found = is_isomorphic(Matroid.from_masks(ground, masks, check=False), target)
            if found:
                return m.labels_of(cmask), m.labels_of(dmask)
    return None


def has_minor_isomorphic(m: Matroid, target: Matroid) -> bool:
    return find_minor(m, target) is not None


# -- text format ----------------------------------------------------------


def dumps(m: Matroid) -> str:
    lines = [
        "ground: " + " ".join(fmt_label(x) for x in m.ground),
        f"rank: {m.rank}",
        "bases:",
    ]
    for b in m.sorted_masks():
        lines.append(" ".join(fmt_label(x) for x in sorted(m.labels_of(b))))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Matroid:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3:
        raise ParseError("expected 'ground:', 'rank:' and 'bases:' lines")
    head = [ln.strip() for ln in lines[:3]]
    if not head[0].startswith("ground:"):
        raise ParseError("first line must start with 'ground:'")
    if not head[1].startswith("rank:"):
        raise ParseError("second line must start with 'rank:'")
    if head[2] != "bases:":
        raise ParseError("third line must be 'bases:'")
    ground = [as_label(t) for t in head[0][len("ground:") :].split()]
    try:
        rank = int(head[1][len("rank:") :])
    except ValueError as exc:
        raise ParseError("rank must be an integer") from exc
    body = [ln.split() for ln in lines[3:]]
    if rank == 0:
        if any(body):
            raise ParseError("rank-0 matroid lists only the empty basis")
        bases = [()]
    else:
        bases = [[as_label(t) for t in row] for row in body if row]
    m = Matroid(ground, bases)
    if m.rank != rank:
        raise UnequalCardinality(f"declared rank {rank} but bases have size {m.rank}")
    return m
