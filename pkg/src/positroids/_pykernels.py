"""Pure-Python bitset kernels.

Reference implementation of every hot loop; ``_ckernels.pyx`` mirrors these
signatures exactly. Subsets are ints used as bitmasks over internal indices,
a basis family is whatever :func:`pack` returns.
"""

from itertools import combinations

BACKEND = "python"

_EXCLUDED = 0
_INCLUDED = 1
_UNDECIDED = 2


def pack(masks):
    return tuple(masks)


def bits(x):
    while x:
        low = x & -x
        yield low
        x ^= low


def compress(x, keep):
    """Squeeze the bits of ``x`` selected by ``keep`` down to a dense mask."""
    out = 0
    pos = 0
    while keep:
        low = keep & -keep
        if x & low:
            out |= 1 << pos
        pos += 1
        keep ^= low
    return out


def rank(packed, x):
    cap = min(x.bit_count(), packed[0].bit_count())
    best = 0
    for b in packed:
        c = (b & x).bit_count()
        if c > best:
            best = c
            if best == cap:
                break
    return best


def is_independent(packed, x):
    for b in packed:
        if b & x == x:
            return True
    return False


def exchange_violation(packed):
    members = set(packed)
    for b1 in packed:
        for b2 in packed:
            d1 = b1 & ~b2
            if not d1:
                continue
            d2 = b2 & ~b1
            for x in bits(d1):
                base = b1 ^ x
                for y in bits(d2):
                    if base | y in members:
                        break
                else:
                    return (b1, b2, x)
    return None


def circuits(packed, n, r):
    found = []
    for k in range(1, min(r + 1, n) + 1):
        for combo in combinations(range(n), k):
            x = 0
            for i in combo:
                x |= 1 << i
            if is_independent(packed, x):
                continue
            for b in bits(x):
                if not is_independent(packed, x ^ b):
                    break
            else:
                found.append(x)
    return found


def minor_masks(packed, contract, delete, n):
    """Bases of M/contract\\delete, compressed onto the surviving indices."""
    keep = ((1 << n) - 1) & ~(contract | delete)
    rc = 0
    for b in packed:
        c = (b & contract).bit_count()
        if c > rc:
            rc = c
    best = -1
    out = set()
    for b in packed:
        if (b & contract).bit_count() != rc:
            continue
        t = b & keep
        c = t.bit_count()
        if c > best:
            best = c
            out = {t}
        elif c == best:
            out.add(t)
    return sorted(compress(t, keep) for t in out)


def bases_from_circuits(circuit_masks, n):
    def independent(x):
        for c in circuit_masks:
            if c & x == c:
                return False
        return True

    x = 0
    for i in range(n):
        if independent(x | (1 << i)):
            x |= 1 << i
    r = x.bit_count()
    out = []
    for combo in combinations(range(n), r):
        s = 0
        for i in combo:
            s |= 1 << i
        if independent(s):
            out.append(s)
    return out


def envelope_members(bases, forced):
    """All subfamilies S with forced <= S <= bases that satisfy basis exchange.

    ``bases`` is sorted and duplicate free; returns a list of index lists.
    Depth-first over the unforced bases; a branch is cut as soon as some pair
    of included bases has lost every possible exchange partner.
    """
    m = len(bases)
    index = {b: i for i, b in enumerate(bases)}
    r = bases[0].bit_count()
    state = [_INCLUDED if f else _UNDECIDED for f in forced]
    nbrs = [
        [j for j in range(m) if j != i and (bases[i] & bases[j]).bit_count() == r - 1]
        for i in range(m)
    ]
    included = [i for i in range(m) if forced[i]]
    order = [i for i in range(m) if not forced[i]]
    results = []

    def pair_ok(i, j):
        b1 = bases[i]
        b2 = bases[j]
        d1 = b1 & ~b2
        d2 = b2 & ~b1
        for x in bits(d1):
            base = b1 ^ x
            for y in bits(d2):
                k = index.get(base | y)
                if k is not None and state[k] != _EXCLUDED:
                    break
            else:
                return False
        return True

    def include_ok(i):
        for j in included:
            if not (pair_ok(i, j) and pair_ok(j, i)):
                return False
        return True

    def exclude_ok(i):
        bi = bases[i]
        for j in nbrs[i]:
            if state[j] != _INCLUDED:
                continue
            x = bases[j] & ~bi
            y = bi & ~bases[j]
            for k in included:
                bk = bases[k]
                if bk & x or not bk & y:
                    continue
                if not pair_ok(j, k):
                    return False
        return True

    for a in included:
        for b in included:
            if a != b and not pair_ok(a, b):
                return []

    def dfs(pos):
        if pos == len(order):
            results.append(sorted(included))
            return
        i = order[pos]
        state[i] = _INCLUDED
        if include_ok(i):
            included.append(i)
            dfs(pos + 1)
            included.pop()
        state[i] = _EXCLUDED
        if exclude_ok(i):
            dfs(pos + 1)
        state[i] = _UNDECIDED

    dfs(0)
    return results
