"""Brute-force realizability over the prime fields GF(2) and GF(3).

A realization ``[I | D]`` may put any fixed basis ``B0`` on the identity.
Entry ``D[b][e]`` is then nonzero exactly when ``B0 - b + e`` is a basis, so
the support of ``D`` is forced. Rows and columns can be rescaled, which makes
the entries on a spanning forest of the support graph equal to 1. Only the
remaining nonzero entries are searched.
"""

from __future__ import annotations

from itertools import combinations, product

from .errors import OracleScaleExceeded
from .matroid import Matroid

SCALE_LIMIT = 2**16


def _det_mod(rows: list[list[int]], p: int) -> int:
    a = [r[:] for r in rows]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], p - 2, p)
        for i in range(col + 1, n):
            f = a[i][col] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[col])]
    return det % p


def _support(m: Matroid):
    b0 = m.sorted_masks()[0]
    rows = [i for i in range(m.n) if b0 >> i & 1]
    cols = [i for i in range(m.n) if not b0 >> i & 1]
    bases = set(m.masks)
    support = [
        [(b0 & ~(1 << r)) | (1 << c) in bases for c in cols] for r in rows
    ]
    return rows, cols, support


def _forest(rows, cols, support):
    """Support positions on a spanning forest of the row/column graph."""
    parent = list(range(len(rows) + len(cols)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    fixed = set()
    for i in range(len(rows)):
        for j in range(len(cols)):
            if support[i][j]:
                a, b = find(i), find(len(rows) + j)
                if a != b:
                    parent[a] = b
                    fixed.add((i, j))
    return fixed


def free_entries(m: Matroid) -> int:
    """Number of support entries left after normalizing a spanning forest."""
    rows, cols, support = _support(m)
    total = sum(sum(r) for r in support)
    return total - len(_forest(rows, cols, support))


def realizable_over(m: Matroid, p: int) -> bool:
    """True when ``m`` is the column matroid of a matrix over GF(p)."""
    if m.rank == 0:
        return True
    rows, cols, support = _support(m)
    fixed = _forest(rows, cols, support)
    free = [(i, j) for i in range(len(rows)) for j in range(len(cols)) if support[i][j] and (i, j) not in fixed]
    if (p - 1) ** len(free) > SCALE_LIMIT:
        raise OracleScaleExceeded(
            f"{(p - 1) ** len(free)} candidate matrices over GF({p}) exceed {SCALE_LIMIT}"
        )
    r = m.rank
    col_of = {}
    for k, i in enumerate(rows):
        col_of[i] = ("I", k)
    for k, i in enumerate(cols):
        col_of[i] = ("D", k)
    bases = set(m.masks)
    # subsets with more non-frame columns first fail fastest
    subsets = sorted(combinations(range(m.n), r), key=lambda s: -sum(col_of[i][0] == "D" for i in s))
    for values in product(range(1, p), repeat=len(free)):
        d = [[1 if support[i][j] else 0 for j in range(len(cols))] for i in range(len(rows))]
        for (i, j), v in zip(free, values):
            d[i][j] = v
        columns = {}
        for idx, (kind, k) in col_of.items():
            if kind == "I":
                columns[idx] = [1 if t == k else 0 for t in range(r)]
            else:
                columns[idx] = [d[t][k] for t in range(r)]
        ok = True
        for s in subsets:
            mask = 0
            for i in s:
                mask |= 1 << i
            det = _det_mod([[columns[i][t] for i in s] for t in range(r)], p)
            if (det != 0) != (mask in bases):
                ok = False
                break
        if ok:
            return True
    return False


def f2_realizable(m: Matroid) -> bool:
    return realizable_over(m, 2)


def f3_realizable(m: Matroid) -> bool:
    return realizable_over(m, 3)
