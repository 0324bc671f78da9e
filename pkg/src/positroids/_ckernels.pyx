# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels; same signatures and results as ``_pykernels``."""

from array import array

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

BACKEND = "cython"

cdef extern from *:
    int popcount "__builtin_popcountll"(u64) nogil
    int _ctz "__builtin_ctzll"(u64) nogil


def pack(masks):
    return array("Q", masks)


cdef inline int _rank(const u64[:] bs, u64 x) nogil:
    cdef Py_ssize_t i, m = bs.shape[0]
    cdef int cap = popcount(x)
    cdef int r = popcount(bs[0])
    cdef int best = 0, c
    if r < cap:
        cap = r
    for i in range(m):
        c = popcount(bs[i] & x)
        if c > best:
            best = c
            if best == cap:
                break
    return best


cdef inline bint _indep(const u64[:] bs, u64 x) nogil:
    cdef Py_ssize_t i, m = bs.shape[0]
    for i in range(m):
        if bs[i] & x == x:
            return True
    return False


cdef inline Py_ssize_t _find(const u64[:] bs, u64 key) nogil:
    # bs must be sorted ascending
    cdef Py_ssize_t lo = 0, hi = bs.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if bs[mid] == key:
            return mid
        if bs[mid] < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


cdef inline u64 _compress(u64 x, u64 keep) nogil:
    cdef u64 out = 0, low
    cdef int pos = 0
    while keep:
        low = keep & (~keep + 1)
        if x & low:
            out |= (<u64>1) << pos
        pos += 1
        keep ^= low
    return out


cdef inline u64 _next_combination(u64 v) nogil:
    # Gosper's hack
    cdef u64 t = v | (v - 1)
    return (t + 1) | (((~t & (t + 1)) - 1) >> (_ctz(v) + 1))


def rank(packed, x):
    cdef const u64[:] bs = packed
    return _rank(bs, <u64>x)


def is_independent(packed, x):
    cdef const u64[:] bs = packed
    return _indep(bs, <u64>x)


def exchange_violation(packed):
    cdef const u64[:] src = packed
    cdef Py_ssize_t m = src.shape[0]
    sorted_bases = array("Q", sorted(packed))
    cdef const u64[:] bs = sorted_bases
    cdef Py_ssize_t i, j
    cdef u64 b1, b2, d1, d2, x, y, base, dd
    cdef bint ok
    for i in range(m):
        b1 = bs[i]
        for j in range(m):
            b2 = bs[j]
            d1 = b1 & ~b2
            if not d1:
                continue
            d2 = b2 & ~b1
            while d1:
                x = d1 & (~d1 + 1)
                d1 ^= x
                base = b1 ^ x
                ok = False
                dd = d2
                while dd:
                    y = dd & (~dd + 1)
                    dd ^= y
                    if _find(bs, base | y) >= 0:
                        ok = True
                        break
                if not ok:
                    return (int(b1), int(b2), int(x))
    return None


def circuits(packed, int n, int r):
    cdef const u64[:] bs = packed
    cdef int k, kmax = r + 1
    cdef u64 x, limit, rest, b
    cdef bint minimal
    found = []
    if kmax > n:
        kmax = n
    limit = (<u64>1) << n if n < 64 else 0
    for k in range(1, kmax + 1):
        x = ((<u64>1) << k) - 1 if k < 64 else ~(<u64>0)
        while True:
            if n < 64 and x >= limit:
                break
            if not _indep(bs, x):
                minimal = True
                rest = x
                while rest:
                    b = rest & (~rest + 1)
                    rest ^= b
                    if not _indep(bs, x ^ b):
                        minimal = False
                        break
                if minimal:
                    found.append(int(x))
            if k == n:
                break
            x = _next_combination(x)
            if x == 0:
                break
    return found


def minor_masks(packed, contract, delete, int n):
    cdef const u64[:] bs = packed
    cdef u64 c = <u64>contract, d = <u64>delete
    cdef u64 full = ~(<u64>0) if n == 64 else (((<u64>1) << n) - 1)
    cdef u64 keep = full & ~(c | d), t
    cdef Py_ssize_t i, m = bs.shape[0]
    cdef int rc = 0, best = -1, cnt
    for i in range(m):
        cnt = popcount(bs[i] & c)
        if cnt > rc:
            rc = cnt
    out = set()
    for i in range(m):
        if popcount(bs[i] & c) != rc:
            continue
        t = bs[i] & keep
        cnt = popcount(t)
        if cnt > best:
            best = cnt
            out = {t}
        elif cnt == best:
            out.add(t)
    return sorted(int(_compress(v, keep)) for v in out)


def bases_from_circuits(circuit_masks, int n):
    cs = array("Q", circuit_masks)
    cdef const u64[:] cv = cs
    cdef Py_ssize_t nc = cv.shape[0], j
    cdef int i, r
    cdef u64 x = 0, s, limit
    cdef bint ok
    for i in range(n):
        s = x | ((<u64>1) << i)
        ok = True
        for j in range(nc):
            if cv[j] & s == cv[j]:
                ok = False
                break
        if ok:
            x = s
    r = popcount(x)
    out = []
    if r == 0:
        return [0]
    s = ((<u64>1) << r) - 1 if r < 64 else ~(<u64>0)
    limit = (<u64>1) << n if n < 64 else 0
    while True:
        if n < 64 and s >= limit:
            break
        ok = True
        for j in range(nc):
            if cv[j] & s == cv[j]:
                ok = False
                break
        if ok:
            out.append(int(s))
        if r == n:
            break
        s = _next_combination(s)
        if s == 0:
            break
    return out


cdef struct EnvState:
    const u64* bases
    Py_ssize_t m
    char* state
    Py_ssize_t* included
    Py_ssize_t n_included
    Py_ssize_t* order
    Py_ssize_t n_order
    Py_ssize_t* nbr_start
    Py_ssize_t* nbr


cdef Py_ssize_t _bfind(const u64* bs, Py_ssize_t m, u64 key) nogil:
    cdef Py_ssize_t lo = 0, hi = m - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if bs[mid] == key:
            return mid
        if bs[mid] < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


cdef bint _pair_ok(EnvState* st, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef u64 b1 = st.bases[i], b2 = st.bases[j]
    cdef u64 d1 = b1 & ~b2, d2 = b2 & ~b1, x, y, dd, base
    cdef Py_ssize_t k
    cdef bint ok
    while d1:
        x = d1 & (~d1 + 1)
        d1 ^= x
        base = b1 ^ x
        ok = False
        dd = d2
        while dd:
            y = dd & (~dd + 1)
            dd ^= y
            k = _bfind(st.bases, st.m, base | y)
            if k >= 0 and st.state[k] != 0:
                ok = True
                break
        if not ok:
            return False
    return True


cdef bint _include_ok(EnvState* st, Py_ssize_t i) nogil:
    cdef Py_ssize_t t, j
    for t in range(st.n_included):
        j = st.included[t]
        if not _pair_ok(st, i, j) or not _pair_ok(st, j, i):
            return False
    return True


cdef bint _exclude_ok(EnvState* st, Py_ssize_t i) nogil:
    cdef u64 bi = st.bases[i], x, y, bk
    cdef Py_ssize_t a, j, t, k
    for a in range(st.nbr_start[i], st.nbr_start[i + 1]):
        j = st.nbr[a]
        if st.state[j] != 1:
            continue
        x = st.bases[j] & ~bi
        y = bi & ~st.bases[j]
        for t in range(st.n_included):
            k = st.included[t]
            bk = st.bases[k]
            if (bk & x) or not (bk & y):
                continue
            if not _pair_ok(st, j, k):
                return False
    return True


cdef void _dfs(EnvState* st, Py_ssize_t pos, list results):
    cdef Py_ssize_t i
    if pos == st.n_order:
        results.append(sorted([st.included[t] for t in range(st.n_included)]))
        return
    i = st.order[pos]
    st.state[i] = 1
    if _include_ok(st, i):
        st.included[st.n_included] = i
        st.n_included += 1
        _dfs(st, pos + 1, results)
        st.n_included -= 1
    st.state[i] = 0
    if _exclude_ok(st, i):
        _dfs(st, pos + 1, results)
    st.state[i] = 2


def envelope_members(bases, forced):
    cdef Py_ssize_t m = len(bases), i, j, a, b
    arr = array("Q", bases)
    cdef const u64[:] bv = arr
    cdef int r = popcount(bv[0])
    cdef EnvState st
    results = []
    nbr_lists = [
        [j for j in range(m) if j != i and popcount(bv[i] & bv[j]) == r - 1]
        for i in range(m)
    ]
    total = sum(len(l) for l in nbr_lists)
    st.bases = &bv[0]
    st.m = m
    st.state = <char*>malloc(m)
    st.included = <Py_ssize_t*>malloc(m * sizeof(Py_ssize_t))
    st.order = <Py_ssize_t*>malloc(m * sizeof(Py_ssize_t))
    st.nbr_start = <Py_ssize_t*>malloc((m + 1) * sizeof(Py_ssize_t))
    st.nbr = <Py_ssize_t*>malloc((total + 1) * sizeof(Py_ssize_t))
    try:
        st.n_included = 0
        st.n_order = 0
        for i in range(m):
            if forced[i]:
                st.state[i] = 1
                st.included[st.n_included] = i
                st.n_included += 1
            else:
                st.state[i] = 2
                st.order[st.n_order] = i
                st.n_order += 1
        a = 0
        for i in range(m):
            st.nbr_start[i] = a
            for j in nbr_lists[i]:
                st.nbr[a] = j
                a += 1
        st.nbr_start[m] = a
        for a in range(st.n_included):
            for b in range(st.n_included):
                if a != b and not _pair_ok(&st, st.included[a], st.included[b]):
                    return []
        _dfs(&st, 0, results)
    finally:
        free(st.state)
        free(st.included)
        free(st.order)
        free(st.nbr_start)
        free(st.nbr)
    return results
