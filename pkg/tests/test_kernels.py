import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from positroids import kernels
from positroids.kernels import available_backends
from positroids.maps import positroids_on


def k_subsets(n, k):
    out = []
    for combo in combinations(range(n), k):
        b = 0
        for i in combo:
            b |= 1 << i
        out.append(b)
    return out


@st.composite
def families(draw):
    n = draw(st.integers(1, 7))
    k = draw(st.integers(0, n))
    pool = k_subsets(n, k)
    chosen = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=len(pool), unique=True))
    return n, sorted(chosen)


def test_backend_selected():
    assert kernels.BACKEND in available_backends()


def test_python_backend_always_present():
    assert "python" in available_backends()


@settings(max_examples=150, deadline=None)
@given(families(), st.integers(0, 127))
def test_rank_and_independence_agree(fam, x):
    n, masks = fam
    x &= (1 << n) - 1
    results = set()
    for mod in available_backends().values():
        packed = mod.pack(masks)
        results.add((mod.rank(packed, x), mod.is_independent(packed, x)))
    assert len(results) == 1
    expected = max((b & x).bit_count() for b in masks)
    assert results.pop()[0] == expected


@settings(max_examples=150, deadline=None)
@given(families())
def test_exchange_violation_agrees(fam):
    n, masks = fam
    verdicts = {mod.exchange_violation(mod.pack(masks)) is None for mod in available_backends().values()}
    assert len(verdicts) == 1


@settings(max_examples=100, deadline=None)
@given(families(), st.integers(0, 127), st.integers(0, 127))
def test_minor_masks_agree(fam, c, d):
    n, masks = fam
    full = (1 << n) - 1
    c &= full
    d &= full & ~c
    outs = {tuple(mod.minor_masks(mod.pack(masks), c, d, n)) for mod in available_backends().values()}
    assert len(outs) == 1


def test_circuits_and_rebuild_agree_on_positroids():
    mods = list(available_backends().values())
    for p in list(positroids_on(range(1, 6)))[::7]:
        outs = {tuple(sorted(mod.circuits(mod.pack(p.masks), p.n, p.rank))) for mod in mods}
        assert len(outs) == 1
        circuits = list(outs.pop())
        for mod in mods:
            assert sorted(mod.bases_from_circuits(circuits, p.n)) == sorted(p.masks)


def _brute_members(bases, forced, backend):
    free = [i for i, f in enumerate(forced) if not f]
    base_set = [i for i, f in enumerate(forced) if f]
    out = []
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            idx = sorted(base_set + list(extra))
            fam = [bases[i] for i in idx]
            if backend.exchange_violation(backend.pack(fam)) is None:
                out.append(idx)
    return sorted(out)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (5, 3), (6, 2)])
def test_envelope_members_match_brute_force(backend, n, k):
    bases = k_subsets(n, k)
    bases.sort()
    rng = random.Random(n * 10 + k)
    forced = [False] * len(bases)
    for i in rng.sample(range(len(bases)), min(len(bases), n)):
        forced[i] = True
    got = sorted(backend.envelope_members(bases, forced))
    assert got == _brute_members(bases, forced, backend)
