import random
from fractions import Fraction
from itertools import combinations

import pytest

from corpus import all_positroids, corpus, sample
from positroids.connectivity import (
    CIRCUIT,
    COCIRCUIT,
    THREE_CONNECTED,
    canonical_tree_decomposition,
    connected_components,
    connectivity_lambda,
    direct_sum,
    envelope_tree,
    find_k_separation,
    is_n_connected,
    lambda_mask,
    positroid_tree_check,
    split,
    two_sum,
)
from positroids.constructions import Graph, graphic_matroid, n_graph, uniform, whirl
from positroids.cyclic import is_noncrossing_partition
from positroids.errors import NotAPositroid, NotTwoConnected, OverlappingGrounds, PreconditionViolation
from positroids.maps import envelope_class_of, is_positroid, weak_map_leq
from positroids.matroid import Matroid

F = Fraction


def doubled_triangle():
    g = Graph.from_edges([(0, 1, 1), (0, 1, 2), (1, 2, 3), (0, 2, 4)], 3)
    return graphic_matroid(g)


def two_sum_by_bases(m, n, e):
    """Bases of the 2-sum: (B1 - e) + B2 with e in B1 only, or B1 + (B2 - e)
    with e in B2 only."""
    out = set()
    for b1 in m.bases:
        for b2 in n.bases:
            if (e in b1) != (e in b2):
                out.add(frozenset((set(b1) | set(b2)) - {e}))
    ground = sorted((set(m.ground) | set(n.ground)) - {e})
    return Matroid(ground, out)


# -- lambda and separations ---------------------------------------------------------


def test_lambda_examples():
    w = whirl(3)
    assert connectivity_lambda(w, []) == 0
    a = uniform(2, 3, [1, 2, 3])
    b = uniform(1, 2, [4, 5])
    assert connectivity_lambda(direct_sum(a, b), [1, 2, 3]) == 0
    h = F(5, 2)
    s = two_sum(uniform(2, 3, [1, 2, h]), uniform(2, 3, [h, 3, 4]), h)
    assert connectivity_lambda(s, [1, 2]) == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_lambda_symmetric_and_self_dual(n):
    for m in sample([m for m in corpus(6) if m.n == n], 60, seed=n):
        d = m.dual()
        for x in range(m.full + 1):
            v = lambda_mask(m, x)
            assert v == lambda_mask(m, m.full & ~x)
            assert v == lambda_mask(d, x)


def test_find_k_separation_examples():
    assert find_k_separation(uniform(2, 4), 2) is None
    s = direct_sum(uniform(1, 2, [1, 2]), uniform(1, 2, [3, 4]))
    assert find_k_separation(s, 1) == ({F(1), F(2)}, {F(3), F(4)})
    assert find_k_separation(doubled_triangle(), 2) == ({F(1), F(2)}, {F(3), F(4)})


def test_connectedness_examples():
    assert is_n_connected(whirl(3), 3)
    assert not is_n_connected(Matroid([1, 2, 3], [[1, 2]]), 2)  # 3 is a loop
    for n in range(2, 7):
        assert is_n_connected(uniform(n - 1, n), 2)
    assert not is_n_connected(doubled_triangle(), 3)
    assert is_n_connected(doubled_triangle(), 2)


def test_weak_maps_preserve_separations():
    """If B(n) is inside B(m) then every k-separation of m separates n too."""
    pairs = 0
    for p in all_positroids(6):
        if p.n < 4:
            continue
        try:
            members = envelope_class_of(p).members
        except Exception:
            continue
        for q in members:
            assert weak_map_leq(p, q)
            for x in range(1, p.full):
                assert lambda_mask(q, x) <= lambda_mask(p, x)
            pairs += 1
    assert pairs > 1000


# -- sums ------------------------------------------------------------------------------------


def test_direct_sum_examples():
    s = direct_sum(uniform(1, 1, [1]), uniform(0, 1, [2]))
    assert s.rank == 1 and s.n == 2 and s.labels_of(s.loops_mask()) == {F(2)}
    with pytest.raises(OverlappingGrounds):
        direct_sum(uniform(1, 2), uniform(1, 2))


def test_components():
    a = whirl(2)
    b = uniform(2, 3, [5, 6, 7])
    comps = connected_components(direct_sum(a, b))
    assert comps == [a, b]
    assert connected_components(whirl(3)) == [whirl(3)]
    loopy = Matroid([1, 2, 3, 4, 5], [[1, 2], [1, 3], [2, 3]])
    grounds = [c.ground for c in connected_components(loopy)]
    assert (F(5),) in grounds and (F(4),) in grounds


def test_positroid_components_are_noncrossing():
    for p in all_positroids(6):
        parts = [c.ground for c in connected_components(p)]
        assert is_noncrossing_partition(p.ground, parts)


def test_two_sum_spec_example():
    h = F(5, 2)
    s, nontrivial = two_sum(uniform(2, 3, [1, h, 4]), uniform(2, 3, [2, h, 3]), h, with_flag=True)
    assert s == uniform(3, 4)
    assert nontrivial
    assert list(s.circuit_masks()) == [0b1111]
    _, flag = two_sum(uniform(1, 2, [1, h]), uniform(2, 3, [2, h, 3]), h, with_flag=True)
    assert not flag


def test_two_sum_preconditions():
    with pytest.raises(PreconditionViolation, match=r"\(i\)"):
        two_sum(uniform(1, 1, [1]), uniform(2, 3, [1, 2, 3]), 1)
    with pytest.raises(PreconditionViolation, match=r"\(ii\)"):
        two_sum(uniform(2, 3, [1, 2, 3]), uniform(2, 3, [2, 3, 4]), 3)
    coloop = Matroid([1, 2, 3], [[1, 2], [1, 3]])
    with pytest.raises(PreconditionViolation, match=r"\(iii\)"):
        two_sum(coloop, uniform(2, 3, [1, 4, 5]), 1)


def _relabel_onto(m, e_old, e_new, others):
    rest = [x for x in m.ground if x != e_old]
    mapping = dict(zip(rest, others))
    mapping[e_old] = e_new
    return m.relabel(mapping)


def test_two_sum_matches_basis_formula():
    rng = random.Random(7)
    pool = [m for m in corpus(5) if 2 <= m.n <= 4]
    checked = 0
    while checked < 150:
        a, b = rng.choice(pool), rng.choice(pool)
        ea = rng.choice(a.ground)
        eb = rng.choice(b.ground)
        if (a.loops_mask() | a.coloops_mask()) >> a.index(ea) & 1:
            continue
        if (b.loops_mask() | b.coloops_mask()) >> b.index(eb) & 1:
            continue
        e = F(1, 2)
        a2 = _relabel_onto(a, ea, e, range(1, a.n))
        b2 = _relabel_onto(b, eb, e, range(10, 10 + b.n - 1))
        assert two_sum(a2, b2, e) == two_sum_by_bases(a2, b2, e)
        checked += 1


def test_split_inverts_two_sum():
    h = F(5, 2)
    a = whirl(2).relabel({1: 1, 2: 2, 3: F(9, 4), 4: h})
    b = uniform(2, 3, [h, 3, 4])
    s = two_sum(a, b, h)
    left, right = split(s, s.mask_of([1, 2, F(9, 4)]), h)
    assert left == a and right == b


# -- canonical trees -----------------------------------------------------------------


def test_tree_examples():
    t = canonical_tree_decomposition(whirl(3))
    assert t.kinds == [THREE_CONNECTED] and t.edges == []
    t = canonical_tree_decomposition(uniform(3, 4))
    assert t.kinds == [CIRCUIT]
    t = canonical_tree_decomposition(doubled_triangle())
    assert sorted(t.kinds) == [CIRCUIT, COCIRCUIT]
    assert len(t.edges) == 1
    assert t.glue() == doubled_triangle()
    with pytest.raises(NotTwoConnected):
        canonical_tree_decomposition(direct_sum(uniform(1, 2), uniform(1, 2, [3, 4])))


def _tree_axioms(t, m):
    seen = set()
    for i, j in combinations(range(len(t.nodes)), 2):
        shared = set(t.nodes[i].ground) & set(t.nodes[j].ground)
        edge = [lab for a, b, lab in t.edges if (a, b) == (i, j)]
        if edge:
            assert shared == {edge[0]}
            assert not (t.kinds[i] == t.kinds[j] and t.kinds[i] in (CIRCUIT, COCIRCUIT))
        else:
            assert not shared
    connectors = {lab for *_, lab in t.edges}
    for node in t.nodes:
        seen |= set(node.ground)
        assert node.n >= 3 or m.n < 3
        for lab in connectors & set(node.ground):
            bit = 1 << node.index(lab)
            assert not (node.loops_mask() | node.coloops_mask()) & bit
    assert seen - connectors == set(m.ground)
    assert len(t.edges) == len(t.nodes) - 1


def test_tree_axioms_and_canonicity_on_corpus():
    count = 0
    for m in corpus(6):
        if m.n < 2 or not is_n_connected(m, 2):
            continue
        first = canonical_tree_decomposition(m, "first")
        last = canonical_tree_decomposition(m, "last")
        _tree_axioms(first, m)
        assert first.glue() == m
        assert first.signature() == last.signature()
        count += 1
    assert count > 500


def test_two_sum_round_trip():
    """Two canonical nodes glued once come back as the same two nodes, except
    that two circuits (or two cocircuits) merge into one."""
    rng = random.Random(11)
    pieces = [whirl(2), uniform(2, 3), uniform(1, 3), uniform(2, 4), uniform(3, 4), uniform(1, 4), whirl(3)]
    for _ in range(40):
        a, b = rng.sample(pieces, 2)
        h = F(1, 2)
        a2 = _relabel_onto(a, a.ground[0], h, range(1, a.n))
        b2 = _relabel_onto(b, b.ground[0], h, range(20, 20 + b.n - 1))
        s = two_sum(a2, b2, h)
        t = canonical_tree_decomposition(s)
        assert t.glue() == s
        ka = canonical_tree_decomposition(a).kinds[0]
        kb = canonical_tree_decomposition(b).kinds[0]
        if ka == kb and ka in (CIRCUIT, COCIRCUIT):
            assert t.kinds == [ka] and t.nodes[0] == s
        else:
            want = sorted([(ka, a.n, a.rank, len(a.masks)), (kb, b.n, b.rank, len(b.masks))])
            assert t.signature() == want


def test_tree_check_agrees_with_recognition():
    pos = non = 0
    for m in corpus(6):
        if m.n < 2 or not is_n_connected(m, 2):
            continue
        verdict = is_positroid(m)
        assert positroid_tree_check(m) == verdict
        pos += verdict
        non += not verdict
    assert pos > 200 and non > 100
    with pytest.raises(NotTwoConnected):
        positroid_tree_check(Matroid([1, 2, 3], [[1, 2]]))


def test_tree_check_examples():
    assert positroid_tree_check(whirl(3))
    # M(N_2) is two parallel pairs, hence not 2-connected
    with pytest.raises(NotTwoConnected):
        positroid_tree_check(n_graph(2)[1])
    swapped = whirl(3).relabel({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    assert is_n_connected(swapped, 2)
    assert not positroid_tree_check(swapped)


def test_direct_sum_class_product():
    ps = [p for p in all_positroids(4) if p.n >= 2]
    rng = random.Random(3)
    for _ in range(40):
        a, b = rng.choice(ps), rng.choice(ps)
        b = b.relabel(lambda x: x + 10)
        s = direct_sum(a, b)
        assert is_positroid(s)
        assert len(envelope_class_of(s)) == len(envelope_class_of(a)) * len(envelope_class_of(b))


# -- envelope trees and DOT ----------------------------------------------------------------


def test_envelope_tree_examples():
    t = envelope_tree(whirl(3))
    assert len(t.nodes) == 1 and len(t.classes[0]) == 4
    t = envelope_tree(uniform(4, 5))
    assert len(t.nodes) == 1 and len(t.classes[0]) == 1
    s = two_sum(whirl(2), uniform(2, 3, [4, 5, 6]), 4)
    t = envelope_tree(s)
    assert sorted(len(c) for c in t.classes) == [1, 4]
    assert len(envelope_class_of(s)) == 4
    with pytest.raises(NotAPositroid):
        envelope_tree(n_graph(2)[1])


def test_dot_output():
    t = envelope_tree(two_sum(whirl(2), uniform(2, 3, [4, 5, 6]), 4))
    dot = t.to_dot()
    assert dot.startswith("graph tree {\n") and dot.endswith("}\n")
    assert dot.count(" -- ") == 1
    assert "class 4" in dot and "class 1" in dot
    assert "three_connected {" in dot
    plain = canonical_tree_decomposition(doubled_triangle()).to_dot()
    assert "class" not in plain
