from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from pgon_lattices.groups import (FiniteAbelianGroup, GroupError, Monomorphism, Subgroup,
                                  coordinate_inclusion, enumerate_product_set, index, intersect,
                                  product_set)

groups = st.lists(st.integers(2, 6), min_size=1, max_size=3).map(lambda o: FiniteAbelianGroup(tuple(o)))


def subgroups(g):
    elem = st.tuples(*[st.integers(0, n - 1) for n in g.orders])
    return st.lists(elem, max_size=3).map(lambda gens: Subgroup(g, gens))


pairs = groups.flatmap(lambda g: st.tuples(subgroups(g), subgroups(g)))


@settings(max_examples=150, deadline=None)
@given(pairs)
def test_lattice_ops_match_enumeration(ab):
    a, b = ab
    ea, eb = a.elements(), b.elements()
    assert a.order == len(ea)
    assert product_set(a, b).elements() == enumerate_product_set(a, b)
    assert intersect(a, b).elements() == ea & eb
    assert (a <= b) == (ea <= eb)
    assert (a == b) == (ea == eb)


@settings(max_examples=100, deadline=None)
@given(groups.flatmap(lambda g: st.tuples(st.just(g), subgroups(g))))
def test_cosets(gs):
    g, a = gs
    reps = list(a.coset_reps())
    assert len(reps) == a.index == g.order // a.order
    seen = set()
    for x in g.elements():
        r = a.coset_rep(x)
        assert r in reps
        assert g.add(x, g.scale(-1, r)) in a
        seen.add(r)
    assert len(seen) == len(reps)


def test_index_of_chain():
    g = FiniteAbelianGroup((4, 6))
    big = Subgroup(g, [(2, 0), (0, 1)])
    small = Subgroup(g, [(2, 3)])
    assert index(big, small) == big.order // small.order == 6


def test_to_json_roundtrip():
    g = FiniteAbelianGroup((2, 3, 3))
    assert FiniteAbelianGroup.from_json(g.to_json()) == g
    assert g.to_json() == {"cyclic": [2, 3, 3]}


def test_monomorphisms():
    a, b = FiniteAbelianGroup((3,)), FiniteAbelianGroup((2, 3, 9))
    inc = coordinate_inclusion(a, b, [1])
    assert inc.is_homomorphism() and inc.is_injective()
    triple = Monomorphism(a, b, [(0, 0, 3)])
    assert triple.is_homomorphism() and triple.is_injective()
    assert not Monomorphism(a, b, [(1, 0, 0)]).is_homomorphism()
    c = FiniteAbelianGroup((2, 3, 9, 5))
    outer = coordinate_inclusion(b, c, [0, 1, 2])
    comp = outer.compose(inc)
    assert all(comp.apply(x) == outer.apply(inc.apply(x)) for x in a.elements())


def test_enumeration_guard():
    g = FiniteAbelianGroup((2,) * 20)
    with pytest.raises(GroupError):
        g.elements(limit=1000)


@settings(max_examples=150, deadline=None)
@given(pairs)
def test_product_formula(ab):
    a, b = ab
    assert product_set(a, b).order * intersect(a, b).order == a.order * b.order


def test_small_examples():
    k2 = FiniteAbelianGroup((2, 2))
    first, second = Subgroup(k2, [(1, 0)]), Subgroup(k2, [(0, 1)])
    assert product_set(first, second) == k2.whole()
    assert product_set(first, first) == first
    assert intersect(first, second) == k2.trivial()
    assert first.index + second.index == 4
    c4 = FiniteAbelianGroup((4,))
    half = Subgroup(c4, [(2,)])
    assert product_set(half, half).elements() == {(0,), (2,)}
    assert index(c4.whole(), c4.whole()) == 1
    g = FiniteAbelianGroup((1, 2, 2))
    a, b = Subgroup(g, [(0, 1, 0), (0, 0, 1)]), Subgroup(g, [(0, 1, 0)])
    c = Subgroup(g, [(0, 1, 0), (0, 1, 1)])
    assert intersect(a, b).elements() == {(0, 0, 0), (0, 1, 0)}
    assert intersect(b, Subgroup(g, [(0, 0, 1)])) == g.trivial()
    assert c == a


def test_errors():
    a = FiniteAbelianGroup((2,)).whole()
    b = FiniteAbelianGroup((3,)).whole()
    with pytest.raises(GroupError):
        product_set(a, b)
    c4 = FiniteAbelianGroup((4,))
    with pytest.raises(GroupError):
        index(Subgroup(c4, [(2,)]), c4.whole())


def test_index_multiplicativity():
    v = FiniteAbelianGroup((3, 5, 2, 2))
    e = FiniteAbelianGroup((5, 2))
    f = FiniteAbelianGroup((2,))
    outer = coordinate_inclusion(e, v, [1, 2])
    inner = coordinate_inclusion(f, e, [1])
    comp = outer.compose(inner)
    assert comp.is_injective()
    assert comp.image().index == outer.image().index * inner.image().index
