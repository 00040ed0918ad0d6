from dataclasses import replace

import networkx as nx
import pytest

from pgon_lattices.complexes import (ComplexError, ComplexOfGroups, build_even_v, build_from_certificate,
                                     check_link_Kvv, is_faithful, local_link)
from pgon_lattices.groups import coordinate_inclusion
from pgon_lattices.homology import certificate_from_weights, find_nonzero_coeffs, find_sign_coeffs
from conftest import tiling


def link_is_kvv(cog, s, v):
    g = local_link(cog, s)
    G = nx.Graph()
    G.add_nodes_from(g.side_a + g.side_b)
    G.add_edges_from((x, y) for x, y, _ in g.edges)
    multi = len(g.edges) != G.number_of_edges()
    return not multi and nx.is_isomorphic(G, nx.complete_bipartite_graph(v, v))


def certified(args, b, v, searched=False):
    bt = tiling(*args)
    ts = bt.surface
    if searched:
        cert = find_sign_coeffs(ts) or find_nonzero_coeffs(ts)
    else:
        cert = certificate_from_weights(ts, bt.weights)
    return build_from_certificate(ts, cert, b, v)


CASES = [((5, 8), 2, 3), ((5, 8), 4, 5), ((6, 8), 2, 3), ((12, 6, 2, 3), 2, 15), ((8, 6, 2, 3), 2, 15),
         ((13, 16), 6, 7), ((12, 15, 5, 3), 2, 15), ((5, 8), 2, 9)]


@pytest.mark.parametrize("args,b,v", CASES)
def test_certificate_complexes_have_kvv_links(args, b, v):
    cog = certified(args, b, v)
    assert not cog.commutativity_failures() and not cog.injectivity_failures()
    for s in range(cog.ts.n_vertices):
        assert link_is_kvv(cog, s, v)
        assert check_link_Kvv(cog, s, v).ok
    assert is_faithful(cog)


@pytest.mark.parametrize("args,b,v", [((5, 8), 2, 3), ((12, 6, 2, 3), 2, 15)])
def test_searched_certificates_build(args, b, v):
    cog = certified(args, b, v, searched=True)
    assert all(check_link_Kvv(cog, s, v).ok for s in range(cog.ts.n_vertices))


@pytest.mark.parametrize("args,v", [((5, 8), 4), ((12, 3, 3, 1), 6), ((6, 8), 2), ((12, 6, 2, 3), 10)])
def test_even_v(args, v):
    cog = build_even_v(tiling(*args).surface, v)
    assert not cog.commutativity_failures()
    for s in range(cog.ts.n_vertices):
        assert link_is_kvv(cog, s, v) and check_link_Kvv(cog, s, v).ok
    assert is_faithful(cog)


def test_wrong_v_rejected_by_both_routes():
    cog = build_even_v(tiling(5, 8).surface, 4)
    for s in range(cog.ts.n_vertices):
        assert not link_is_kvv(cog, s, 6)
        assert not local_link(cog, s).is_complete_bipartite(6)
        assert not check_link_Kvv(cog, s, 6).ok


def test_broken_inclusion_rejected_by_both_routes():
    cog = build_even_v(tiling(5, 8).surface, 4)
    ts = cog.ts
    d = ts.vertices[0][1]
    ev = list(cog.ev)
    ev[d] = coordinate_inclusion(cog.edge_groups[ts.edge_of[d]], cog.vertex_groups[0], [0])
    bad = replace(cog, ev=ev)
    assert not link_is_kvv(bad, 0, 4)
    assert not local_link(bad, 0).is_complete_bipartite(4)
    assert not check_link_Kvv(bad, 0, 4).ok
    assert check_link_Kvv(bad, 1, 4).ok == link_is_kvv(bad, 1, 4)


def test_divisibility_and_parity_errors():
    with pytest.raises(ComplexError):
        build_even_v(tiling(5, 8).surface, 5)
    with pytest.raises(ComplexError):
        certified((5, 8), 2, 5)
    with pytest.raises(ComplexError):
        certified((12, 6, 2, 3), 2, 9)  # 2^2 + 1 does not divide 9


def test_cog_dict_roundtrip():
    cog = certified((12, 6, 2, 3), 2, 15)
    again = ComplexOfGroups.from_dict(cog.to_dict())
    assert again.to_dict() == cog.to_dict()


def test_shrunk_edge_group_fails_both_routes():
    from pgon_lattices.groups import FiniteAbelianGroup, Monomorphism
    cog = build_even_v(tiling(5, 8).surface, 4)
    ts = cog.ts
    a, b = ts.edges[0]
    one = FiniteAbelianGroup(())
    edge_groups = list(cog.edge_groups)
    edge_groups[0] = one
    ev, fe = list(cog.ev), list(cog.fe)
    for d in (a, b):
        ev[d] = Monomorphism(one, cog.vertex_groups[ts.tail(d)], ())
        fe[d] = Monomorphism(cog.face_groups[ts.face_of[d]], one, ())
    bad = replace(cog, edge_groups=edge_groups, ev=ev, fe=fe)
    s = ts.tail(a)
    assert not check_link_Kvv(bad, s, 4).ok
    assert not link_is_kvv(bad, s, 4)
    assert not local_link(bad, s).is_complete_bipartite(4)


def test_faithfulness_needs_a_trivial_face():
    from pgon_lattices.groups import FiniteAbelianGroup
    cog = build_even_v(tiling(5, 8).surface, 4)
    z2 = replace(cog, face_groups=[FiniteAbelianGroup((2,))] * len(cog.face_groups))
    assert is_faithful(cog) and not is_faithful(z2)


@pytest.mark.parametrize("v", range(2, 8))
def test_b_equal_v_minus_one(v):
    cog = certified((5, 8), v - 1, v)
    assert all(check_link_Kvv(cog, s, v).ok for s in range(cog.ts.n_vertices))


def test_jigsaw_edge_cyclic_factors():
    bt = tiling(12, 6, 2, 3)
    ts = bt.surface
    cert = certificate_from_weights(ts, bt.weights)
    cog = build_from_certificate(ts, cert, 2, 15)
    coeff = {}
    for g, c in zip(cert.geodesics, cert.coefficients):
        for d in g:
            coeff[ts.edge_of[d]] = c
    for e, grp in enumerate(cog.edge_groups):
        assert grp.orders[0] == {1: 5, 2: 3}[coeff[e]]
