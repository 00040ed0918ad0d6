import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pgon_lattices.complexes import build_even_v, build_from_certificate
from pgon_lattices.homology import certificate_from_weights
from pgon_lattices.indexing import (Indexing, IndexingError, NonMultiplicativeError, circuit_index,
                                    has_parallel_transport, indexing_from_sides, induced_indexing,
                                    is_unimodular, is_v_thick, loop_index, random_closed_walk,
                                    unimodularity_equations)
from pgon_lattices.homology import Homology, find_sign_coeffs, path_chain
from pgon_lattices.surface import LEFT, extract_geodesics, fundamental_dual_circuits, parallelism_classes
from conftest import tiling


def cert_cog(args, b, v):
    bt = tiling(*args)
    return build_from_certificate(bt.surface, certificate_from_weights(bt.surface, bt.weights), b, v)


FIXTURES = [("cert", (5, 8), 2, 3), ("cert", (12, 6, 2, 3), 2, 15), ("cert", (13, 16), 6, 7),
            ("even", (5, 8), None, 4), ("even", (12, 3, 3, 1), None, 6)]


def make(kind, args, b, v):
    return cert_cog(args, b, v) if kind == "cert" else build_even_v(tiling(*args).surface, v)


@pytest.mark.parametrize("kind,args,b,v", FIXTURES)
def test_induced_indexing_laws(kind, args, b, v):
    cog = make(kind, args, b, v)
    ts = cog.ts
    ind = induced_indexing(cog)
    assert is_v_thick(ind, ts, v) == (True, [])
    assert has_parallel_transport(ind, ts) == (True, None)
    assert is_unimodular(ind, ts) == (True, None)
    rng = random.Random(0)
    assert all(loop_index(ind, random_closed_walk(ts, rng)) == 1 for _ in range(200))
    for eq in unimodularity_equations(ind, ts, v):
        assert eq.holds()
        assert circuit_index(ind, ts, eq.circuit) == 1


def side_indexing(ts, flipped=()):
    # left 1, right 2 on every geodesic, swapped on the flipped ones
    def value(lab):
        gid, side = lab
        return (1 if side == LEFT else 2) if gid not in flipped else (2 if side == LEFT else 1)
    return indexing_from_sides(ts, value, parallelism_classes(ts))


def test_side_indexing_from_sign_certificate():
    ts = tiling(5, 8).surface
    assert find_sign_coeffs(ts).coefficients == [1] * 7
    ind = side_indexing(ts)
    assert is_v_thick(ind, ts, 3)[0] and is_unimodular(ind, ts)[0]


def test_non_unimodular_indexing_is_caught():
    ts = tiling(5, 8).surface
    geos = extract_geodesics(ts)
    hom = Homology(ts)
    null = [g.id for g in geos if not any(hom.coords(path_chain(ts, g.darts)))]
    live = [g.id for g in geos if g.id not in null]
    # flipping a null-homologous geodesic keeps unimodularity, any other breaks it
    assert null and is_unimodular(side_indexing(ts, flipped=set(null)), ts)[0]
    ind = side_indexing(ts, flipped={live[0]})
    assert is_v_thick(ind, ts, 3)[0] and has_parallel_transport(ind, ts)[0]
    ok, loop = is_unimodular(ind, ts)
    assert not ok and loop_index(ind, loop) != 1
    rng = random.Random(1)
    assert any(loop_index(ind, random_closed_walk(ts, rng, 40)) != 1 for _ in range(300))


def test_non_multiplicative_raises():
    ts = tiling(5, 8).surface
    n = ts.n_darts
    ind = Indexing([1] * n, [2] * n, [3] * n)
    with pytest.raises(NonMultiplicativeError):
        is_unimodular(ind, ts)


def test_thickness_and_transport_violations():
    cog = cert_cog((5, 8), 2, 3)
    ts = cog.ts
    ind = induced_indexing(cog)
    assert not is_v_thick(ind, ts, 4)[0]
    fe = list(ind.fe)
    fe[0] += 1
    bad = Indexing(fe, ind.ev, ind.fv)
    ok, edges = is_v_thick(bad, ts, 3)
    assert not ok and edges == [ts.edge_of[0]]
    ok, cls = has_parallel_transport(bad, ts)
    assert not ok and cls is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(5, 8), (12, 6, 2, 3)]), st.integers(0, 2**32))
def test_random_loops_multiply(args, seed):
    cog = cert_cog(args, 2, 15 if len(args) == 4 else 3)
    ind = induced_indexing(cog)
    rng = random.Random(seed)
    a, b = random_closed_walk(cog.ts, rng), random_closed_walk(cog.ts, rng)
    assert loop_index(ind, a + b) == loop_index(ind, a) * loop_index(ind, b) == 1
    back = [(k, d, -s) for k, d, s in reversed(a)]
    assert loop_index(ind, back) == Fraction(1) / loop_index(ind, a)


def test_dict_roundtrip_and_errors():
    cog = cert_cog((5, 8), 2, 3)
    ind = induced_indexing(cog)
    data = ind.to_dict(cog.ts)
    assert Indexing.from_dict(data, cog.ts) == ind
    data["entries"][0]["source"] += 1
    with pytest.raises(IndexingError):
        Indexing.from_dict(data, cog.ts)
    with pytest.raises(IndexingError):
        Indexing.from_dict({"entries": []}, cog.ts)


def test_odd_equations_on_jigsaw():
    cog = build_even_v(tiling(12, 3, 3, 1).surface, 6)
    eqs = unimodularity_equations(induced_indexing(cog), cog.ts, 6)
    assert len(eqs) == len(fundamental_dual_circuits(cog.ts))
    assert any(e.odd for e in eqs) and all(e.holds() for e in eqs)


def test_listed_indexing_examples():
    ts = tiling(5, 8).surface
    n = ts.n_darts
    ones = Indexing([1] * n, [1] * n, [1] * n)
    ok, bad = is_v_thick(ones, ts, 3)
    assert not ok and bad == list(range(ts.n_edges))
    assert is_unimodular(ones, ts)[0]
    trivial = induced_indexing(build_even_v(ts, 2))
    assert trivial == ones
    m2 = induced_indexing(build_even_v(ts, 4))
    assert set(m2.fe) == {2} and set(m2.ev) == {2}
    w = induced_indexing(cert_cog((5, 8), 2, 3))
    for a, b in ts.edges:
        assert sorted((w.fe[a], w.fe[b])) == [1, 2]
