import pytest

from pgon_lattices.builders import (BLACK, RED, YELLOW, ConstructionError, build_any, build_f_div4,
                                    build_jigsaw, choose_factorisation, f_of, genus_of)
from pgon_lattices.homology import certificate_from_weights
from pgon_lattices.surface import extract_geodesics, face_components, validate


def test_f_of_examples():
    assert f_of(5, 2) == 8
    assert f_of(7, 2) is None
    assert f_of(12, 4) == 3
    with pytest.raises(ConstructionError):
        f_of(4, 3)


def test_build_any_rejects_bad_counts():
    with pytest.raises(ConstructionError):
        build_any(7, 5)


def test_div4_parity_precondition():
    with pytest.raises(ConstructionError):
        build_f_div4(5, 4)
    with pytest.raises(ConstructionError):
        build_f_div4(12, 6)


GRID = [(p, F) for p in range(5, 14) for F in range(1, 17) if F * (p - 4) % 8 == 0]


@pytest.mark.parametrize("p,F", GRID)
def test_every_admissible_count_builds(p, F):
    bt = build_any(p, F)
    rep = validate(bt.surface)
    assert rep.ok, rep.problems
    assert rep.genus == genus_of(p, F)
    assert bt.surface.n_faces == F


@pytest.mark.parametrize("p,F", [(p, F) for p, F in GRID if F % 4 == 0])
def test_div4_colours(p, F):
    ts = build_f_div4(p, F).surface
    geos = extract_geodesics(ts)
    for g in geos:
        assert len({ts.label(d) for d in g.darts}) == 1
    black = {ts.edge_of[d] for g in geos if ts.label(g.darts[0]) == BLACK for d in g.darts}
    assert len(face_components(ts, black)) == 2
    assert (p % 2 == 0) == all(ts.label(g.darts[0]) != RED for g in geos)


def test_p5f8_yellow_separates():
    ts = build_f_div4(5, 8).surface
    yellow = {ts.edge_of[d] for d in range(ts.n_darts) if ts.label(d) == YELLOW}
    assert len(face_components(ts, yellow)) == 2


def test_div4_weights_are_signs():
    for p, F in [(5, 8), (6, 8), (7, 8), (8, 4), (13, 16)]:
        bt = build_f_div4(p, F)
        cert = certificate_from_weights(bt.surface, bt.weights)
        assert cert.verify(bt.surface)
        assert set(cert.coefficients) == {1}


@pytest.mark.parametrize("p,F,x,y", [(12, 6, 2, 3), (12, 9, 3, 3), (8, 6, 2, 3), (12, 15, 5, 3), (16, 6, 2, 3)])
def test_jigsaw_weights(p, F, x, y):
    bt = build_jigsaw(p, F, x, y)
    ts = bt.surface
    assert validate(ts).ok
    cert = certificate_from_weights(ts, bt.weights)
    assert cert.verify(ts)
    assert set(cert.coefficients) <= {1, 2} and 2 in cert.coefficients


def test_jigsaw_without_weights():
    bt = build_jigsaw(12, 3, 3, 1)
    assert validate(bt.surface).ok and bt.surface.genus == 4
    assert not bt.has_certificate
    assert build_jigsaw(8, 2, 2, 1).surface.genus == 2


def test_jigsaw_preconditions():
    with pytest.raises(ConstructionError):
        build_jigsaw(12, 6, 3, 2)  # y even
    with pytest.raises(ConstructionError):
        build_jigsaw(8, 3, 3, 1)  # x odd with p = 0 mod 8
    with pytest.raises(ConstructionError):
        build_jigsaw(10, 2, 2, 1)


def test_factor_chooser():
    assert choose_factorisation(12, 6) == (2, 3)
    assert choose_factorisation(12, 9) == (3, 3)
    assert choose_factorisation(12, 3) == (3, 1)
    assert choose_factorisation(8, 6) == (2, 3)
