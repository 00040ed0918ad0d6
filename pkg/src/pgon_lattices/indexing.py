"""Indexings of the barycentric subdivision and the three necessary conditions."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .surface import (EV, FE, FV, TiledSurface, fe_edge, ev_edge, fv_edge,
                      fundamental_dual_circuits, parallelism_classes, triangles)


class IndexingError(ValueError):
    pass


class NonMultiplicativeError(IndexingError):
    pass


@dataclass
class Indexing:
    """Ind on FE, EV and FV edges, each list indexed by dart."""

    fe: list[int]
    ev: list[int]
    fv: list[int]

    def value(self, kind: str, d: int) -> int:
        return {FE: self.fe, EV: self.ev, FV: self.fv}[kind][d]

    def to_dict(self, ts: TiledSurface) -> dict:
        entries = []
        for kind, make, vals in ((FE, fe_edge, self.fe), (EV, ev_edge, self.ev), (FV, fv_edge, self.fv)):
            for d, val in enumerate(vals):
                e = make(ts, d)
                entries.append({"kind": kind, "source": e.source, "target": e.target,
                                "corner": d, "index": val})
        return {"entries": entries}

    @classmethod
    def from_dict(cls, data: dict, ts: TiledSurface) -> "Indexing":
        n = ts.n_darts
        vals = {FE: [None] * n, EV: [None] * n, FV: [None] * n}
        makers = {FE: fe_edge, EV: ev_edge, FV: fv_edge}
        for i, ent in enumerate(data["entries"]):
            kind, d = ent["kind"], ent["corner"]
            e = makers[kind](ts, d)
            if (e.source, e.target) != (ent["source"], ent["target"]):
                raise IndexingError(f"entry {i}: {kind} corner {d} joins {e.source}->{e.target}, "
                                    f"not {ent['source']}->{ent['target']}")
            if ent["index"] < 1:
                raise IndexingError(f"entry {i}: index must be positive")
            vals[kind][d] = ent["index"]
        for kind, arr in vals.items():
            missing = [d for d, x in enumerate(arr) if x is None]
            if missing:
                raise IndexingError(f"missing {kind} assignments at corners {missing[:8]}")
        return cls(vals[FE], vals[EV], vals[FV])


def induced_indexing(cog) -> Indexing:
    """Ind(a) = |G_t(a)| / |G_i(a)| for injective inclusions."""
    bad = cog.injectivity_failures()
    if bad:
        raise IndexingError(f"non-injective monomorphisms: {bad[:8]}")

    def idx(maps):
        return [m.target.order // m.source.order for m in maps]

    return Indexing(idx(cog.fe), idx(cog.ev), idx(cog.fv))


def indexing_from_sides(ts: TiledSurface, side_value, classes=None) -> Indexing:
    """Indexing constant on parallelism classes, with FV filled in by products.

    `side_value` maps a (geodesic id, side) label to an index.
    """
    classes = classes or parallelism_classes(ts)
    fe = [side_value(classes.labels[classes.of[(FE, d)]]) for d in range(ts.n_darts)]
    ev = [side_value(classes.labels[classes.of[(EV, d)]]) for d in range(ts.n_darts)]
    return Indexing(fe, ev, [ev[d] * fe[d] for d in range(ts.n_darts)])


def is_v_thick(ind: Indexing, ts: TiledSurface, v: int) -> tuple[bool, list[int]]:
    """The two FE indices into each edge midpoint sum to v; returns violating edges."""
    bad = [i for i, (a, b) in enumerate(ts.edges) if ind.fe[a] + ind.fe[b] != v]
    return not bad, bad


def has_parallel_transport(ind: Indexing, ts: TiledSurface, classes=None):
    """Constancy on each parallelism class; returns (ok, first violating class index)."""
    classes = classes or parallelism_classes(ts)
    for i, cls in enumerate(classes.classes):
        if len({ind.value(kind, d) for kind, d in cls}) > 1:
            return False, i
    return True, None


def check_multiplicative(ind: Indexing, ts: TiledSurface):
    for t in triangles(ts):
        if ind.fv[t.fv] != ind.ev[t.ev] * ind.fe[t.fe]:
            raise NonMultiplicativeError(
                f"Ind(FV {t.fv}) = {ind.fv[t.fv]} but Ind(EV {t.ev}) * Ind(FE {t.fe}) = "
                f"{ind.ev[t.ev] * ind.fe[t.fe]}")


# Y' as a graph: nodes ("F", f), ("E", e), ("V", u); a step is (kind, dart, +1
# forward / -1 backward).

def _arc(ts, kind, d):
    if kind == FE:
        return ("F", ts.face_of[d]), ("E", ts.edge_of[d])
    if kind == EV:
        return ("E", ts.edge_of[d]), ("V", ts.tail(d))
    return ("F", ts.face_of[d]), ("V", ts.tail(d))


def _adjacency(ts):
    adj = {}
    for kind in (FE, EV, FV):
        for d in range(ts.n_darts):
            a, b = _arc(ts, kind, d)
            adj.setdefault(a, []).append((b, (kind, d, 1)))
            adj.setdefault(b, []).append((a, (kind, d, -1)))
    return adj


def loop_index(ind: Indexing, steps) -> Fraction:
    """Product of Ind over forward steps divided by Ind over backward steps."""
    out = Fraction(1)
    for kind, d, sgn in steps:
        val = ind.value(kind, d)
        out = out * val if sgn > 0 else out / val
    return out


def _tree(ts):
    adj = _adjacency(ts)
    root = ("F", 0)
    parent = {root: None}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, step in adj[x]:
            if y not in parent:
                parent[y] = (x, step)
                queue.append(y)
    return adj, root, parent


def _path_to_root(parent, x):
    steps = []
    while parent[x] is not None:
        y, (kind, d, sgn) = parent[x]
        steps.append((kind, d, -sgn))
        x = y
    return steps


def is_unimodular(ind: Indexing, ts: TiledSurface):
    """Ind(loop) = 1 on the fundamental cycles of a spanning tree of Y'.

    Because Ind is multiplicative along concatenation of loops, this
    decides every loop.  Returns (ok, violating loop as steps).
    """
    check_multiplicative(ind, ts)
    adj, root, parent = _tree(ts)
    tree_steps = {(s[0], s[1]) for x, ps in parent.items() if ps is not None for s in [ps[1]]}
    for x, nbrs in adj.items():
        for y, step in nbrs:
            kind, d, sgn = step
            if sgn < 0 or (kind, d) in tree_steps:
                continue
            loop = [(k, dd, -s) for k, dd, s in _path_to_root(parent, x)][::-1]
            loop = loop + [step] + _path_to_root(parent, y)
            if loop_index(ind, loop) != 1:
                return False, loop
    return True, None


def random_closed_walk(ts: TiledSurface, rng: random.Random, length: int = 20):
    """Random walk in Y' closed up through the spanning tree."""
    adj, root, parent = _tree(ts)
    start = rng.choice(sorted(adj))
    x = start
    steps = []
    for _ in range(length):
        y, step = rng.choice(adj[x])
        steps.append(step)
        x = y
    back = _path_to_root(parent, x) + [(k, d, -s) for k, d, s in _path_to_root(parent, start)][::-1]
    return steps + back


def circuit_index(ind: Indexing, ts: TiledSurface, circuit) -> Fraction:
    """Ind of a dual circuit lifted to Y' (face -> midpoint -> face at each step)."""
    steps = []
    for d in circuit:
        steps += [(FE, d, 1), (FE, ts.twin[d], -1)]
    return loop_index(ind, steps)


@dataclass
class UnimodEquation:
    circuit: tuple[int, ...]
    a: list[int]
    v: int

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def odd(self) -> bool:
        return self.k % 2 == 1

    def holds(self) -> bool:
        return prod(self.a) == prod(self.v - x for x in self.a)


def unimodularity_equations(ind: Indexing, ts: TiledSurface, v: int) -> list[UnimodEquation]:
    """One equation per circuit of a dual-graph cycle basis; a_j = Ind of the forward FE edge."""
    ok, bad = is_v_thick(ind, ts, v)
    if not ok:
        raise IndexingError(f"indexing is not {v}-thick at edges {bad[:8]}")
    return [UnimodEquation(c, [ind.fe[d] for d in c], v) for c in fundamental_dual_circuits(ts)]
