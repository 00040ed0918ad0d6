"""Simple complexes of finite abelian groups over tiled surfaces.

Monomorphisms are stored per dart, matching the barycentric edges:
``fe[d]`` from face(d) into edge(d), ``ev[d]`` from edge(d) into tail(d), and
``fv[d]`` from face(d) into tail(d) through corner d.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .groups import (FiniteAbelianGroup, Monomorphism, Subgroup, coordinate_inclusion,
                     intersect, product_set)
from .homology import CoefficientCertificate, CertificateError
from .surface import CornerLoopError, TiledSurface, triangles


class ComplexError(ValueError):
    pass


@dataclass
class ComplexOfGroups:
    ts: TiledSurface
    face_groups: list[FiniteAbelianGroup]
    edge_groups: list[FiniteAbelianGroup]
    vertex_groups: list[FiniteAbelianGroup]
    fe: list[Monomorphism]
    ev: list[Monomorphism]
    fv: list[Monomorphism]

    def commutativity_failures(self) -> list:
        """Triangles where ev o fe differs from fv."""
        bad = []
        for t in triangles(self.ts):
            if self.ev[t.ev].compose(self.fe[t.fe]).images != self.fv[t.fv].images:
                bad.append(t)
        return bad

    def injectivity_failures(self) -> list[tuple[str, int]]:
        out = []
        for kind, maps in (("FE", self.fe), ("EV", self.ev), ("FV", self.fv)):
            out += [(kind, d) for d, m in enumerate(maps) if not m.is_injective()]
        return out

    def to_dict(self) -> dict:
        return {
            "tessellation": self.ts.to_dict(),
            "faces": [g.to_json() for g in self.face_groups],
            "edges": [g.to_json() for g in self.edge_groups],
            "vertices": [g.to_json() for g in self.vertex_groups],
            "FE": [m.to_json() for m in self.fe],
            "EV": [m.to_json() for m in self.ev],
            "FV": [m.to_json() for m in self.fv],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ComplexOfGroups":
        ts = TiledSurface.from_dict(data["tessellation"])
        faces = [FiniteAbelianGroup.from_json(g) for g in data["faces"]]
        edges = [FiniteAbelianGroup.from_json(g) for g in data["edges"]]
        verts = [FiniteAbelianGroup.from_json(g) for g in data["vertices"]]
        n = ts.n_darts
        for key in ("FE", "EV", "FV"):
            if len(data[key]) != n:
                raise ComplexError(f"{key} needs {n} maps, got {len(data[key])}")
        fe = [Monomorphism(faces[ts.face_of[d]], edges[ts.edge_of[d]], tuple(map(tuple, data["FE"][d])))
              for d in range(n)]
        ev = [Monomorphism(edges[ts.edge_of[d]], verts[ts.tail(d)], tuple(map(tuple, data["EV"][d])))
              for d in range(n)]
        fv = [Monomorphism(faces[ts.face_of[d]], verts[ts.tail(d)], tuple(map(tuple, data["FV"][d])))
              for d in range(n)]
        return cls(ts, faces, edges, verts, fe, ev, fv)


# -- vertex links

@dataclass
class LinkGraph:
    """Coset graph at a vertex; link vertices are (edge-end slot, coset rep)."""

    side_a: list[tuple[int, tuple]]
    side_b: list[tuple[int, tuple]]
    edges: list[tuple[tuple[int, tuple], tuple[int, tuple], int]]

    def is_complete_bipartite(self, v: int) -> bool:
        if len(self.side_a) != v or len(self.side_b) != v or len(self.edges) != v * v:
            return False
        a, b = set(self.side_a), set(self.side_b)
        pairs = set()
        for x, y, _ in self.edges:
            if x in b:
                x, y = y, x
            if x not in a or y not in b:
                return False
            pairs.add((x, y))
        return len(pairs) == v * v


def _vertex_data(cog, sigma):
    ts = cog.ts
    darts = ts.vertices[sigma]
    for d in darts:
        if ts.prev[d] == ts.twin[d]:
            raise CornerLoopError(f"corner {d} at vertex {sigma} is a loop in the link")
    E = [cog.ev[d].image() for d in darts]
    F = [cog.fv[d].image() for d in darts]
    return darts, E, F


def local_link(cog: ComplexOfGroups, sigma: int) -> LinkGraph:
    """Cosets of the edge groups joined by cosets of the face (corner) groups.

    Corner t lies between edge-ends t-1 and t of the rotation; the coset
    gF_t joins gE_{t-1} and gE_t.
    """
    darts, E, F = _vertex_data(cog, sigma)
    k = len(darts)
    verts = {j: [(j, tuple(r)) for r in E[j].coset_reps()] for j in range(k)}
    edges = []
    for t in range(k):
        prev = (t - 1) % k
        for rep in F[t].coset_reps():
            edges.append(((prev, E[prev].coset_rep(rep)), (t, E[t].coset_rep(rep)), t))
    side_a = [x for j in range(0, k, 2) for x in verts[j]]
    side_b = [x for j in range(1, k, 2) for x in verts[j]]
    return LinkGraph(side_a, side_b, edges)


@dataclass
class LinkCheck:
    ok: bool
    products: bool
    intersections: bool
    indices: tuple[int, int]


def check_link_Kvv(cog: ComplexOfGroups, sigma: int, v: int) -> LinkCheck:
    """Subgroup criterion for the link at sigma to be K_{v,v}."""
    darts, E, F = _vertex_data(cog, sigma)
    V = cog.vertex_groups[sigma].whole()
    k = len(darts)
    products = all(product_set(E[t - 1], E[t]) == V for t in range(k))
    inters = all(intersect(E[t - 1], E[t]) == F[t] for t in range(k))
    idx = (sum(E[j].index for j in range(0, k, 2)), sum(E[j].index for j in range(1, k, 2)))
    ok = k == 4 and products and inters and idx == (v, v)
    return LinkCheck(ok, products, inters, idx)


def is_faithful(cog: ComplexOfGroups) -> bool:
    """Sufficient test only: some face group is trivial."""
    return any(g.order == 1 for g in cog.face_groups)


# -- constructions

def build_even_v(ts: TiledSurface, v: int) -> ComplexOfGroups:
    """Trivial faces, C_m on edges, C_m x C_m on vertices, v = 2m.

    An edge maps onto the vertex factor of the strand it lies on; strands
    are the opposite pairs of the rotation.
    """
    if v < 2 or v % 2:
        raise ComplexError(f"v = {v} must be even and >= 2")
    m = v // 2
    one = FiniteAbelianGroup(())
    edge = FiniteAbelianGroup((m,))
    vert = FiniteAbelianGroup((m, m))
    slot = {}
    for darts in ts.vertices:
        for i, d in enumerate(darts):
            slot[d] = i % 2
    triv_e = Monomorphism(one, edge, ())
    triv_v = Monomorphism(one, vert, ())
    fe = [triv_e] * ts.n_darts
    ev = [coordinate_inclusion(edge, vert, [slot[d]]) for d in range(ts.n_darts)]
    fv = [triv_v] * ts.n_darts
    return ComplexOfGroups(ts, [one] * ts.n_faces, [edge] * ts.n_edges, [vert] * ts.n_vertices,
                           fe, ev, fv)


class NoPieceOrdering(ComplexError):
    pass


@dataclass
class _VertexRoles:
    darts: tuple[int, ...]
    letters: list[frozenset]  # per corner t: letters of the pieces containing face(darts[t])
    counts: dict


def _vertex_roles(ts, weights, sigma) -> _VertexRoles:
    darts = ts.vertices[sigma]
    w = [weights[ts.face_of[d]] for d in darts]
    s = min(range(4), key=lambda t: (w[t], t))
    # corners s+1 (X) and s-1 (Y) sit between the bottom corner s and top s+2
    cx, cy = w[(s + 1) % 4] - w[s], w[(s - 1) % 4] - w[s]
    if cx <= 0 or cy <= 0 or w[(s + 2) % 4] != w[s] + cx + cy:
        raise CertificateError(f"corner weights {w} at vertex {sigma} do not fit a positive certificate")
    letters = [None] * 4
    letters[s] = frozenset("F")
    letters[(s + 1) % 4] = frozenset("FX")
    letters[(s - 1) % 4] = frozenset("FY")
    letters[(s + 2) % 4] = frozenset("FXY")
    return _VertexRoles(darts, letters, {"F": w[s], "X": cx, "Y": cy})


def _words(counts):
    base = "F" * counts["F"] + "X" * counts["X"] + "Y" * counts["Y"]
    return sorted(set(permutations(base)))


def _sub(word, letters):
    return [i for i, c in enumerate(word) if c in letters]


def _edge_end_key(word, roles, t, weights, ts):
    """Positions of the pieces bounded at edge-end t among its upper face's pieces."""
    a, b = roles.letters[t], roles.letters[(t + 1) % 4]
    upper, lower = (a, b) if len(a) > len(b) else (b, a)
    sub = _sub(word, upper)
    return tuple(i for i, pos in enumerate(sub) if word[pos] not in lower)


def solve_piece_orderings(ts: TiledSurface, weights, node_limit: int = 10**6) -> list[tuple[str, ...]]:
    """Order the face copies meeting at each vertex consistently along every edge.

    At a vertex whose lowest corner has weight d and whose strands carry
    coefficients c_X, c_Y, the vertex group has d + c_X + c_Y coordinate
    copies: d shared by all four corners (F), c_X shared by the two corners
    above the X strand, c_Y likewise.  A word over F, X, Y orders them.
    Each face's copies are numbered in word order at every corner, so an
    edge's inclusion is well defined exactly when the positions of the
    copies its upper face has but its lower face lacks agree at both ends.
    """
    nV = ts.n_vertices
    roles = [_vertex_roles(ts, weights, s) for s in range(nV)]
    keys = []  # per vertex: list of (word, {dart: key})
    for s in range(nV):
        cands = []
        for word in _words(roles[s].counts):
            cands.append((word, {d: _edge_end_key(word, roles[s], t, weights, ts)
                                 for t, d in enumerate(roles[s].darts)}))
        keys.append(cands)
    domains = [list(range(len(keys[s]))) for s in range(nV)]
    assign = [None] * nV
    nodes = 0

    def consistent(s, choice):
        _, kd = keys[s][choice]
        for d, key in kd.items():
            s2 = ts.tail(ts.twin[d])
            if assign[s2] is not None or s2 == s:
                c2 = choice if s2 == s else assign[s2]
                if keys[s2][c2][1][ts.twin[d]] != key:
                    return False
        return True

    def rec(domains):
        nonlocal nodes
        free = [s for s in range(nV) if assign[s] is None]
        if not free:
            return True
        s = min(free, key=lambda x: (len(domains[x]), x))
        for choice in domains[s]:
            nodes += 1
            if nodes > node_limit:
                raise NoPieceOrdering(f"search exceeded {node_limit} nodes")
            if not consistent(s, choice):
                continue
            assign[s] = choice
            new = list(domains)
            ok = True
            for d, key in keys[s][choice][1].items():
                s2 = ts.tail(ts.twin[d])
                if assign[s2] is None:
                    new[s2] = [c for c in new[s2] if keys[s2][c][1][ts.twin[d]] == key]
                    if not new[s2]:
                        ok = False
                        break
            if ok and rec(new):
                return True
            assign[s] = None
        return False

    if not rec(domains):
        raise NoPieceOrdering("no consistent ordering of face copies exists")
    return [keys[s][assign[s]][0] for s in range(nV)]


def build_from_certificate(ts: TiledSurface, cert: CoefficientCertificate, b: int, v: int,
                           verify: bool = True) -> ComplexOfGroups:
    """Complex whose vertex links are K_{v,v}, from a positive geodesic certificate.

    Face f gets (Z/b)^{w_f}.  An edge on a geodesic with coefficient c sits
    between faces of weights w and w + c and gets Z/k x (Z/b)^{w+c} with
    k = v / (b^c + 1).  A vertex gets Z/k x Z/k' x (Z/b)^{copies}, the two
    cyclic factors belonging to the two strands through it.
    """
    if b < 1:
        raise ComplexError("b must be positive")
    cert = cert.normalised(ts)
    if not cert.verify(ts):
        raise CertificateError("certificate does not verify on this tiling")
    for c in cert.coefficients:
        if v % (b**c + 1):
            raise ComplexError(f"b^{c} + 1 = {b**c + 1} does not divide v = {v}")
    w = cert.weights
    k_of_dart = {}
    for g, c in zip(cert.geodesics, cert.coefficients):
        for d in g:
            k_of_dart[d] = k_of_dart[ts.twin[d]] = v // (b**c + 1)
    words = solve_piece_orderings(ts, w)
    roles = [_vertex_roles(ts, w, s) for s in range(ts.n_vertices)]

    face_groups = [FiniteAbelianGroup((b,) * wf) for wf in w]
    edge_groups = []
    upper = []
    for a, t in ts.edges:
        hi = ts.face_of[a] if w[ts.face_of[a]] > w[ts.face_of[t]] else ts.face_of[t]
        upper.append(hi)
        edge_groups.append(FiniteAbelianGroup((k_of_dart[a],) + (b,) * w[hi]))
    vertex_groups = []
    for s, r in enumerate(roles):
        ks = (k_of_dart[r.darts[0]], k_of_dart[r.darts[1]])
        vertex_groups.append(FiniteAbelianGroup(ks + (b,) * len(words[s])))

    fe, ev, fv = [None] * ts.n_darts, [None] * ts.n_darts, [None] * ts.n_darts
    for s, r in enumerate(roles):
        word = words[s]
        V = vertex_groups[s]
        for t, d in enumerate(r.darts):
            f = ts.face_of[d]
            # corner d: copy i of face f is the i-th of its pieces in the word
            fv[d] = coordinate_inclusion(face_groups[f], V, [2 + p for p in _sub(word, r.letters[t])])
            e = ts.edge_of[d]
            a_let, b_let = r.letters[t], r.letters[(t + 1) % 4]
            up_let = a_let if len(a_let) > len(b_let) else b_let
            ev[d] = coordinate_inclusion(edge_groups[e], V, [t % 2] + [2 + p for p in _sub(word, up_let)])
    for d in range(ts.n_darts):
        e = ts.edge_of[d]
        f = ts.face_of[d]
        E = edge_groups[e]
        if f == upper[e] and w[f] > w[ts.face_of[ts.twin[d]]]:
            fe[d] = coordinate_inclusion(face_groups[f], E, [1 + i for i in range(w[f])])
        else:
            # read the lower face's copies off the vertex at the tail of d
            s = ts.tail(d)
            r = roles[s]
            t = r.darts.index(d)
            word = words[s]
            lo_let = r.letters[t]
            up_let = r.letters[(t + 1) % 4]
            up_pos = _sub(word, up_let)
            slots = [1 + up_pos.index(p) for p in _sub(word, lo_let)]
            fe[d] = coordinate_inclusion(face_groups[f], E, slots)
    cog = ComplexOfGroups(ts, face_groups, edge_groups, vertex_groups, fe, ev, fv)
    if verify:
        bad = cog.commutativity_failures()
        if bad:
            raise ComplexError(f"inclusions do not commute at {len(bad)} triangles")
        for s in range(ts.n_vertices):
            if not check_link_Kvv(cog, s, v).ok:
                raise ComplexError(f"vertex {s} link is not K_{v},{v}")
    return cog
