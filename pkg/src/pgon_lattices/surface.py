"""Closed oriented surfaces tiled by p-gons, as dart (half-edge) structures.

A dart is one side of an edge, traversed so that its face lies on its left.
`next[d]` is the following dart around the same face and `twin[d]` the dart
on the other side of the same edge, running the other way.  The outgoing
darts at a vertex are cycled by ``rot(d) = next[twin[d]]``.

Corners are named by darts: corner ``d`` is the corner of ``face(d)`` at
``tail(d)``, between the edges of ``prev(d)`` and ``d``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from networkx.utils import UnionFind


class SurfaceError(ValueError):
    code = "invalid"


class PermutationError(SurfaceError):
    code = "malformed permutation"


class BoundaryDartError(SurfaceError):
    code = "boundary dart"


class TwinNotInvolutionError(SurfaceError):
    code = "non-involutive twin"


class ValenceError(SurfaceError):
    code = "valence != 4"


class NonOrientableError(SurfaceError):
    code = "non-orientable gluing"


class FaceSizeError(SurfaceError):
    code = "face size != p"


class DisconnectedError(SurfaceError):
    code = "disconnected"


class GenusError(SurfaceError):
    code = "genus < 2"


class CornerLoopError(SurfaceError):
    code = "loop in vertex link"


def _orbits(perm, n):
    seen = [False] * n
    out = []
    for d in range(n):
        if seen[d]:
            continue
        orb = []
        x = d
        while not seen[x]:
            seen[x] = True
            orb.append(x)
            x = perm(x)
        out.append(tuple(orb))
    return out


@dataclass(frozen=True, eq=False)
class TiledSurface:
    p: int
    next: tuple[int, ...]
    twin: tuple[int, ...]
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "next", tuple(int(x) for x in self.next))
        object.__setattr__(self, "twin", tuple(int(x) for x in self.twin))
        object.__setattr__(self, "labels", {int(k): str(v) for k, v in self.labels.items()})
        n = len(self.next)
        if len(self.twin) != n:
            raise PermutationError(f"next has {n} entries but twin has {len(self.twin)}")
        if sorted(self.next) != list(range(n)):
            bad = next(i for i, x in enumerate(self.next) if not 0 <= x < n or self.next.count(x) > 1)
            raise PermutationError(f"next is not a permutation (position {bad}: {self.next[bad]})")
        for i, t in enumerate(self.twin):
            if not (t == -1 or 0 <= t < n):
                raise PermutationError(f"twin[{i}] = {t} out of range")

    def __eq__(self, other):
        return (isinstance(other, TiledSurface) and self.p == other.p and self.next == other.next
                and self.twin == other.twin and self.labels == other.labels)

    __hash__ = object.__hash__

    # -- basic dart navigation
    @property
    def n_darts(self) -> int:
        return len(self.next)

    @cached_property
    def prev(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for d, e in enumerate(self.next):
            out[e] = d
        return tuple(out)

    def rot(self, d: int) -> int:
        return self.next[self.twin[d]]

    def rot_inv(self, d: int) -> int:
        return self.twin[self.prev[d]]

    def straight(self, d: int) -> int:
        """Dart continuing d straight through its head vertex."""
        return self.rot(self.rot(self.twin[d]))

    # -- cells, numbered by first visit in dart order
    @cached_property
    def faces(self) -> list[tuple[int, ...]]:
        return _orbits(lambda d: self.next[d], self.n_darts)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        return _cell_index(self.faces, self.n_darts)

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        """Each edge as (reference dart, twin dart) with the smaller dart first."""
        return [(d, self.twin[d]) for d in range(self.n_darts) if d < self.twin[d]]

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for i, (a, b) in enumerate(self.edges):
            out[a] = out[b] = i
        return tuple(out)

    def edge_sign(self, d: int) -> int:
        """+1 if d runs along its edge's reference orientation."""
        return 1 if self.edges[self.edge_of[d]][0] == d else -1

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        """Outgoing darts of each vertex, in rotation order."""
        return _orbits(self.rot, self.n_darts)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        return _cell_index(self.vertices, self.n_darts)

    def tail(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[self.next[d]]

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def label(self, d: int) -> str | None:
        return self.labels.get(d)

    # -- serialisation
    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "darts": self.n_darts,
            "next": list(self.next),
            "twin": list(self.twin),
            "labels": {str(k): v for k, v in sorted(self.labels.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TiledSurface":
        for key in ("p", "darts", "next", "twin"):
            if key not in data:
                raise PermutationError(f"missing field {key!r}")
        n = data["darts"]
        if len(data["next"]) != n or len(data["twin"]) != n:
            raise PermutationError(f"darts={n} but next/twin have {len(data['next'])}/{len(data['twin'])} entries")
        return cls(data["p"], data["next"], data["twin"], data.get("labels", {}))


def _cell_index(cells, n):
    out = [0] * n
    for i, cell in enumerate(cells):
        for d in cell:
            out[d] = i
    return tuple(out)


def from_polygon_gluing(p: int, n_faces: int, gluings, labels=None) -> TiledSurface:
    """Build a surface from p-gons with sides numbered 0..p-1 counterclockwise.

    `gluings` holds ``((f1, s1), (f2, s2))`` or ``((f1, s1), (f2, s2), reverse)``.
    The usual orientable gluing (reverse=True) identifies the sides with
    opposite directions.  A gluing with reverse=False flips the relative
    orientation of the two polygons; faces are reoriented to compensate and
    NonOrientableError is raised if that is impossible.  `labels` maps
    (face, side) to a colour.
    """
    adj = {f: [] for f in range(n_faces)}
    pairs = {}
    for g in gluings:
        (f1, s1), (f2, s2) = g[0], g[1]
        rev = g[2] if len(g) > 2 else True
        for key in ((f1, s1), (f2, s2)):
            if key in pairs:
                raise TwinNotInvolutionError(f"side {key} glued twice")
        pairs[(f1, s1)] = (f2, s2)
        pairs[(f2, s2)] = (f1, s1)
        adj[f1].append((f2, rev))
        adj[f2].append((f1, rev))
    sign = {}
    for root in range(n_faces):
        if root in sign:
            continue
        sign[root] = 1
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for g, rev in adj[f]:
                want = sign[f] if rev else -sign[f]
                if g not in sign:
                    sign[g] = want
                    queue.append(g)
                elif sign[g] != want:
                    raise NonOrientableError(f"faces {f} and {g} cannot be oriented consistently")
    nxt = []
    for f in range(n_faces):
        for s in range(p):
            nxt.append(f * p + (s + sign[f]) % p)
    twin = [-1] * (n_faces * p)
    for (f1, s1), (f2, s2) in pairs.items():
        twin[f1 * p + s1] = f2 * p + s2
    lab = {f * p + s: c for (f, s), c in (labels or {}).items()}
    return TiledSurface(p, nxt, twin, lab)


@dataclass
class ValidationReport:
    chi: int | None
    genus: int | None
    valences: dict
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def codes(self) -> set[str]:
        return {c for c, _ in self.problems}

    def raise_first(self):
        if self.problems:
            code, msg = self.problems[0]
            cls = next(c for c in _ERRORS if c.code == code)
            raise cls(msg)


_ERRORS = [PermutationError, BoundaryDartError, TwinNotInvolutionError, ValenceError,
           NonOrientableError, FaceSizeError, DisconnectedError, GenusError, CornerLoopError]


def validate(ts: TiledSurface, min_p: int = 5, min_genus: int = 2) -> ValidationReport:
    """Check every invariant of a closed right-angled tiling.

    `min_p` and `min_genus` can be relaxed for toy inputs such as a square torus.
    """
    problems = []
    n = ts.n_darts
    boundary = [d for d in range(n) if ts.twin[d] in (-1, d)]
    if boundary:
        problems.append((BoundaryDartError.code, f"unglued darts {boundary[:8]}"))
    bad = [d for d in range(n) if ts.twin[d] not in (-1, d) and ts.twin[ts.twin[d]] != d]
    if bad:
        problems.append((TwinNotInvolutionError.code, f"twin[twin[d]] != d at darts {bad[:8]}"))
    if problems:
        return ValidationReport(None, None, {}, problems)
    if ts.p < min_p:
        problems.append((FaceSizeError.code, f"p = {ts.p} < {min_p}"))
    wrong = [i for i, f in enumerate(ts.faces) if len(f) != ts.p]
    if wrong:
        problems.append((FaceSizeError.code, f"faces {wrong[:8]} do not have {ts.p} sides"))
    valences = {}
    for v in ts.vertices:
        valences[len(v)] = valences.get(len(v), 0) + 1
    bad_v = [i for i, v in enumerate(ts.vertices) if len(v) != 4]
    if bad_v:
        problems.append((ValenceError.code, f"vertices {bad_v[:8]} have valence {[len(ts.vertices[i]) for i in bad_v[:8]]}"))
    uf = UnionFind(range(ts.n_faces))
    for a, b in ts.edges:
        uf.union(ts.face_of[a], ts.face_of[b])
    if len(list(uf.to_sets())) != 1:
        problems.append((DisconnectedError.code, "face adjacency graph is disconnected"))
    loops = corner_loops(ts)
    if loops:
        problems.append((CornerLoopError.code, f"corner loops at darts {loops[:8]}"))
    chi = ts.euler_characteristic
    genus = None
    if chi % 2 == 0:
        genus = (2 - chi) // 2
        if genus < min_genus:
            problems.append((GenusError.code, f"genus {genus} < {min_genus}"))
    return ValidationReport(chi, genus, valences, problems)


def corner_loops(ts: TiledSurface) -> list[int]:
    """Corners whose two edge-ends coincide, i.e. loops in a vertex link."""
    return [d for d in range(ts.n_darts) if ts.prev[d] == ts.twin[d]]


# -- barycentric subdivision

FE, FV, EV = "FE", "FV", "EV"


@dataclass(frozen=True, order=True)
class BarycentricEdge:
    kind: str
    source: int
    target: int
    corner: int

    def key(self) -> tuple[str, int]:
        return (self.kind, self.corner)


def fe_edge(ts, d) -> BarycentricEdge:
    """Face of d to the midpoint of d's edge, through the side d."""
    return BarycentricEdge(FE, ts.face_of[d], ts.edge_of[d], d)


def ev_edge(ts, d) -> BarycentricEdge:
    """Midpoint of d's edge to the tail of d."""
    return BarycentricEdge(EV, ts.edge_of[d], ts.tail(d), d)


def fv_edge(ts, d) -> BarycentricEdge:
    """Face of d to the tail of d, through corner d."""
    return BarycentricEdge(FV, ts.face_of[d], ts.tail(d), d)


@dataclass(frozen=True)
class Triangle:
    """A 2-simplex of the subdivision: fv == ev * fe (as composable pair)."""

    ev: int
    fe: int
    fv: int


@dataclass
class Subdivision:
    edges: list[BarycentricEdge]
    triangles: list[Triangle]

    def count(self, kind: str) -> int:
        return sum(1 for e in self.edges if e.kind == kind)


def barycentric_subdivision(ts: TiledSurface) -> Subdivision:
    edges = []
    for make in (fe_edge, fv_edge, ev_edge):
        edges += [make(ts, d) for d in range(ts.n_darts)]
    return Subdivision(edges, triangles(ts))


def triangles(ts: TiledSurface) -> list[Triangle]:
    """Two triangles per dart: at its tail and at its head."""
    out = []
    for d in range(ts.n_darts):
        out.append(Triangle(ev=d, fe=d, fv=d))
        out.append(Triangle(ev=ts.twin[d], fe=d, fv=ts.next[d]))
    return out


# -- geodesics

@dataclass(frozen=True)
class Geodesic:
    id: int
    darts: tuple[int, ...]

    def __len__(self):
        return len(self.darts)

    def reversed(self, ts: TiledSurface) -> "Geodesic":
        return Geodesic(self.id, tuple(ts.twin[d] for d in reversed(self.darts)))


def extract_geodesics(ts: TiledSurface) -> list[Geodesic]:
    if any(len(v) != 4 for v in ts.vertices):
        raise ValenceError("geodesics need every vertex to be 4-valent")
    used = [False] * ts.n_darts
    out = []
    for d in range(ts.n_darts):
        if used[d]:
            continue
        path = []
        x = d
        while not used[x]:
            used[x] = used[ts.twin[x]] = True
            path.append(x)
            x = ts.straight(x)
        if x != d:
            raise SurfaceError(f"straight path from dart {d} does not close up")
        out.append(Geodesic(len(out), tuple(path)))
    return out


def geodesic_of_dart(ts: TiledSurface, geodesics) -> dict[int, tuple[int, int]]:
    """dart -> (geodesic id, +1 if the geodesic runs along the dart else -1)."""
    out = {}
    for g in geodesics:
        for d in g.darts:
            out[d] = (g.id, 1)
            out[ts.twin[d]] = (g.id, -1)
    return out


LEFT, RIGHT = "left", "right"


@dataclass
class ParallelismClasses:
    classes: list[frozenset]
    labels: list[tuple[int, str]]
    of: dict

    def __len__(self):
        return len(self.classes)


def side_label(ts, geo_map, d) -> tuple[int, str]:
    """(geodesic, side) of the face of d relative to the geodesic through d."""
    gid, sgn = geo_map[d]
    return (gid, LEFT if sgn == 1 else RIGHT)


def parallelism_classes(ts: TiledSurface, geodesics=None) -> ParallelismClasses:
    """Classes of FE and EV edges under the corner relation.

    At corner d the two triangles give EV[d] ~ FE[prev d] and
    FE[d] ~ EV[twin prev d].  FV edges never take part and are left out.
    """
    geodesics = geodesics if geodesics is not None else extract_geodesics(ts)
    geo_map = geodesic_of_dart(ts, geodesics)
    uf = UnionFind([(FE, d) for d in range(ts.n_darts)] + [(EV, d) for d in range(ts.n_darts)])
    for d in range(ts.n_darts):
        q = ts.prev[d]
        uf.union((EV, d), (FE, q))
        uf.union((FE, d), (EV, ts.twin[q]))
    classes = sorted((frozenset(s) for s in uf.to_sets()), key=lambda s: min(s))
    labels = []
    of = {}
    for i, cls in enumerate(classes):
        labs = {side_label(ts, geo_map, d) for kind, d in cls if kind == FE}
        if len(labs) != 1:
            raise NonOrientableError(f"parallelism class {i} meets several geodesic sides: {sorted(labs)}")
        labels.append(labs.pop())
        for key in cls:
            of[key] = i
    if len(set(labels)) != len(labels) or len(classes) != 2 * len(geodesics):
        raise NonOrientableError(
            f"{len(classes)} parallelism classes for {len(geodesics)} geodesics")
    return ParallelismClasses(classes, labels, of)


# -- dual graph

@dataclass
class DualGraph:
    n_nodes: int
    arcs: list[tuple[int, int, int]]  # (face of reference dart, face of twin, edge id)

    def degree(self, f: int) -> int:
        return sum((a == f) + (b == f) for a, b, _ in self.arcs)


def dual_graph(ts: TiledSurface) -> DualGraph:
    arcs = [(ts.face_of[a], ts.face_of[b], i) for i, (a, b) in enumerate(ts.edges)]
    return DualGraph(ts.n_faces, arcs)


# A dual circuit is a tuple of darts d_1..d_k: step j leaves face(d_j) across
# the edge of d_j into face(twin d_j) == face(d_{j+1}).

def is_dual_circuit(ts: TiledSurface, circuit) -> bool:
    k = len(circuit)
    return k > 0 and all(ts.face_of[ts.twin[circuit[j]]] == ts.face_of[circuit[(j + 1) % k]]
                         for j in range(k))


def dual_circuits(ts: TiledSurface, k: int) -> list[tuple[int, ...]]:
    """Simple dual circuits of length k (no repeated face), one per cycle up to direction."""
    faces = ts.faces
    out = []
    seen = set()

    def extend(start, path, visited):
        here = ts.face_of[ts.twin[path[-1]]] if path else start
        if len(path) == k:
            if here == start:
                rev = tuple(ts.twin[d] for d in reversed(path))
                canon = min(tuple(path), _rotate_to(ts, rev, start))
                if canon not in seen:
                    seen.add(canon)
                    seen.add(max(tuple(path), _rotate_to(ts, rev, start)))
                    out.append(canon)
            return
        for d in faces[here]:
            nxt = ts.face_of[ts.twin[d]]
            if nxt < start:
                continue
            if nxt == start and len(path) + 1 != k:
                continue
            if nxt != start and nxt in visited:
                continue
            extend(start, path + [d], visited | {nxt})

    for f in range(ts.n_faces):
        extend(f, [], {f})
    return out


def _rotate_to(ts, circ, start):
    for i, d in enumerate(circ):
        if ts.face_of[d] == start:
            return tuple(circ[i:] + circ[:i])
    return tuple(circ)


def fundamental_dual_circuits(ts: TiledSurface) -> list[tuple[int, ...]]:
    """Cycle basis of the dual graph from a BFS spanning tree (one circuit per chord)."""
    parent = {0: None}  # face -> dart entering it from its parent
    order = deque([0])
    tree_edges = set()
    while order:
        f = order.popleft()
        for d in ts.faces[f]:
            g = ts.face_of[ts.twin[d]]
            if g not in parent:
                parent[g] = d
                tree_edges.add(ts.edge_of[d])
                order.append(g)

    def path_from_root(f):
        darts = []
        while parent[f] is not None:
            d = parent[f]
            darts.append(d)
            f = ts.face_of[d]
        return darts[::-1]

    out = []
    for i, (a, b) in enumerate(ts.edges):
        if i in tree_edges:
            continue
        fa, fb = ts.face_of[a], ts.face_of[b]
        pa, pb = path_from_root(fa), path_from_root(fb)
        common = 0
        while common < min(len(pa), len(pb)) and pa[common] == pb[common]:
            common += 1
        up = pa[common:]
        down = pb[common:]
        # from the branch point go down to fa, cross a, come back up from fb
        circ = up + [a] + [ts.twin[d] for d in reversed(down)]
        out.append(tuple(circ))
    return out


def face_components(ts: TiledSurface, cut_edges) -> list[set[int]]:
    """Face sets left after cutting the surface along the given edges."""
    cut = set(cut_edges)
    uf = UnionFind(range(ts.n_faces))
    for i, (a, b) in enumerate(ts.edges):
        if i not in cut:
            uf.union(ts.face_of[a], ts.face_of[b])
    return sorted((set(s) for s in uf.to_sets()), key=min)
