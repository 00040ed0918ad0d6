"""Integer cellular homology of tiled surfaces and geodesic coefficient searches.

Conventions: a face is oriented counterclockwise, so its boundary is the sum
of its darts; an edge is oriented along its reference (smaller) dart.  A
geodesic is the 1-chain of its darts.  A 2-chain Delta is a list of face
weights, and for an edge on a geodesic h with coefficient c,
weight(left face) - weight(right face) = c.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .intlinalg import kernel_basis, matvec, smith_normal_form, solve_integer
from .surface import (TiledSurface, Geodesic, SurfaceError, extract_geodesics,
                      geodesic_of_dart)

NONZERO, SIGNS, WEIGHTS12 = "NonzeroIntegers", "PlusMinusOne", "Weights12"


class CertificateError(ValueError):
    pass


@dataclass
class ChainComplex:
    d2: list[list[int]]  # edges x faces
    d1: list[list[int]]  # vertices x edges
    n_faces: int
    n_edges: int
    n_vertices: int


def chain_complex(ts: TiledSurface) -> ChainComplex:
    E, F, V = ts.n_edges, ts.n_faces, ts.n_vertices
    d2 = [[0] * F for _ in range(E)]
    for d in range(ts.n_darts):
        d2[ts.edge_of[d]][ts.face_of[d]] += ts.edge_sign(d)
    d1 = [[0] * E for _ in range(V)]
    for i, (a, _) in enumerate(ts.edges):
        d1[ts.head(a)][i] += 1
        d1[ts.tail(a)][i] -= 1
    return ChainComplex(d2, d1, F, E, V)


def boundary(ts: TiledSurface, weights) -> list[int]:
    """Boundary of a 2-chain given as face weights."""
    out = [0] * ts.n_edges
    for d in range(ts.n_darts):
        out[ts.edge_of[d]] += ts.edge_sign(d) * weights[ts.face_of[d]]
    return out


def path_chain(ts: TiledSurface, darts) -> list[int]:
    out = [0] * ts.n_edges
    for d in darts:
        out[ts.edge_of[d]] += ts.edge_sign(d)
    return out


def geodesic_sum(ts: TiledSurface, geodesics, coeffs) -> list[int]:
    out = [0] * ts.n_edges
    for g, c in zip(geodesics, coeffs):
        for d in g.darts:
            out[ts.edge_of[d]] += c * ts.edge_sign(d)
    return out


class Homology:
    """H_1 of a closed surface via Smith forms of the boundary maps."""

    def __init__(self, ts: TiledSurface):
        self.ts = ts
        self.cx = chain_complex(ts)
        self.snf1 = smith_normal_form(self.cx.d1, self.cx.n_edges)
        r1 = self.snf1.rank
        self.r1 = r1
        # coordinates of im d2 inside the kernel basis V[:, r1:]
        vinv = self.snf1.V_inv
        cols = [matvec(vinv[r1:], [row[f] for row in self.cx.d2]) for f in range(self.cx.n_faces)]
        self.B = [list(row) for row in zip(*cols)] if cols else []
        self.snf2 = smith_normal_form(self.B, self.cx.n_faces)
        diag = self.snf2.diagonal
        self.r2 = self.snf2.rank
        self.torsion = [d for d in diag if d > 1]

    @property
    def rank(self) -> int:
        return (self.cx.n_edges - self.r1) - self.r2

    def is_cycle(self, z) -> bool:
        return not any(matvec(self.cx.d1, z))

    def _kernel_coords(self, z):
        return matvec(self.snf1.V_inv[self.r1:], z)

    def coords(self, z) -> tuple[int, ...]:
        """Free coordinates of the class of cycle z in Z^{2g}."""
        if not self.is_cycle(z):
            raise ValueError("chain is not a cycle")
        y = matvec(self.snf2.U, self._kernel_coords(z))
        return tuple(y[self.r2:])

    def is_boundary(self, z) -> bool:
        if not self.is_cycle(z):
            return False
        y = matvec(self.snf2.U, self._kernel_coords(z))
        diag = self.snf2.diagonal
        return all(y[i] % diag[i] == 0 for i in range(self.r2)) and not any(y[self.r2:])

    def basis_cycles(self) -> list[list[int]]:
        """Cycles whose classes form the basis the coordinates refer to."""
        k = len(self.snf2.U)
        out = []
        for j in range(self.r2, k):
            y = [self.snf2.U_inv[i][j] for i in range(k)]
            kernel_cols = [row[self.r1:] for row in self.snf1.V]
            out.append(matvec(kernel_cols, y))
        return out


def h1_classes(ts: TiledSurface, geodesics=None, hom: Homology | None = None) -> list[tuple[int, ...]]:
    geodesics = geodesics if geodesics is not None else extract_geodesics(ts)
    hom = hom or Homology(ts)
    return [hom.coords(path_chain(ts, g.darts)) for g in geodesics]


def solve_weights(ts: TiledSurface, chain) -> list[int] | None:
    """A 2-chain Delta with boundary equal to `chain`, normalised to min weight 0."""
    cx = chain_complex(ts)
    sol = solve_integer(cx.d2, list(chain), cx.n_faces)
    if sol is None:
        return None
    m = min(sol)
    return [w - m for w in sol]


@dataclass
class CoefficientCertificate:
    kind: str
    coefficients: list[int]
    geodesics: list[tuple[int, ...]]  # oriented dart sequences
    weights: list[int]

    def geodesic_objects(self) -> list[Geodesic]:
        return [Geodesic(i, tuple(g)) for i, g in enumerate(self.geodesics)]

    def verify(self, ts: TiledSurface) -> bool:
        if self.kind == SIGNS and any(abs(c) != 1 for c in self.coefficients):
            return False
        if self.kind == WEIGHTS12 and any(abs(c) not in (1, 2) for c in self.coefficients):
            return False
        if any(c == 0 for c in self.coefficients):
            return False
        lhs = boundary(ts, self.weights)
        rhs = geodesic_sum(ts, self.geodesic_objects(), self.coefficients)
        return lhs == rhs

    def normalised(self, ts: TiledSurface) -> "CoefficientCertificate":
        """Reverse geodesics with negative coefficient and shift weights to min 0."""
        geos, coeffs = [], []
        for g, c in zip(self.geodesic_objects(), self.coefficients):
            if c < 0:
                g, c = g.reversed(ts), -c
            geos.append(tuple(g.darts))
            coeffs.append(c)
        m = min(self.weights)
        return replace(self, coefficients=coeffs, geodesics=geos, weights=[w - m for w in self.weights])

    def to_dict(self) -> dict:
        return {"kind": self.kind, "coefficients": list(self.coefficients),
                "geodesics": [list(g) for g in self.geodesics], "weights": list(self.weights)}

    @classmethod
    def from_dict(cls, data) -> "CoefficientCertificate":
        return cls(data["kind"], list(data["coefficients"]),
                   [tuple(g) for g in data["geodesics"]], list(data["weights"]))


def certificate_from_weights(ts: TiledSurface, weights, geodesics=None) -> CoefficientCertificate:
    """Read off geodesic coefficients from a 2-chain whose boundary runs along geodesics.

    Geodesics are oriented so that every coefficient is positive.
    """
    geodesics = geodesics if geodesics is not None else extract_geodesics(ts)
    geos, coeffs = [], []
    for g in geodesics:
        diffs = {weights[ts.face_of[d]] - weights[ts.face_of[ts.twin[d]]] for d in g.darts}
        if len(diffs) != 1:
            raise CertificateError(f"weights jump by {sorted(diffs)} along geodesic {g.id}")
        c = diffs.pop()
        if c == 0:
            raise CertificateError(f"geodesic {g.id} has coefficient 0")
        if c < 0:
            g, c = g.reversed(ts), -c
        geos.append(g.darts)
        coeffs.append(c)
    kind = SIGNS if all(c == 1 for c in coeffs) else (WEIGHTS12 if set(coeffs) <= {1, 2} else NONZERO)
    m = min(weights)
    cert = CoefficientCertificate(kind, coeffs, geos, [w - m for w in weights])
    if not cert.verify(ts):
        raise CertificateError("weights do not bound the geodesic sum")
    return cert


@dataclass(frozen=True)
class SearchTruncated:
    """Returned instead of a certificate when the search bound is exceeded."""

    n_geodesics: int
    free: int  # rank of the space of relations among the geodesic classes
    bound: int  # log2 of the largest enumeration allowed

    def __bool__(self):
        return False


def _relation_form(cols, n):
    """Solve sum c_i cols_i = 0 for pivot coordinates in terms of free ones.

    Returns (pivots, free, A, L) with L * c[pivots] = A @ c[free].
    """
    rows = [[Fraction(cols[i][r]) for i in range(n)] for r in range(len(cols[0]) if cols else 0)]
    pivots, i = [], 0
    for j in range(n):
        piv = next((k for k in range(i, len(rows)) if rows[k][j]), None)
        if piv is None:
            continue
        rows[i], rows[piv] = rows[piv], rows[i]
        inv = 1 / rows[i][j]
        rows[i] = [x * inv for x in rows[i]]
        for k in range(len(rows)):
            if k != i and rows[k][j]:
                f = rows[k][j]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
        pivots.append(j)
        i += 1
    free = [j for j in range(n) if j not in set(pivots)]
    L = 1
    for r in rows[:i]:
        for f in free:
            L = lcm(L, r[f].denominator)
    A = [[int(-r[f] * L) for f in free] for r in rows[:i]]
    return pivots, free, A, L


def _enumerate_relations(cols, n, values, chunk=1 << 16):
    """First c with every entry in `values` and sum c_i cols_i = 0, or None.

    Every relation is fixed by its free coordinates, so enumerating those
    (first free coordinate least significant) is exhaustive.
    """
    pivots, free, A, L = _relation_form(cols, n)
    k = len(free)
    if k == 0:
        return None
    base = len(values)
    vals = np.asarray(values, dtype=np.int64)
    big = max((abs(x) for r in A for x in r), default=0) * k * int(np.abs(vals).max()) >= 2**62
    At = np.asarray(A, dtype=object if big else np.int64).T.reshape(k, len(pivots))
    powers = base ** np.arange(k, dtype=np.int64)
    total = base**k
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        X = vals[(idx[:, None] // powers) % base]
        Y = (X.astype(object) if big else X) @ At
        ok = np.all(Y % L == 0, axis=1)
        if not ok.any():
            continue
        P = np.where(ok[:, None], Y // L, vals[0]).astype(np.int64)
        ok &= np.all(np.isin(P, vals), axis=1)
        hits = np.flatnonzero(ok)
        if len(hits):
            h = hits[0]
            c = [0] * n
            for j, f in enumerate(free):
                c[f] = int(X[h, j])
            for j, pv in enumerate(pivots):
                c[pv] = int(P[h, j])
            return c
    return None


def _kind_of(coeffs):
    mags = {abs(c) for c in coeffs}
    return SIGNS if mags == {1} else (WEIGHTS12 if mags <= {1, 2} else NONZERO)


def find_coeffs_in(ts: TiledSurface, values, geodesics=None, bound: int = 24):
    """Certificate with every coefficient in `values` (a set closed under negation).

    Returns None when no such relation exists and SearchTruncated when the
    enumeration would exceed 2**bound candidates.
    """
    geodesics = geodesics if geodesics is not None else extract_geodesics(ts)
    values = sorted(set(values), key=lambda x: (abs(x), -x))
    if 0 in values or set(values) != {-x for x in values}:
        raise ValueError("coefficient values must be nonzero and closed under negation")
    hom = Homology(ts)
    if hom.torsion:
        raise SurfaceError("H_1 has torsion; not a closed oriented surface")
    n = len(geodesics)
    cols = h1_classes(ts, geodesics, hom)
    k = n - len(_relation_form(cols, n)[0]) if cols and cols[0] else n
    if len(values) ** k > 2**bound:
        return SearchTruncated(n, k, bound)
    coeffs = _enumerate_relations(cols, n, values) if cols and cols[0] else [values[0]] * n
    if coeffs is None:
        return None
    if coeffs and coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    weights = solve_weights(ts, geodesic_sum(ts, geodesics, coeffs))
    if weights is None:  # cannot happen on a torsion-free surface
        raise CertificateError("class sum vanishes but no bounding 2-chain found")
    cert = CoefficientCertificate(_kind_of(coeffs), coeffs, [g.darts for g in geodesics], weights)
    if not cert.verify(ts):
        raise CertificateError("certificate failed re-verification")
    return cert


def find_sign_coeffs(ts: TiledSurface, bound: int = 24, geodesics=None):
    """Signs c_i = +-1 with c_1 = +1 and sum c_i [h_i] = 0.

    Exhaustive: None means no sign pattern works.  SearchTruncated when the
    relations among the classes have more than `bound` free coordinates.
    """
    return find_coeffs_in(ts, (1, -1), geodesics, bound)


def find_nonzero_coeffs(ts: TiledSurface, geodesics=None, small_search_bound: int = 20):
    """Nonzero integers c_i with sum c_i [h_i] = 0, or None if there are none.

    Small coefficients are tried first: all signs, then entries in
    {+-1, +-2}, each while at most 2**small_search_bound candidates.
    Otherwise an integer nullspace basis v_1..v_r is combined as v_1 + t v_2 + t^2 v_3 + ... for t = 1, 2, ...
    until every entry is nonzero.
    """
    geodesics = geodesics if geodesics is not None else extract_geodesics(ts)
    n = len(geodesics)
    hom = Homology(ts)
    cols = h1_classes(ts, geodesics, hom)
    basis = kernel_basis([list(r) for r in zip(*cols)], n) if cols and cols[0] else \
        [[int(i == j) for i in range(n)] for j in range(n)]
    if not basis or any(all(v[i] == 0 for v in basis) for i in range(n)):
        return None
    for values in ((1, -1), (1, -1, 2, -2)):
        cert = find_coeffs_in(ts, values, geodesics, small_search_bound)
        if cert:
            return cert
    t = 1
    while True:
        vec = [sum(t**k * v[i] for k, v in enumerate(basis)) for i in range(n)]
        if all(vec):
            break
        t += 1
    g = 0
    for x in vec:
        g = gcd(g, x)
    vec = [x // g for x in vec]
    if vec[0] < 0:
        vec = [-x for x in vec]
    weights = solve_weights(ts, geodesic_sum(ts, geodesics, vec))
    cert = CoefficientCertificate(_kind_of(vec), vec, [g.darts for g in geodesics], weights)
    if weights is None or not cert.verify(ts):
        raise CertificateError("nullspace vector failed re-verification")
    return cert


@dataclass
class VertexTypeReport:
    a: dict[int, int]
    f: dict[int, int]
    corner_identity: bool
    divisible: bool
    p: int


def vertex_types(ts: TiledSurface, weights) -> VertexTypeReport:
    """Count vertices of type (n): corner weights n-1, n, n+1, n in rotation."""
    a: dict[int, int] = {}
    if len(set(weights)) <= 1:  # constant chain: nothing is typed
        return VertexTypeReport({}, {}, True, True, ts.p)
    for vi, darts in enumerate(ts.vertices):
        w = [weights[ts.face_of[d]] for d in darts]
        if len(w) != 4 or any(abs(w[i] - w[(i + 1) % 4]) != 1 for i in range(4)):
            raise CertificateError(f"vertex {vi} has corner weights {w}, not of type (n)")
        lo, hi = min(w), max(w)
        if hi - lo != 2:
            raise CertificateError(f"vertex {vi} has corner weights {w}, not of type (n)")
        n = lo + 1
        a[n] = a.get(n, 0) + 1
    f: dict[int, int] = {}
    for w in weights:
        f[w] = f.get(w, 0) + 1
    levels = set(f) | set(a)
    ident = all(a.get(n - 1, 0) + 2 * a.get(n, 0) + a.get(n + 1, 0) == ts.p * f.get(n, 0)
                for n in range(min(levels, default=0) - 1, max(levels, default=0) + 2)) if levels else True
    div = all(x % ts.p == 0 for x in a.values())
    return VertexTypeReport(a, f, ident, div, ts.p)


def intersection_pairing(ts: TiledSurface, circuit, coeffs, geodesics) -> int:
    """Signed count of crossings of a dual circuit with a weighted sum of geodesics.

    A crossing counts +c when the circuit leaves the geodesic's left side.
    """
    geo_map = geodesic_of_dart(ts, geodesics)
    by_id = {g.id: c for g, c in zip(geodesics, coeffs)}
    total = 0
    for d in circuit:
        gid, sgn = geo_map[d]
        total += sgn * by_id[gid]
    return total


def pair_with_chain(ts: TiledSurface, circuit, z) -> int:
    """Same pairing against an arbitrary integer 1-chain z."""
    return sum(ts.edge_sign(d) * z[ts.edge_of[d]] for d in circuit)
