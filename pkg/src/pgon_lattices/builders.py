"""Explicit right-angled tilings of closed surfaces.

Two constructions:

* ``build_f_div4``: F = 4s faces.  For odd p the polygons are paired along a
  red side, the resulting (2p-4)-gons are doubled along their black sides
  into holed spheres, and consecutive spheres are glued along their cuffs.
  For even p the red step is skipped.
* ``build_jigsaw``: F = x*y faces in x columns and y rows of a torus, with
  the red "scoops" on top and bottom of each piece turned into handles
  between neighbouring columns.

Both return a ``BuiltTiling`` carrying side colours and, when available, a
face weighting whose boundary is a positive combination of geodesics.
"""
from __future__ import annotations

from dataclasses import dataclass

from .surface import TiledSurface, from_polygon_gluing

RED, YELLOW, BLACK = "red", "yellow", "black"


class ConstructionError(ValueError):
    pass


@dataclass
class BuiltTiling:
    surface: TiledSurface
    construction: str
    params: dict
    weights: list[int] | None = None  # face weights; their boundary is a positive geodesic sum

    @property
    def has_certificate(self) -> bool:
        return self.weights is not None


def f_of(p: int, g: int) -> int | None:
    """Face count of a right-angled p-gon tiling of the genus-g surface, or None."""
    if p < 5 or g < 2:
        raise ConstructionError(f"need p >= 5 and g >= 2, got p={p}, g={g}")
    num = 8 * (g - 1)
    return num // (p - 4) if num % (p - 4) == 0 else None


def genus_of(p: int, F: int) -> int:
    return F * (p - 4) // 8 + 1


def _check_count(p, F):
    if p < 5 or F < 1:
        raise ConstructionError(f"need p >= 5 and F >= 1, got p={p}, F={F}")
    if F * (p - 4) % 8:
        raise ConstructionError(f"F(p-4) = {F * (p - 4)} is not divisible by 8")


def build_f_div4(p: int, F: int) -> BuiltTiling:
    _check_count(p, F)
    if F % 4:
        raise ConstructionError(f"F = {F} is not divisible by 4")
    if p % 2:
        return _div4_odd(p, F)
    return _div4_even(p, F)


def _mirror(p, s):
    return (p - s) % p


def _div4_odd(p, F):
    # Faces of sphere k: 4k = P, 4k+1 = P' (glued to P along red), 4k+2 and
    # 4k+3 the mirror copies of P and P'.  Faces 4k, 4k+3 have yellow odd
    # sides, faces 4k+1, 4k+2 black odd sides; side 0 is red everywhere.
    if F % 8:
        raise ConstructionError("odd p needs F divisible by 8")
    spheres = F // 4
    colour = {}
    for f in range(F):
        plus = f % 4 in (0, 3)
        for s in range(p):
            if s == 0:
                colour[(f, s)] = RED
            elif (s % 2 == 1) == plus:
                colour[(f, s)] = YELLOW
            else:
                colour[(f, s)] = BLACK
    glue = []
    mirror_of = {0: 2, 1: 3}
    for k in range(spheres):
        P, P1, P2, P3 = 4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3
        glue += [((P, 0), (P1, 0)), ((P2, 0), (P3, 0))]
        for off in (0, 1):
            X, X2 = 4 * k + off, 4 * k + mirror_of[off]
            for s in range(1, p):
                if colour[(X, s)] == BLACK:
                    glue.append(((X, s), (X2, _mirror(p, s))))
    # long cuff: yellow side 1 of P and side p-1 of P'
    for k in range(0, spheres, 2):
        nxt, prv = (k + 1) % spheres, (k - 1) % spheres
        for off in (0, 1):
            for s in range(1, p):
                if colour[(4 * k + off, s)] != YELLOW:
                    continue
                long_cuff = (off, s) in ((0, 1), (1, p - 1))
                other = nxt if long_cuff else prv
                glue += _cuff_pair(k, other, off, mirror_of[off], s, p, 4)
    labels = {fs: c for fs, c in colour.items()}
    ts = from_polygon_gluing(p, F, glue, labels)
    weights = []
    for f in range(F):
        k, off = divmod(f, 4)
        top = off in (0, 2)
        front = (off in (0, 1)) == (k % 2 == 0)
        odd = k % 2 == 0
        weights.append(int(top) + int(front) + int(odd))
    return BuiltTiling(ts, "div4", {"p": p, "F": F}, _normalise(weights))


def _cuff_pair(k, other, off, moff, s, p, per):
    a, a2 = per * k + off, per * k + moff
    b, b2 = per * other + off, per * other + moff
    return [((a, s), (b2, _mirror(p, s))), ((a2, _mirror(p, s)), (b, s))]


def _div4_even(p, F):
    # Sphere k is the double of face 2k along its black (odd) sides; face
    # 2k+1 is the mirror copy.  Yellow sides are the even ones.
    spheres = F // 2
    colour = {(f, s): (YELLOW if s % 2 == 0 else BLACK) for f in range(F) for s in range(p)}
    glue = []
    for k in range(spheres):
        for s in range(1, p, 2):
            glue.append(((2 * k, s), (2 * k + 1, _mirror(p, s))))
    for k in range(0, spheres, 2):
        nxt, prv = (k + 1) % spheres, (k - 1) % spheres
        for s in range(0, p, 2):
            other = nxt if s == 0 else prv
            glue += _cuff_pair(k, other, 0, 1, s, p, 2)
    ts = from_polygon_gluing(p, F, glue, colour)
    weights = []
    for f in range(F):
        k, off = divmod(f, 2)
        front = (off == 0) == (k % 2 == 0)
        weights.append(int(front) + int(k % 2 == 0))
    return BuiltTiling(ts, "div4", {"p": p, "F": F}, _normalise(weights))


def _normalise(weights):
    m = min(weights)
    return [w - m for w in weights]


def build_jigsaw(p: int, F: int, x: int, y: int) -> BuiltTiling:
    _check_count(p, F)
    if x * y != F:
        raise ConstructionError(f"x*y = {x * y} != F = {F}")
    if p % 4:
        raise ConstructionError(f"jigsaw needs p divisible by 4, got {p}")
    if y % 2 == 0:
        raise ConstructionError(f"y = {y} must be odd")
    if p % 8 == 0 and x % 2:
        raise ConstructionError(f"p = {p} is divisible by 8, so x = {x} must be even")
    r = (p - 4) // 4  # red scoops on top, and again on the bottom
    right, left = 2 * r + 1, p - 1

    def top(t):  # t-th horizontal side of the top, counted from the right
        return 2 * r + 2 + t

    def bottom(s):  # s-th horizontal side of the bottom, counted from the left
        return s

    def face(i, j):
        return (j % y) * x + (i % x)

    colour = {}
    for f in range(F):
        for s in range(p):
            if s in (right, left):
                colour[(f, s)] = BLACK
            else:
                t = s if s <= 2 * r else s - 2 * r - 2
                colour[(f, s)] = YELLOW if t % 2 == 0 else RED
    glue = []
    for j in range(y):
        for i in range(x):
            glue.append(((face(i, j), right), (face(i + 1, j), left)))
            for t in range(0, 2 * r + 1, 2):
                glue.append(((face(i, j), top(t)), (face(i, j + 1), bottom(2 * r - t))))

    def handle(i, j, t, i2):
        # scoop t (from the right) on top of (i, j) to the mirror scoop of
        # (i2, j); the bottoms of the row above follow suit
        glue.append(((face(i, j), top(t)), (face(i2, j), top(2 * r - t))))
        glue.append(((face(i, j), bottom(2 * r - t)), (face(i2, j), bottom(t))))

    for j in range(y):
        for i in range(x):
            if p % 8 == 4:
                for t in range(1, r, 2):
                    handle(i, j, t, i + 1)
            elif i % 2 == 1:  # even column in 1-based numbering
                for t in range(1, 2 * (p // 8), 2):
                    handle(i, j, t, i + 1)
                for t in range(1, 2 * ((p - 8) // 8), 2):
                    handle(i, j, 2 * r - t, i - 1)
    ts = from_polygon_gluing(p, F, glue, colour)
    weights = None
    if x >= 2 and y >= 2:
        weights = [_band(i) + _band(j) for j in range(y) for i in range(x)]
    return BuiltTiling(ts, "jigsaw", {"p": p, "F": F, "x": x, "y": y}, weights)


def _band(i):
    # weight of column/row i (0-based): 2 for the first, parity after that
    return 2 if i == 0 else (i + 1) % 2


def choose_factorisation(p: int, F: int) -> tuple[int, int]:
    """Pick (x, y) for the jigsaw: prefer x, y >= 2, then y <= x, then the largest y."""
    cands = []
    for y in range(1, F + 1, 2):
        if F % y:
            continue
        x = F // y
        if p % 8 == 0 and x % 2:
            continue
        cands.append((x >= 2 and y >= 2, y <= x, y, x))
    if not cands:
        raise ConstructionError(f"no admissible factorisation of F = {F} for p = {p}")
    best = max(cands)
    return best[3], best[2]


def build_any(p: int, F: int) -> BuiltTiling:
    _check_count(p, F)
    if F % 4 == 0:
        return build_f_div4(p, F)
    x, y = choose_factorisation(p, F)
    return build_jigsaw(p, F, x, y)
