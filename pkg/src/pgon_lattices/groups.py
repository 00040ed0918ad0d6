"""Finite abelian groups written as direct products of cyclic groups.

A subgroup H of G = Z/n_1 x ... x Z/n_r is stored as its preimage lattice
in Z^r (generated by H's generators and the n_i e_i), kept in Hermite
form.  Orders, indices, sums, intersections and coset representatives are
read off that form, so nothing needs to be enumerated.  Element
enumeration is still available for small groups and serves as an
independent check in the tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import prod

from .intlinalg import hermite_rows

ENUMERATION_LIMIT = 2**16

Element = tuple[int, ...]


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if any(n < 1 for n in self.orders):
            raise GroupError(f"cyclic orders must be >= 1, got {self.orders}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    def zero(self) -> Element:
        return (0,) * self.rank

    def reduce(self, x) -> Element:
        return tuple(int(a) % n for a, n in zip(x, self.orders))

    def add(self, x, y) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def scale(self, k: int, x) -> Element:
        return tuple((k * a) % n for a, n in zip(x, self.orders))

    def generators(self) -> list[Element]:
        return [tuple(int(i == j) % n for j, n in enumerate(self.orders)) for i in range(self.rank)]

    def elements(self, limit: int = ENUMERATION_LIMIT) -> list[Element]:
        if self.order > limit:
            raise GroupError(f"group of order {self.order} exceeds enumeration limit {limit}")
        return list(itertools.product(*(range(n) for n in self.orders)))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(self.generators()))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, ())

    def to_json(self) -> dict:
        return {"cyclic": list(self.orders)}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteAbelianGroup":
        return cls(tuple(data["cyclic"]))


@dataclass(frozen=True)
class Subgroup:
    ambient: FiniteAbelianGroup
    gens: tuple[Element, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.ambient.reduce(g) for g in self.gens))

    @cached_property
    def lattice(self) -> tuple[tuple[int, ...], ...]:
        r = self.ambient.rank
        rows = [list(g) for g in self.gens]
        rows += [[n if i == j else 0 for j in range(r)] for i, n in enumerate(self.ambient.orders)]
        return tuple(tuple(row) for row in hermite_rows(rows, r))

    @property
    def index(self) -> int:
        return prod(self.lattice[i][i] for i in range(self.ambient.rank))

    @property
    def order(self) -> int:
        return self.ambient.order // self.index

    def coset_rep(self, x) -> Element:
        """Canonical representative of x + H."""
        x = list(x)
        for i, row in enumerate(self.lattice):
            q = x[i] // row[i]
            if q:
                x = [a - q * b for a, b in zip(x, row)]
        return tuple(x)

    def __contains__(self, x) -> bool:
        return not any(self.coset_rep(x))

    def coset_reps(self):
        """All canonical coset representatives of G/H."""
        return itertools.product(*(range(self.lattice[i][i]) for i in range(self.ambient.rank)))

    def __le__(self, other: "Subgroup") -> bool:
        _same_ambient(self, other)
        return all(g in other for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.lattice == other.lattice

    def __hash__(self):
        return hash((self.ambient, self.lattice))

    def elements(self, limit: int = ENUMERATION_LIMIT) -> frozenset[Element]:
        """Closure of the generators by breadth-first search."""
        G = self.ambient
        seen = {G.zero()}
        frontier = [G.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = G.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > limit:
                            raise GroupError("subgroup exceeds enumeration limit")
            frontier = nxt
        return frozenset(seen)


def _same_ambient(a: Subgroup, b: Subgroup):
    if a.ambient != b.ambient:
        raise GroupError(f"ambient mismatch: {a.ambient.orders} vs {b.ambient.orders}")


def product_set(a: Subgroup, b: Subgroup) -> Subgroup:
    """A + B, which is again a subgroup since the ambient group is abelian."""
    _same_ambient(a, b)
    return Subgroup(a.ambient, a.gens + b.gens)


def intersect(a: Subgroup, b: Subgroup) -> Subgroup:
    _same_ambient(a, b)
    r = a.ambient.rank
    # rows (x, x) for x in L_A and (y, 0) for y in L_B; rows of the echelon
    # form that vanish on the first block span L_A cap L_B.
    rows = [list(x) + list(x) for x in a.lattice] + [list(y) + [0] * r for y in b.lattice]
    h = hermite_rows(rows, 2 * r)
    gens = tuple(tuple(row[r:]) for row in h if not any(row[:r]))
    return Subgroup(a.ambient, gens)


def index(big: Subgroup, small: Subgroup) -> int:
    if not small <= big:
        raise GroupError("not a subgroup")
    return big.order // small.order


def enumerate_product_set(a: Subgroup, b: Subgroup) -> frozenset[Element]:
    G = a.ambient
    return frozenset(G.add(x, y) for x in a.elements() for y in b.elements())


@dataclass(frozen=True)
class Monomorphism:
    """Homomorphism given by the images of the source's standard generators."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    images: tuple[Element, ...]

    def __post_init__(self):
        imgs = tuple(self.target.reduce(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.rank:
            raise GroupError("one image per source generator required")

    def is_homomorphism(self) -> bool:
        return all(not any(self.target.scale(n, x)) for n, x in zip(self.source.orders, self.images))

    def apply(self, x) -> Element:
        out = [0] * self.target.rank
        for a, img in zip(x, self.images):
            for i, v in enumerate(img):
                out[i] += a * v
        return self.target.reduce(out)

    def image(self) -> Subgroup:
        return Subgroup(self.target, self.images)

    def is_injective(self) -> bool:
        return self.is_homomorphism() and self.image().order == self.source.order

    def compose(self, inner: "Monomorphism") -> "Monomorphism":
        """self after inner."""
        if inner.target != self.source:
            raise GroupError("composition mismatch")
        return Monomorphism(inner.source, self.target, tuple(self.apply(x) for x in inner.images))

    def to_json(self) -> list:
        return [list(x) for x in self.images]


def coordinate_inclusion(source: FiniteAbelianGroup, target: FiniteAbelianGroup,
                         slots: list[int]) -> Monomorphism:
    """Send source factor i onto target factor slots[i] (orders must match)."""
    imgs = []
    for n, s in zip(source.orders, slots):
        if target.orders[s] != n:
            raise GroupError(f"factor order mismatch {n} -> {target.orders[s]}")
        imgs.append(tuple(int(j == s) for j in range(target.rank)))
    return Monomorphism(source, target, tuple(imgs))
