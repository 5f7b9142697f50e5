"""Finite abelian groups of rank at most two, Z/n1 x Z/n2 with n2 | n1.

Elements are :class:`GroupElement` pairs; the cyclic group Z/m is the shape
``(m, 1)`` whose elements all have second coordinate 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .modular import lcm


class GroupElement(NamedTuple):
    x1: int
    x2: int = 0


class UnsupportedGroupError(ValueError):
    """The group needed is outside the rank-two regime handled here."""


@dataclass(frozen=True, order=True)
class AbelianGroupShape:
    n1: int
    n2: int = 1

    def __post_init__(self) -> None:
        if self.n1 < 1 or self.n2 < 1 or self.n1 % self.n2:
            raise ValueError(f"invalid shape Z/{self.n1} x Z/{self.n2}")

    @property
    def order(self) -> int:
        return self.n1 * self.n2

    @property
    def exponent(self) -> int:
        return self.n1

    @property
    def is_cyclic(self) -> bool:
        return self.n2 == 1

    def __str__(self) -> str:
        if self.is_cyclic:
            return f"Z/{self.n1}"
        return f"Z/{self.n1} x Z/{self.n2}"

    @property
    def identity(self) -> GroupElement:
        return GroupElement(0, 0)

    @property
    def basis(self) -> tuple[GroupElement, GroupElement]:
        return GroupElement(1 % self.n1, 0), GroupElement(0, 1 % self.n2)

    def elem(self, x1: int, x2: int = 0) -> GroupElement:
        return GroupElement(x1 % self.n1, x2 % self.n2)

    def elements(self) -> list[GroupElement]:
        return _elements(self.n1, self.n2)

    def add(self, u: Sequence[int], v: Sequence[int]) -> GroupElement:
        return GroupElement((u[0] + v[0]) % self.n1, (u[1] + v[1]) % self.n2)

    def neg(self, u: Sequence[int]) -> GroupElement:
        return GroupElement((-u[0]) % self.n1, (-u[1]) % self.n2)

    def scale(self, k: int, u: Sequence[int]) -> GroupElement:
        return GroupElement((k * u[0]) % self.n1, (k * u[1]) % self.n2)

    def sum(self, items: Iterable[Sequence[int]]) -> GroupElement:
        out = self.identity
        for u in items:
            out = self.add(out, u)
        return out

    def order_of(self, u: Sequence[int]) -> int:
        return lcm(self.n1 // gcd(u[0], self.n1), self.n2 // gcd(u[1], self.n2))

    def generates(self, gens: Iterable[Sequence[int]]) -> bool:
        return len(self.span(gens)) == self.order

    def span(self, gens: Iterable[Sequence[int]]) -> frozenset[GroupElement]:
        """Subgroup generated by ``gens``."""
        current = {self.identity}
        for g in gens:
            g = self.elem(*g)
            cyc = [self.identity]
            x = g
            while x != self.identity:
                cyc.append(x)
                x = self.add(x, g)
            current = {self.add(h, c) for h in current for c in cyc}
        return frozenset(current)

    def automorphisms(self) -> list[tuple[GroupElement, GroupElement]]:
        """Every automorphism as the pair of images of the standard basis."""
        return _automorphisms(self.n1, self.n2)

    def apply(self, aut: tuple[GroupElement, GroupElement], u: Sequence[int]) -> GroupElement:
        e1, e2 = aut
        return GroupElement((u[0] * e1[0] + u[1] * e2[0]) % self.n1,
                            (u[0] * e1[1] + u[1] * e2[1]) % self.n2)

    def subgroups_of_order(self, k: int) -> list["Subgroup"]:
        """Cyclic subgroups of order ``k``, sorted by their smallest generator."""
        seen: dict[frozenset, Subgroup] = {}
        for u in self.elements():
            if self.order_of(u) == k:
                elems = self.span([u])
                if elems not in seen:
                    seen[elems] = Subgroup(self, (u,))
        return sorted(seen.values(), key=lambda h: h.generators)

    def torsion(self, ell: int) -> "Subgroup":
        """The ``ell``-torsion subgroup G[ell]."""
        gens = (GroupElement((self.n1 // gcd(self.n1, ell)) % self.n1, 0),
                GroupElement(0, (self.n2 // gcd(self.n2, ell)) % self.n2))
        return Subgroup(self, gens)


@lru_cache(maxsize=None)
def _elements(n1: int, n2: int) -> list[GroupElement]:
    return [GroupElement(x1, x2) for x1 in range(n1) for x2 in range(n2)]


@lru_cache(maxsize=None)
def _automorphisms(n1: int, n2: int) -> list[tuple[GroupElement, GroupElement]]:
    shape = AbelianGroupShape(n1, n2)
    elems = shape.elements()
    # images of e2 must be killed by n2
    e2_images = [v for v in elems if shape.scale(n2, v) == shape.identity]
    e1_images = [u for u in elems if shape.order_of(u) == n1]
    out = []
    for u in e1_images:
        for v in e2_images:
            if shape.generates([u, v]):
                out.append((u, v))
    return out


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``shape`` described by generators."""

    shape: AbelianGroupShape
    generators: tuple[GroupElement, ...]
    elements: frozenset[GroupElement] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        gens = tuple(self.shape.elem(*g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "elements", self.shape.span(gens))

    @classmethod
    def trivial(cls, shape: AbelianGroupShape) -> "Subgroup":
        return cls(shape, ())

    @classmethod
    def whole(cls, shape: AbelianGroupShape) -> "Subgroup":
        return cls(shape, shape.basis)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, u: object) -> bool:
        return u in self.elements

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.shape == other.shape and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.shape, self.elements))

    def partition_into_cyclic(self) -> list["Subgroup"]:
        """Cyclic subgroups of prime order covering this group with trivial
        pairwise intersections. Only exists for elementary abelian groups."""
        if self.order == 1:
            return []
        orders = {self.shape.order_of(u) for u in self.elements} - {1}
        if len(orders) != 1:
            raise UnsupportedGroupError("subgroup is not elementary abelian")
        (ell,) = orders
        parts: dict[frozenset, Subgroup] = {}
        for u in sorted(self.elements):
            if u == self.shape.identity:
                continue
            span = self.shape.span([u])
            if span not in parts:
                parts[span] = Subgroup(self.shape, (u,))
        return list(parts.values())


class QuotientMap:
    """The projection G -> G/H, with G/H put in invariant-factor form."""

    def __init__(self, shape: AbelianGroupShape, H: Subgroup) -> None:
        if H.shape != shape:
            raise ValueError("subgroup belongs to a different group")
        self.source = shape
        self.kernel = H
        self._key = {g: min(shape.add(g, h) for h in H.elements) for g in shape.elements()}
        reps = sorted(set(self._key.values()))
        qorder = len(reps)

        def qorder_of(g: GroupElement) -> int:
            k, x = 1, g
            while x not in H.elements:
                x = shape.add(x, g)
                k += 1
            return k

        orders = {g: qorder_of(g) for g in reps}
        n1 = max(orders.values())
        if n1 == qorder:
            u = min(g for g in reps if orders[g] == n1)
            gens = [(u, n1)]
            n2 = 1
        else:
            n2 = qorder // n1
            u = min(g for g in reps if orders[g] == n1)
            span_u = {self._key[shape.scale(i, u)] for i in range(n1)}
            v = None
            for cand in reps:
                if orders[cand] != n2:
                    continue
                span_v = {self._key[shape.scale(j, cand)] for j in range(n2)}
                if len(span_u & span_v) == 1:
                    v = cand
                    break
            if v is None:  # pragma: no cover - quotients of rank-2 groups have rank <= 2
                raise UnsupportedGroupError("quotient needs more than two generators")
            gens = [(u, n1), (v, n2)]
        self.target = AbelianGroupShape(n1, n2)
        self._coords: dict[GroupElement, GroupElement] = {}
        (u, _), *rest = gens
        v = rest[0][0] if rest else shape.identity
        for i in range(n1):
            for j in range(n2):
                g = shape.add(shape.scale(i, u), shape.scale(j, v))
                self._coords[self._key[g]] = GroupElement(i, j)
        if len(self._coords) != qorder:  # pragma: no cover
            raise AssertionError("quotient coordinates are not a bijection")

    def __call__(self, g: Sequence[int]) -> GroupElement:
        return self._coords[self._key[self.source.elem(*g)]]
