"""Ramification types, inertia types and their enumeration for abelian covers
of the projective line branched over 0, 1 and infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Iterable, Sequence

from .groups import (
    AbelianGroupShape,
    GroupElement,
    QuotientMap,
    Subgroup,
    UnsupportedGroupError,
)
from .modular import divisors, lcm

BRANCH_POINTS = ("0", "1", "inf")


class InconsistentTypeError(ValueError):
    """A tuple whose genus is not a nonnegative integer."""


@dataclass(frozen=True, order=True)
class RamificationType:
    """The tuple [c0, c1, c_inf, s]: inertia orders and the index of I_0 in G."""

    c0: int
    c1: int
    cinf: int
    s: int = 1

    def __post_init__(self) -> None:
        if min(self.c0, self.c1, self.cinf, self.s) < 1:
            raise ValueError(f"entries must be positive: {self.as_list()}")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "RamificationType":
        c0, c1, cinf, s = values
        return cls(c0, c1, cinf, s)

    def as_list(self) -> list[int]:
        return [self.c0, self.c1, self.cinf, self.s]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.as_list())) + "]"

    @property
    def orders(self) -> tuple[int, int, int]:
        return (self.c0, self.c1, self.cinf)

    @property
    def r(self) -> int:
        return gcd(gcd(self.c0, self.c1), self.cinf)

    @property
    def e01(self) -> int:
        return gcd(self.c0, self.c1) // self.r

    @property
    def e0inf(self) -> int:
        return gcd(self.c0, self.cinf) // self.r

    @property
    def e1inf(self) -> int:
        return gcd(self.c1, self.cinf) // self.r

    @property
    def group_order(self) -> int:
        return self.s * self.c0

    def violations(self) -> list[str]:
        """Every numerical constraint on a ramification type that fails."""
        out = []
        r, e01, e0i, e1i = self.r, self.e01, self.e0inf, self.e1inf
        if not self.c0 >= self.c1 >= self.cinf:
            out.append("c0 >= c1 >= c_inf")
        if gcd(e01, e0i) != 1 or gcd(e01, e1i) != 1 or gcd(e0i, e1i) != 1:
            out.append("e's pairwise coprime")
        if not e01 >= e0i >= e1i:
            out.append("e01 >= e0inf >= e1inf")
        if (self.c0, self.c1, self.cinf) != (r * e01 * e0i, r * e01 * e1i, r * e0i * e1i):
            out.append("c_b factorisation through r and e's")
        if self.c1 % self.s or self.cinf % self.s:
            out.append("s divides c1 and c_inf")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def satisfies_divisibility_chain(self) -> bool:
        return self.cinf % self.s == 0 and self.c1 % self.cinf == 0 and self.c0 % self.c1 == 0


def riemann_hurwitz(group_order: int, orders: Iterable[int]) -> int:
    """Genus from 2g - 2 = |G| (-2 + sum_b (1 - 1/c_b)) over the branch points."""
    two_g_minus_2 = group_order * (-2 + sum(1 - Fraction(1, c) for c in orders))
    if two_g_minus_2.denominator != 1 or two_g_minus_2 % 2 or two_g_minus_2 < -2:
        raise InconsistentTypeError(f"2g-2 = {two_g_minus_2} is not admissible")
    return int(two_g_minus_2) // 2 + 1


def genus_of_ramification(z: RamificationType) -> int:
    return riemann_hurwitz(z.group_order, z.orders)


def max_group_order(g: int) -> int:
    # Hurwitz: |G| <= 84(g-1) for g >= 2; genus one has c_b <= 6 and s <= c1
    return 84 * (g - 1) if g >= 2 else 36


def enumerate_ramification_types(g: int) -> list[RamificationType]:
    """Every numerically admissible ramification type of genus ``g``.

    Sorted by (s, c0, c1, c_inf).
    """
    if g < 1:
        raise ValueError(f"genus must be at least 1, got {g}")
    bound = max_group_order(g)
    found = []
    for s in range(1, bound + 1):
        for c0 in range(2, bound // s + 1):
            # every c_b divides the exponent of G, which divides |G| = s*c0
            cands = [d for d in divisors(s * c0) if 2 <= d <= c0]
            for c1 in cands:
                if c1 % s:
                    continue
                for cinf in cands:
                    if cinf > c1 or cinf % s:
                        continue
                    z = RamificationType(c0, c1, cinf, s)
                    if not z.is_valid():
                        continue
                    try:
                        if genus_of_ramification(z) == g:
                            found.append(z)
                    except InconsistentTypeError:
                        continue
    return sorted(found, key=lambda z: (z.s, z.c0, z.c1, z.cinf))


def group_shape(z: RamificationType) -> AbelianGroupShape:
    """The Galois group Z/n1 x Z/n2 of any cover with ramification type ``z``.

    The group is generated by two inertia generators, so it has rank at most
    two and is fixed by its order s*c0 and exponent lcm(c0, c1, c_inf). Under
    the chain s | c_inf | c1 | c0 this is Z/c0 x Z/s.
    """
    exponent = lcm(z.c0, z.c1, z.cinf)
    order = z.group_order
    if order % exponent or exponent % (order // exponent):
        raise UnsupportedGroupError(
            f"unsupported group shape for {z}: no group of order {order} "
            f"and exponent {exponent} generated by two elements")
    return AbelianGroupShape(exponent, order // exponent)


@dataclass(frozen=True)
class InertiaType:
    """Canonical inertia generators (a0, a1, a_inf) in ``shape``."""

    shape: AbelianGroupShape
    a: tuple[GroupElement, GroupElement, GroupElement]

    def __post_init__(self) -> None:
        if len(self.a) != 3:
            raise ValueError("an inertia type has three entries")
        object.__setattr__(self, "a", tuple(self.shape.elem(*x) for x in self.a))
        if self.shape.sum(self.a) != self.shape.identity:
            raise ValueError(f"entries of {self.a} do not sum to the identity")
        if not self.shape.generates(self.a):
            raise ValueError(f"entries of {self.a} do not generate {self.shape}")

    @classmethod
    def cyclic(cls, m: int, a: Sequence[int]) -> "InertiaType":
        shape = AbelianGroupShape(m, 1)
        return cls(shape, tuple(shape.elem(x) for x in a))  # type: ignore[arg-type]

    @classmethod
    def rank2(cls, n1: int, n2: int, a: Sequence[Sequence[int]]) -> "InertiaType":
        shape = AbelianGroupShape(n1, n2)
        return cls(shape, tuple(shape.elem(*x) for x in a))  # type: ignore[arg-type]

    @property
    def orders(self) -> tuple[int, int, int]:
        return tuple(self.shape.order_of(x) for x in self.a)  # type: ignore[return-value]

    @property
    def genus(self) -> int:
        return riemann_hurwitz(self.shape.order, self.orders)

    @property
    def ramification_type(self) -> RamificationType:
        c0, c1, cinf = self.orders
        return RamificationType(c0, c1, cinf, self.shape.order // c0)

    def compact(self) -> tuple:
        """Entries as ints for cyclic groups, pairs otherwise."""
        if self.shape.is_cyclic:
            return tuple(x[0] for x in self.a)
        return tuple(tuple(x) for x in self.a)

    def __str__(self) -> str:
        if self.shape.is_cyclic:
            return f"({self.shape.n1}, {self.compact()})".replace(" ", "").replace(",(", ", (")
        inner = ", ".join(f"({x},{y})" for x, y in self.a)
        return f"({self.shape}: ({inner}))"


def _candidate_images(a: InertiaType):
    shape = a.shape
    orders = a.orders
    for perm in permutations(range(3)):
        if not orders[perm[0]] >= orders[perm[1]] >= orders[perm[2]]:
            continue
        b = tuple(a.a[i] for i in perm)
        for aut in shape.automorphisms():
            yield tuple(shape.apply(aut, x) for x in b)


def canonicalize_inertia(a: InertiaType) -> InertiaType:
    """Lexicographically least member of the equivalence class of ``a``.

    Entries are first relabelled so their orders are non-increasing; the class
    is then the orbit under automorphisms and swaps of equal-order entries.
    Members with a0 equal to the first standard generator are preferred.
    """
    return _canonical_cached(a.shape, a.a)


@lru_cache(maxsize=None)
def _canonical_cached(shape: AbelianGroupShape, entries) -> InertiaType:
    a = InertiaType(shape, entries)
    e1 = shape.basis[0]
    best_pref = None
    best_any = None
    for cand in _candidate_images(a):
        if cand[0] == e1 and (best_pref is None or cand < best_pref):
            best_pref = cand
        if best_any is None or cand < best_any:
            best_any = cand
    return InertiaType(shape, best_pref if best_pref is not None else best_any)


def equivalence_class(a: InertiaType) -> set[tuple]:
    """Every member of the orbit of ``a`` (with entries ordered by decreasing order)."""
    return set(_candidate_images(a))


def enumerate_inertia_types(z: RamificationType) -> list[InertiaType]:
    """Representatives of every equivalence class of inertia types realising ``z``.

    Empty when no triple satisfies the order, generation and product
    constraints.
    """
    shape = group_shape(z)
    if z.c0 == shape.exponent:
        # automorphisms act transitively on elements of maximal order
        a0_choices = [shape.basis[0]]
    else:
        a0_choices = [u for u in shape.elements() if shape.order_of(u) == z.c0]
    classes = set()
    for a0 in a0_choices:
        for a1 in shape.elements():
            if shape.order_of(a1) != z.c1:
                continue
            ainf = shape.neg(shape.add(a0, a1))
            if shape.order_of(ainf) != z.cinf:
                continue
            if not shape.generates([a0, a1]):
                continue
            classes.add(canonicalize_inertia(InertiaType(shape, (a0, a1, ainf))))
    return sorted(classes, key=lambda t: t.a)


def inertia_images(a: InertiaType, H: Subgroup) -> tuple[QuotientMap, tuple[GroupElement, ...]]:
    q = QuotientMap(a.shape, H)
    return q, tuple(q(x) for x in a.a)


def genus_of_quotient(a: InertiaType, H: Subgroup | Sequence[Sequence[int]]) -> int:
    """Genus of X/H, where X is the cover with inertia type ``a``."""
    if not isinstance(H, Subgroup):
        H = Subgroup(a.shape, tuple(a.shape.elem(*h) for h in H))
    q, images = inertia_images(a, H)
    return riemann_hurwitz(q.target.order, [q.target.order_of(x) for x in images])
