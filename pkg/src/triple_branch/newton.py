"""Signature types, Frobenius orbits on characters and Newton polygons of
abelian covers branched at three points via the Shimura-Taniyama formula.

Characters of G = Z/n1 x Z/n2 are pairs (j1, j2) acting by
(x1, x2) -> exp(2 pi i (j1 x1 / n1 + j2 x2 / n2)).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from .covers import InertiaType
from .groups import AbelianGroupShape
from .modular import Residue, frac


class BadReductionError(ValueError):
    """p shares a factor with the group order."""


class Character(NamedTuple):
    j1: int
    j2: int = 0


def characters(shape: AbelianGroupShape) -> list[Character]:
    """Nontrivial characters in lexicographic order."""
    return [Character(j1, j2) for j1 in range(shape.n1) for j2 in range(shape.n2)
            if (j1, j2) != (0, 0)]


def character_order(shape: AbelianGroupShape, chi: Character) -> int:
    return shape.order_of(chi)


def exponent_at(shape: AbelianGroupShape, chi: Character, x) -> Fraction:
    """t(chi, x) in [0, 1) with chi(x) = exp(2 pi i t)."""
    return frac(Fraction(chi.j1 * x[0], shape.n1) + Fraction(chi.j2 * x[1], shape.n2))


@dataclass(frozen=True)
class SignatureType:
    """Eigenspace dimensions f_chi of holomorphic differentials."""

    shape: AbelianGroupShape
    f: Mapping[Character, int]
    degenerate: frozenset[Character]

    @property
    def total(self) -> int:
        return sum(self.f.values())

    def vector(self) -> tuple[int, ...]:
        """(f_1, ..., f_{m-1}) for a cyclic group."""
        if not self.shape.is_cyclic:
            raise ValueError("vector form only exists for cyclic groups")
        return tuple(self.f[Character(j, 0)] for j in range(1, self.shape.n1))

    def conjugate(self, chi: Character) -> Character:
        return Character((-chi.j1) % self.shape.n1, (-chi.j2) % self.shape.n2)


def signature(a: InertiaType) -> SignatureType:
    """f_chi = -1 + sum_b <-t_b(chi)> for every nontrivial character."""
    return _signature(a.shape, a.a)


@lru_cache(maxsize=None)
def _signature(shape: AbelianGroupShape, entries) -> SignatureType:
    f: dict[Character, int] = {}
    degenerate = set()
    for chi in characters(shape):
        ts = [exponent_at(shape, chi, x) for x in entries]
        zeros = sum(1 for t in ts if t == 0)
        # a character killing two generators kills the third, hence all of G
        assert zeros <= 1, f"nontrivial character {chi} kills two inertia generators"
        value = -1 + sum(frac(-t) for t in ts)
        assert value.denominator == 1 and value in (0, 1), (chi, value)
        f[chi] = int(value)
        if zeros:
            degenerate.add(chi)
    return SignatureType(shape, f, frozenset(degenerate))


def s_epsilon_sets(f: SignatureType) -> tuple[frozenset[Character], frozenset[Character]]:
    """(S_0, S_1): non-degenerate characters with f_chi = 0 and f_chi = 1."""
    s0 = frozenset(c for c, v in f.f.items() if v == 0 and c not in f.degenerate)
    s1 = frozenset(c for c, v in f.f.items() if v == 1 and c not in f.degenerate)
    return s0, s1


@dataclass(frozen=True)
class NewtonPolygon:
    """Multiset of slopes in [0, 1], stored as sorted (slope, multiplicity) pairs.

    Multiplicity is measured in height, so ``G_{1,1}^g`` is slope 1/2 with
    multiplicity 2g.
    """

    slopes: tuple[tuple[Fraction, int], ...] = ()

    @classmethod
    def from_counter(cls, counts: Mapping[Fraction, int]) -> "NewtonPolygon":
        for lam, k in counts.items():
            if k < 0:
                raise ValueError(f"negative multiplicity {k} for slope {lam}")
            if not 0 <= lam <= 1:
                raise ValueError(f"slope {lam} outside [0, 1]")
        return cls(tuple(sorted((Fraction(lam), int(k)) for lam, k in counts.items() if k)))

    @classmethod
    def from_slopes(cls, slopes: Iterable[Fraction | int | str]) -> "NewtonPolygon":
        return cls.from_counter(Counter(Fraction(s) for s in slopes))

    @classmethod
    def from_g_notation(cls, parts: Mapping[tuple[int, int], int]) -> "NewtonPolygon":
        """Build from {(c, d): copies} meaning the sum of G_{c,d}^copies."""
        counts: Counter = Counter()
        for (c, d), copies in parts.items():
            counts[Fraction(d, c + d)] += (c + d) * copies
        return cls.from_counter(counts)

    def counter(self) -> Counter:
        return Counter(dict(self.slopes))

    @property
    def height(self) -> int:
        return sum(k for _, k in self.slopes)

    @property
    def dimension(self) -> int:
        return self.height // 2

    @property
    def is_empty(self) -> bool:
        return not self.slopes

    def is_symmetric(self) -> bool:
        c = self.counter()
        return all(c[1 - lam] == k for lam, k in c.items())

    def slope_sum(self) -> Fraction:
        return sum((lam * k for lam, k in self.slopes), Fraction(0))

    def __add__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        return NewtonPolygon.from_counter(self.counter() + other.counter())

    def __sub__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        mine, theirs = self.counter(), other.counter()
        for lam, k in theirs.items():
            if mine[lam] < k:
                raise ValueError(f"cannot remove slope {lam} x{k} from {self}")
        mine.subtract(theirs)
        return NewtonPolygon.from_counter(mine)

    def __mul__(self, k: int) -> "NewtonPolygon":
        if k < 0:
            raise ValueError("negative scaling")
        return NewtonPolygon.from_counter({lam: m * k for lam, m in self.slopes})

    __rmul__ = __mul__

    def g_notation(self) -> dict[tuple[int, int], int]:
        """{(c, d): copies} with slope d/(c+d)."""
        out = {}
        for lam, k in self.slopes:
            c, d = lam.denominator - lam.numerator, lam.numerator
            out[(c, d)] = k // (c + d)
        return out

    def __str__(self) -> str:
        if self.is_empty:
            return "0"
        c = self.counter()
        terms = []
        for lam in sorted(c):
            if lam >= Fraction(1, 2):
                continue
            d, n = lam.numerator, lam.denominator
            copies = c[lam] // n
            # paired with its dual slope 1 - lam
            inner = f"G_{{{d},{n - d}}} + G_{{{n - d},{d}}}"
            terms.append(f"({inner})" + (f"^{copies}" if copies > 1 else ""))
        if c[Fraction(1, 2)]:
            copies = c[Fraction(1, 2)] // 2
            terms.append("G_{1,1}" + (f"^{copies}" if copies > 1 else ""))
        return " + ".join(terms)


def is_supersingular(np: NewtonPolygon) -> bool:
    """Every slope is 1/2 (vacuously true for the empty polygon)."""
    return all(lam == Fraction(1, 2) for lam, _ in np.slopes)


def is_ordinary(np: NewtonPolygon) -> bool:
    return all(lam in (0, 1) for lam, _ in np.slopes)


def _residue_value(p: Residue | int, shape: AbelianGroupShape) -> int:
    if isinstance(p, Residue):
        if p.modulus % shape.exponent:
            raise ValueError(f"residue mod {p.modulus} does not determine p mod {shape.exponent}")
        p = p.value
    if gcd(p, shape.order) != 1:
        raise BadReductionError(f"p = {p} divides the group order {shape.order}")
    return p % shape.exponent


def character_orbits(shape: AbelianGroupShape, p: int) -> list[tuple[Character, ...]]:
    """Orbits of chi -> chi^p on nontrivial characters, each sorted, ordered by minimum."""
    seen = set()
    out = []
    for chi in characters(shape):
        if chi in seen:
            continue
        orbit = [chi]
        nxt = Character((chi.j1 * p) % shape.n1, (chi.j2 * p) % shape.n2)
        while nxt != chi:
            orbit.append(nxt)
            nxt = Character((nxt.j1 * p) % shape.n1, (nxt.j2 * p) % shape.n2)
        seen.update(orbit)
        out.append(tuple(sorted(orbit)))
    return out


def newton_polygon(a: InertiaType, p: Residue | int) -> NewtonPolygon:
    """Newton polygon of the reduction mod p: each Frobenius orbit r of
    non-degenerate characters contributes slope #(r & S_1)/#r with
    multiplicity #r.
    """
    return _newton_cached(a.shape, a.a, _residue_value(p, a.shape))


@lru_cache(maxsize=None)
def _newton_cached(shape: AbelianGroupShape, entries, p: int) -> NewtonPolygon:
    sig = _signature(shape, entries)
    counts: Counter = Counter()
    for orbit in character_orbits(shape, p):
        if orbit[0] in sig.degenerate:
            # degeneracy is a property of ker(chi), constant on the orbit
            continue
        alpha = sum(sig.f[c] for c in orbit)
        counts[Fraction(alpha, len(orbit))] += len(orbit)
    return NewtonPolygon.from_counter(counts)
