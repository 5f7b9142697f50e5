"""Exact modular arithmetic: units, multiplicative orders, fractional parts and
orbits of the multiplication-by-p map on Z/MZ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple


class Residue(NamedTuple):
    """An element ``value`` of Z/``modulus``Z, stored reduced."""

    value: int
    modulus: int

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        return cls(value % modulus, modulus)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, Residue):
            _check_same(self, other)
            return Residue((self.value * other.value) % self.modulus, self.modulus)
        if isinstance(other, int):
            return Residue((self.value * other) % self.modulus, self.modulus)
        return NotImplemented

    def __pow__(self, k: int) -> "Residue":
        return Residue(pow(self.value, k, self.modulus), self.modulus)

    def __neg__(self) -> "Residue":
        return Residue((-self.value) % self.modulus, self.modulus)

    def reduce(self, modulus: int) -> "Residue":
        """Image under Z/MZ -> Z/modulus Z; ``modulus`` must divide M."""
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return Residue(self.value % modulus, modulus)


def _check_same(a: Residue, b: Residue) -> None:
    if a.modulus != b.modulus:
        raise ValueError(f"moduli differ: {a.modulus} vs {b.modulus}")


def units(M: int) -> list[Residue]:
    """Residues coprime to ``M`` in ascending order. ``units(1) == [0 mod 1]``."""
    if M < 1:
        raise ValueError(f"modulus must be positive, got {M}")
    return [Residue(u, M) for u in range(M) if gcd(u, M) == 1]


def euler_phi(M: int) -> int:
    result, n, d = M, M, 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            result -= result // d
        d += 1
    if n > 1:
        result -= result // n
    return result


def mult_order(u: Residue) -> int:
    """Least k >= 1 with u**k == 1."""
    if not u.is_unit():
        raise ValueError(f"{u.value} is not a unit mod {u.modulus}")
    if u.modulus == 1:
        return 1
    k, x = 1, u.value
    while x != 1:
        x = (x * u.value) % u.modulus
        k += 1
    return k


def frac(q: Fraction | int) -> Fraction:
    """Fractional part in [0, 1), exact."""
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


def additive_order(j: int, M: int) -> int:
    return M // gcd(j, M)


@dataclass(frozen=True, order=True)
class FrobeniusOrbit:
    """An orbit of multiplication by a unit on nonzero residues mod ``modulus``.

    Ordered and keyed by ``representative`` (the minimum element).
    """

    representative: int
    elements: frozenset[int]
    modulus: int

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def additive_order(self) -> int:
        return additive_order(self.representative, self.modulus)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


def orbit_of(j: int, p: int, M: int) -> frozenset[int]:
    seen = [j % M]
    x = (j * p) % M
    while x != seen[0]:
        seen.append(x)
        x = (x * p) % M
    return frozenset(seen)


def frobenius_orbits(M: int, p: Residue | int) -> list[FrobeniusOrbit]:
    """Partition of {1, ..., M-1} into orbits of x -> p*x mod M, sorted by minimum."""
    pv = p.value if isinstance(p, Residue) else p
    if isinstance(p, Residue) and M % p.modulus and p.modulus % M:
        raise ValueError(f"residue modulus {p.modulus} incompatible with {M}")
    if gcd(pv, M) != 1:
        raise ValueError(f"{pv} is not coprime to {M}")
    remaining = set(range(1, M))
    orbits = []
    for j in range(1, M):
        if j not in remaining:
            continue
        elems = orbit_of(j, pv, M)
        remaining -= elems
        orbits.append(FrobeniusOrbit(min(elems), elems, M))
    return orbits


def is_self_dual(orbit: FrobeniusOrbit) -> bool:
    """True iff negation mod M maps the orbit onto itself."""
    M = orbit.modulus
    return frozenset((-j) % M for j in orbit.elements) == orbit.elements


def all_self_dual(orbits: Iterable[FrobeniusOrbit]) -> bool:
    return all(is_self_dual(o) for o in orbits)


def has_power_minus_one(p: int, M: int) -> bool:
    """True iff p**i == -1 mod M for some i >= 0."""
    if M <= 2:
        return True
    x = p % M
    for _ in range(M):
        if x == M - 1:
            return True
        if x == 1:
            return False
        x = (x * p) % M
    return False


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    return [d for d in divisors(n) if is_prime(d)]
