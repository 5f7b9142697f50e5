"""Sets of primes given by unions of unit residue classes, and their densities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .covers import InertiaType
from .modular import divisors, euler_phi, has_power_minus_one, is_prime, lcm
from .newton import is_supersingular, newton_polygon

# lcm of all moduli met for genus <= 10 is far below this
MAX_MODULUS = 10**7


@dataclass(frozen=True)
class CongruenceSet:
    """Primes p with p mod ``modulus`` in ``residues`` (a subset of the units)."""

    modulus: int
    residues: frozenset[int]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        res = frozenset(int(r) % self.modulus for r in self.residues)
        bad = sorted(r for r in res if gcd(r, self.modulus) != 1)
        if bad:
            raise ValueError(f"non-units {bad} mod {self.modulus}")
        object.__setattr__(self, "residues", res)

    @classmethod
    def of(cls, modulus: int, residues: Iterable[int]) -> "CongruenceSet":
        return cls(modulus, frozenset(residues))

    @classmethod
    def full(cls, modulus: int = 1) -> "CongruenceSet":
        return cls(modulus, frozenset(u for u in range(modulus) if gcd(u, modulus) == 1))

    @classmethod
    def empty(cls, modulus: int = 1) -> "CongruenceSet":
        return cls(modulus, frozenset())

    @classmethod
    def complement_of(cls, modulus: int, excluded: Iterable[int]) -> "CongruenceSet":
        """Units mod ``modulus`` outside ``excluded``."""
        ex = {e % modulus for e in excluded}
        return cls(modulus, frozenset(u for u in range(modulus)
                                      if gcd(u, modulus) == 1 and u not in ex))

    @classmethod
    def nonresidues(cls, modulus: int) -> "CongruenceSet":
        """Units mod ``modulus`` that are not squares of units."""
        squares = {(u * u) % modulus for u in range(modulus) if gcd(u, modulus) == 1}
        return cls.complement_of(modulus, squares)

    def sorted(self) -> list[int]:
        return sorted(self.residues)

    def __contains__(self, p: object) -> bool:
        return isinstance(p, int) and p % self.modulus in self.residues

    def __len__(self) -> int:
        return len(self.residues)

    def density(self) -> Fraction:
        return density(self)

    def lift(self, modulus: int) -> "CongruenceSet":
        return lift(self, modulus)

    def complement(self) -> "CongruenceSet":
        return CongruenceSet.complement_of(self.modulus, self.residues)

    def reduced(self) -> "CongruenceSet":
        """Same prime set (up to primes dividing the modulus) over the smallest modulus."""
        for d in divisors(self.modulus):
            candidate = CongruenceSet(d, frozenset(r % d for r in self.residues))
            if lift(candidate, self.modulus) == self:
                return candidate
        return self

    def same_primes(self, other: "CongruenceSet") -> bool:
        """Equal as prime sets, ignoring primes that divide either modulus."""
        M = lcm(self.modulus, other.modulus)
        return lift(self, M) == lift(other, M)

    def display(self) -> str:
        return describe(self)

    def to_json(self) -> dict:
        d = density(self)
        return {
            "modulus": self.modulus,
            "residues": self.sorted(),
            "density": {"num": d.numerator, "den": d.denominator},
            "display": describe(self),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CongruenceSet":
        cs = cls.of(data["modulus"], data["residues"])
        d = data.get("density")
        if d is not None and Fraction(d["num"], d["den"]) != density(cs):
            raise ValueError("density field disagrees with residues")
        return cs


def density(cs: CongruenceSet) -> Fraction:
    """Natural density |residues| / phi(M) of the represented set of primes."""
    return Fraction(len(cs.residues), euler_phi(cs.modulus))


def lift(cs: CongruenceSet, modulus: int) -> CongruenceSet:
    """Express the same set of primes modulo a multiple of the modulus."""
    if modulus % cs.modulus:
        raise ValueError(f"{cs.modulus} does not divide {modulus}")
    if modulus > MAX_MODULUS:
        raise OverflowError(f"modulus {modulus} exceeds {MAX_MODULUS}")
    M = cs.modulus
    out = [u for r in cs.residues for u in range(r, modulus, M) if gcd(u, modulus) == 1]
    return CongruenceSet(modulus, frozenset(out))


def union(sets: Sequence[CongruenceSet]) -> CongruenceSet:
    """Union after lifting every set to the lcm of the moduli."""
    if not sets:
        raise ValueError("union of an empty list")
    M = lcm(*(s.modulus for s in sets))
    if M > MAX_MODULUS:
        raise OverflowError(f"lcm of moduli {M} exceeds {MAX_MODULUS}")
    out: set[int] = set()
    for s in sets:
        out |= lift(s, M).residues
    return CongruenceSet(M, frozenset(out))


def intersection(sets: Sequence[CongruenceSet]) -> CongruenceSet:
    if not sets:
        raise ValueError("intersection of an empty list")
    M = lcm(*(s.modulus for s in sets))
    lifted = [lift(s, M).residues for s in sets]
    return CongruenceSet(M, frozenset.intersection(*lifted))


def supersingular_residues(a: InertiaType) -> CongruenceSet:
    """Units u mod the group exponent at which the Newton polygon is supersingular."""
    M = a.shape.exponent
    return CongruenceSet(M, frozenset(
        u for u in range(M)
        if gcd(u, M) == 1 and is_supersingular(newton_polygon(a, u))))


def describe(cs: CongruenceSet) -> str:
    """Human-readable condition on p, for display only."""
    r = cs.reduced()
    M = r.modulus
    if not r.residues:
        return "none"
    if M == 1 or len(r.residues) == euler_phi(M):
        return "all p"
    inside = r.sorted()
    outside = r.complement().sorted()
    if len(inside) == 1:
        return f"p = -1 mod {M}" if inside == [M - 1] and M > 3 else f"p = {inside[0]} mod {M}"
    if _qnr_modulus(M) and r == CongruenceSet.nonresidues(M):
        return f"p = QNR mod {M}"
    if len(outside) < len(inside):
        return f"p != {', '.join(map(str, outside))} mod {M}"
    return f"p = {', '.join(map(str, inside))} mod {M}"


def _qnr_modulus(M: int) -> bool:
    # moduli with cyclic unit group, where QNR is half the units
    if is_prime(M):
        return True
    return M % 2 == 0 and is_prime(M // 2) and M // 2 > 2


def minus_one_power_classes(M: int) -> CongruenceSet:
    """Units u with u**i = -1 mod M for some i: where every Frobenius orbit is self-dual."""
    return CongruenceSet(M, frozenset(u for u in range(M)
                                      if gcd(u, M) == 1 and has_power_minus_one(u, M)))
