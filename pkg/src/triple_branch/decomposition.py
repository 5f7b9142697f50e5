"""Isogeny ledgers for Jacobians of abelian covers.

A ledger is a formal integer combination of quotient covers, each recorded by
its canonical inertia type, such that Jac(X) is isogenous to the positive part
with the negative part removed. Kani-Rosen relations for a partition
K = H_1 u ... u H_t (pairwise trivial intersections) give

    (t - 1) Jac(X) + |K| Jac(X/K)  ~  sum_i |H_i| Jac(X/H_i).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .covers import InertiaType, canonicalize_inertia, riemann_hurwitz
from .groups import AbelianGroupShape, QuotientMap, Subgroup
from .modular import Residue, lcm, prime_factors
from .newton import NewtonPolygon, newton_polygon


class LedgerError(ValueError):
    """A ledger that cannot describe the Jacobian it claims to."""


def _elliptic_models() -> dict:
    # The Z/6 cover (1, 2, 3) has genus one and an automorphism of order six
    # with a fixed point, so it is the j = 0 curve; record it as the Z/3 cover.
    e0 = canonicalize_inertia(InertiaType.cyclic(3, (1, 1, 1)))
    z6 = canonicalize_inertia(InertiaType.cyclic(6, (1, 2, 3)))
    return {(z6.shape, z6.a): e0}


_ELLIPTIC_MODELS = _elliptic_models()


@dataclass(frozen=True)
class CyclicPiece:
    """A quotient cover, keyed by its canonical inertia type.

    Usually cyclic of degree ``m``; rank-two pieces appear before expansion.
    """

    inertia: InertiaType

    def __post_init__(self) -> None:
        a = canonicalize_inertia(self.inertia)
        a = _ELLIPTIC_MODELS.get((a.shape, a.a), a)
        object.__setattr__(self, "inertia", a)

    @classmethod
    def cyclic(cls, m: int, a: Sequence[int]) -> "CyclicPiece":
        return cls(InertiaType.cyclic(m, a))

    @property
    def m(self) -> int:
        return self.inertia.shape.order

    @property
    def is_cyclic(self) -> bool:
        return self.inertia.shape.is_cyclic

    @property
    def genus(self) -> int:
        return self.inertia.genus

    def sort_key(self) -> tuple:
        return (not self.is_cyclic, self.inertia.shape, self.inertia.a)

    def __lt__(self, other: "CyclicPiece") -> bool:  # type: ignore[override]
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.is_cyclic:
            return f"({self.m}, {self.inertia.compact()})".replace(" ", "").replace(",(", ", (")
        return str(self.inertia)

    def to_json(self) -> dict:
        shape = self.inertia.shape
        return {
            "m": shape.order,
            "shape": [shape.n1, shape.n2],
            "inertia": [list(x) if not shape.is_cyclic else x for x in self.inertia.compact()],
        }


@dataclass(frozen=True)
class JacobianLedger:
    """Formal sum of pieces with integer multiplicities (zero terms dropped)."""

    terms: tuple[tuple[CyclicPiece, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[CyclicPiece, int]) -> "JacobianLedger":
        items = [(piece, k) for piece, k in counts.items() if k and piece.genus > 0]
        return cls(tuple(sorted(items, key=lambda t: t[0].sort_key())))

    @classmethod
    def single(cls, a: InertiaType, multiplicity: int = 1) -> "JacobianLedger":
        return cls.from_counts({CyclicPiece(a): multiplicity})

    @classmethod
    def from_table(cls, entries: Iterable[tuple[int, Sequence[int], int]]) -> "JacobianLedger":
        """Build from (m, cyclic inertia, multiplicity) triples."""
        counts: Counter = Counter()
        for m, a, k in entries:
            counts[CyclicPiece.cyclic(m, a)] += k
        return cls.from_counts(counts)

    def counts(self) -> Counter:
        return Counter(dict(self.terms))

    @property
    def genus(self) -> int:
        return sum(k * piece.genus for piece, k in self.terms)

    @property
    def is_cyclic(self) -> bool:
        return all(piece.is_cyclic for piece, _ in self.terms)

    @property
    def is_empty(self) -> bool:
        return not self.terms

    def __add__(self, other: "JacobianLedger") -> "JacobianLedger":
        c = self.counts()
        c.update(other.counts())
        return JacobianLedger.from_counts(c)

    def __sub__(self, other: "JacobianLedger") -> "JacobianLedger":
        c = self.counts()
        c.subtract(other.counts())
        return JacobianLedger.from_counts(c)

    def scaled(self, k: int) -> "JacobianLedger":
        return JacobianLedger.from_counts({p: m * k for p, m in self.terms})

    def divided(self, k: int) -> "JacobianLedger":
        bad = [(str(p), m) for p, m in self.terms if m % k]
        if bad:
            raise LedgerError(f"multiplicities {bad} are not divisible by {k}")
        return JacobianLedger.from_counts({p: m // k for p, m in self.terms})

    def moduli(self) -> list[int]:
        return sorted({piece.inertia.shape.exponent for piece, _ in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for piece, k in self.terms:
            sign = " - " if k < 0 else " + "
            power = f"^{abs(k)}" if abs(k) > 1 else ""
            out += sign + str(piece) + power
        out = out[3:] if out.startswith(" + ") else "-" + out[3:]
        return out

    def to_json(self) -> list[dict]:
        return [dict(piece.to_json(), multiplicity=k) for piece, k in self.terms]

    @classmethod
    def from_json(cls, data: list[dict]) -> "JacobianLedger":
        counts: Counter = Counter()
        for term in data:
            n1, n2 = term.get("shape", [term["m"], 1])
            if n2 == 1:
                a = InertiaType.cyclic(n1, term["inertia"])
            else:
                a = InertiaType.rank2(n1, n2, term["inertia"])
            counts[CyclicPiece(a)] += term["multiplicity"]
        return cls.from_counts(counts)


def quotient_inertia(a: InertiaType, H: Subgroup | Sequence[Sequence[int]]) -> InertiaType:
    """Canonical inertia type of X/H -> P^1, with Galois group G/H."""
    if not isinstance(H, Subgroup):
        H = Subgroup(a.shape, tuple(tuple(h) for h in H))
    q = QuotientMap(a.shape, H)
    images = tuple(q(x) for x in a.a)
    return canonicalize_inertia(InertiaType(q.target, images))  # type: ignore[arg-type]


def _check_partition(shape: AbelianGroupShape, subgroups: Sequence[Subgroup]) -> Subgroup:
    if len(subgroups) < 2:
        raise LedgerError("a Kani-Rosen family needs at least two subgroups")
    for i, Hi in enumerate(subgroups):
        if Hi.shape != shape:
            raise LedgerError("subgroup belongs to a different group")
        for Hj in subgroups[i + 1:]:
            if Hi.elements & Hj.elements != {shape.identity}:
                raise LedgerError("subgroups intersect nontrivially")
    union = frozenset().union(*(H.elements for H in subgroups))
    K = Subgroup(shape, tuple(sorted(union)))
    if K.elements != union:
        raise LedgerError("union of the subgroups is not a subgroup")
    return K


def kani_rosen_ledger(a: InertiaType, subgroups: Sequence[Subgroup | Sequence[Sequence[int]]],
                      expand: bool = True) -> JacobianLedger:
    """Solve the Kani-Rosen relation for Jac(X).

    With ``expand`` set, rank-two quotient pieces are themselves decomposed
    (recursively, with their torsion families) before dividing by t - 1.
    """
    subs = [H if isinstance(H, Subgroup) else Subgroup(a.shape, tuple(tuple(h) for h in H))
            for H in subgroups]
    K = _check_partition(a.shape, subs)
    counts: Counter = Counter()
    for H in subs:
        counts[CyclicPiece(quotient_inertia(a, H))] += H.order
    counts[CyclicPiece(quotient_inertia(a, K))] -= K.order
    ledger = JacobianLedger.from_counts(counts)
    if expand:
        ledger = expand_ledger(ledger)
    result = ledger.divided(len(subs) - 1)
    if result.genus != a.genus:
        raise LedgerError(f"ledger genus {result.genus} != genus {a.genus}")
    return result


def default_family(shape: AbelianGroupShape, ell: int | None = None) -> list[Subgroup]:
    """The prime-order subgroups of G[ell], for ell the least prime dividing n2."""
    if shape.is_cyclic:
        raise LedgerError("cyclic covers need no decomposition")
    if ell is None:
        ell = prime_factors(shape.n2)[0]
    return shape.torsion(ell).partition_into_cyclic()


def decompose(a: InertiaType, family: Sequence[Subgroup] | None = None) -> JacobianLedger:
    """A ledger of cyclic pieces for Jac(X); cyclic covers map to themselves."""
    if a.shape.is_cyclic:
        return JacobianLedger.single(a)
    if family is None:
        return _decompose_default(canonicalize_inertia(a))
    return kani_rosen_ledger(a, family, expand=True)


@lru_cache(maxsize=None)
def _decompose_default(a: InertiaType) -> JacobianLedger:
    return kani_rosen_ledger(a, default_family(a.shape), expand=True)


def expand_ledger(ledger: JacobianLedger) -> JacobianLedger:
    """Replace every rank-two piece by its decomposition into cyclic pieces."""
    out = JacobianLedger()
    for piece, k in ledger.terms:
        if piece.is_cyclic:
            out = out + JacobianLedger.from_counts({piece: k})
        else:
            out = out + decompose(piece.inertia).scaled(k)
    return out


def reduce2_ledger(r: int, expand: bool = False) -> JacobianLedger:
    """Jac(X) for ramification type [2r, 2r, 2, 2].

    Odd r: two copies of the Z/2r cover (1, r, r-1). Even r: one copy plus the
    Z/r x Z/2 cover ((1,0), (-1,-1), (0,1)).
    """
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    cyc = CyclicPiece(InertiaType.cyclic(2 * r, (1, r, r - 1)))
    if r % 2:
        ledger = JacobianLedger.from_counts({cyc: 2})
    else:
        rank2 = CyclicPiece(InertiaType.rank2(r, 2, ((1, 0), (-1, -1), (0, 1))))
        counts: Counter = Counter({cyc: 1})
        counts[rank2] += 1
        ledger = JacobianLedger.from_counts(counts)
    return expand_ledger(ledger) if expand else ledger


def newton_from_ledger(ledger: JacobianLedger, p: Residue | int) -> NewtonPolygon:
    """Positive pieces' polygons with the negative pieces' slopes removed."""
    pv = p.value if isinstance(p, Residue) else p
    plus = NewtonPolygon()
    minus = NewtonPolygon()
    for piece, k in ledger.terms:
        np = newton_polygon(piece.inertia, pv % piece.inertia.shape.exponent) * abs(k)
        if k > 0:
            plus = plus + np
        else:
            minus = minus + np
    try:
        out = plus - minus
    except ValueError as exc:
        raise LedgerError(f"ledger {ledger} is ill-defined at p = {pv}: {exc}") from exc
    if out.height != 2 * ledger.genus or not out.is_symmetric():
        raise LedgerError(f"ledger {ledger} gives an invalid polygon at p = {pv}")
    return out


def ledger_modulus(ledger: JacobianLedger) -> int:
    return lcm(*ledger.moduli()) if ledger.terms else 1


# Subgroup families for the non-cyclic cases of genus 5 to 10, in the
# coordinates of the listed inertia representative.
CATALOG: dict[str, dict] = {
    "[8,8,4,2]": {"shape": (8, 2), "a": ((1, 0), (1, 1), (6, 1)),
                  "family": [[(4, 0)], [(0, 1)], [(4, 1)]]},
    "[12,12,2,2]": {"shape": (12, 2), "a": ((1, 0), (11, 1), (0, 1)),
                    "family": [[(0, 1)], [(6, 0)], [(6, 1)]]},
    "[5,5,5,5]": {"shape": (5, 5), "a": ((1, 0), (4, 4), (0, 1)),
                  "family": [[(1, 0)], [(0, 1)], [(1, 1)], [(2, 1)], [(3, 1)], [(4, 1)]]},
    "[14,14,2,2]": {"shape": (14, 2), "a": ((1, 0), (13, 1), (0, 1)),
                    "family": [[(7, 0)], [(0, 1)], [(7, 1)]]},
    "[9,9,3,3]": {"shape": (9, 3), "a": ((1, 0), (8, 2), (0, 1)),
                  "family": [[(3, 0)], [(0, 1)], [(3, 1)], [(3, 2)]]},
    "[12,6,4,2]": {"shape": (12, 2), "a": ((1, 0), (2, 1), (9, 1)),
                   "family": [[(6, 0)], [(0, 1)], [(6, 1)]]},
    "[16,16,2,2]": {"shape": (16, 2), "a": ((1, 0), (15, 1), (0, 1)),
                    "family": [[(8, 0)], [(0, 1)], [(8, 1)]]},
    "[10,10,10,2]": {"shape": (10, 2), "a": ((1, 0), (1, 1), (8, 1)),
                     "family": [[(5, 0)], [(0, 1)], [(5, 1)]]},
    "[18,18,2,2]": {"shape": (18, 2), "a": ((1, 0), (17, 1), (0, 1)),
                    "family": [[(9, 0)], [(0, 1)], [(9, 1)]]},
    "[8,8,4,4]": {"shape": (8, 4), "a": ((1, 0), (7, 3), (0, 1)),
                  "family": [[(4, 0)], [(0, 2)], [(4, 2)]]},
    "[12,12,6,2]": {"shape": (12, 2), "a": ((1, 0), (1, 1), (10, 1)),
                    "family": [[(6, 0)], [(0, 1)], [(6, 1)]]},
    "[20,20,2,2]": {"shape": (20, 2), "a": ((1, 0), (19, 1), (0, 1)),
                    "family": [[(10, 0)], [(0, 1)], [(10, 1)]]},
    "[6,6,6,6]": {"shape": (6, 6), "a": ((1, 0), (0, 1), (5, 5)),
                  "family": [[(2, 0)], [(0, 2)], [(2, 2)], [(2, 4)]]},
    "[9,9,9,3]": {"shape": (9, 3), "a": ((1, 0), (1, 1), (7, 2)),
                  "family": [[(3, 0)], [(0, 1)], [(3, 1)], [(3, 2)]]},
    "[12,12,3,3]": {"shape": (12, 3), "a": ((1, 0), (11, 2), (0, 1)),
                    "family": [[(4, 0)], [(0, 1)], [(4, 1)], [(4, 2)]]},
    "[22,22,2,2]": {"shape": (22, 2), "a": ((1, 0), (21, 1), (0, 1)),
                    "family": [[(11, 0)], [(0, 1)], [(11, 1)]]},
}


def catalog_entry(a: InertiaType) -> tuple[InertiaType, list[Subgroup]] | None:
    """The curated representative and family for the class of ``a``, if any."""
    target = canonicalize_inertia(a)
    for entry in CATALOG.values():
        if AbelianGroupShape(*entry["shape"]) != a.shape:
            continue
        rep = InertiaType.rank2(*entry["shape"], entry["a"])
        if canonicalize_inertia(rep) == target:
            family = [Subgroup(rep.shape, tuple(gens)) for gens in entry["family"]]
            return rep, family
    return None


def ledger_for(a: InertiaType) -> JacobianLedger:
    """Fully cyclic ledger for ``a``, using the curated family when one exists."""
    if a.shape.is_cyclic:
        return JacobianLedger.single(a)
    found = catalog_entry(a)
    if found is None:
        return decompose(a)
    rep, family = found
    return kani_rosen_ledger(rep, family, expand=True)
