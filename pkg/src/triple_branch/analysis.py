"""Per-genus pipeline: enumerate covers, classify supersingular primes, take
unions and densities, and compare against the reference tables."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .congruence import CongruenceSet, supersingular_residues, union
from .covers import (
    InertiaType,
    RamificationType,
    canonicalize_inertia,
    enumerate_inertia_types,
    enumerate_ramification_types,
    genus_of_ramification,
)
from .decomposition import JacobianLedger, LedgerError, ledger_for, newton_from_ledger
from .golden import Golden
from .newton import newton_polygon


class IncompleteEnumerationError(RuntimeError):
    """Cover results that miss cases present in the reference enumeration."""


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class CoverResult:
    z: RamificationType
    inertia: InertiaType
    residues: CongruenceSet
    ledger: JacobianLedger | None = None

    @property
    def is_cyclic(self) -> bool:
        return self.inertia.shape.is_cyclic


@dataclass(frozen=True)
class TypeResult:
    z: RamificationType
    covers: tuple[CoverResult, ...]

    @property
    def realizable(self) -> bool:
        return bool(self.covers)


@dataclass
class GenusAnalysis:
    genus: int
    types: list[TypeResult]
    union: CongruenceSet = field(init=False)
    density: Fraction = field(init=False)

    def __post_init__(self) -> None:
        self.union, self.density = sg_set(self.genus, self.cover_results())

    def cover_results(self) -> list[CoverResult]:
        return [c for t in self.types for c in t.covers]

    def no_inertia(self) -> list[RamificationType]:
        return [t.z for t in self.types if not t.realizable]


def analyze_type(z: RamificationType, cross_check: bool = True) -> TypeResult:
    """Classes of inertia types for ``z`` with their supersingular residues.

    Non-cyclic classes also carry a cyclic ledger; with ``cross_check`` the
    ledger's polygon is compared with the direct one at every unit.
    """
    if genus_of_ramification(z) < 1:
        raise InconsistencyError(f"{z} has genus zero")
    covers = []
    for a in enumerate_inertia_types(z):
        if a.genus != genus_of_ramification(z):
            raise InconsistencyError(f"inertia type {a} has genus {a.genus}, type {z} does not")
        ledger = None
        if not a.shape.is_cyclic:
            ledger = ledger_for(a)
            if cross_check:
                cross_validate(a, ledger)
        covers.append(CoverResult(z, a, supersingular_residues(a), ledger))
    return TypeResult(z, tuple(covers))


def cross_validate(a: InertiaType, ledger: JacobianLedger) -> None:
    M = a.shape.exponent
    for piece, _ in ledger.terms:
        M = M * piece.inertia.shape.exponent // gcd(M, piece.inertia.shape.exponent)
    for u in range(1, M):
        if gcd(u, M * a.shape.order) != 1:
            continue
        try:
            via_ledger = newton_from_ledger(ledger, u)
        except LedgerError as exc:
            raise InconsistencyError(str(exc)) from exc
        direct = newton_polygon(a, u)
        if via_ledger != direct:
            raise InconsistencyError(
                f"{a} at p = {u} mod {M}: ledger gives {via_ledger}, characters give {direct}")


def _analyze_type_job(z: RamificationType) -> TypeResult:
    return analyze_type(z)


def analyze_genus(g: int, jobs: int = 1) -> GenusAnalysis:
    types = enumerate_ramification_types(g)
    if jobs > 1 and len(types) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_analyze_type_job, types))
    else:
        results = [analyze_type(z) for z in types]
    return GenusAnalysis(g, results)


def sg_set(g: int, cover_results: Sequence[CoverResult],
           golden: Golden | None = None) -> tuple[CongruenceSet, Fraction]:
    """Union of the supersingular sets of all covers of genus ``g`` and its density.

    With ``golden``, the covers are first checked to include every reference
    ramification type and at least as many classes as the reference rows list.
    """
    if golden is not None:
        check_complete(g, cover_results, golden)
    if not cover_results:
        empty = CongruenceSet.empty()
        return empty, empty.density()
    total = union([c.residues for c in cover_results]).reduced()
    return total, total.density()


def check_complete(g: int, cover_results: Sequence[CoverResult], golden: Golden) -> None:
    seen: dict[RamificationType, set[InertiaType]] = {}
    for c in cover_results:
        seen.setdefault(c.z, set()).add(canonicalize_inertia(c.inertia))
    expected: dict[RamificationType, set[InertiaType]] = {}
    for row in golden.rows_for(g):
        classes = expected.setdefault(row.z, set())
        if row.inertia is not None:
            classes.update(canonicalize_inertia(a) for a in row.inertia)
    missing = sorted(str(z) for z in expected if z not in seen)
    if missing:
        raise IncompleteEnumerationError(f"genus {g}: no covers for {', '.join(missing)}")
    for z, classes in expected.items():
        absent = classes - seen[z]
        if absent:
            raise IncompleteEnumerationError(
                f"genus {g}: classes {sorted(map(str, absent))} of {z} are missing")


@dataclass(frozen=True)
class ResidueListDiff:
    modulus: int
    computed: CongruenceSet
    printed: CongruenceSet
    missing: tuple[int, ...]
    extra: tuple[int, ...]
    computed_density: Fraction
    printed_density: Fraction

    @property
    def agrees(self) -> bool:
        return not self.missing and not self.extra


def residue_list_diff(cover_results: Sequence[CoverResult], printed: CongruenceSet,
                      rest: Sequence[CongruenceSet] = ()) -> ResidueListDiff:
    """Compare a printed residue list with the covers whose moduli divide its modulus.

    ``rest`` are the remaining stated conditions; the densities reported are
    those of the computed and of the printed part joined with them.
    """
    M = printed.modulus
    part = [c.residues for c in cover_results if M % c.residues.modulus == 0]
    computed = union(part).lift(M) if part else CongruenceSet.empty(M)
    missing = tuple(sorted(computed.residues - printed.residues))
    extra = tuple(sorted(printed.residues - computed.residues))
    return ResidueListDiff(
        M, computed, printed, missing, extra,
        union([computed, *rest]).density(), union([printed, *rest]).density())


def reference_row_checks(g: int, analysis: GenusAnalysis, golden: Golden) -> list[str]:
    """Human-readable mismatches between computed sets and reference rows.

    Rows flagged ``necessary`` only bound the set from above.
    """
    problems = []
    by_class = {c.inertia: c for c in analysis.cover_results()}
    for row in golden.rows_for(g):
        if row.inertia is None:
            pairs = [(c.inertia, c) for c in analysis.cover_results() if c.z == row.z]
        else:
            pairs = [(a, by_class.get(canonicalize_inertia(a))) for a in row.inertia]
        for listed, c in pairs:
            if c is None:
                problems.append(f"{row.z}: listed class {listed} not enumerated")
                continue
            if getattr(row, "necessary", False):
                ok = union([c.residues, row.condition]).same_primes(row.condition)
            else:
                ok = c.residues.same_primes(row.condition)
            if not ok:
                problems.append(f"{row.z} {c.inertia}: computed {c.residues.display()}, "
                                f"reference {row.condition.display()}")
    return problems
