"""Reference tables shipped as JSON fixtures, and helpers to read them."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .congruence import CongruenceSet, union
from .covers import InertiaType, RamificationType
from .decomposition import JacobianLedger

FIXTURE_ENV = "TRIPLE_BRANCH_FIXTURES"
GOLDEN_FILE = "golden.json"
SUPPORTED_VERSION = 1


class FixtureError(RuntimeError):
    """Missing, unreadable or malformed fixture data."""


def condition_set(cond: dict) -> CongruenceSet:
    """Expand a stored condition ({kind, modulus, residues}) into residues."""
    kind, M = cond["kind"], cond["modulus"]
    if kind == "in":
        return CongruenceSet.of(M, (r % M for r in cond["residues"]))
    if kind == "not_in":
        return CongruenceSet.complement_of(M, cond["residues"])
    if kind == "qnr":
        return CongruenceSet.nonresidues(M)
    raise FixtureError(f"unknown condition kind {kind!r}")


@dataclass(frozen=True)
class CyclicRow:
    genus: int
    z: RamificationType
    inertia: tuple[InertiaType, ...] | None
    condition: CongruenceSet


@dataclass(frozen=True)
class NoncyclicRow:
    genus: int
    z: RamificationType
    inertia: tuple[InertiaType, ...]
    decomposition: JacobianLedger | None
    condition: CongruenceSet
    necessary: bool


@dataclass(frozen=True)
class Golden:
    cyclic: tuple[CyclicRow, ...]
    noncyclic: tuple[NoncyclicRow, ...]
    no_inertia: tuple[tuple[int, RamificationType], ...]
    densities: dict[int, Fraction]
    genus_conditions: dict[int, tuple[CongruenceSet, ...]]
    genus5_case_count: int
    listed: dict[int, int]

    def rows_for(self, g: int) -> list[CyclicRow | NoncyclicRow]:
        return [r for r in (*self.cyclic, *self.noncyclic) if r.genus == g]

    def types_for(self, g: int) -> set[RamificationType]:
        out = {r.z for r in self.rows_for(g)}
        out |= {z for gg, z in self.no_inertia if gg == g}
        return out

    def listed_condition(self, g: int) -> tuple[CongruenceSet, tuple[CongruenceSet, ...]] | None:
        """The explicit residue list stated for genus ``g`` and the other conditions."""
        if g not in self.listed:
            return None
        conds = self.genus_conditions[g]
        i = self.listed[g]
        return conds[i], conds[:i] + conds[i + 1:]

    def genus_set(self, g: int) -> CongruenceSet:
        """The union of the stated conditions for genus ``g``."""
        return union(list(self.genus_conditions[g]))


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("triple_branch") / "fixtures"))


def load_golden(directory: Path | str | None = None) -> Golden:
    path = Path(directory) if directory is not None else fixture_dir()
    return _load(str(path / GOLDEN_FILE))


@lru_cache(maxsize=8)
def _load(path: str) -> Golden:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise FixtureError(f"fixture file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"fixture file {path} is not valid JSON: {exc}") from exc
    if data.get("version") != SUPPORTED_VERSION:
        raise FixtureError(f"unsupported fixture version {data.get('version')!r}")
    try:
        return _parse(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureError(f"malformed fixture {path}: {exc}") from exc


def _parse(data: dict) -> Golden:
    cyclic = []
    for row in data["cyclic"]:
        z = RamificationType.from_list(row["z"])
        inertia = None
        if row["a"] is not None:
            inertia = tuple(InertiaType.cyclic(z.c0, a) for a in row["a"])
        cyclic.append(CyclicRow(row["genus"], z, inertia, condition_set(row["condition"])))
    noncyclic = []
    for row in data["noncyclic"]:
        z = RamificationType.from_list(row["z"])
        n1, n2 = row["shape"]
        inertia = tuple(InertiaType.rank2(n1, n2, a) for a in row["a"])
        dec = row["decomposition"]
        ledger = None if dec is None else JacobianLedger.from_table(
            (t["m"], t["inertia"], t["multiplicity"]) for t in dec)
        noncyclic.append(NoncyclicRow(row["genus"], z, inertia, ledger,
                                      condition_set(row["condition"]), bool(row["necessary"])))
    no_inertia = tuple((r["genus"], RamificationType.from_list(r["z"])) for r in data["no_inertia"])
    densities = {int(g): Fraction(*v) for g, v in data["densities"].items()}
    conds = {int(g): tuple(condition_set(c) for c in v)
             for g, v in data["genus_conditions"].items()}
    listed = {int(g): i for g, v in data["genus_conditions"].items()
              for i, c in enumerate(v) if c.get("listed")}
    return Golden(tuple(cyclic), tuple(noncyclic), no_inertia, densities, conds,
                  int(data["genus5_case_count"]), listed)
