"""Command line front end: ``triple-branch enumerate|analyze|verify|density``.

Exit status is 0 when every check passes, 1 on a mathematical inconsistency
and 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .analysis import (
    GenusAnalysis,
    IncompleteEnumerationError,
    InconsistencyError,
    analyze_genus,
    reference_row_checks,
    residue_list_diff,
    sg_set,
)
from .covers import (
    InertiaType,
    RamificationType,
    enumerate_inertia_types,
    enumerate_ramification_types,
    genus_of_ramification,
    group_shape,
)
from .golden import FixtureError, Golden, load_golden
from .groups import UnsupportedGroupError
from .modular import is_prime
from .newton import is_supersingular, newton_polygon
from .oracle import (
    DEFAULT_Q_BUDGET,
    BudgetExceeded,
    CorruptCountsError,
    count_points_hyperelliptic,
    l_polynomial,
    np_from_lpoly,
    oracle_report,
)

EXIT_OK, EXIT_MATH, EXIT_CONFIG = 0, 1, 2
FORMATS = ("json", "csv", "markdown")
DEFAULT_PRIMES = (3, 5, 7, 11, 13)
# explicit Weierstrass models, coefficients low to high
ELLIPTIC_MODELS = {"E1728": (0, -1, 0, 1), "E0": (-1, 0, 0, 1)}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    genera: tuple[int, ...]
    fmt: str = "markdown"
    check_reference: bool = False
    noncyclic_only: bool = False
    oracle_primes: tuple[int, ...] = DEFAULT_PRIMES
    q_budget: int = DEFAULT_Q_BUDGET
    jobs: int = 1


def parse_genus_range(text: str) -> tuple[int, ...]:
    try:
        if "-" in text:
            lo_s, hi_s = text.split("-", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise ConfigError(f"bad genus range {text!r}; expected A or A-B") from exc
    if lo < 1 or hi < lo:
        raise ConfigError(f"bad genus range {text!r}; need 1 <= A <= B")
    return tuple(range(lo, hi + 1))


def parse_primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError as exc:
        raise ConfigError(f"bad prime list {text!r}") from exc
    bad = [p for p in primes if p == 2 or not is_prime(p)]
    if not primes or bad:
        raise ConfigError(f"oracle primes must be odd primes, got {text!r}")
    return primes


def build_config(args: argparse.Namespace, default_genus: str) -> RunConfig:
    genera = parse_genus_range(args.genus or default_genus)
    primes = parse_primes(args.oracle_primes) if getattr(args, "oracle_primes", None) \
        else DEFAULT_PRIMES
    budget = getattr(args, "q_budget", DEFAULT_Q_BUDGET)
    if budget < 1:
        raise ConfigError("--q-budget must be positive")
    if args.jobs < 1:
        raise ConfigError("--jobs must be positive")
    return RunConfig(genera, args.format, getattr(args, "check_paper", False),
                     getattr(args, "noncyclic_only", False), primes, budget, args.jobs)


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _inertia_json(a: InertiaType) -> list:
    return [list(x) if not a.shape.is_cyclic else x[0] for x in a.a]


def _group(a_shape) -> list[int]:
    return [a_shape.n1, a_shape.n2]


def _table(fmt: str, header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _dump(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# enumerate ------------------------------------------------------------------

def cmd_enumerate(cfg: RunConfig, out) -> int:
    records = []
    for g in cfg.genera:
        for z in enumerate_ramification_types(g):
            if genus_of_ramification(z) != g:
                raise InconsistencyError(f"{z} does not have genus {g}")
            try:
                shape = group_shape(z)
            except UnsupportedGroupError as exc:
                records.append((g, z, None, [], str(exc)))
                continue
            if cfg.noncyclic_only and shape.is_cyclic:
                continue
            records.append((g, z, shape, enumerate_inertia_types(z), None))
    if cfg.fmt == "json":
        out.write(_dump({"genera": [
            {"genus": g, "types": [
                {"z": z.as_list(),
                 "group": _group(shape) if shape else None,
                 "inertia": [_inertia_json(a) for a in classes],
                 "realizable": bool(classes),
                 "note": note}
                for gg, z, shape, classes, note in records if gg == g]}
            for g in cfg.genera]}))
        return EXIT_OK
    rows = []
    for g, z, shape, classes, note in records:
        if note:
            listing = note
        elif classes:
            listing = "; ".join(str(a.compact()).replace(" ", "") for a in classes)
        else:
            listing = "no valid inertia type"
        rows.append((g, str(z), str(shape) if shape else "-", listing))
    out.write(_table(cfg.fmt, ("genus", "z", "group", "inertia types"), rows))
    return EXIT_OK


# analyze --------------------------------------------------------------------

def _golden(cfg: RunConfig) -> Golden | None:
    return load_golden() if cfg.check_reference else None


def _analyses(cfg: RunConfig) -> list[GenusAnalysis]:
    return [analyze_genus(g, cfg.jobs) for g in cfg.genera]


def _checks(an: GenusAnalysis, golden: Golden) -> dict:
    g = an.genus
    report: dict = {"rows": [], "density": None, "residue_list": None}
    if g not in golden.densities:
        return report
    sg_set(g, an.cover_results(), golden)
    report["rows"] = reference_row_checks(g, an, golden)
    ref = golden.densities[g]
    report["density"] = {"computed": _frac(an.density), "reference": _frac(ref),
                         "match": an.density == ref}
    listed = golden.listed_condition(g)
    if listed is not None:
        d = residue_list_diff(an.cover_results(), *listed)
        report["residue_list"] = {
            "modulus": d.modulus, "missing": list(d.missing), "extra": list(d.extra),
            "computed_density": _frac(d.computed_density),
            "printed_density": _frac(d.printed_density)}
    else:
        report["union_matches"] = an.union.same_primes(golden.genus_set(g))
    return report


def _failed(report: dict) -> bool:
    dens = report.get("density")
    return bool(report["rows"]) or (dens is not None and not dens["match"]) \
        or report.get("union_matches") is False


def _diagnostics(g: int, report: dict, err) -> None:
    for line in report["rows"]:
        err.write(f"genus {g}: row mismatch: {line}\n")
    dens = report.get("density")
    if dens and not dens["match"]:
        err.write(f"genus {g}: density {dens['computed']} differs from reference {dens['reference']}\n")
    if report.get("union_matches") is False:
        err.write(f"genus {g}: union differs from the stated conditions\n")
    rl = report.get("residue_list")
    if rl and (rl["missing"] or rl["extra"]):
        cd, pd = rl["computed_density"], rl["printed_density"]
        err.write(f"genus {g}: printed mod-{rl['modulus']} list differs from computed: "
                  f"missing {rl['missing']}, extra {rl['extra']}; "
                  f"density {cd['num']}/{cd['den']} computed vs {pd['num']}/{pd['den']} printed\n")


def cmd_analyze(cfg: RunConfig, out, err) -> int:
    golden = _golden(cfg)
    analyses = _analyses(cfg)
    status = EXIT_OK
    reports = {}
    if golden is not None:
        for an in analyses:
            reports[an.genus] = _checks(an, golden)
            _diagnostics(an.genus, reports[an.genus], err)
            if _failed(reports[an.genus]):
                status = EXIT_MATH
    if cfg.fmt == "json":
        payload = {"genera": []}
        for an in analyses:
            entry = {
                "genus": an.genus,
                "covers": [{
                    "z": c.z.as_list(),
                    "group": _group(c.inertia.shape),
                    "inertia": _inertia_json(c.inertia),
                    "supersingular": c.residues.reduced().to_json(),
                    "ledger": c.ledger.to_json() if c.ledger is not None else None,
                } for c in an.cover_results()],
                "no_inertia": [z.as_list() for z in an.no_inertia()],
                "union": an.union.to_json(),
                "density": _frac(an.density),
            }
            if an.genus in reports:
                entry["checks"] = reports[an.genus]
            payload["genera"].append(entry)
        out.write(_dump(payload))
        return status
    rows = []
    for an in analyses:
        for c in an.cover_results():
            if cfg.noncyclic_only and c.is_cyclic:
                continue
            a = c.inertia.compact()
            rows.append((an.genus, str(c.z), str(a).replace(" ", ""), c.residues.display()))
        for z in an.no_inertia():
            rows.append((an.genus, str(z), "-", "no valid inertia type"))
    out.write(_table(cfg.fmt, ("genus", "z", "a", "supersingular primes"), rows))
    if cfg.fmt == "markdown":
        out.write("\n")
    dens_rows = [(an.genus, f"{an.density.numerator}/{an.density.denominator}",
                  an.union.modulus) for an in analyses]
    out.write(_table(cfg.fmt, ("genus", "density", "modulus"), dens_rows))
    return status


# density --------------------------------------------------------------------

def cmd_density(cfg: RunConfig, out, err) -> int:
    golden = _golden(cfg)
    status = EXIT_OK
    rows = []
    for an in _analyses(cfg):
        ref = golden.densities.get(an.genus) if golden is not None else None
        if ref is not None and ref != an.density:
            err.write(f"genus {an.genus}: density {an.density} differs from reference {ref}\n")
            status = EXIT_MATH
        rows.append((an.genus, an.density, an.union.modulus, ref))
    if cfg.fmt == "json":
        out.write(_dump({"densities": [
            {"genus": g, "density": _frac(d), "modulus": M,
             "reference": _frac(ref) if ref is not None else None}
            for g, d, M, ref in rows]}))
        return status
    header = ["genus", "density", "modulus"] + (["reference"] if golden is not None else [])
    table = []
    for g, d, M, ref in rows:
        row = [g, f"{d.numerator}/{d.denominator}", M]
        if golden is not None:
            row.append("-" if ref is None else f"{ref.numerator}/{ref.denominator}")
        table.append(row)
    out.write(_table(cfg.fmt, header, table))
    return status


# verify ---------------------------------------------------------------------

def oracle_targets(genera: Sequence[int], max_genus: int = 3) -> list[InertiaType]:
    """Cyclic covers of genus at most ``max_genus`` met while analysing ``genera``:
    the cyclic covers themselves and the cyclic ledger pieces of the others."""
    found: dict[tuple, InertiaType] = {}
    for g in genera:
        for t in analyze_genus(g).types:
            for c in t.covers:
                pieces = [c.inertia] if c.is_cyclic else [pc.inertia for pc, _ in c.ledger.terms]
                for a in pieces:
                    if a.shape.is_cyclic and 1 <= a.genus <= max_genus:
                        found[(a.shape.n1, a.a)] = a
    return [found[k] for k in sorted(found)]


def _verify_rows(cfg: RunConfig, err) -> list[dict]:
    rows = []
    for a in oracle_targets(cfg.genera):
        m = a.shape.n1
        for p in cfg.oracle_primes:
            base = {"m": m, "a": list(a.compact()), "p": p}
            if m % p == 0:
                continue
            try:
                rep = oracle_report(a, p, cfg.q_budget)
            except BudgetExceeded as exc:
                err.write(f"skip ({m}, {a.compact()}) at p = {p}: {exc}\n")
                rows.append({**base, "status": "SKIP"})
                continue
            engine = newton_polygon(a, p)
            rows.append({**rep.to_json(), "engine": str(engine), "oracle": str(rep.np),
                         "status": "PASS" if engine == rep.np else "FAIL"})
    for name, f in ELLIPTIC_MODELS.items():
        cyc = InertiaType.cyclic(4, (1, 1, 2)) if name == "E1728" else InertiaType.cyclic(3, (1, 1, 1))
        for p in cfg.oracle_primes:
            if p == 3 and name == "E0":
                continue
            counts = [count_points_hyperelliptic(f, p)]
            coeffs = l_polynomial(counts, p, 1)
            np = np_from_lpoly(coeffs, p)
            engine = newton_polygon(cyc, p)
            rows.append({"model": name, "p": p, "counts": counts, "l_poly": coeffs,
                         "slopes": [[lam.numerator, lam.denominator, k] for lam, k in np.slopes],
                         "engine": str(engine), "oracle": str(np),
                         "supersingular": is_supersingular(np),
                         "status": "PASS" if engine == np else "FAIL"})
    return rows


def cmd_verify(cfg: RunConfig, out, err) -> int:
    try:
        rows = _verify_rows(cfg, err)
    except CorruptCountsError as exc:
        err.write(f"corrupt point counts: {exc}\n")
        return EXIT_MATH
    status = EXIT_MATH if any(r["status"] == "FAIL" for r in rows) else EXIT_OK
    if cfg.fmt == "json":
        out.write(_dump({"results": rows}))
        return status
    table = []
    for r in rows:
        label = r.get("model") or f"({r['m']}, {tuple(r['a'])})".replace(" ", "")
        table.append((label, r["p"], r.get("oracle", "-"), r.get("engine", "-"), r["status"]))
    out.write(_table(cfg.fmt, ("cover", "p", "oracle", "characters", "status"), table))
    return status


# entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triple-branch",
        description="Supersingular reductions of abelian covers of P^1 branched at 0, 1, inf.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, genus_help: str) -> None:
        p.add_argument("--genus", help=genus_help)
        p.add_argument("--format", choices=FORMATS, default="markdown")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("enumerate", help="list ramification and inertia types")
    common(p, "genus or range A-B (default 5-10)")
    p.add_argument("--noncyclic-only", action="store_true")

    p = sub.add_parser("analyze", help="supersingular primes per cover and per genus")
    common(p, "genus or range A-B (default 5-10)")
    p.add_argument("--noncyclic-only", action="store_true")
    p.add_argument("--check-paper", action="store_true",
                   help="compare with the shipped reference tables")

    p = sub.add_parser("density", help="natural density of the supersingular set per genus")
    common(p, "genus or range A-B (default 5-10)")
    p.add_argument("--check-paper", action="store_true",
                   help="compare with the shipped reference densities")

    p = sub.add_parser("verify", help="check polygons against point counts")
    common(p, "genus or range A-B whose covers are checked (default 1-3)")
    p.add_argument("--oracle-primes", help="comma separated odd primes (default 3,5,7,11,13)")
    p.add_argument("--q-budget", type=int, default=DEFAULT_Q_BUDGET,
                   help="largest field size p^g to count over")
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    commands: dict[str, tuple[str, Callable]] = {
        "enumerate": ("5-10", lambda c: cmd_enumerate(c, out)),
        "analyze": ("5-10", lambda c: cmd_analyze(c, out, err)),
        "density": ("5-10", lambda c: cmd_density(c, out, err)),
        "verify": ("1-3", lambda c: cmd_verify(c, out, err)),
    }
    default_genus, run = commands[args.command]
    try:
        cfg = build_config(args, default_genus)
        return run(cfg)
    except (ConfigError, FixtureError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except (InconsistencyError, IncompleteEnumerationError) as exc:
        err.write(f"inconsistency: {exc}\n")
        return EXIT_MATH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
