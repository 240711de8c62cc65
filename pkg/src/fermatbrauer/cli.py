"""Command-line driver: group specs and config in, JSON or Markdown reports out.

Every report is one record
{command, inputs, assumptions, results, checks: [{name, status, expected, actual}], timing_ms}
serialised with sorted keys.  timing_ms is null unless --timing is passed, so
identical inputs give byte-identical output.  The exit status is 0 when every
check passes, 1 when one fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .characters import (ExceptionalTable, character_sets, enumerate_s_flat, field_report, is_primitive,
                         picard_number, CharQuadruple)
from .cohomology import BudgetExceeded
from .cyclotomic import torsion_order, units_mod
from .formulas import (REGIMES, GaloisDatum, brauer_quotient_diagonal, coprime_shortcut, crosscheck,
                       pi_group, primitive_vanishing_applies)
from .groups import FAMILIES, GroupOrderExceeded, family_group, group_from_permutations
from .jacobi import (DeltaGenerators, find_split_primes, grossencharacter_congruence_test, h_value,
                     kummer_consistency_test)
from .lattices import lattice_checks

SEED_NOTE = "deterministic: no randomness is used; primitive roots and primes are the smallest admissible"
CONGRUENCE_MAX_DEGREE = 12


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    """A permutation group on the roots: explicit generators or a family tag."""

    degree: int
    generators: tuple[tuple[int, ...], ...] = ()
    name: str = ""
    family: str | None = None

    def build(self):
        if self.family is not None:
            return family_group(self.family, self.degree)
        return group_from_permutations(self.degree, [list(g) for g in self.generators], name=self.name)

    def to_dict(self) -> dict:
        if self.family is not None:
            return {"family": self.family, "degree": self.degree}
        return {"degree": self.degree, "generators": [list(g) for g in self.generators], "name": self.name}

    @classmethod
    def from_dict(cls, doc: dict, d: int | None = None) -> "GroupSpec":
        if "family" in doc:
            return cls.family_spec(doc["family"], int(doc.get("degree", d or 0)))
        try:
            degree = int(doc["degree"])
            gens = tuple(tuple(int(x) for x in g) for g in doc["generators"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"group spec needs 'degree' and 'generators': {exc}") from None
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise UsageError(f"{list(g)} is not a permutation of 0..{degree - 1}")
        return cls(degree, gens, str(doc.get("name", "")))

    @classmethod
    def family_spec(cls, tag: str, d: int) -> "GroupSpec":
        if tag not in FAMILIES:
            raise UsageError(f"unknown group family {tag!r}; known: {', '.join(sorted(FAMILIES))}")
        if d < 1:
            raise UsageError("family groups need a positive degree")
        return cls(d, family=tag)

    @classmethod
    def parse(cls, text: str, d: int) -> "GroupSpec":
        """'family:<tag>' or a path to a group-spec JSON file."""
        if text.startswith("family:"):
            return cls.family_spec(text.split(":", 1)[1], d)
        path = Path(text)
        if not path.exists():
            raise UsageError(f"group spec {text!r} is neither family:<tag> nor an existing file")
        return cls.from_dict(json.loads(path.read_text()), d)


@dataclass
class RunConfig:
    prime_bound: int = 1000
    group_order_budget: int = 20000
    delta_overrides: dict = field(default_factory=dict)
    exceptional_table_path: str | None = None
    output_format: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if self.prime_bound < 2 or self.group_order_budget < 1 or self.jobs < 1:
            raise UsageError("prime_bound, group_order_budget and jobs must be positive")
        if self.output_format not in ("json", "markdown"):
            raise UsageError("output_format must be json or markdown")

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        if not path:
            return cls()
        doc = json.loads(Path(path).read_text())
        known = set(cls.__dataclass_fields__)
        extra = set(doc) - known
        if extra:
            raise UsageError(f"unknown config keys: {sorted(extra)}")
        return cls(**doc)

    def delta_for(self, d: int) -> DeltaGenerators:
        over = self.delta_overrides.get(str(d))
        return DeltaGenerators.from_coefficients(d, over) if over else DeltaGenerators.default(d)

    def exceptional_table(self) -> ExceptionalTable | None:
        return ExceptionalTable.load(self.exceptional_table_path) if self.exceptional_table_path else None


# ---------------------------------------------------------------------------
# report record
# ---------------------------------------------------------------------------

@dataclass
class Report:
    command: str
    inputs: dict
    assumptions: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    timing_ms: float | None = None
    sub_timings: dict | None = None

    def check(self, name: str, expected: Any, actual: Any, ok: bool | None = None) -> bool:
        ok = (expected == actual) if ok is None else bool(ok)
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "expected": expected, "actual": actual})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs,
                "assumptions": {"toolkit_version": __version__, "seed": SEED_NOTE, **self.assumptions},
                "results": self.results, "checks": self.checks, "timing_ms": self.timing_ms}


def render_json(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, indent=2) + "\n"


def _md_value(v: Any) -> str:
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)


def render_markdown(rec: dict) -> str:
    out = [f"# {rec['command']}", "", "## Inputs", ""]
    out += [f"- {k}: {_md_value(v)}" for k, v in sorted(rec["inputs"].items())]
    out += ["", "## Assumptions", ""]
    out += [f"- {k}: {_md_value(v)}" for k, v in sorted(rec["assumptions"].items())]
    out += ["", "## Results", ""]
    out += [f"- {k}: {_md_value(v)}" for k, v in sorted(rec["results"].items())]
    out += ["", "## Checks", "", "| name | status | expected | actual |", "|---|---|---|---|"]
    out += [f"| {c['name']} | {c['status']} | {_md_value(c['expected'])} | {_md_value(c['actual'])} |"
            for c in rec["checks"]]
    out += ["", f"timing_ms: {rec['timing_ms']}", ""]
    return "\n".join(out)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _group_invariants(g) -> list[int]:
    return list(g.invariant_factors)


def cmd_pi(spec_f: GroupSpec, spec_g: GroupSpec, d: int) -> Report:
    rep = Report("pi", {"d": d, "group_f": spec_f.to_dict(), "group_g": spec_g.to_dict()})
    df, dg = GaloisDatum.from_group(spec_f.build()), GaloisDatum.from_group(spec_g.build())
    if df.degree != d or dg.degree != d:
        raise UsageError(f"both groups must act on {d} points")
    pi = pi_group(df, dg)
    prim = primitive_vanishing_applies(df, dg)
    rep.results = {
        "pi": str(pi.group), "pi_invariants": _group_invariants(pi.group),
        "hom_group": str(pi.hom_group),
        "quotient_f": str(pi.quotient_f), "quotient_g": str(pi.quotient_g),
        "primitive_f": df.is_primitive(), "primitive_g": dg.is_primitive(),
        "primitive_vanishing_applies": prim,
        "generators": [c.to_list() for c in pi.generators],
    }
    rep.assumptions = {"k_characteristic_coprime_to_d": True, "contains_mu_d": False}
    if prim:
        rep.check("primitive_vanishing", "0", str(pi.group))
    short = coprime_shortcut(df, dg)
    if short is not None:
        rep.check("coprime_shortcut", str(short), str(pi.group))
    rep.check("pi_subgroup_of_hom", True, pi.group.is_subgroup_type_of(pi.hom_group))
    return rep


def cmd_crosscheck(spec_f: GroupSpec | None, spec_g: GroupSpec | None, d: int, mode: str,
                   units: tuple[int, ...], case: str | None, budget: int) -> Report:
    inputs: dict = {"d": d, "mode": mode}
    if mode in ("product", "tensor"):
        if spec_f is None or spec_g is None:
            raise UsageError(f"mode {mode} needs --group-f and --group-g")
        inputs.update(group_f=spec_f.to_dict(), group_g=spec_g.to_dict())
        gf, gg = spec_f.build(), spec_g.build()
        if gf.order * gg.order > budget:
            raise BudgetExceeded(f"|G| = {gf.order * gg.order} exceeds the order budget {budget}")
        v = crosscheck(GaloisDatum.from_group(gf), GaloisDatum.from_group(gg), mode=mode)
    elif mode == "diagonal":
        inputs["units"] = list(units)
        v = crosscheck(mode="diagonal", d=d, units=units)
    elif mode == "special":
        inputs["case"] = case
        v = crosscheck(mode="special", d=d, case=case)
    else:
        raise UsageError(f"unknown mode {mode!r}")
    rep = Report("crosscheck", inputs)
    rep.results = v.to_dict()
    rep.results["oracle_timing_ms"] = None
    rep.sub_timings = v.timing_ms
    rep.check("oracle_equals_formula", str(v.formula), str(v.oracle))
    return rep


def cmd_diagonal(d: int, units: tuple[int, ...], regime: str, r: int | None, star_star: bool) -> Report:
    bad = [u for u in units if gcd(u, d) != 1]
    if bad:
        raise UsageError(f"{bad} are not units mod {d}")
    rep = Report("diagonal", {"d": d, "units": list(units), "regime": regime, "r": r})
    br = brauer_quotient_diagonal(d, units, regime, r, star_star=star_star)
    rep.results = br.to_dict()
    rep.assumptions = dict(br.assumptions)
    rep.check("br1_quotient_in_h1", True, br.br1_quotient.is_subgroup_type_of(br.h1_pic))
    return rep


def cmd_fermat(d: int, sub: str, cfg: RunConfig) -> Report:
    rep = Report(f"fermat {sub}", {"d": d})
    if sub == "chars":
        sets = character_sets(d)
        rep.results = {"counts": sets.counts(),
                       "s_ind_minus_s_reg": [list(c.a) for c in sorted(set(sets.s_ind) - set(sets.s_reg))]}
        flat = set(sets.s_flat)
        stable = all(c.scaled(t) in flat for c in sets.s_flat for t in units_mod(d))
        rep.check("unit_stability", True, stable)
        rep.check("s_reg_subset_s_ind", True, set(sets.s_reg) <= set(sets.s_ind))
    elif sub == "picard":
        rep.results = {"picard_number": picard_number(d)}
        h11 = (2 * d ** 3 - 6 * d ** 2 + 7 * d) // 3 if d > 1 else 0
        rep.check("picard_at_most_h11", True, picard_number(d) <= max(h11, 1))
    elif sub == "field":
        table = cfg.exceptional_table()
        rep.inputs["exceptional_table"] = None if table is None else {"degrees": list(table.degrees), "provenance": table.provenance}
        fr = field_report(d, table)
        rep.results = fr.to_dict()
        rep.assumptions = {"units_generated_by_cyclotomic_units": "exact when h+(d) = 1"}
    elif sub == "lattice-check":
        if d > 6:
            raise BudgetExceeded("lattice-check is limited to d <= 6")
        res = lattice_checks(d)
        rep.results = res
        rep.check("aC", True, res["aC"])
        rep.check("bC", True, res["bC"])
        rep.check("omega_pairing", f"-{d ** 3}", res["omega_values"][0] if len(res["omega_values"]) == 1 else res["omega_values"],
                  ok=res["omega_all_minus_d_cubed"])
        rep.check("p_rank", res["expected_p_rank"], res["p_rank"])
    else:
        raise UsageError(f"unknown fermat subcommand {sub!r}")
    return rep


def _h_row(args) -> list[tuple]:
    chis, prime = args
    out = []
    for chi in chis:
        hv = h_value(chi, prime)
        out.append((chi.a, prime.p, hv.divisible, None if hv.h_root is None else hv.h_root.exponent))
    return out


def splits_completely_in_l(d: int, p: int) -> bool | None:
    """Whether p splits completely in the field of definition, for the closed-form cases (None otherwise)."""
    fr = field_report(d)
    if fr.case not in ("i", "ii"):
        return None
    if (p - 1) % (2 * d):
        return False
    if fr.case == "ii":
        if d % 2 == 0 and pow(2, (p - 1) // gcd(d // 2, p - 1), p) != 1:
            return False
        if d % 3 == 0 and pow(3, (p - 1) // gcd(d // 3, p - 1), p) != 1:
            return False
    return True


def cmd_jacobi(d: int, chis: list[CharQuadruple] | None, cfg: RunConfig) -> Report:
    all_flat = enumerate_s_flat(d)
    chis = chis or all_flat
    primes = find_split_primes(d, cfg.prime_bound)
    rep = Report("jacobi", {"d": d, "chi": [list(c.a) for c in chis], "prime_bound": cfg.prime_bound})
    gens = cfg.delta_for(d)
    rep.assumptions = {"chart": "x1 + x2 + x3 = -1, zero coordinates excluded",
                       "delta_generators": list(gens.labels),
                       "delta_units_complete_when": "real cyclotomic class number h+(d) = 1"}
    tasks = [(tuple(chis), pr) for pr in primes]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            rows = [r for block in ex.map(_h_row, tasks) for r in block]
    else:
        rows = [r for t in tasks for r in _h_row(t)]
    flat = set(all_flat)
    table = [{"chi": list(a), "p": p, "divisible": div,
              "h_exponent": e if e is not None else "not a root of unity"} for a, p, div, e in rows]
    rep.results["w"] = torsion_order(d)
    rep.results["primes"] = [pr.p for pr in primes]
    rep.results["h_table"] = table
    in_flat = [r for r in rows if CharQuadruple(d, r[0]) in flat]
    rep.check("purity_divisible", True, all(r[2] for r in in_flat))
    rep.check("h_root_of_unity", True, all(r[3] is not None for r in in_flat))

    by_prime: dict[int, bool] = {}
    for a, p, _, e in rows:
        by_prime[p] = by_prime.get(p, True) and e == 0
    law = {p: splits_completely_in_l(d, p) for p in by_prime}
    if set(chis) == flat and all(v is not None for v in law.values()):
        mism = [p for p in by_prime if by_prime[p] != law[p]]
        rep.results["all_h_one_primes"] = [p for p in sorted(by_prime) if by_prime[p]]
        rep.check("splitting_law", [], mism)

    hmap = {(CharQuadruple(d, a), p): _HStub(e) for a, p, _, e in rows}
    prim = [c for c in chis if is_primitive(c)]
    kv = [kummer_consistency_test(d, c, primes, gens, h_values=hmap) for c in prim if c in flat]
    rep.results["outside_s_flat"] = [list(c.a) for c in chis if c not in flat]
    rep.results["kummer"] = [v.to_dict() for v in kv]
    rep.check("kummer_consistency", 0, sum(len(v.counterexamples) for v in kv))
    if d <= CONGRUENCE_MAX_DEGREE and prim:
        cv = grossencharacter_congruence_test(d, prim[0], primes, h_values=hmap)
        rep.results["congruence"] = cv.to_dict()
        rep.check("grossencharacter_congruence", 0, len(cv.violations))
    return rep


@dataclass(frozen=True)
class _HStub:
    """Just enough of HValue for the verdict functions."""

    exponent: int | None

    @property
    def h_root(self):
        return None if self.exponent is None else self

    def is_one(self) -> bool:
        return self.exponent == 0


def cmd_selftest() -> Report:
    from .linalg import IntMatrix, is_smith_form, is_unimodular, smith_normal_form

    rep = Report("selftest", {})
    rng = np.random.default_rng(0)
    ok = True
    for _ in range(50):
        m, n = rng.integers(1, 7, size=2)
        a = IntMatrix.from_rows(rng.integers(-20, 21, size=(m, n)).tolist())
        f = smith_normal_form(a)
        ok &= is_unimodular(f.U) and is_unimodular(f.V) and is_smith_form(f.D) and (f.U @ a @ f.V) == f.D
    rep.check("snf_random_50", True, bool(ok))
    cases = [("cyclic", "cyclic", 3, "Z/3"), ("cyclic", "cyclic", 4, "Z/2"), ("symmetric", "cyclic", 3, "0")]
    for tf, tg, d, want in cases:
        v = crosscheck(GaloisDatum.from_group(family_group(tf, d)), GaloisDatum.from_group(family_group(tg, d)))
        rep.check(f"crosscheck_{tf}_{tg}_{d}", [want, want], [str(v.oracle), str(v.formula)])
    rep.check("picard_3", 7, picard_number(3))
    rep.check("picard_4", 20, picard_number(4))
    sub = cmd_jacobi(3, None, RunConfig(prime_bound=100))
    rep.check("jacobi_3_all_one", True, sub.passed and all(r["h_exponent"] == 0 for r in sub.results["h_table"]))
    return rep


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _units(text: str | None, d: int) -> tuple[int, ...]:
    if not text or text == "1":
        return (1,)
    if text == "all":
        return tuple(units_mod(d))
    try:
        return tuple(int(x) % d for x in text.split(","))
    except ValueError:
        raise UsageError(f"--units must be 'all' or a comma list of integers, got {text!r}") from None


def _chis(text: str | None, d: int) -> list[CharQuadruple] | None:
    if not text:
        return None
    out = []
    for part in text.split(";"):
        vals = tuple(int(x) for x in part.split(","))
        try:
            out.append(CharQuadruple(d, vals))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="degree of the binary forms")
    common.add_argument("--format", choices=["json", "markdown"], default=None)
    common.add_argument("--config", help="RunConfig JSON file")
    common.add_argument("--jobs", type=int, default=None)
    common.add_argument("--timing", action="store_true", help="record wall-clock timing (breaks byte-identity)")

    p = argparse.ArgumentParser(prog="fermatbrauer", description="Brauer groups of F(x0,x1) = G(x2,x3) and Fermat surfaces")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name in ("pi", "crosscheck"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--group-f", help="family:<tag> or group-spec JSON path")
        s.add_argument("--group-g", help="family:<tag> or group-spec JSON path")
        if name == "crosscheck":
            s.add_argument("--mode", choices=["product", "tensor", "diagonal", "special"], default="product")
            s.add_argument("--units", help="'all' or comma list (diagonal mode)")
            s.add_argument("--case", choices=["same_cyclic_field", "cyclic_times_split"])

    s = sub.add_parser("diagonal", parents=[common])
    s.add_argument("--units", help="'all' or comma list generating H")
    s.add_argument("--regime", choices=list(REGIMES), default="number_field")
    s.add_argument("--r", type=int)
    s.add_argument("--star-star", action="store_true", help="caller asserts condition (**)")

    s = sub.add_parser("fermat", parents=[common])
    s.add_argument("what", choices=["chars", "picard", "field", "lattice-check"])
    s.add_argument("degree", type=int, nargs="?")

    s = sub.add_parser("jacobi", parents=[common])
    s.add_argument("degree", type=int, nargs="?")
    s.add_argument("--chi", help="quadruples 'a0,a1,a2,a3;...' (default: all of S_flat)")
    s.add_argument("--prime-bound", type=int)

    sub.add_parser("selftest", parents=[common])
    return p


def _degree(args) -> int:
    d = getattr(args, "degree", None) or args.d
    if d is None or d < 1:
        raise UsageError("a positive degree is required (--d or positional)")
    return d


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig.load(args.config)
    if args.format:
        cfg.output_format = args.format
    if args.jobs:
        cfg.jobs = args.jobs
    if getattr(args, "prime_bound", None):
        cfg.prime_bound = args.prime_bound
    RunConfig.__post_init__(cfg)

    t0 = time.perf_counter()
    cmd = args.command
    if cmd == "pi":
        d = _degree(args)
        if not args.group_f or not args.group_g:
            raise UsageError("pi needs --group-f and --group-g")
        rep = cmd_pi(GroupSpec.parse(args.group_f, d), GroupSpec.parse(args.group_g, d), d)
    elif cmd == "crosscheck":
        d = _degree(args)
        sf = GroupSpec.parse(args.group_f, d) if args.group_f else None
        sg = GroupSpec.parse(args.group_g, d) if args.group_g else None
        rep = cmd_crosscheck(sf, sg, d, args.mode, _units(args.units, d), args.case, cfg.group_order_budget)
    elif cmd == "diagonal":
        d = _degree(args)
        rep = cmd_diagonal(d, _units(args.units, d), args.regime, args.r, args.star_star)
    elif cmd == "fermat":
        rep = cmd_fermat(_degree(args), args.what, cfg)
    elif cmd == "jacobi":
        d = _degree(args)
        rep = cmd_jacobi(d, _chis(args.chi, d), cfg)
    else:
        rep = cmd_selftest()
    if args.timing:
        rep.timing_ms = round((time.perf_counter() - t0) * 1000, 3)
        if rep.sub_timings is not None:
            rep.results["oracle_timing_ms"] = rep.sub_timings
    rec = rep.to_dict()
    text = render_json(rec) if cfg.output_format == "json" else render_markdown(rec)
    return (0 if rep.passed else 1), text


def main(argv: list[str] | None = None) -> int:
    try:
        code, text = run(argv)
    except (UsageError, GroupOrderExceeded, BudgetExceeded, ValueError) as exc:
        kind = "budget_exceeded" if isinstance(exc, (GroupOrderExceeded, BudgetExceeded)) else "usage_error"
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True) + "\n")
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
