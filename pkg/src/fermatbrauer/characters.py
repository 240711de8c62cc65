"""Character quadruples of the Fermat surface and the field-of-definition report.

A quadruple (a0, a1, a2, a3) with entries in [1, d-1] indexes a character of
G = (Z/d)^3 on the cohomology of x0^d + x1^d + x2^d + x3^d = 0.  S_flat is
the set of quadruples whose eigenline is algebraic; its size plus one is
the Picard number.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd
from pathlib import Path

import numpy as np

from .cyclotomic import torsion_order, units_mod


@dataclass(frozen=True, order=True)
class CharQuadruple:
    d: int
    a: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.a) != 4 or any(not 1 <= x <= self.d - 1 for x in self.a):
            raise ValueError(f"entries must lie in [1, {self.d - 1}]")

    def scaled(self, t: int) -> "CharQuadruple":
        return CharQuadruple(self.d, tuple((t * x) % self.d for x in self.a))

    def permuted(self, perm) -> "CharQuadruple":
        return CharQuadruple(self.d, tuple(self.a[i] for i in perm))

    @property
    def content(self) -> int:
        return gcd(gcd(self.a[0], self.a[1]), gcd(self.a[2], self.a[3]))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.a)) + ")"


# ---------------------------------------------------------------------------
# membership predicates
# ---------------------------------------------------------------------------

def in_s_flat(d: int, a) -> bool:
    if len(a) != 4 or any(not 1 <= x <= d - 1 for x in a):
        return False
    return all(sum((t * x) % d for x in a) == 2 * d for t in units_mod(d))


def is_primitive(chi: CharQuadruple) -> bool:
    return chi.content == 1


def in_s_ind(d: int, a) -> bool:
    return in_s_flat(d, a) and all(a[i] + a[j] != d for i in range(4) for j in range(i + 1, 4))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _s_flat_array(d: int) -> np.ndarray:
    if d < 2:
        return np.zeros((0, 4), dtype=np.int64)
    r = np.arange(1, d, dtype=np.int64)
    a1, a2, a3 = (x.ravel() for x in np.meshgrid(r, r, r, indexing="ij"))
    a0 = (-(a1 + a2 + a3)) % d
    keep = a0 != 0
    quads = np.stack([a0[keep], a1[keep], a2[keep], a3[keep]], axis=1)
    ok = np.ones(len(quads), dtype=bool)
    for t in units_mod(d):
        ok &= ((t * quads) % d).sum(axis=1) == 2 * d
        quads, ok = quads[ok], np.ones(int(ok.sum()), dtype=bool)
    order = np.lexsort(quads.T[::-1])
    return quads[order]


def enumerate_s_flat(d: int) -> list[CharQuadruple]:
    """All of S_flat, sorted lexicographically.

    For each (a1, a2, a3) the entry a0 is forced to be -(a1 + a2 + a3) mod d
    (skipped when that is 0), then every unit t is tested.
    """
    return [CharQuadruple(d, tuple(int(x) for x in row)) for row in _s_flat_array(d)]


def picard_number(d: int) -> int:
    return 1 + len(_s_flat_array(d))


def reduce_to_primitive(chi: CharQuadruple) -> tuple[int, CharQuadruple]:
    """(d', chi') with chi' = chi / gcd(a_i) at level d' = d / gcd(a_i)."""
    m = chi.content
    dd = chi.d // m
    out = CharQuadruple(dd, tuple(x // m for x in chi.a))
    if not in_s_flat(dd, out.a):
        raise ArithmeticError(f"{out} is not in S_flat at level {dd}")
    return dd, out


def s_primitive(d: int) -> list[CharQuadruple]:
    return [c for c in enumerate_s_flat(d) if is_primitive(c)]


def s_ind(d: int) -> list[CharQuadruple]:
    return [c for c in enumerate_s_flat(d) if all(c.a[i] + c.a[j] != d for i in range(4) for j in range(i + 1, 4))]


def s_reg_families(d: int) -> list[tuple[int, int, int, int]]:
    """Raw representatives of the three families, entries reduced into [1, d-1], zeros dropped."""
    reps = []

    def excluded(i: int, fracs) -> bool:
        return any(d % q == 0 and i == d // q for q in fracs)

    for i in range(1, d):
        cands = []
        if d % 2 == 0:
            h = d // 2
            if not excluded(i, (4,)):
                cands.append((i, h + i, d - 2 * i, h))
            if not excluded(i, (3, 4, 6)):
                cands.append((i, h + i, h + 2 * i, d - 4 * i))
        if d % 3 == 0:
            t = d // 3
            if not excluded(i, (6,)):
                cands.append((i, t + i, 2 * t + i, d - 3 * i))
        for c in cands:
            red = tuple(x % d for x in c)
            if all(red):
                reps.append(red)
    return reps


def s_reg(d: int) -> list[CharQuadruple]:
    """Permutation closure of the family representatives, intersected with S_ind."""
    ind = set(s_ind(d))
    out = set()
    for rep in s_reg_families(d):
        for perm in permutations(range(4)):
            q = CharQuadruple(d, tuple(rep[i] for i in perm))
            if q in ind:
                out.add(q)
    return sorted(out)


@dataclass(frozen=True)
class CharacterSets:
    d: int
    s_flat: tuple[CharQuadruple, ...]
    s_primitive: tuple[CharQuadruple, ...]
    s_ind: tuple[CharQuadruple, ...]
    s_reg: tuple[CharQuadruple, ...]

    def counts(self) -> dict:
        return {"s_flat": len(self.s_flat), "s_primitive": len(self.s_primitive),
                "s_ind": len(self.s_ind), "s_reg": len(self.s_reg),
                "s_ind_minus_s_reg": len(set(self.s_ind) - set(self.s_reg)),
                "picard_number": 1 + len(self.s_flat)}


def character_sets(d: int) -> CharacterSets:
    flat = tuple(enumerate_s_flat(d))
    return CharacterSets(d, flat, tuple(c for c in flat if is_primitive(c)), tuple(s_ind(d)), tuple(s_reg(d)))


# ---------------------------------------------------------------------------
# field of definition
# ---------------------------------------------------------------------------

EXCEPTIONAL_RANGE = (12, 180)


@dataclass(frozen=True)
class ExceptionalTable:
    """Degrees in [12, 180] needing separately computed fields, with where they came from."""

    degrees: tuple[int, ...]
    provenance: str

    @classmethod
    def load(cls, path: str | Path) -> "ExceptionalTable":
        doc = json.loads(Path(path).read_text())
        if isinstance(doc, list):
            raise ValueError("exceptional table needs a provenance note: use {\"degrees\": [...], \"provenance\": \"...\"}")
        degrees = doc.get("degrees")
        prov = doc.get("provenance")
        if not isinstance(degrees, list) or not all(isinstance(x, int) for x in degrees) or not prov:
            raise ValueError("exceptional table must have an integer list 'degrees' and a 'provenance' note")
        return cls(tuple(sorted(set(degrees))), str(prov))


@dataclass(frozen=True)
class FieldReport:
    d: int
    case: str
    field: str | None
    kummer_generators: tuple[str, ...]
    exceptional_divisors: tuple[int, ...]
    bound_field: str
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"d": self.d, "case": self.case, "field": self.field,
                "kummer_generators": list(self.kummer_generators),
                "exceptional_divisors": list(self.exceptional_divisors),
                "bound_field": self.bound_field, "notes": list(self.notes)}


def _root_text(base: int, exp: Fraction) -> str:
    if exp.denominator == 1:
        return str(base ** exp.numerator)
    if exp.numerator == 1:
        return f"{base}^(1/{exp.denominator})"
    return f"{base}^({exp.numerator}/{exp.denominator})"


def kummer_radicals(d: int) -> list[str]:
    out = []
    if d % 2 == 0:
        out.append(_root_text(2, Fraction(2, d)))
    if d % 3 == 0:
        out.append(_root_text(3, Fraction(3, d)))
    return out


def bound_field_text(d: int) -> str:
    primes = [p for p in range(2, d + 1) if d % p == 0 and all(p % q for q in range(2, p))]
    w = torsion_order(d)
    gens = ", ".join(f"1 - zeta^{d // p}" for p in primes)
    return f"E(Delta^(1/{w})), E = Q(mu_{d}), Delta generated by the units of E and {gens}"


def field_report(d: int, table: ExceptionalTable | None = None) -> FieldReport:
    """Which closed form for the field of definition L applies at degree d."""
    if d < 1:
        raise ValueError("d must be positive")
    cyc = f"Q(mu_{2 * d})"
    bound = bound_field_text(d) if d > 1 else "Q"
    if d <= 4 or gcd(6, d) == 1:
        return FieldReport(d, "i", cyc, (), (), bound, ("lines generate the Picard group rationally",))
    radicals = tuple(kummer_radicals(d))
    closed = f"Q(mu_{2 * d}, {', '.join(radicals)})"
    lo, hi = EXCEPTIONAL_RANGE
    in_range = tuple(e for e in range(lo, min(hi, d) + 1) if d % e == 0)
    if not in_range:
        return FieldReport(d, "ii", closed, radicals, (), bound, ("no divisor of d lies in [12, 180]",))
    if table is None:
        return FieldReport(d, "table_needed", None, radicals, in_range, bound,
                           ("no exceptional-degree table supplied; every divisor in [12, 180] is flagged",
                            "L is contained in the bound field"))
    flagged = tuple(e for e in in_range if e in table.degrees)
    if not flagged:
        return FieldReport(d, "ii", closed, radicals, (), bound,
                           (f"no divisor of d is in the supplied table ({table.provenance})",))
    return FieldReport(d, "exceptional", None, radicals, flagged, bound,
                       (f"L is the compositum of {closed} with M_e for e in {list(flagged)}",
                        f"table provenance: {table.provenance}"))
