"""Jacobi sums over prime fields and the Frobenius eigenvalues h_chi.

Only primes p = 1 mod w are used, so the d-th and w-th power residue
symbols take values in F_p itself.  A split prime comes with the smallest
primitive root g, and r = g^((p-1)/d) fixes the prime of Q(zeta_d) above p
through zeta -> r.

Normalisation: psi(x) = zeta^(log_g(x) mod d).  The Jacobi sum is taken over
the affine chart x1 + x2 + x3 = -1 with all x_i nonzero (the sum over
x1 + x2 + x3 = 0 vanishes identically by homogeneity once a1 + a2 + a3 is
nonzero mod d), and h = psi(-1)^a0 J / p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from .characters import CharQuadruple, enumerate_s_flat, is_primitive
from .cyclotomic import (CycInt, NotDivisible, RootOfUnity, as_root_of_unity, divide_exact, euler_phi,
                         torsion_order, units_mod, xi)

CHART_TARGET = -1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % q for q in range(3, isqrt(n) + 1, 2))


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    fac = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    return 1


@lru_cache(maxsize=64)
def discrete_log_table(p: int, g: int) -> np.ndarray:
    """log[x] for x in 1..p-1 (index 0 unused, set to -1)."""
    log = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        log[x] = k
        x = x * g % p
    return log


@dataclass(frozen=True)
class SplitPrimeDatum:
    d: int
    w: int
    p: int
    g: int
    r: int
    r_w: int

    @property
    def log(self) -> np.ndarray:
        return discrete_log_table(self.p, self.g)

    def psi_exponent(self, x: int) -> int:
        """j with psi(x) = zeta^j."""
        return int(self.log[x % self.p]) % self.d


def split_prime(d: int, p: int, g: int | None = None) -> SplitPrimeDatum:
    w = torsion_order(d)
    if not _is_prime(p) or (p - 1) % w or d % p == 0:
        raise ValueError(f"{p} is not a prime = 1 mod {w}")
    g = g or primitive_root(p)
    return SplitPrimeDatum(d, w, p, g, pow(g, (p - 1) // d, p), pow(g, (p - 1) // w, p))


def find_split_primes(d: int, bound: int) -> list[SplitPrimeDatum]:
    """All primes p <= bound with p = 1 mod w."""
    w = torsion_order(d)
    return [split_prime(d, p) for p in range(w + 1, bound + 1, w) if _is_prime(p) and d % p]


def residue_symbol(x: int, prime: SplitPrimeDatum, modulus: int | None = None) -> int:
    """j with x^((p-1)/m) = r_m^j, where r_m = g^((p-1)/m) and m is d (default) or w."""
    m = modulus or prime.d
    if m not in (prime.d, prime.w):
        raise ValueError("modulus must be d or w")
    x %= prime.p
    if x == 0:
        raise ValueError("residue symbol of 0")
    return int(prime.log[x]) % m


# ---------------------------------------------------------------------------
# Jacobi sums
# ---------------------------------------------------------------------------

def jacobi_sum_reference(chi: CharQuadruple, prime: SplitPrimeDatum, target: int = CHART_TARGET) -> CycInt:
    """Literal sum over nonzero x1, x2, x3 with x1 + x2 + x3 = target (O(p^2))."""
    d, p = chi.d, prime.p
    _, a1, a2, a3 = chi.a
    log = prime.log % d
    counts = np.zeros(d, dtype=np.int64)
    xs = np.arange(1, p)
    for x1 in range(1, p):
        x3 = (target - x1 - xs) % p
        ok = x3 != 0
        e = (a1 * log[x1] + a2 * log[xs[ok]] + a3 * log[x3[ok]]) % d
        counts += np.bincount(e, minlength=d)
    return CycInt.from_power_counts(d, counts.tolist())


@lru_cache(maxsize=128)
def _pair_histogram(p: int, g: int, d: int) -> np.ndarray:
    """H[i, j] = #{y != 0, 1 : log y = i, log(1 - y) = j mod d}."""
    log = discrete_log_table(p, g) % d
    y = np.arange(2, p)
    hist = np.zeros((d, d), dtype=np.int64)
    np.add.at(hist, (log[y], log[(1 - y) % p]), 1)
    return hist


def _k_counts(hist: np.ndarray, a: int, b: int, d: int) -> np.ndarray:
    """Exponent counts of K(a, b) = sum_{y != 0,1} psi^a(y) psi^b(1 - y)."""
    i = np.arange(d)
    idx = (a * i[:, None] + b * i[None, :]) % d
    return np.bincount(idx.ravel(), weights=hist.ravel(), minlength=d).astype(np.int64)


def _cyclic_convolve(x: np.ndarray, y: np.ndarray, d: int) -> np.ndarray:
    out = np.zeros(d, dtype=object)
    for i in np.flatnonzero(x):
        out += np.roll(y.astype(object), i) * int(x[i])
    return out


def jacobi_sum(chi: CharQuadruple, prime: SplitPrimeDatum, target: int = CHART_TARGET) -> CycInt:
    """Two-variable evaluation of ``jacobi_sum_reference``.

    Summing first over x1 + x2 = u gives
    J = psi(t)^(a1+a2+a3) K(a1, a2) K(a1+a2, a3) + [a1+a2 = 0] psi(-1)^a2 psi(t)^a3 (p - 1)
    with K(a, b) = sum_{y != 0,1} psi^a(y) psi^b(1 - y).
    """
    d, p = chi.d, prime.p
    _, a1, a2, a3 = chi.a
    hist = _pair_histogram(p, prime.g, d)
    k1 = _k_counts(hist, a1, a2, d)
    k2 = _k_counts(hist, (a1 + a2) % d, a3, d)
    counts = _cyclic_convolve(k1, k2, d)
    lt = prime.psi_exponent(target)
    counts = np.roll(counts, (lt * (a1 + a2 + a3)) % d)
    if (a1 + a2) % d == 0:
        shift = (prime.psi_exponent(-1) * a2 + lt * a3) % d
        counts[shift] += p - 1
    return CycInt.from_power_counts(d, [int(c) for c in counts])


def psi_minus_one(prime: SplitPrimeDatum) -> int:
    """psi(-1) as +1 or -1."""
    return 1 if prime.psi_exponent(-1) == 0 else -1


@dataclass(frozen=True)
class HValue:
    chi: CharQuadruple
    prime: SplitPrimeDatum
    j: CycInt
    twisted: CycInt
    h: CycInt | None
    h_root: RootOfUnity | None

    @property
    def divisible(self) -> bool:
        return self.h is not None

    @property
    def is_one(self) -> bool:
        return self.h_root is not None and self.h_root.is_one()

    def to_dict(self) -> dict:
        return {"chi": list(self.chi.a), "p": self.prime.p, "divisible": self.divisible,
                "h_exponent": None if self.h_root is None else self.h_root.exponent,
                "w": self.prime.w, "h": None if self.h is None else str(self.h)}


def h_value(chi: CharQuadruple, prime: SplitPrimeDatum, *, reference: bool = False) -> HValue:
    """psi(-1)^a0 J / p, recording divisibility and root-of-unity extraction."""
    j = (jacobi_sum_reference if reference else jacobi_sum)(chi, prime)
    sign = psi_minus_one(prime) ** chi.a[0]
    twisted = j * sign
    try:
        h = divide_exact(twisted, prime.p)
    except NotDivisible:
        return HValue(chi, prime, j, twisted, None, None)
    return HValue(chi, prime, j, twisted, h, as_root_of_unity(h))


# ---------------------------------------------------------------------------
# Kummer consistency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaGenerators:
    d: int
    elements: tuple[CycInt, ...]
    labels: tuple[str, ...]

    @classmethod
    def default(cls, d: int) -> "DeltaGenerators":
        """The torsion unit, (1 - zeta^a)/(1 - zeta) for units a != 1, and 1 - zeta^(d/p) for p | d."""
        elems = [xi(d)]
        labels = [f"xi (order {torsion_order(d)})"]
        for a in units_mod(d):
            if a == 1:
                continue
            elems.append(CycInt.from_power_counts(d, [1] * a + [0] * (d - a)))
            labels.append(f"(1 - zeta^{a})/(1 - zeta)")
        for q in _prime_factors(d):
            elems.append(CycInt.one(d) - CycInt.zeta(d, d // q))
            labels.append(f"1 - zeta^{d // q}")
        return cls(d, tuple(elems), tuple(labels))

    @classmethod
    def from_coefficients(cls, d: int, coeff_lists: Iterable[Sequence[int]]) -> "DeltaGenerators":
        """Override list: each entry is power-basis coefficients (any length, reduced mod Phi_d)."""
        elems = tuple(CycInt.from_poly(d, c) for c in coeff_lists)
        return cls(d, elems, tuple(str(e) for e in elems))


def delta_signature(prime: SplitPrimeDatum, gens: DeltaGenerators) -> tuple[int, ...] | None:
    """w-th power residue exponents of the generators at the prime zeta -> r, or None if one vanishes."""
    sig = []
    for e in gens.elements:
        v = e.evaluate_mod(prime.p, prime.r)
        if v == 0:
            return None
        sig.append(residue_symbol(v, prime, prime.w))
    return tuple(sig)


@dataclass
class KummerVerdict:
    d: int
    chi: CharQuadruple
    primes_tested: int = 0
    skipped: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    classes: int = 0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {"chi": list(self.chi.a), "primes_tested": self.primes_tested, "skipped": self.skipped,
                "signature_classes": self.classes, "counterexamples": self.counterexamples,
                "passed": self.passed}


def kummer_consistency_test(d: int, chi: CharQuadruple, primes: Sequence[SplitPrimeDatum],
                            gens: DeltaGenerators | None = None, *, h_values: dict | None = None) -> KummerVerdict:
    """Equal Delta signatures must give equal h, and the trivial signature must give h = 1."""
    gens = gens or DeltaGenerators.default(d)
    verdict = KummerVerdict(d, chi)
    seen: dict[tuple, tuple[int, int | None]] = {}
    for prime in primes:
        sig = delta_signature(prime, gens)
        if sig is None:
            verdict.skipped.append(prime.p)
            continue
        hv = h_values[(chi, prime.p)] if h_values is not None else h_value(chi, prime)
        h = None if hv.h_root is None else hv.h_root.exponent
        verdict.primes_tested += 1
        if h is None:
            verdict.counterexamples.append({"p": prime.p, "reason": "h is not a root of unity"})
            continue
        if not any(sig) and h != 0:
            verdict.counterexamples.append({"p": prime.p, "reason": "trivial signature but h != 1", "h": h})
        if sig in seen and seen[sig][1] != h:
            verdict.counterexamples.append({"p": prime.p, "q": seen[sig][0], "reason": "same signature, different h",
                                            "signature": list(sig)})
        seen.setdefault(sig, (prime.p, h))
    verdict.classes = len(seen)
    return verdict


# ---------------------------------------------------------------------------
# congruences of prime generators
# ---------------------------------------------------------------------------

def _embeddings(d: int) -> np.ndarray:
    """Complex embeddings zeta -> exp(2 pi i t / d), one per unit t (rows), powers as columns."""
    n = euler_phi(d)
    ts = np.array(units_mod(d))
    return np.exp(2j * np.pi * np.outer(ts, np.arange(n)) / d)


def find_prime_generator(prime: SplitPrimeDatum, *, bound: int | None = None, expansions: int = 2) -> CycInt | None:
    """Some pi in Z[zeta_d] with |N(pi)| = p and pi(r) = 0 mod p, by box search.

    The constant coefficient is solved mod p; the others range over
    |c_i| <= ceil(p^(1/phi(d))) + 2, doubled up to ``expansions`` times.
    """
    d, p, r = prime.d, prime.p, prime.r
    n = euler_phi(d)
    from .cyclotomic import norm_to_int
    emb = _embeddings(d)
    bound = bound or int(np.ceil(p ** (1.0 / n))) + 2
    rpow = [pow(r, k, p) for k in range(n)]
    for _ in range(expansions + 1):
        rng = np.arange(-bound, bound + 1)
        if n == 1:
            return CycInt(d, (p,))
        grids = np.stack(np.meshgrid(*([rng] * (n - 1)), indexing="ij"), -1).reshape(-1, n - 1)
        c0 = (-(grids @ np.array(rpow[1:]))) % p
        c0 = np.where(c0 > p // 2, c0 - p, c0)
        coeffs = np.concatenate([c0[:, None], grids], axis=1)
        vals = coeffs.astype(complex) @ emb.T
        norms = np.prod(np.abs(vals), axis=1)
        cand = np.flatnonzero(np.abs(norms - p) < 1e-6 * p)
        order = cand[np.argsort(np.abs(coeffs[cand]).sum(axis=1), kind="stable")]
        for idx in order:
            x = CycInt(d, tuple(int(c) for c in coeffs[idx]))
            if abs(norm_to_int(x)) == p:
                return x
        bound *= 2
    return None


@dataclass
class CongruenceVerdict:
    d: int
    chi: CharQuadruple
    modulus: int
    generators_found: int = 0
    skipped: list = field(default_factory=list)
    pairs_tested: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"chi": list(self.chi.a), "modulus": self.modulus, "generators_found": self.generators_found,
                "skipped": self.skipped, "pairs_tested": self.pairs_tested, "violations": self.violations,
                "passed": self.passed}


def grossencharacter_congruence_test(d: int, chi: CharQuadruple, primes: Sequence[SplitPrimeDatum], *,
                                     max_degree: int = 12, h_values: dict | None = None) -> CongruenceVerdict:
    """Primes whose generators agree mod c = 2 w^2 (up to torsion units) must have equal h."""
    if d > max_degree:
        raise ValueError(f"generator search is limited to d <= {max_degree}")
    w = torsion_order(d)
    c = 2 * w * w
    verdict = CongruenceVerdict(d, chi, c)
    base = xi(d)
    residues: dict[tuple, tuple[int, int | None]] = {}
    for prime in primes:
        pi = find_prime_generator(prime)
        if pi is None:
            verdict.skipped.append(prime.p)
            continue
        verdict.generators_found += 1
        hv = h_values[(chi, prime.p)] if h_values is not None else h_value(chi, prime)
        h = None if hv.h_root is None else hv.h_root.exponent
        assoc = pi
        keys = set()
        for _ in range(w):
            keys.add(tuple(x % c for x in assoc.coeffs))
            assoc = assoc * base
        hit = None
        for key in sorted(keys):
            if key in residues:
                hit = residues[key]
                break
        if hit is not None:
            verdict.pairs_tested += 1
            if hit[1] != h:
                verdict.violations.append({"p": hit[0], "q": prime.p, "h_p": hit[1], "h_q": h})
        for key in keys:
            residues.setdefault(key, (prime.p, h))
    return verdict
