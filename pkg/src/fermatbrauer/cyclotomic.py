"""Exact arithmetic in Z[zeta_d] in the power basis 1, zeta, ..., zeta^(phi(d)-1).

Reduction is modulo the cyclotomic polynomial Phi_d, so two equal ring
elements always carry identical coefficient tuples, and divisibility by a
rational integer can be read off coefficient by coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


class NotDivisible(ArithmeticError):
    pass


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i, a in enumerate(den):
                num[k + i] -= c * a
    if any(num[:dd]):
        raise ArithmeticError("polynomial division left a remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of Phi_d, constant term first."""
    if d < 1:
        raise ValueError("d must be positive")
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(e))
    return tuple(num)


def euler_phi(d: int) -> int:
    return len(cyclotomic_polynomial(d)) - 1


def units_mod(d: int) -> list[int]:
    return [t for t in range(1, d + 1) if gcd(t, d) == 1 and (t < d or d == 1)]


def torsion_order(d: int) -> int:
    """w: number of roots of unity in Q(zeta_d)."""
    return d if d % 2 == 0 else 2 * d


@lru_cache(maxsize=None)
def _power_table(d: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of zeta^k for k = 0..d-1."""
    phi = cyclotomic_polynomial(d)
    n = len(phi) - 1
    rows = []
    cur = [1] + [0] * (n - 1) if n else []
    for _ in range(d):
        rows.append(tuple(cur))
        # multiply by zeta and reduce the top coefficient
        top = cur[-1] if n else 0
        cur = [0] + cur[:-1] if n else []
        if top:
            for i in range(n):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce(poly: Sequence[int], d: int) -> tuple[int, ...]:
    phi = cyclotomic_polynomial(d)
    n = len(phi) - 1
    c = list(poly)
    for k in range(len(c) - 1, n - 1, -1):
        top = c[k]
        if top:
            base = k - n
            for i in range(n + 1):
                c[base + i] -= top * phi[i]
    c = c[:n] + [0] * (n - len(c))
    return tuple(c)


@dataclass(frozen=True)
class CycInt:
    """An element of Z[zeta_d], coefficients in the power basis."""

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.degree):
            raise ValueError(f"need {euler_phi(self.degree)} coefficients for d={self.degree}")

    # constructors -------------------------------------------------------
    @classmethod
    def from_poly(cls, d: int, poly: Iterable[int]) -> "CycInt":
        """Reduce an arbitrary polynomial in zeta."""
        return cls(d, _reduce([int(x) for x in poly], d))

    @classmethod
    def from_power_counts(cls, d: int, counts: Sequence[int]) -> "CycInt":
        """sum_k counts[k] * zeta^k for k = 0..d-1 (k taken mod d)."""
        table = _power_table(d)
        out = [0] * euler_phi(d)
        for k, c in enumerate(counts):
            if c:
                for i, t in enumerate(table[k % d]):
                    if t:
                        out[i] += c * t
        return cls(d, tuple(out))

    @classmethod
    def from_int(cls, d: int, n: int) -> "CycInt":
        return cls(d, (int(n),) + (0,) * (euler_phi(d) - 1))

    @classmethod
    def zero(cls, d: int) -> "CycInt":
        return cls.from_int(d, 0)

    @classmethod
    def one(cls, d: int) -> "CycInt":
        return cls.from_int(d, 1)

    @classmethod
    def zeta(cls, d: int, k: int = 1) -> "CycInt":
        return cls(d, _power_table(d)[k % d])

    # ring operations ------------------------------------------------------
    def _check(self, other: "CycInt") -> None:
        if not isinstance(other, CycInt) or other.degree != self.degree:
            raise ValueError("degree mismatch")

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt.from_int(self.degree, other)
        self._check(other)
        return other

    def __add__(self, other) -> "CycInt":
        other = self._coerce(other)
        return CycInt(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.degree, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycInt":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt(self.degree, tuple(a * other for a in self.coeffs))
        self._check(other)
        a, b = self.coeffs, other.coeffs
        prod = [0] * (len(a) + len(b) - 1) if a else []
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycInt.from_poly(self.degree, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycInt":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.one(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self == CycInt.one(self.degree)

    def conjugate(self) -> "CycInt":
        """Complex conjugation, zeta -> zeta^-1."""
        return galois_apply(-1, self)

    def evaluate_mod(self, p: int, r: int) -> int:
        """Image in F_p under zeta -> r (r must be a root of Phi_d mod p)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * r + c) % p
        return acc

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def cyc_add(x: CycInt, y: CycInt) -> CycInt:
    return x + y


def cyc_mul(x: CycInt, y: CycInt) -> CycInt:
    return x * y


def cyc_neg(x: CycInt) -> CycInt:
    return -x


def galois_apply(t: int, x: CycInt) -> CycInt:
    """Image of x under zeta -> zeta^t."""
    d = x.degree
    if gcd(t, d) != 1:
        raise ValueError(f"{t} is not a unit mod {d}")
    counts = [0] * d
    for k, c in enumerate(x.coeffs):
        counts[(k * t) % d] += c
    return CycInt.from_power_counts(d, counts)


def norm_to_int(x: CycInt) -> int:
    """Product of all Galois conjugates of x."""
    d = x.degree
    acc = CycInt.one(d)
    for t in units_mod(d):
        acc = acc * galois_apply(t, x)
    if any(acc.coeffs[1:]):
        raise ArithmeticError("norm did not land in Z")
    return acc.coeffs[0]


def divide_exact(x: CycInt, n: int) -> CycInt:
    if n == 0:
        raise ZeroDivisionError("division by zero")
    if any(c % n for c in x.coeffs):
        raise NotDivisible(f"{x} is not divisible by {n}")
    return CycInt(x.degree, tuple(c // n for c in x.coeffs))


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootOfUnity:
    """xi^exponent where xi is the fixed primitive w-th root of unity.

    xi = zeta_d for even d; for odd d it is -zeta_d^((d+1)/2), the
    primitive 2d-th root whose square is zeta_d.
    """

    modulus: int
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    def order(self) -> int:
        return self.modulus // gcd(self.modulus, self.exponent)

    def is_one(self) -> bool:
        return self.exponent == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if other.modulus != self.modulus:
            raise ValueError("modulus mismatch")
        return RootOfUnity(self.modulus, self.exponent + other.exponent)


def xi(d: int) -> CycInt:
    """The fixed primitive w-th root of unity in Z[zeta_d]."""
    if d % 2 == 0:
        return CycInt.zeta(d)
    return -CycInt.zeta(d, (d + 1) // 2)


@lru_cache(maxsize=None)
def _root_table(d: int) -> dict[tuple[int, ...], int]:
    w = torsion_order(d)
    base = xi(d)
    table = {}
    cur = CycInt.one(d)
    for e in range(w):
        table[cur.coeffs] = e
        cur = cur * base
    return table


def root_of_unity(d: int, exponent: int) -> CycInt:
    """xi^exponent as an element of Z[zeta_d]."""
    return xi(d) ** (exponent % torsion_order(d))


def as_root_of_unity(x: CycInt) -> RootOfUnity | None:
    """Exponent e with x = xi^e, or None when x is not a root of unity."""
    e = _root_table(x.degree).get(x.coeffs)
    return None if e is None else RootOfUnity(torsion_order(x.degree), e)
