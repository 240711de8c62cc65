"""Exact integer matrix algebra.

Smith normal form with unimodular transforms, integer kernels, cokernel
invariants and a small finite-abelian-group value type.  Everything is
Python ``int`` so nothing overflows; the code is written for the dense,
small-entry matrices that come out of lattice and cohomology problems
(a few hundred rows at most).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "IntMatrix",
    "SmithForm",
    "FinAbGroup",
    "smith_normal_form",
    "cokernel_invariants",
    "kernel_basis",
    "solve_integer",
    "determinant",
    "is_unimodular",
    "is_smith_form",
    "smith_diagonal",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if not columns:
            return cls.zeros(rows, 0)
        return cls.from_rows([list(r) for r in zip(*columns)], cols=len(columns))

    @classmethod
    def from_array(cls, a) -> "IntMatrix":
        a = np.asarray(a, dtype=object)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(a.shape[0], a.shape[1], tuple(int(x) for x in a.ravel()))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(diag):
            out[i][i] = int(v)
        return cls.from_rows(out, cols=cols)

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_array(self, dtype=object) -> np.ndarray:
        return np.array(self.entries, dtype=dtype).reshape(self.rows, self.cols)

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    # algebra --------------------------------------------------------------
    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(c) for c in self.columns()], cols=self.rows) \
            if self.rows else IntMatrix.zeros(self.cols, 0)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix.from_rows(_matmul(self.to_rows(), other.to_rows(), other.cols), cols=other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def apply(self, v: Sequence[int]) -> list[int]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        c = self.cols
        e = self.entries
        return [sum(e[i * c + j] * v[j] for j in range(c) if v[j]) for i in range(self.rows)]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return IntMatrix.from_rows([a + b for a, b in zip(self.to_rows(), other.to_rows())],
                                   cols=self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "IntMatrix":
        rows, cols = list(rows), list(cols)
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


def _matmul(a: list[list[int]], b: list[list[int]], bcols: int) -> list[list[int]]:
    bt = list(zip(*b)) if b else [()] * bcols
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum(x * col[k] for k, x in nz) for col in bt])
    return out


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.D.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Finitely generated abelian group Z^r + Z/n_1 + ... + Z/n_k, n_i | n_{i+1}.

    Stored in divisor-chain form, so ``==`` is isomorphism.
    """

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        factors = tuple(int(n) for n in self.invariant_factors)
        if any(n < 2 for n in factors):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"{factors} is not a divisor chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "FinAbGroup":
        """Normalise an arbitrary list of cyclic orders (0 meaning Z, 1 dropped)."""
        orders = [abs(int(n)) for n in orders]
        free_rank += sum(1 for n in orders if n == 0)
        return cls(_divisor_chain([n for n in orders if n > 1]), free_rank)

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls.from_orders([n])

    @property
    def order(self) -> int | None:
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for n in self.invariant_factors:
            out *= n
        return out

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def torsion(self) -> "FinAbGroup":
        return FinAbGroup(self.invariant_factors, 0)

    def primary_parts(self) -> dict[int, list[int]]:
        """Prime -> list of prime-power orders (elementary divisors)."""
        out: dict[int, list[int]] = {}
        for n in self.invariant_factors:
            for p, e in _factorize(n).items():
                out.setdefault(p, []).append(p ** e)
        return {p: sorted(v) for p, v in sorted(out.items())}

    def n_torsion(self, n: int) -> "FinAbGroup":
        """The subgroup killed by n (free part contributes nothing)."""
        return FinAbGroup.from_orders([gcd(m, n) for m in self.invariant_factors])

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.from_orders(
            list(self.invariant_factors) + list(other.invariant_factors),
            self.free_rank + other.free_rank,
        )

    def is_subgroup_type_of(self, other: "FinAbGroup") -> bool:
        """True when self is isomorphic to a subgroup of other."""
        if self.free_rank > other.free_rank:
            return False
        if not self.is_finite() or not other.is_finite():
            # subgroups of Z^r + T: compare torsion only after matching free ranks
            pass
        mine, theirs = self.primary_parts(), other.primary_parts()
        for p, powers in mine.items():
            avail = theirs.get(p, [])
            if len(powers) > len(avail):
                return False
            # greedy: largest against largest
            for a, b in zip(sorted(powers, reverse=True), sorted(avail, reverse=True)):
                if a > b:
                    return False
        return True

    def __str__(self) -> str:
        parts = [f"Z/{n}" for n in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank,
                "text": str(self)}


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisor_chain(orders: list[int]) -> tuple[int, ...]:
    """Rewrite a list of cyclic orders as invariant factors."""
    per_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, e in _factorize(n).items():
            per_prime.setdefault(p, []).append(p ** e)
    if not per_prime:
        return ()
    length = max(len(v) for v in per_prime.values())
    chain = [1] * length
    for powers in per_prime.values():
        powers = sorted(powers)
        for k, q in enumerate(powers):
            chain[length - len(powers) + k] *= q
    return tuple(chain)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _snf_lists(a: list[list[int]], m: int, n: int, want_u: bool, want_v: bool,
               want_inverses: bool = False):
    """In-place Smith reduction of the m x n list-of-lists ``a``.

    Pivot rule: smallest nonzero |entry| in the active block, ties broken by
    lowest (row, col) in row-major order.
    """
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_u else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_v else None
    Ui = [[int(i == j) for j in range(m)] for i in range(m)] if (want_u and want_inverses) else None
    Vi = [[int(i == j) for j in range(n)] for i in range(n)] if (want_v and want_inverses) else None

    def row_addmul(dst, src, q):
        # row_dst -= q * row_src ; U likewise ; U^{-1}: col_src += q * col_dst
        if not q:
            return
        rs, rd = a[src], a[dst]
        for j in range(n):
            x = rs[j]
            if x:
                rd[j] -= q * x
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                x = us[j]
                if x:
                    ud[j] -= q * x
        if Ui is not None:
            for row in Ui:
                x = row[dst]
                if x:
                    row[src] += q * x

    def col_addmul(dst, src, q):
        # col_dst -= q * col_src ; V likewise ; V^{-1}: row_src += q * row_dst
        if not q:
            return
        for row in a:
            x = row[src]
            if x:
                row[dst] -= q * x
        if V is not None:
            for row in V:
                x = row[src]
                if x:
                    row[dst] -= q * x
        if Vi is not None:
            vs, vd = Vi[src], Vi[dst]
            for j in range(n):
                x = vd[j]
                if x:
                    vs[j] += q * x

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if Ui is not None:
            for row in Ui:
                row[i] = -row[i]

    t = 0
    while t < min(m, n):
        # smallest pivot in the active block
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            done = True
            # clear column t
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    row_addmul(i, t, x // p)
            # clear row t
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    col_addmul(j, t, x // p)
            # leftover remainders: move the smallest onto the pivot and repeat
            cand = None
            for i in range(t + 1, m):
                x = a[i][t]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), "r", i)
            for j in range(t + 1, n):
                x = a[t][j]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), "c", j)
            if cand is not None:
                done = False
                if cand[1] == "r":
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
            if done:
                # divisibility of the rest of the block
                p = a[t][t]
                bad = None
                for i in range(t + 1, m):
                    row = a[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_addmul(t, bad, -1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return U, V, Ui, Vi


def smith_normal_form(a: IntMatrix, *, with_inverses: bool = False):
    """Smith normal form ``U @ a @ V == D``.

    With ``with_inverses=True`` returns ``(SmithForm, U^{-1}, V^{-1})``.
    """
    m, n = a.shape
    rows = a.to_rows()
    U, V, Ui, Vi = _snf_lists(rows, m, n, True, True, with_inverses)
    form = SmithForm(IntMatrix.from_rows(U, cols=m), IntMatrix.from_rows(V, cols=n),
                     IntMatrix.from_rows(rows, cols=n))
    if with_inverses:
        return form, IntMatrix.from_rows(Ui, cols=m), IntMatrix.from_rows(Vi, cols=n)
    return form


def smith_diagonal(a: IntMatrix) -> list[int]:
    """Diagonal of the Smith form without tracking transforms."""
    m, n = a.shape
    rows = a.to_rows()
    _snf_lists(rows, m, n, False, False)
    return [rows[i][i] for i in range(min(m, n))]


def cokernel_invariants(a: IntMatrix) -> FinAbGroup:
    """Z^rows / (column span of a)."""
    diag = smith_diagonal(a)
    rank = sum(1 for x in diag if x)
    return FinAbGroup.from_orders([x for x in diag if x], free_rank=a.rows - rank)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of {x : a x = 0}; the basis is saturated."""
    m, n = a.shape
    if n == 0:
        return IntMatrix.zeros(0, 0)
    rows = a.to_rows()
    _, V, _, _ = _snf_lists(rows, m, n, False, True)
    rank = sum(1 for i in range(min(m, n)) if rows[i][i])
    cols = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    if not cols:
        return IntMatrix.zeros(n, 0)
    return IntMatrix.from_columns(cols, rows=n)


def solve_integer(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Some integer X with a @ X == b; ValueError if none exists."""
    if a.rows != b.rows:
        raise ValueError("row mismatch")
    form = smith_normal_form(a)
    ub = (form.U @ b).to_rows()
    diag = form.diagonal
    n = a.cols
    y = [[0] * b.cols for _ in range(n)]
    for i in range(a.rows):
        d = diag[i] if i < len(diag) else 0
        for k in range(b.cols):
            v = ub[i][k]
            if d:
                if v % d:
                    raise ValueError("system has no integer solution")
                y[i][k] = v // d
            elif v:
                raise ValueError("system is inconsistent")
    return form.V @ IntMatrix.from_rows(y, cols=b.cols)


def determinant(a: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant."""
    if a.rows != a.cols:
        raise ValueError("square matrix required")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: IntMatrix) -> bool:
    return a.rows == a.cols and abs(determinant(a)) == 1


def is_smith_form(d: IntMatrix) -> bool:
    """Diagonal, nonnegative, divisor chain, zeros trailing."""
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j and d[i, j]:
                return False
    diag = d.diagonal_entries()
    if any(x < 0 for x in diag):
        return False
    seen_zero = False
    for x, y in zip(diag, diag[1:]):
        if x == 0:
            seen_zero = True
        if seen_zero and y:
            return False
        if x and y % x:
            return False
    return True
