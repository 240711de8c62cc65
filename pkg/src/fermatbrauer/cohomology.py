"""Group cohomology of finite groups acting on lattices, computed by brute force.

``h1`` is the oracle the closed formulas are tested against.  Cocycle
values on the generators are the unknowns; the value on any group element
is a linear expression in them obtained by walking a breadth-first tree of
the Cayley graph, and every Cayley edge outside the tree gives one block of
linear equations.  Independent equations are picked out modulo a prime
(fast, numpy/BLAS), the integer kernel of those rows is computed exactly,
and the result is certified by checking every equation exactly via a CRT
bound.  So the final answer never depends on the prime.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, SubgroupDatum, group_from_permutations
from .linalg import FinAbGroup, IntMatrix, cokernel_invariants, is_unimodular, kernel_basis, solve_integer

ORDER_BUDGET = 20000
RANK_BUDGET = 200
# entries of the stored linear expressions; |G| * rank * (#gens * rank)
STORAGE_BUDGET = 400_000_000

# primes below 2^21 keep float64 products of reduced residues exact
_PRIMES = (2097143, 2097133, 2097091, 2097013, 2096993, 2096987, 2096971, 2096959)
_INT64_SAFE = 1 << 62


class BudgetExceeded(ValueError):
    pass


def _as_int64(a) -> np.ndarray:
    arr = np.asarray(a, dtype=object)
    if arr.size and int(np.max(np.abs(arr))) >= (1 << 31):
        raise OverflowError("action matrix entries too large for the fast path")
    return arr.astype(np.int64)


def _mul_checked(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matmul in int64, refusing when the result could overflow."""
    ma = int(np.abs(a).max()) if a.size else 0
    mb = int(np.abs(b).max()) if b.size else 0
    if ma * mb * max(a.shape[-1], 1) >= _INT64_SAFE:
        raise OverflowError("int64 product bound exceeded")
    return a @ b


@dataclass(frozen=True, eq=False)
class LatticeModule:
    """A finite group acting on Z^rank; ``action[k]`` is the matrix of generator k.

    The action is a left action: the matrix of ``g*h`` is ``A_g @ A_h``.
    """

    group: FiniteGroup
    rank: int
    action: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        if len(self.action) != len(self.group.generators):
            raise ValueError("need one action matrix per group generator")
        for a in self.action:
            if a.shape != (self.rank, self.rank):
                raise ValueError(f"action matrix has shape {a.shape}, expected {(self.rank, self.rank)}")
            if not is_unimodular(a):
                raise ValueError("action matrices must be invertible over Z")

    @cached_property
    def _gen_arrays(self) -> list[np.ndarray]:
        return [_as_int64(a.to_rows()).reshape(self.rank, self.rank) for a in self.action]

    @cached_property
    def element_arrays(self) -> np.ndarray:
        """Matrices of all group elements, shape (|G|, rank, rank), by BFS over the Cayley graph."""
        g = self.group
        out = np.zeros((g.order, self.rank, self.rank), dtype=np.int64)
        out[0] = np.eye(self.rank, dtype=np.int64)
        seen = np.zeros(g.order, dtype=bool)
        seen[0] = True
        queue = [0]
        gens = self._gen_arrays
        for i in queue:
            for k in range(len(gens)):
                j = int(g.cayley[i, k])
                if not seen[j]:
                    seen[j] = True
                    out[j] = _mul_checked(out[i], gens[k])
                    queue.append(j)
        return out

    def matrix(self, element: int) -> IntMatrix:
        return IntMatrix.from_rows(self.element_arrays[element].tolist(), cols=self.rank)

    def verify_action(self) -> bool:
        """Every Cayley edge g -> g*s must satisfy A_{g s} = A_g A_s."""
        mats = self.element_arrays
        for k, a in enumerate(self._gen_arrays):
            if not np.array_equal(mats[self.group.cayley[:, k]], mats @ a):
                return False
        return True

    def restrict(self, sub: SubgroupDatum | Sequence[int]) -> "LatticeModule":
        """The same lattice viewed as a module over a subgroup (given by generating elements)."""
        gens = list(sub.member_indices if isinstance(sub, SubgroupDatum) else sub)
        gens = [x for x in gens if x != 0]
        perms = [self.group.elements[x] for x in gens]
        h = group_from_permutations(self.group.degree, perms, name=f"<{self.group.name}>")
        return LatticeModule(h, self.rank, tuple(self.matrix(x) for x in gens))

    def coboundary_matrix(self) -> IntMatrix:
        """Stacked (A_s - 1) over generators; its columns span B^1 in cocycle coordinates."""
        blocks = [a - IntMatrix.identity(self.rank) for a in self.action]
        out = IntMatrix.zeros(0, self.rank)
        for b in blocks:
            out = out.vstack(b)
        return out


def trivial_module(group: FiniteGroup, rank: int = 1) -> LatticeModule:
    ident = IntMatrix.identity(rank)
    return LatticeModule(group, rank, tuple(ident for _ in group.generators))


def permutation_module(group: FiniteGroup) -> LatticeModule:
    """Z^degree with the group permuting the coordinates."""
    n = group.degree
    mats = []
    for p in group.generators:
        rows = [[0] * n for _ in range(n)]
        for x, y in enumerate(p):
            rows[y][x] = 1
        mats.append(IntMatrix.from_rows(rows, cols=n))
    return LatticeModule(group, n, tuple(mats))


def regular_module(group: FiniteGroup) -> LatticeModule:
    """Z[G] with G acting by left multiplication."""
    n = group.order
    mats = []
    for s in group.generator_indices:
        rows = [[0] * n for _ in range(n)]
        for x in range(n):
            rows[group.mul(s, x)][x] = 1
        mats.append(IntMatrix.from_rows(rows, cols=n))
    return LatticeModule(group, n, tuple(mats))


def sign_module(group: FiniteGroup, signs: Sequence[int]) -> LatticeModule:
    """Z with generator k acting by ``signs[k]`` in {1, -1}."""
    return LatticeModule(group, 1, tuple(IntMatrix.from_rows([[s]]) for s in signs))


def _check_budget(m: LatticeModule, order_budget: int, rank_budget: int) -> None:
    if m.group.order > order_budget:
        raise BudgetExceeded(f"group order {m.group.order} exceeds budget {order_budget}")
    if m.rank > rank_budget:
        raise BudgetExceeded(f"lattice rank {m.rank} exceeds budget {rank_budget}")


def invariants(m: LatticeModule) -> IntMatrix:
    """Saturated basis (as columns) of the fixed sublattice M^G."""
    if not m.action:
        return IntMatrix.identity(m.rank)
    return kernel_basis(m.coboundary_matrix())


# ---------------------------------------------------------------------------
# the oracle
# ---------------------------------------------------------------------------

class _ModpEchelon:
    """Reduced row echelon basis mod p, fed block by block; remembers which input rows it kept."""

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols))
        self.pivots: list[int] = []
        self.kept: list[np.ndarray] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def feed(self, block: np.ndarray, batch: int = 256) -> None:
        block = block[block.any(axis=1)]
        for start in range(0, block.shape[0], batch):
            if self.rank == self.ncols:
                return
            self._feed_small(block[start:start + batch])

    def _feed_small(self, block: np.ndarray) -> None:
        p = self.p
        x = np.mod(block, p).astype(np.float64)
        if self.pivots:
            x = np.fmod(x - np.fmod(x[:, self.pivots] @ self.rows, p), p)
            x[x < 0] += p
        live = np.flatnonzero(x.any(axis=1))
        while live.size:
            r = live[0]
            row = x[r]
            c = int(np.flatnonzero(row)[0])
            inv = pow(int(row[c]), -1, p)
            row = np.fmod(row * inv, p)
            self.kept.append(block[r].copy())
            # keep the basis fully reduced on pivot columns
            if self.pivots:
                self.rows = np.fmod(self.rows - np.outer(self.rows[:, c], row), p)
                self.rows[self.rows < 0] += p
            self.rows = np.vstack([self.rows, row])
            self.pivots.append(c)
            rest = live[1:]
            if not rest.size:
                break
            sub = x[rest]
            sub = np.fmod(sub - np.outer(sub[:, c], row), p)
            sub[sub < 0] += p
            x[rest] = sub
            live = rest[sub.any(axis=1)]


def _cocycle_expressions(m: LatticeModule) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Linear expressions for c(g) in the generator unknowns plus the non-tree Cayley edges.

    Returns (expr, edges) with expr of shape (|G|, rank, ngens*rank) and
    edges a list of (g, k, h) with h = g * s_k reached by a non-tree edge.
    """
    g = m.group
    r = m.rank
    ngen = len(m.action)
    nvar = ngen * r
    if g.order * r * nvar > STORAGE_BUDGET:
        raise BudgetExceeded("cocycle expression table too large")
    mats = m.element_arrays
    expr = np.zeros((g.order, r, nvar), dtype=np.int64)
    seen = np.zeros(g.order, dtype=bool)
    seen[0] = True
    edges = []
    queue = [0]
    bound = 0
    for i in queue:
        for k in range(ngen):
            j = int(g.cayley[i, k])
            if seen[j]:
                edges.append((i, k, j))
                continue
            seen[j] = True
            e = expr[i].copy()
            e[:, k * r:(k + 1) * r] += mats[i]
            expr[j] = e
            queue.append(j)
    bound = int(np.abs(expr).max()) if expr.size else 0
    if bound * 4 >= (1 << 31):
        raise OverflowError("cocycle expressions too large")
    return expr, edges


def _constraint_blocks(m: LatticeModule, expr: np.ndarray, edges, chunk: int = 512):
    r = m.rank
    mats = m.element_arrays
    for start in range(0, len(edges), chunk):
        part = edges[start:start + chunk]
        gi = np.array([e[0] for e in part])
        ks = np.array([e[1] for e in part])
        hi = np.array([e[2] for e in part])
        block = expr[gi] - expr[hi]
        for k in np.unique(ks):
            sel = ks == k
            block[sel, :, k * r:(k + 1) * r] += mats[gi[sel]]
        yield block.reshape(-1, block.shape[-1])


def _crt_zero(blocks_fn, kernel: IntMatrix, row_bound: int) -> bool:
    """Exact test that every constraint row annihilates every kernel column.

    Entries of C*K are bounded by ncols * max|C| * max|K|; checking the
    product modulo enough primes whose product exceeds twice that bound
    proves it is zero.
    """
    if kernel.cols == 0:
        return True
    kmax = max((abs(x) for x in kernel.entries), default=0)
    bound = kernel.rows * row_bound * kmax
    moduli = []
    acc = 1
    for q in _PRIMES:
        if acc > 2 * bound:
            break
        moduli.append(q)
        acc *= q
    if acc <= 2 * bound:
        raise OverflowError("kernel entries too large to certify")
    kmods = [np.array([[x % q for x in row] for row in kernel.to_rows()], dtype=np.float64) for q in moduli]
    for block in blocks_fn():
        for q, kq in zip(moduli, kmods):
            prodq = np.fmod(np.mod(block, q).astype(np.float64) @ kq, q)
            if prodq.any():
                return False
    return True


@dataclass(frozen=True)
class CocycleData:
    """Z^1 as columns in generator coordinates, with B^1 expressed in that basis."""

    cocycles: IntMatrix
    coboundaries: IntMatrix
    n_constraints: int
    n_selected: int


def cocycles(m: LatticeModule, *, order_budget: int = ORDER_BUDGET, rank_budget: int = RANK_BUDGET) -> CocycleData:
    """Integer basis of the 1-cocycles, one column per basis vector."""
    _check_budget(m, order_budget, rank_budget)
    r = m.rank
    nvar = len(m.action) * r
    expr, edges = _cocycle_expressions(m)
    row_bound = int(np.abs(expr).max(initial=0)) * 2 + int(np.abs(m.element_arrays).max(initial=0))

    def blocks():
        return _constraint_blocks(m, expr, edges)

    cob = m.coboundary_matrix()
    for p in _PRIMES:
        ech = _ModpEchelon(nvar, p)
        for block in blocks():
            ech.feed(block)
            if ech.rank == nvar:
                break
        selected = IntMatrix.from_rows([row.tolist() for row in ech.kept], cols=nvar) if ech.kept \
            else IntMatrix.zeros(0, nvar)
        kern = kernel_basis(selected)
        if _crt_zero(blocks, kern, row_bound):
            coords = solve_integer(kern, cob) if kern.cols else IntMatrix.zeros(0, r)
            return CocycleData(kern, coords, len(edges) * r, ech.rank)
    raise ArithmeticError("no prime certified the cocycle kernel")


def h1(m: LatticeModule, *, order_budget: int = ORDER_BUDGET, rank_budget: int = RANK_BUDGET) -> FinAbGroup:
    """H^1(G, M) = Z^1 / B^1 via the Cayley-graph cocycle equations."""
    if not m.action:
        _check_budget(m, order_budget, rank_budget)
        return FinAbGroup()
    data = cocycles(m, order_budget=order_budget, rank_budget=rank_budget)
    if data.cocycles.cols == 0:
        return FinAbGroup()
    out = cokernel_invariants(data.coboundaries)
    if out.free_rank:
        raise ArithmeticError("H^1 of a finite group came out infinite")
    return out


def h1_by_saturation(m: LatticeModule) -> FinAbGroup:
    """H^1 as the torsion of Z^{gens*rank} / B^1.

    Z^1 is saturated and contains B^1 with finite index, so it is the
    saturation of B^1.  This uses no Cayley-graph equations at all, which
    makes it a useful independent check on ``h1``.
    """
    if not m.action:
        return FinAbGroup()
    return cokernel_invariants(m.coboundary_matrix()).torsion()


# ---------------------------------------------------------------------------
# cyclic groups
# ---------------------------------------------------------------------------

def _cyclic_generator(m: LatticeModule, sub: SubgroupDatum | int | None) -> int:
    g = m.group
    if sub is None:
        sub = g.whole()
    if isinstance(sub, SubgroupDatum):
        for x in sub.member_indices:
            if g.element_order(x) == sub.order:
                return x
        raise ValueError("subgroup is not cyclic")
    return int(sub)


def _sigma_and_norm(m: LatticeModule, sigma: int) -> tuple[IntMatrix, IntMatrix]:
    s = m.matrix(sigma)
    n = m.group.element_order(sigma)
    mats = m.element_arrays
    acc = np.zeros((m.rank, m.rank), dtype=np.int64)
    x = 0
    for _ in range(n):
        acc += mats[x]
        x = m.group.mul(x, sigma)
    return s, IntMatrix.from_rows(acc.tolist(), cols=m.rank)


def _subquotient(num_kernel_of: IntMatrix, den_image_of: IntMatrix) -> FinAbGroup:
    kern = kernel_basis(num_kernel_of)
    if kern.cols == 0:
        return FinAbGroup()
    return cokernel_invariants(solve_integer(kern, den_image_of))


def h1_cyclic(m: LatticeModule, sub: SubgroupDatum | int | None = None) -> FinAbGroup:
    """H^1 of a cyclic subgroup <sigma>: ker(Norm) / im(sigma - 1).

    ``sub`` is a cyclic subgroup or the index of a chosen generator; the
    whole group is used when omitted.
    """
    sigma = _cyclic_generator(m, sub)
    s, norm = _sigma_and_norm(m, sigma)
    return _subquotient(norm, s - IntMatrix.identity(m.rank))


def tate_h0_cyclic(m: LatticeModule, sub: SubgroupDatum | int | None = None) -> FinAbGroup:
    """Tate H^0 of a cyclic subgroup: ker(sigma - 1) / im(Norm)."""
    sigma = _cyclic_generator(m, sub)
    s, norm = _sigma_and_norm(m, sigma)
    return _subquotient(s - IntMatrix.identity(m.rank), norm)


def h2_cyclic(m: LatticeModule, sub: SubgroupDatum | int | None = None) -> FinAbGroup:
    """H^2 of a cyclic group, equal to Tate H^0 by periodicity."""
    return tate_h0_cyclic(m, sub)
