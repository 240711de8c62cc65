"""Lattices attached to the surfaces F(x0, x1) = G(x2, x3).

* ``build_lambda``: the lattice Lambda spanned by the d^2 lines L_ij and the
  hyperplane class h, with the Galois action and the intersection form.
* ``build_tensor``: M_f (x) M_g, the quotient of Z[V_f x V_g] by the
  sum-of-roots relations in each factor.
* ``build_fermat_p``: the primitive lattice P of the Fermat surface with its
  (Z/d)^3 action, plus the two checks on P and the omega eigenvector pairing.

Acting groups are permutation groups of degree 2d: points 0..d-1 are the
roots of f and points d..2d-1 the roots of g.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .cohomology import LatticeModule, h1_cyclic, invariants
from .cyclotomic import CycInt
from .groups import (FiniteGroup, cyclic_group, group_from_permutations, product_group)
from .linalg import IntMatrix, cokernel_invariants, kernel_basis, smith_normal_form, solve_integer

FERMAT_BUDGET = 6


# ---------------------------------------------------------------------------
# groups acting on the two root sets
# ---------------------------------------------------------------------------

def product_action(act_f: FiniteGroup, act_g: FiniteGroup) -> FiniteGroup:
    """G_f x G_g acting on the disjoint union of the two root sets."""
    if act_f.degree != act_g.degree:
        raise ValueError("f and g must have the same degree")
    return product_group(act_f, act_g).group


def diagonal_action(d: int, units: Iterable[int] = (1,)) -> FiniteGroup:
    """(Z/d)^2 x| H on lines indexed by (Z/d)^2.

    Translations move each root index separately; a unit n in H scales
    both indices at once, (i, j) -> (n i, n j).
    """
    units = sorted({u % d for u in units})
    for n in units:
        if gcd(n, d) != 1:
            raise ValueError(f"{n} is not a unit mod {d}")
    ident = list(range(2 * d))
    tf = [(x + 1) % d for x in range(d)] + ident[d:]
    tg = ident[:d] + [d + (x + 1) % d for x in range(d)]
    gens = [tf, tg] if d > 1 else []
    for n in units:
        if n != 1 % d:
            gens.append([(n * x) % d for x in range(d)] + [d + (n * x) % d for x in range(d)])
    return group_from_permutations(2 * d, gens, name=f"Z{d}^2:H")


def same_field_action(d: int, r: int = 1) -> FiniteGroup:
    """Z/d with one generator acting as i -> i+1 on V_f and j -> j+r on V_g.

    This is the situation where f and g have the same cyclic splitting field.
    """
    if gcd(r, d) != 1:
        raise ValueError("r must be a unit")
    gen = [(x + 1) % d for x in range(d)] + [d + (x + r) % d for x in range(d)]
    return group_from_permutations(2 * d, [gen] if d > 1 else [], name=f"C{d}diag")


def cyclic_times_split_action(d: int) -> FiniteGroup:
    """Z/d acting regularly on V_f and trivially on V_g (g splits)."""
    gen = [(x + 1) % d for x in range(d)] + list(range(d, 2 * d))
    return group_from_permutations(2 * d, [gen] if d > 1 else [], name=f"C{d}x1")


def _is_translation_group(g: FiniteGroup, d: int) -> bool:
    if g.degree != d:
        return False
    shifts = {tuple((x + k) % d for x in range(d)) for k in range(d)}
    return set(g.elements) == shifts


# ---------------------------------------------------------------------------
# quotient lattices with a permutation action
# ---------------------------------------------------------------------------

def _projection(basis: IntMatrix, relations: IntMatrix) -> IntMatrix:
    """Pi with Pi @ basis = I and Pi @ relations = 0 (basis + relations must span Z^n)."""
    n = basis.rows
    stacked = basis.hstack(relations)
    target = IntMatrix.identity(basis.cols).hstack(IntMatrix.zeros(basis.cols, relations.cols))
    pi_t = solve_integer(stacked.T, target.T)
    pi = pi_t.T
    if pi @ stacked != target:
        raise ArithmeticError("projection onto the quotient basis failed")
    assert pi.cols == n
    return pi


def _permutation_matrix(n: int, images: Sequence[int]) -> IntMatrix:
    rows = [[0] * n for _ in range(n)]
    for x, y in enumerate(images):
        rows[y][x] = 1
    return IntMatrix.from_rows(rows, cols=n)


def _line_permutation(d: int, perm: Sequence[int], with_h: bool) -> list[int]:
    """Image indices of L_ij (index i*d+j) and, if present, h (index d*d)."""
    out = []
    for i in range(d):
        for j in range(d):
            out.append(perm[i] * d + (perm[d + j] - d))
    if with_h:
        out.append(d * d)
    return out


def _check_action_group(d: int, group: FiniteGroup) -> None:
    if group.degree != 2 * d:
        raise ValueError(f"acting group must permute 2d = {2 * d} points")
    for p in group.generators:
        if any(p[x] >= d for x in range(d)):
            raise ValueError("group elements must preserve the roots of f and of g separately")


@dataclass(frozen=True, eq=False)
class LambdaLattice:
    """The line lattice Lambda.

    ``basis`` labels the coordinates: ("L", i, j) for i, j >= 1, then ("h",).
    ``relation_matrix`` is p_2: Z[V_f] + Z[V_g] -> Z[V_f x V_g] + Z, one
    column per root.  ``projection`` maps the full divisor group onto the
    basis coordinates; ``full_gram`` is the intersection form on the
    d^2 + 1 divisors.
    """

    d: int
    basis: tuple
    relation_matrix: IntMatrix
    projection: IntMatrix
    module: LatticeModule
    gram: IntMatrix
    full_gram: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def divisor_index(self, i: int, j: int) -> int:
        return i * self.d + j

    def h_vector(self) -> list[int]:
        return [0] * (self.rank - 1) + [1]


def relation_matrix_p2(d: int) -> IntMatrix:
    """Columns: sum_j L_ij - h for each root i of f, then sum_i L_ij - h for each root j of g."""
    cols = []
    for i in range(d):
        v = [0] * (d * d + 1)
        for j in range(d):
            v[i * d + j] = 1
        v[d * d] = -1
        cols.append(v)
    for j in range(d):
        v = [0] * (d * d + 1)
        for i in range(d):
            v[i * d + j] = 1
        v[d * d] = -1
        cols.append(v)
    return IntMatrix.from_columns(cols, rows=d * d + 1)


def p1_vector(d: int) -> list[int]:
    """p_1(1) = sigma_f - sigma_g in Z[V_f] + Z[V_g]."""
    return [1] * d + [-1] * d


def line_intersection(d: int, i: int, j: int, r: int, s: int) -> int:
    if i == r and j == s:
        return -(d - 2)
    if i != r and j != s:
        return 0
    return 1


@lru_cache(maxsize=None)
def _full_gram(d: int) -> IntMatrix:
    n = d * d
    rows = []
    for a in range(n):
        i, j = divmod(a, d)
        rows.append([line_intersection(d, i, j, *divmod(b, d)) for b in range(n)] + [1])
    rows.append([1] * n + [d])
    return IntMatrix.from_rows(rows, cols=n + 1)


@lru_cache(maxsize=None)
def _lambda_frame(d: int) -> tuple[tuple, IntMatrix, IntMatrix, IntMatrix]:
    labels = tuple(("L", i, j) for i in range(1, d) for j in range(1, d)) + (("h",),)
    basis_cols = []
    for lab in labels:
        v = [0] * (d * d + 1)
        v[d * d if lab[0] == "h" else lab[1] * d + lab[2]] = 1
        basis_cols.append(v)
    basis = IntMatrix.from_columns(basis_cols, rows=d * d + 1)
    rel = relation_matrix_p2(d)
    return labels, basis, rel, _projection(basis, rel)


def lambda_from_action(d: int, group: FiniteGroup) -> LambdaLattice:
    """Lambda for an arbitrary group permuting the roots of f and of g."""
    if d < 2:
        raise ValueError("d must be at least 2")
    _check_action_group(d, group)
    labels, basis, rel, pi = _lambda_frame(d)
    mats = []
    for p in group.generators:
        perm = _permutation_matrix(d * d + 1, _line_permutation(d, p, True))
        mats.append(pi @ perm @ basis)
    module = LatticeModule(group, len(labels), tuple(mats))
    full = _full_gram(d)
    gram = basis.T @ full @ basis
    return LambdaLattice(d, labels, rel, pi, module, gram, full)


def build_lambda(d: int, act_f: FiniteGroup | None = None, act_g: FiniteGroup | None = None,
                 scaling_subgroup: Iterable[int] | None = None) -> LambdaLattice:
    """Lambda with G_f x G_g acting, or (Z/d)^2 x| H when ``scaling_subgroup`` is given.

    Scaling only makes sense when both root sets are indexed by Z/d, i.e.
    when both actions are the regular cyclic ones (or omitted).
    """
    if scaling_subgroup is not None:
        for act in (act_f, act_g):
            if act is not None and not _is_translation_group(act, d):
                raise ValueError("scaling requires both root sets indexed by Z/d with cyclic actions")
        return lambda_from_action(d, diagonal_action(d, scaling_subgroup))
    act_f = act_f if act_f is not None else cyclic_group(d)
    act_g = act_g if act_g is not None else cyclic_group(d)
    if act_f.degree != d or act_g.degree != d:
        raise ValueError(f"actions must be on {d} points")
    return lambda_from_action(d, product_action(act_f, act_g))


# ---------------------------------------------------------------------------
# M_f (x) M_g
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TensorModule:
    d: int
    basis: tuple
    module: LatticeModule

    @property
    def rank(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def _tensor_frame(d: int) -> tuple[tuple, IntMatrix, IntMatrix]:
    n = d * d
    labels = tuple((i, j) for i in range(1, d) for j in range(1, d))
    basis_cols = []
    for i, j in labels:
        v = [0] * n
        v[i * d + j] = 1
        basis_cols.append(v)
    rel_cols = []
    for i in range(d):
        rel_cols.append([1 if a // d == i else 0 for a in range(n)])
    for j in range(d):
        rel_cols.append([1 if a % d == j else 0 for a in range(n)])
    basis = IntMatrix.from_columns(basis_cols, rows=n) if basis_cols else IntMatrix.zeros(n, 0)
    rel = IntMatrix.from_columns(rel_cols, rows=n)
    return labels, basis, _projection(basis, rel)


def tensor_from_action(d: int, group: FiniteGroup) -> TensorModule:
    _check_action_group(d, group)
    labels, basis, pi = _tensor_frame(d)
    mats = []
    for p in group.generators:
        perm = _permutation_matrix(d * d, _line_permutation(d, p, False))
        mats.append(pi @ perm @ basis)
    return TensorModule(d, labels, LatticeModule(group, len(labels), tuple(mats)))


def build_tensor(d: int, act_f: FiniteGroup | None = None, act_g: FiniteGroup | None = None) -> TensorModule:
    act_f = act_f if act_f is not None else cyclic_group(d)
    act_g = act_g if act_g is not None else cyclic_group(d)
    return tensor_from_action(d, product_action(act_f, act_g))


# ---------------------------------------------------------------------------
# the primitive lattice of the Fermat surface
# ---------------------------------------------------------------------------

def _mult_by_u(d: int) -> list[list[int]]:
    """Multiplication by u on R = Z[u]/(1 + u + ... + u^(d-1)), basis 1..u^(d-2)."""
    n = d - 1
    rows = [[0] * n for _ in range(n)]
    for a in range(n - 1):
        rows[a + 1][a] = 1
    for a in range(n):
        rows[a][n - 1] = -1
    return rows


def _kron(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _ident(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True, eq=False)
class FermatP:
    """P = Z[u1, u2, u3] / (phi(u1), phi(u2), phi(u3), phi(u1 u2 u3)) with its (Z/d)^3 action.

    The module's group is generated by u1, u2, u3 in that order.
    ``torsion`` records the torsion of the presentation (empty means the
    quotient is a lattice).
    """

    d: int
    module: LatticeModule
    ambient_rank: int
    torsion: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.module.rank


def fermat_group(d: int) -> FiniteGroup:
    """(Z/d)^3 generated by u1, u2, u3, each shifting its own block of d points."""
    gens = []
    for b in range(3):
        p = list(range(3 * d))
        for x in range(d):
            p[b * d + x] = b * d + (x + 1) % d
        gens.append(p)
    return group_from_permutations(3 * d, gens if d > 1 else [], name=f"Z{d}^3")


def fermat_group_element(d: int, e1: int, e2: int, e3: int, group: FiniteGroup | None = None) -> int:
    """Index of u1^e1 u2^e2 u3^e3."""
    group = group or fermat_group(d)
    p = []
    for b, e in enumerate((e1, e2, e3)):
        p += [b * d + (x + e) % d for x in range(d)]
    return group.index(p)


def build_fermat_p(d: int, *, budget: int = FERMAT_BUDGET) -> FermatP:
    """P via R (x) R (x) R modulo phi(u1 u2 u3), R = Z[u]/phi(u).

    The quotient by phi(u1), phi(u2), phi(u3) is done first (R is free of
    rank d-1), leaving one block of relations on (d-1)^3 coordinates.  The
    action on the quotient is read off from the Smith form of that block.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    if d > budget:
        raise ValueError(f"d = {d} exceeds the Fermat budget {budget}")
    n = d - 1
    u = _mult_by_u(d)
    eye = _ident(n)
    ops = [
        _kron(_kron(u, eye), eye),
        _kron(_kron(eye, u), eye),
        _kron(_kron(eye, eye), u),
    ]
    ops_m = [IntMatrix.from_rows(o) for o in ops]
    prod_u = ops_m[0] @ ops_m[1] @ ops_m[2]
    # phi(u1 u2 u3) = sum_k (u1 u2 u3)^k
    size = n ** 3
    phi_mat = IntMatrix.zeros(size, size)
    power = IntMatrix.identity(size)
    for _ in range(d):
        phi_mat = phi_mat + power
        power = power @ prod_u
    form, u_inv, _ = smith_normal_form(phi_mat, with_inverses=True)
    diag = form.diagonal
    rank_rel = form.rank
    torsion = tuple(x for x in diag[:rank_rel] if x != 1)
    free = list(range(rank_rel, size))
    mats = []
    for op in ops_m:
        conj = form.U @ op @ u_inv
        mats.append(conj.submatrix(free, free))
    module = LatticeModule(fermat_group(d), len(free), tuple(mats))
    return FermatP(d, module, size, torsion)


def fermat_p_full_presentation(d: int) -> IntMatrix:
    """The relation map Z^(4 d^3) -> Z[(Z/d)^3] whose cokernel is P.

    Columns are the monomial multiples of phi(u1), phi(u2), phi(u3) and
    phi(u1 u2 u3).  Used to cross-check ``build_fermat_p``.
    """
    n = d ** 3

    def idx(a, b, c):
        return ((a % d) * d + (b % d)) * d + (c % d)

    cols = []
    for which in range(4):
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    v = [0] * n
                    for k in range(d):
                        if which == 0:
                            v[idx(a + k, b, c)] += 1
                        elif which == 1:
                            v[idx(a, b + k, c)] += 1
                        elif which == 2:
                            v[idx(a, b, c + k)] += 1
                        else:
                            v[idx(a + k, b + k, c + k)] += 1
                    cols.append(v)
    return IntMatrix.from_columns(cols, rows=n)


def expected_p_rank(d: int) -> int:
    """(d-1)(d^2-3d+3): characters (l, m, n) in [1, d-1]^3 with l+m+n not divisible by d."""
    return (d - 1) * (d * d - 3 * d + 3)


def check_aC(d: int, p: FermatP | None = None) -> bool:
    """H^1(<u2 u3>, P) = 0."""
    p = p or build_fermat_p(d)
    sigma = fermat_group_element(d, 0, 1, 1, p.module.group)
    return h1_cyclic(p.module, sigma).is_trivial()


def check_bC(d: int, p: FermatP | None = None) -> bool:
    """P^<u2 u3> has rank (d-1)^2."""
    p = p or build_fermat_p(d)
    sigma = fermat_group_element(d, 0, 1, 1, p.module.group)
    sub = p.module.restrict([sigma])
    return invariants(sub).cols == (d - 1) ** 2


def omega_pairing(d: int, l: int, n: int) -> CycInt:
    """<omega, conj(omega)> for omega = sum_ij eps^(il + jn) L_ij, exactly in Z[zeta_d]."""
    if not (1 <= l <= d - 1 and 1 <= n <= d - 1):
        raise ValueError("need 1 <= l, n <= d - 1")
    counts = [0] * d
    for i in range(d):
        for j in range(d):
            for r in range(d):
                for s in range(d):
                    c = line_intersection(d, i, j, r, s)
                    if c:
                        counts[((i - r) * l + (j - s) * n) % d] += c
    return CycInt.from_power_counts(d, counts)


def lattice_checks(d: int) -> dict:
    """Everything the Fermat lattice audit reports for one d."""
    p = build_fermat_p(d)
    omegas = {(l, n): omega_pairing(d, l, n) for l in range(1, d) for n in range(1, d)}
    target = CycInt.from_int(d, -d ** 3)
    return {
        "d": d,
        "p_rank": p.rank,
        "expected_p_rank": expected_p_rank(d),
        "p_torsion": list(p.torsion),
        "aC": check_aC(d, p),
        "bC": check_bC(d, p),
        "omega_all_minus_d_cubed": all(v == target for v in omegas.values()),
        "omega_values": sorted({str(v) for v in omegas.values()}),
    }
