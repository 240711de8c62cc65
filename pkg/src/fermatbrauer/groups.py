"""Finite permutation groups and the subgroup machinery used by the formulas.

Every group is stored concretely as a list of permutations (tuples of
images, composed right-to-left: ``(g*h)(x) = g(h(x))``).  Elements are
indexed in breadth-first order from the identity, so index 0 is always
the identity and the indexing is deterministic for a given generator list.

The full multiplication table is built lazily; cohomology only needs the
right-multiplication-by-generator table (``cayley``), which is always
available.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from .linalg import FinAbGroup, IntMatrix, smith_normal_form

DEFAULT_ORDER_BOUND = 20000
MUL_TABLE_LIMIT = 5000

Perm = tuple[int, ...]


class GroupOrderExceeded(ValueError):
    pass


def compose(g: Perm, h: Perm) -> Perm:
    """g after h."""
    return tuple(g[x] for x in h)


def invert(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise ValueError(f"{list(p)} is not a permutation of 0..{degree - 1}")
    return p


def cycles_to_perm(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return _check_perm(img, degree)


@dataclass(eq=False)
class FiniteGroup:
    """A permutation group with its elements enumerated.

    ``generators`` are the permutations handed in; ``generator_indices``
    locates them in ``elements``.  ``cayley[i][k]`` is the index of
    ``elements[i] * generators[k]``.
    """

    degree: int
    generators: tuple[Perm, ...]
    elements: list[Perm]
    cayley: np.ndarray
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def generator_indices(self) -> list[int]:
        return [self._index[g] for g in self.generators]

    def index(self, g: Sequence[int]) -> int:
        return self._index[tuple(g)]

    def __contains__(self, g) -> bool:
        return tuple(g) in self._index

    def mul(self, i: int, j: int) -> int:
        return self._index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._index[invert(self.elements[i])]

    def conj(self, i: int, by: int) -> int:
        """by * i * by^-1"""
        b = self.elements[by]
        return self._index[compose(compose(b, self.elements[i]), invert(b))]

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.order > MUL_TABLE_LIMIT:
            raise MemoryError(f"refusing to tabulate a group of order {self.order}")
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        for i, g in enumerate(self.elements):
            for j, h in enumerate(self.elements):
                table[i, j] = self._index[compose(g, h)]
        return table

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def orbit(self, point: int) -> list[int]:
        seen, todo = {point}, [point]
        while todo:
            x = todo.pop()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return sorted(seen)

    def stabilizer(self, point: int) -> "SubgroupDatum":
        return SubgroupDatum(self, tuple(i for i, g in enumerate(self.elements) if g[point] == point))

    def whole(self) -> "SubgroupDatum":
        return SubgroupDatum(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> "SubgroupDatum":
        return SubgroupDatum(self, (0,))

    def subgroup(self, generators: Iterable[int]) -> "SubgroupDatum":
        """Subgroup generated by the given element indices."""
        return SubgroupDatum(self, tuple(sorted(_closure(self, list(generators)))))

    def check_axioms(self) -> bool:
        """Identity, inverses and closure on the generator Cayley table."""
        if self.elements[0] != tuple(range(self.degree)):
            return False
        for i, g in enumerate(self.elements):
            if invert(g) not in self._index:
                return False
            for k, s in enumerate(self.generators):
                if self.elements[self.cayley[i, k]] != compose(g, s):
                    return False
        return True

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} order={self.order} degree={self.degree}>"


@dataclass(frozen=True, eq=False)
class SubgroupDatum:
    parent: FiniteGroup
    member_indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "member_indices", tuple(sorted(set(self.member_indices))))

    @property
    def order(self) -> int:
        return len(self.member_indices)

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.member_indices)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupDatum) and other.parent is self.parent \
            and other.member_indices == self.member_indices

    def __hash__(self):
        return hash(self.member_indices)

    def is_subgroup(self) -> bool:
        g = self.parent
        mem = self.members
        if 0 not in mem:
            return False
        return all(g.mul(a, b) in mem for a in mem for b in mem) and all(g.inv(a) in mem for a in mem)

    def is_normal(self) -> bool:
        g = self.parent
        mem = self.members
        return all(g.conj(a, s) in mem for a in mem for s in g.generator_indices)


@dataclass(frozen=True)
class AbQuotient:
    """Abelianisation of parent/N with an explicit projection.

    ``projection[i]`` is the residue vector of element i with respect to
    ``group.invariant_factors``.
    """

    group: FinAbGroup
    projection: tuple[tuple[int, ...], ...]

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.group.invariant_factors))

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.group.invariant_factors)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def group_from_permutations(degree: int, gens: Sequence[Sequence[int]], *, name: str = "",
                            order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Enumerate the group generated by ``gens`` acting on ``range(degree)``."""
    gens = tuple(_check_perm(g, degree) for g in gens)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    rows: list[list[int]] = []
    i = 0
    while i < len(elements):
        g = elements[i]
        row = []
        for s in gens:
            h = compose(g, s)
            j = index.get(h)
            if j is None:
                j = len(elements)
                if j >= order_bound:
                    raise GroupOrderExceeded(
                        f"group generated by {len(gens)} permutations exceeds order bound {order_bound}")
                index[h] = j
                elements.append(h)
            row.append(j)
        rows.append(row)
        i += 1
    cayley = np.array(rows, dtype=np.int64).reshape(len(elements), len(gens))
    return FiniteGroup(degree, gens, elements, cayley, name, index)


def _closure(g: FiniteGroup, gens: list[int]) -> set[int]:
    members = {0}
    frontier = [0]
    gens = [x for x in gens if x != 0]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = g.mul(a, s)
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return members


def cyclic_group(d: int) -> FiniteGroup:
    """Z/d acting regularly on d points."""
    gens = [tuple((i + 1) % d for i in range(d))] if d > 1 else []
    return group_from_permutations(d, gens, name=f"C{d}")


def dihedral_group(d: int) -> FiniteGroup:
    """Symmetries of the d-gon, order 2d (d >= 3)."""
    rot = tuple((i + 1) % d for i in range(d))
    ref = tuple((-i) % d for i in range(d))
    return group_from_permutations(d, [rot, ref], name=f"D{d}")


def symmetric_group(d: int) -> FiniteGroup:
    if d <= 1:
        return group_from_permutations(d, [], name=f"S{d}")
    cyc = tuple((i + 1) % d for i in range(d))
    tr = cycles_to_perm(d, [(0, 1)])
    return group_from_permutations(d, [cyc, tr] if d > 2 else [tr], name=f"S{d}")


def alternating_group(d: int) -> FiniteGroup:
    if d < 3:
        return group_from_permutations(d, [], name=f"A{d}")
    gens = [cycles_to_perm(d, [(0, 1, i)]) for i in range(2, d)]
    return group_from_permutations(d, gens, name=f"A{d}")


def frobenius20() -> FiniteGroup:
    """x -> a x + b on Z/5, order 20."""
    trans = tuple((x + 1) % 5 for x in range(5))
    scale = tuple((2 * x) % 5 for x in range(5))
    return group_from_permutations(5, [trans, scale], name="F20")


def trivial_group(d: int) -> FiniteGroup:
    """The trivial group acting on d points (split polynomial)."""
    return group_from_permutations(d, [], name=f"1_{d}")


def affine_group(d: int, units: Iterable[int]) -> FiniteGroup:
    """x -> n x + b on Z/d with n in the subgroup generated by ``units``."""
    gens = [tuple((x + 1) % d for x in range(d))]
    for n in units:
        if gcd(n, d) != 1:
            raise ValueError(f"{n} is not a unit mod {d}")
        if n % d != 1 % d:
            gens.append(tuple((n * x) % d for x in range(d)))
    return group_from_permutations(d, gens, name=f"Aff{d}")


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ProductGroup:
    group: FiniteGroup
    embeddings: tuple[list[int], list[int]]


def product_group(a: FiniteGroup, b: FiniteGroup, *, order_bound: int = DEFAULT_ORDER_BOUND) -> ProductGroup:
    """a x b acting on the disjoint union of their point sets."""
    n, m = a.degree, b.degree
    gens = [tuple(g) + tuple(range(n, n + m)) for g in a.generators]
    gens += [tuple(range(n)) + tuple(x + n for x in h) for h in b.generators]
    if a.order * b.order > order_bound:
        raise GroupOrderExceeded(f"product order {a.order * b.order} exceeds {order_bound}")
    prod = group_from_permutations(n + m, gens, name=f"{a.name}x{b.name}", order_bound=order_bound)
    emb_a = [prod.index(tuple(g) + tuple(range(n, n + m))) for g in a.elements]
    emb_b = [prod.index(tuple(range(n)) + tuple(x + n for x in h)) for h in b.elements]
    return ProductGroup(prod, (emb_a, emb_b))


def semidirect_product(n: FiniteGroup, h: FiniteGroup, action: Sequence[Sequence[int]] | Callable[[int], Sequence[int]],
                       *, order_bound: int = DEFAULT_ORDER_BOUND) -> ProductGroup:
    """N x| H with H acting on N through ``action``.

    ``action[k]`` (or ``action(k)``) is the automorphism of N attached to
    the element of H with index k, given as a list of N-element indices.
    The result is realised as a permutation group on the set N x H via
    left multiplication ``(x, s)(y, t) = (x * s(y), s t)``.
    """
    auts = [tuple(action(k) if callable(action) else action[k]) for k in range(h.order)]
    for k, alpha in enumerate(auts):
        if sorted(alpha) != list(range(n.order)):
            raise ValueError(f"action of H-element {k} is not a bijection of N")
        for x in range(n.order):
            for y in n.generator_indices:
                if alpha[n.mul(x, y)] != n.mul(alpha[x], alpha[y]):
                    raise ValueError(f"action of H-element {k} is not an automorphism of N")
    for s in range(h.order):
        for t in h.generator_indices:
            st = h.mul(s, t)
            if any(auts[st][x] != auts[s][auts[t][x]] for x in range(n.order)):
                raise ValueError("action is not a homomorphism H -> Aut(N)")
    if n.order * h.order > order_bound:
        raise GroupOrderExceeded(f"order {n.order * h.order} exceeds {order_bound}")

    nh = n.order * h.order

    def point(x: int, s: int) -> int:
        return x * h.order + s

    def left_mult(x: int, s: int) -> Perm:
        img = [0] * nh
        for y in range(n.order):
            sy = auts[s][y]
            xy = n.mul(x, sy)
            for t in range(h.order):
                img[point(y, t)] = point(xy, h.mul(s, t))
        return tuple(img)

    gens = [left_mult(x, 0) for x in n.generator_indices] + [left_mult(0, s) for s in h.generator_indices]
    group = group_from_permutations(nh, gens, name=f"{n.name}:{h.name}", order_bound=order_bound)
    emb_n = [group.index(left_mult(x, 0)) for x in range(n.order)]
    emb_h = [group.index(left_mult(0, s)) for s in range(h.order)]
    return ProductGroup(group, (emb_n, emb_h))


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------

def normal_closure(g: FiniteGroup, s: SubgroupDatum) -> SubgroupDatum:
    """Smallest normal subgroup of g containing s."""
    gens = set(s.member_indices)
    members = _closure(g, sorted(gens))
    while True:
        new = {g.conj(a, t) for a in members for t in g.generator_indices} - members
        if not new:
            return SubgroupDatum(g, tuple(members))
        members = _closure(g, sorted(members | new))


def commutator_subgroup(g: FiniteGroup) -> SubgroupDatum:
    gens = []
    for a in g.generator_indices:
        for b in g.generator_indices:
            ab = g.mul(a, b)
            ba = g.mul(b, a)
            gens.append(g.mul(ab, g.inv(ba)))
    return normal_closure(g, SubgroupDatum(g, tuple(set(gens) | {0})))


def ab_quotient(g: FiniteGroup, n: SubgroupDatum) -> AbQuotient:
    """(g / n)^ab with its projection from g."""
    if not n.is_normal():
        raise ValueError("subgroup is not normal")
    derived = commutator_subgroup(g)
    kernel = normal_closure(g, SubgroupDatum(g, tuple(set(n.member_indices) | set(derived.member_indices))))
    kmem = kernel.members

    # cosets of the kernel, each labelled by an exponent vector over the generators
    ngen = len(g.generators)
    coset_of = [-1] * g.order
    reps: list[int] = []
    vecs: list[list[int]] = []

    def new_coset(rep: int, vec: list[int]) -> int:
        c = len(reps)
        reps.append(rep)
        vecs.append(vec)
        for k in kmem:
            coset_of[g.mul(rep, k)] = c
        return c

    new_coset(0, [0] * ngen)
    relations: list[list[int]] = []
    queue = deque([0])
    while queue:
        c = queue.popleft()
        rep = reps[c]
        for k, s in enumerate(g.generator_indices):
            target = g.mul(rep, s)
            step = list(vecs[c])
            step[k] += 1
            tc = coset_of[target]
            if tc < 0:
                tc = new_coset(target, step)
                queue.append(tc)
            else:
                rel = [a - b for a, b in zip(step, vecs[tc])]
                if any(rel):
                    relations.append(rel)
    if ngen == 0:
        return AbQuotient(FinAbGroup(), tuple(() for _ in range(g.order)))
    rel = IntMatrix.from_columns(relations, rows=ngen) if relations else IntMatrix.zeros(ngen, 0)
    form = smith_normal_form(rel)
    diag = form.diagonal + [0] * (ngen - len(form.diagonal))
    keep = [i for i in range(ngen) if diag[i] != 1]
    if any(diag[i] == 0 for i in keep):
        raise ValueError("abelianisation of a finite group came out infinite")
    mods = [diag[i] for i in keep]
    U = form.U.to_rows()

    def project(vec: list[int]) -> tuple[int, ...]:
        return tuple(sum(U[i][j] * vec[j] for j in range(ngen)) % diag[i] for i in keep)

    coset_images = [project(v) for v in vecs]
    # SNF diagonal is already a divisor chain; drop the 1s
    group = FinAbGroup(tuple(mods))
    projection = tuple(coset_images[coset_of[i]] for i in range(g.order))
    return AbQuotient(group, projection)


def is_primitive(g: FiniteGroup, stab: SubgroupDatum) -> bool:
    """Whether the point stabiliser is a maximal subgroup."""
    if stab.order == g.order:
        return False
    for x in range(g.order):
        if x in stab:
            continue
        if len(_closure(g, list(stab.member_indices) + [x])) != g.order:
            return False
    return True


def all_subgroups(g: FiniteGroup) -> list[SubgroupDatum]:
    """Every subgroup, by closing up from cyclic ones (small groups only)."""
    cyclic = {frozenset(_closure(g, [x])) for x in range(g.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for a in frontier:
            for c in cyclic:
                if c <= a:
                    continue
                joined = frozenset(_closure(g, sorted(a | c)))
                if joined not in found:
                    found.add(joined)
                    nxt.add(joined)
        frontier = nxt
    return [SubgroupDatum(g, tuple(sorted(s))) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def abelianization(g: FiniteGroup) -> AbQuotient:
    return ab_quotient(g, g.trivial_subgroup())


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

FAMILIES: dict[str, Callable[[int], FiniteGroup]] = {
    "cyclic": cyclic_group,
    "dihedral": dihedral_group,
    "symmetric": symmetric_group,
    "alternating": alternating_group,
    "frobenius20": lambda d: _require_degree(frobenius20(), d),
    "trivial": trivial_group,
}


def _require_degree(g: FiniteGroup, d: int) -> FiniteGroup:
    if g.degree != d:
        raise ValueError(f"{g.name} acts on {g.degree} points, not {d}")
    return g


def family_group(tag: str, d: int) -> FiniteGroup:
    try:
        builder = FAMILIES[tag]
    except KeyError:
        raise ValueError(f"unknown group family {tag!r}; known: {', '.join(sorted(FAMILIES))}") from None
    return builder(d)
