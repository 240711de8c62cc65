import pytest
from hypothesis import given, settings, strategies as st

from fermatbrauer.cohomology import (BudgetExceeded, LatticeModule, cocycles, h1, h1_by_saturation, h1_cyclic,
                                     h2_cyclic, invariants, permutation_module, regular_module, sign_module,
                                     tate_h0_cyclic, trivial_module)
from fermatbrauer.groups import cyclic_group, group_from_permutations, symmetric_group
from fermatbrauer.lattices import build_fermat_p, build_lambda, fermat_group_element
from fermatbrauer.linalg import FinAbGroup, IntMatrix


def signed_perm_module(k, signed_gens):
    """Monomial action on Z^k; generator i -> sign * e_j encoded on 2k points."""
    perms, mats = [], []
    for gen in signed_gens:
        p = [0] * (2 * k)
        rows = [[0] * k for _ in range(k)]
        for i, (j, s) in enumerate(gen):
            p[i], p[i + k] = (j, j + k) if s > 0 else (j + k, j)
            rows[j][i] = s
        perms.append(tuple(p))
        mats.append(IntMatrix.from_rows(rows))
    g = group_from_permutations(2 * k, perms)
    return LatticeModule(g, k, tuple(mats))


signed_gen = st.integers(1, 4).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(
        st.tuples(st.permutations(range(k)), st.lists(st.sampled_from([1, -1]), min_size=k, max_size=k)),
        min_size=1, max_size=2)))


def _gens(k, raw):
    return [list(zip(perm, signs)) for perm, signs in raw]


def test_invariants_examples():
    z = cyclic_group(3)
    assert invariants(trivial_module(z, 4)).cols == 4
    lam = build_lambda(3, z, z)
    inv = invariants(lam.module)
    assert inv.cols == 1
    p = build_fermat_p(3)
    assert invariants(p.module).cols == 0


def test_h1_examples():
    for n in (2, 3, 5):
        z = cyclic_group(n)
        assert h1(trivial_module(z)) == FinAbGroup()
    z2 = cyclic_group(2)
    assert h1(sign_module(z2, [-1])) == FinAbGroup.cyclic(2)


def test_cyclic_examples():
    for d in (2, 3, 4, 5):
        assert h1_cyclic(regular_module(cyclic_group(d))) == FinAbGroup()
    assert tate_h0_cyclic(trivial_module(cyclic_group(2))) == FinAbGroup.cyclic(2)
    assert h2_cyclic(trivial_module(cyclic_group(5))) == FinAbGroup.cyclic(5)
    p = build_fermat_p(3)
    sigma = fermat_group_element(3, 0, 1, 1, p.module.group)
    assert h1_cyclic(p.module, sigma) == FinAbGroup()


def test_permutation_module_shapiro():
    # H^1(G, Z[G/H]) = H^1(H, Z) = Hom(H, Z) = 0
    assert h1(permutation_module(symmetric_group(4))) == FinAbGroup()


@settings(max_examples=60, deadline=None)
@given(signed_gen)
def test_three_routes_agree(data):
    k, raw = data
    m = signed_perm_module(k, _gens(k, raw))
    assert m.verify_action()
    a = h1(m)
    assert a == h1_by_saturation(m)
    if len(m.group.generators) == 1:
        assert a == h1_cyclic(m)


def test_cocycle_data_shapes():
    m = sign_module(cyclic_group(2), [-1])
    data = cocycles(m)
    assert data.cocycles.rows == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        h1(trivial_module(symmetric_group(5)), order_budget=100)


def test_bad_action_rejected():
    with pytest.raises(ValueError):
        LatticeModule(cyclic_group(2), 1, (IntMatrix.from_rows([[2]]),))
