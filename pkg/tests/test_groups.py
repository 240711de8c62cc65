import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_closure
from fermatbrauer.groups import (GroupOrderExceeded, ab_quotient, abelianization, affine_group, all_subgroups,
                                 alternating_group, commutator_subgroup, cyclic_group, dihedral_group, family_group,
                                 frobenius20, group_from_permutations, is_primitive, normal_closure, product_group,
                                 semidirect_product, symmetric_group, trivial_group)
from fermatbrauer.linalg import FinAbGroup


def test_closure_orders():
    assert group_from_permutations(3, [(1, 2, 0)]).order == 3
    assert group_from_permutations(3, [(1, 2, 0), (1, 0, 2)]).order == 6
    assert group_from_permutations(4, [(1, 2, 3, 0), (2, 1, 0, 3)]).order == 8


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.permutations(range(n)), min_size=1, max_size=3))))
def test_closure_matches_naive(data):
    n, gens = data
    g = group_from_permutations(n, [tuple(x) for x in gens])
    assert set(map(tuple, g.elements)) == naive_closure([tuple(x) for x in gens], n)
    assert g.check_axioms()
    assert g.elements[0] == tuple(range(n))


def test_left_composition():
    g = symmetric_group(3)
    for i in range(g.order):
        for j in range(g.order):
            a, b = g.elements[i], g.elements[j]
            assert g.elements[g.mul(i, j)] == tuple(a[b[x]] for x in range(3))


def test_order_bound():
    with pytest.raises(GroupOrderExceeded):
        group_from_permutations(8, symmetric_group(8).generators, order_bound=1000)


def test_normal_closure():
    s3 = symmetric_group(3)
    assert normal_closure(s3, s3.trivial_subgroup()).order == 1
    t = s3.subgroup([s3.index((1, 0, 2))])
    assert normal_closure(s3, t).order == 6
    z6 = cyclic_group(6)
    h = z6.subgroup([z6.index(tuple((x + 3) % 6 for x in range(6)))])
    assert normal_closure(z6, h) == h


def test_ab_quotient():
    s3 = symmetric_group(3)
    assert ab_quotient(s3, s3.trivial_subgroup()).group == FinAbGroup.cyclic(2)
    for d in (3, 4, 7):
        z = cyclic_group(d)
        assert ab_quotient(z, z.trivial_subgroup()).group == FinAbGroup.cyclic(d)
    a3 = s3.subgroup([s3.index((1, 2, 0))])
    assert ab_quotient(s3, a3).group == FinAbGroup.cyclic(2)


def test_ab_quotient_projection_is_homomorphism():
    g = dihedral_group(6)
    q = abelianization(g)
    for i in range(g.order):
        for j in range(g.order):
            assert q.projection[g.mul(i, j)] == q.add(q.projection[i], q.projection[j])
    assert q.group.order == 4


def test_primitivity():
    for p in (2, 3, 5, 7):
        z = cyclic_group(p)
        assert is_primitive(z, z.stabilizer(0))
    z4 = cyclic_group(4)
    assert not is_primitive(z4, z4.stabilizer(0))
    s3 = symmetric_group(3)
    assert is_primitive(s3, s3.stabilizer(0))
    f20 = frobenius20()
    assert is_primitive(f20, f20.stabilizer(0))
    d4 = dihedral_group(4)
    assert not is_primitive(d4, d4.stabilizer(0))


def test_products():
    p = product_group(cyclic_group(2), cyclic_group(3))
    assert p.group.order == 6
    assert abelianization(p.group).group == FinAbGroup.cyclic(6)
    z5 = cyclic_group(5)
    sq = product_group(z5, z5).group

    def translation(a, b):
        return tuple((x + a) % 5 for x in range(5)) + tuple(5 + (y + b) % 5 for y in range(5))

    def scaled(i, k):
        a, b = sq.elements[i][0], sq.elements[i][5] - 5
        return sq.index(translation(a * 2 ** k, b * 2 ** k))

    # (Z/5)^2 with the generator of Z/4 acting by scaling by 2
    h = cyclic_group(4)
    action = [[scaled(i, h.elements[j][0]) for i in range(sq.order)] for j in range(h.order)]
    assert semidirect_product(sq, h, action).group.order == 100


def test_semidirect_rejects_non_automorphism():
    z3 = cyclic_group(3)
    z2 = cyclic_group(2)
    with pytest.raises(ValueError):
        semidirect_product(z3, z2, [[0, 1, 2], [0, 1, 1]])


def test_families_and_orders():
    assert alternating_group(5).order == 60
    assert frobenius20().order == 20
    assert trivial_group(4).order == 1
    assert affine_group(5, [1, 2, 3, 4]).order == 20
    assert family_group("dihedral", 4).order == 8
    with pytest.raises(ValueError):
        family_group("bogus", 3)


def test_commutator_and_subgroups():
    s4 = symmetric_group(4)
    assert commutator_subgroup(s4).order == 12
    orders = sorted(h.order for h in all_subgroups(s4))
    assert len(orders) == 30 and orders[0] == 1 and orders[-1] == 24
    assert all(h.is_subgroup() for h in all_subgroups(dihedral_group(4)))
