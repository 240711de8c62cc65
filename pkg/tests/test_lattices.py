import pytest

from fermatbrauer.cohomology import h1
from fermatbrauer.cyclotomic import CycInt
from fermatbrauer.groups import cyclic_group, dihedral_group, symmetric_group, trivial_group
from fermatbrauer.lattices import (build_fermat_p, build_lambda, build_tensor, check_aC, check_bC, diagonal_action,
                                   expected_p_rank, fermat_p_full_presentation, lambda_from_action, lattice_checks,
                                   omega_pairing, relation_matrix_p2)
from fermatbrauer.linalg import FinAbGroup, IntMatrix, cokernel_invariants, determinant


def test_trivial_lambda():
    lam = build_lambda(3, trivial_group(3), trivial_group(3))
    assert lam.rank == 5
    assert h1(lam.module) == FinAbGroup()
    assert all(a == IntMatrix.identity(5) for a in lam.module.action)


@pytest.mark.parametrize("d,expected", [(3, FinAbGroup.cyclic(3)), (4, FinAbGroup.cyclic(2))])
def test_cyclic_lambda(d, expected):
    assert h1(build_lambda(d).module) == expected


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_intersection_form(d):
    lam = build_lambda(d)
    full = lam.full_gram
    # relations Sum_j L_ij - h and Sum_i L_ij - h are numerically trivial
    assert (full @ relation_matrix_p2(d)).is_zero()
    n = d * d
    assert full[n, n] == d
    assert all(full[a, a] == 2 - d for a in range(n))
    assert determinant(lam.gram) != 0
    for a in lam.module.action:
        assert a.T @ lam.gram @ a == lam.gram


def test_tensor():
    assert build_tensor(2).rank == 1
    assert h1(build_tensor(3).module) == FinAbGroup.cyclic(3)
    assert h1(build_tensor(3, symmetric_group(3), cyclic_group(3)).module) == FinAbGroup()


def test_diagonal_action_order():
    assert diagonal_action(5, [1, 2, 3, 4]).order == 100
    assert diagonal_action(5, [1]).order == 25


def test_action_group_validation():
    with pytest.raises(ValueError):
        lambda_from_action(3, symmetric_group(6))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_fermat_p_matches_full_presentation(d):
    p = build_fermat_p(d)
    full = cokernel_invariants(fermat_p_full_presentation(d))
    assert p.rank == expected_p_rank(d) == full.free_rank
    assert full.invariant_factors == () and p.torsion == ()
    assert p.module.verify_action()


def test_fermat_p_ranks():
    # b2 of a degree-d surface minus the hyperplane class
    for d, b2 in [(2, 2), (3, 7), (4, 22), (5, 53)]:
        assert expected_p_rank(d) == b2 - 1
    assert build_fermat_p(5).rank == 52


@pytest.mark.parametrize("d", [3, 4, 5])
def test_fermat_checks(d):
    assert check_aC(d) and check_bC(d)


def test_omega():
    assert omega_pairing(3, 1, 1) == CycInt.from_int(3, -27)
    assert omega_pairing(4, 1, 3) == CycInt.from_int(4, -64)
    assert all(omega_pairing(5, l, n) == CycInt.from_int(5, -125) for l in range(1, 5) for n in range(1, 5))
    with pytest.raises(ValueError):
        omega_pairing(3, 0, 1)


def test_lattice_checks_record():
    rec = lattice_checks(3)
    assert rec["aC"] and rec["bC"] and rec["omega_all_minus_d_cubed"]
    assert rec["p_rank"] == 6 and rec["p_torsion"] == []


def test_fermat_budget():
    with pytest.raises(ValueError):
        build_fermat_p(9)
