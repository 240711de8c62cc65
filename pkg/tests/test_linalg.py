import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import invariant_factors_from_minors
from fermatbrauer.linalg import (FinAbGroup, IntMatrix, cokernel_invariants, determinant, is_smith_form,
                                 is_unimodular, kernel_basis, smith_diagonal, smith_normal_form, solve_integer)
from fermatbrauer.lattices import p1_vector, relation_matrix_p2

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_identity_snf():
    f = smith_normal_form(IntMatrix.identity(2))
    assert f.D == IntMatrix.identity(2)
    assert is_unimodular(f.U) and is_unimodular(f.V)


def test_small_snf():
    f = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert f.diagonal == [2, 4]


def test_zero_matrix():
    f = smith_normal_form(IntMatrix.zeros(3, 2))
    assert f.D.is_zero() and f.rank == 0


def test_cokernel_examples():
    g = cokernel_invariants(IntMatrix.diagonal([1, 1, 3]))
    assert g.invariant_factors == (3,) and g.free_rank == 0
    assert cokernel_invariants(IntMatrix.zeros(4, 0)).free_rank == 4


def test_lambda_relations_d3():
    g = cokernel_invariants(relation_matrix_p2(3))
    assert g.free_rank == 5 and g.invariant_factors == ()


def test_kernel_examples():
    assert kernel_basis(IntMatrix.identity(3)).cols == 0
    k = kernel_basis(IntMatrix.from_rows([[1, 1]]))
    assert k.cols == 1 and sorted(k.column(0)) == [-1, 1]


def test_p2_kernel_is_p1_image():
    p2 = relation_matrix_p2(3)
    k = kernel_basis(p2)
    assert k.cols == 1
    v = p1_vector(3)
    assert tuple(k.column(0)) in {tuple(v), tuple(-x for x in v)}


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(rows):
    a = IntMatrix.from_rows(rows)
    f = smith_normal_form(a)
    assert f.U @ a @ f.V == f.D
    assert is_unimodular(f.U) and is_unimodular(f.V) and is_smith_form(f.D)
    assert [x for x in f.diagonal if x] == invariant_factors_from_minors(rows)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_inverses(rows):
    a = IntMatrix.from_rows(rows)
    f, u_inv, v_inv = smith_normal_form(a, with_inverses=True)
    assert f.U @ u_inv == IntMatrix.identity(a.rows)
    assert f.V @ v_inv == IntMatrix.identity(a.cols)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_saturated(rows):
    a = IntMatrix.from_rows(rows)
    k = kernel_basis(a)
    assert (a @ k).is_zero() if k.cols else True
    assert k.cols == a.cols - smith_normal_form(a).rank
    if k.cols:
        # saturation: the cokernel of the basis inclusion is torsion free
        assert cokernel_invariants(k).invariant_factors == ()


def test_solve_integer():
    a = IntMatrix.from_rows([[2, 0], [0, 3], [1, 1]])
    x = IntMatrix.from_rows([[1, -2], [4, 5]])
    assert solve_integer(a, a @ x) == x


def test_determinant():
    assert determinant(IntMatrix.from_rows([[2, 4], [6, 8]])) == -8
    assert determinant(IntMatrix.identity(4)) == 1


def test_finabgroup():
    g = FinAbGroup.from_orders([2, 3, 4])
    assert g.invariant_factors == (2, 12)
    assert g.order == 24
    assert str(FinAbGroup()) == "0"
    assert g.n_torsion(2) == FinAbGroup.from_orders([2, 2])
    assert FinAbGroup.cyclic(4).is_subgroup_type_of(g)
    assert not FinAbGroup.from_orders([3, 3]).is_subgroup_type_of(g)


def test_random_large_entries(rng):
    for _ in range(20):
        a = IntMatrix.from_rows(rng.integers(-50, 51, size=(12, 9)).tolist())
        f = smith_normal_form(a)
        assert f.U @ a @ f.V == f.D and is_smith_form(f.D)
        assert smith_diagonal(a) == f.diagonal
