"""Exact computations for Brauer groups of surfaces F(x0, x1) = G(x2, x3) and Fermat surfaces."""

__version__ = "0.1.0"

from .linalg import (FinAbGroup, IntMatrix, SmithForm, cokernel_invariants, kernel_basis, smith_normal_form,
                     solve_integer)
from .groups import FiniteGroup, family_group, group_from_permutations
from .cohomology import BudgetExceeded, LatticeModule, h1, h1_by_saturation
from .cyclotomic import CycInt, RootOfUnity, cyclotomic_polynomial
from .lattices import build_fermat_p, build_lambda, lambda_from_action, lattice_checks
from .formulas import (GaloisDatum, brauer_quotient_diagonal, crosscheck, h1_pic_diagonal, k_rational_case,
                       pi_group)
from .characters import CharQuadruple, character_sets, enumerate_s_flat, field_report, picard_number
from .jacobi import find_split_primes, h_value, jacobi_sum, kummer_consistency_test

__all__ = [
    "BudgetExceeded", "CharQuadruple", "CycInt", "FinAbGroup", "FiniteGroup", "GaloisDatum", "IntMatrix",
    "LatticeModule", "RootOfUnity", "SmithForm", "brauer_quotient_diagonal", "build_fermat_p", "build_lambda",
    "character_sets", "cokernel_invariants", "crosscheck", "cyclotomic_polynomial", "enumerate_s_flat",
    "family_group", "field_report", "find_split_primes", "group_from_permutations", "h1", "h1_by_saturation",
    "h1_pic_diagonal", "h_value", "jacobi_sum", "k_rational_case", "kernel_basis", "kummer_consistency_test",
    "lambda_from_action", "lattice_checks", "picard_number", "pi_group", "smith_normal_form", "solve_integer",
]
