from itertools import combinations, product
from math import gcd

import pytest

from fermatbrauer.formulas import (BilinearClass, BrauerReport, GaloisDatum, brauer_quotient_diagonal,
                                   brauer_quotient_pi, chi_phi, coprime_shortcut, crosscheck, h1_pic_diagonal,
                                   hom_tensor_group, k_rational_case, k_rational_from_formula, pi_group,
                                   primitive_vanishing_applies, special_case_expectations, unit_subgroups)
from fermatbrauer.groups import (alternating_group, cyclic_group, dihedral_group, frobenius20,
                                 group_from_permutations, symmetric_group)
from fermatbrauer.linalg import FinAbGroup


def datum(g):
    return GaloisDatum.from_group(g)


def a4_on_edges():
    edges = list(combinations(range(4), 2))
    gens = []
    for p in alternating_group(4).generators:
        gens.append(tuple(edges.index(tuple(sorted((p[a], p[b])))) for a, b in edges))
    return group_from_permutations(6, gens, name="A4 on edges")


def torsion_counts(group: FinAbGroup, n: int) -> list[int]:
    out = []
    for k in range(1, n + 1):
        c = 1
        for m in group.invariant_factors:
            c *= gcd(k, m)
        out.append(c)
    return out


def brute_force_pi_counts(df, dg):
    """Enumerate every bilinear map and keep those with chi_phi identically zero."""
    d = df.degree
    left, right = df.quotient.group.invariant_factors, dg.quotient.group.invariant_factors
    ranges = []
    for m in left:
        for n in right:
            e = gcd(gcd(m, n), d)
            ranges.append([(d // e) * t for t in range(e)])
    kept = []
    for coeffs in product(*ranges):
        mat = tuple(tuple(coeffs[u * len(right) + v] for v in range(len(right))) for u in range(len(left)))
        phi = BilinearClass(d, left, right, mat)
        if all(chi_phi(df, dg, phi, a, b) == 0 for a in range(df.group.order) for b in range(dg.group.order)):
            kept.append(phi)
    # element orders of the kept subgroup, as torsion counts
    counts = []
    for k in range(1, d + 1):
        counts.append(sum(1 for phi in kept if all((k * c) % d == 0 for row in phi.matrix for c in row)))
    return counts


PAIRS = [
    (cyclic_group(3), cyclic_group(3)),
    (cyclic_group(4), cyclic_group(4)),
    (cyclic_group(5), cyclic_group(5)),
    (symmetric_group(3), cyclic_group(3)),
    (dihedral_group(4), cyclic_group(4)),
    (cyclic_group(4), dihedral_group(4)),
    (cyclic_group(6), cyclic_group(6)),
    (dihedral_group(6), cyclic_group(6)),
    (frobenius20(), cyclic_group(5)),
]


@pytest.mark.parametrize("gf,gg", PAIRS, ids=lambda g: g.name)
def test_pi_matches_literal_definition(gf, gg):
    df, dg = datum(gf), datum(gg)
    pi = pi_group(df, dg)
    assert torsion_counts(pi.group, df.degree) == brute_force_pi_counts(df, dg)
    for phi in pi.generators:
        assert all(chi_phi(df, dg, phi, a, b) == 0 for a in range(gf.order) for b in range(gg.order))


def test_pi_examples():
    assert pi_group(datum(cyclic_group(5)), datum(cyclic_group(5))).group == FinAbGroup.cyclic(5)
    assert pi_group(datum(cyclic_group(4)), datum(cyclic_group(4))).group == FinAbGroup.cyclic(2)
    assert pi_group(datum(symmetric_group(3)), datum(cyclic_group(3))).group == FinAbGroup()


def test_chi_phi_cyclic():
    for d in (3, 4, 5, 6):
        df = dg = datum(cyclic_group(d))
        zero = BilinearClass(d, (d,), (d,), ((0,),))
        gen = BilinearClass(d, (d,), (d,), ((1,),))
        assert chi_phi(df, dg, zero, 1, 1) == 0
        rot = df.group.index(tuple((x + 1) % d for x in range(d)))
        a_vals = {chi_phi(df, dg, gen, a, b) for a in range(d) for b in range(d)}
        if d % 2:
            assert a_vals == {0}
        else:
            assert chi_phi(df, dg, gen, rot, 0) == d // 2


def test_coprime_shortcut():
    df, dg = datum(dihedral_group(6)), datum(a4_on_edges())
    assert df.quotient.group == FinAbGroup.cyclic(2)
    assert dg.quotient.group == FinAbGroup.cyclic(3)
    assert coprime_shortcut(df, dg) == FinAbGroup()
    assert pi_group(df, dg).group == FinAbGroup()
    s = datum(symmetric_group(3))
    assert coprime_shortcut(s, s) is None or s.quotient.group == FinAbGroup()
    c = datum(cyclic_group(4))
    assert coprime_shortcut(c, c) is None


def test_coprime_pair_oracle():
    v = crosscheck(datum(dihedral_group(6)), datum(a4_on_edges()))
    assert v.agree and v.oracle == FinAbGroup()


def test_primitive_vanishing():
    assert primitive_vanishing_applies(datum(symmetric_group(3)), datum(cyclic_group(3)))
    assert not primitive_vanishing_applies(datum(cyclic_group(5)), datum(cyclic_group(5)))
    assert not primitive_vanishing_applies(datum(cyclic_group(4)), datum(cyclic_group(4)))


def test_hom_tensor():
    assert hom_tensor_group(datum(cyclic_group(4)), datum(cyclic_group(4))) == FinAbGroup.cyclic(4)
    v = crosscheck(datum(cyclic_group(6)), datum(dihedral_group(6)), mode="tensor")
    assert v.agree


def brute_h1_diagonal(d, units):
    h = {1 % d}
    while True:
        new = {(x * u) % d for x in h for u in units} - h
        if not new:
            break
        h |= new
    evens = {(2 * x) % d for x in range(d)}
    return sum(1 for x in evens if all(((n * n - 1) * x) % d == 0 for n in h))


def test_h1_pic_diagonal_brute_force():
    for d in range(1, 41):
        for sub in unit_subgroups(d):
            assert h1_pic_diagonal(d, sub).order == brute_h1_diagonal(d, sub)


def test_h1_pic_diagonal_examples():
    assert h1_pic_diagonal(5) == FinAbGroup.cyclic(5)
    assert h1_pic_diagonal(6) == FinAbGroup.cyclic(3)
    assert h1_pic_diagonal(5, [2]) == FinAbGroup()
    assert h1_pic_diagonal(5, [1, 4]) == FinAbGroup.cyclic(5)
    with pytest.raises(ValueError):
        h1_pic_diagonal(6, [2])


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_diagonal_oracle(d):
    for sub in unit_subgroups(d):
        assert crosscheck(mode="diagonal", d=d, units=sub).agree


def test_brauer_quotient_diagonal():
    assert brauer_quotient_diagonal(8, [1], "number_field").br1_quotient == FinAbGroup.cyclic(4)
    assert brauer_quotient_diagonal(7, [3], "generic_function_field").br1_quotient == FinAbGroup()
    rep = brauer_quotient_diagonal(6, [1], "custom_r", r=3)
    assert rep.br1_quotient == FinAbGroup.cyclic(3)
    assert rep.to_dict()["assumptions"]["caller_asserted"]
    with pytest.raises(ValueError):
        brauer_quotient_diagonal(6, [1], "custom_r", r=4)
    with pytest.raises(ValueError):
        brauer_quotient_diagonal(6, [1], "bogus")
    with pytest.raises(ValueError):
        BrauerReport(FinAbGroup(), "number_field", FinAbGroup.cyclic(2))


def test_brauer_quotient_pi():
    assert brauer_quotient_pi(FinAbGroup.cyclic(6), 3, 6) == FinAbGroup.cyclic(3)
    assert brauer_quotient_pi(FinAbGroup.cyclic(6), 6, 6) == FinAbGroup.cyclic(6)


def test_k_rational_rule():
    assert k_rational_case(12) == FinAbGroup.from_orders([2, 3])
    assert k_rational_case(24) == FinAbGroup.from_orders([4, 3])
    assert k_rational_case(5) == FinAbGroup()
    for d in range(1, 49):
        rule = k_rational_case(d)
        formula = k_rational_from_formula(d)
        if d % 16:
            assert rule == formula
        else:
            assert formula.order == 2 * rule.order


def test_special_cases():
    assert special_case_expectations(4, "same_cyclic_field") == FinAbGroup()
    assert special_case_expectations(3, "cyclic_times_split") == FinAbGroup.cyclic(3)
    assert special_case_expectations(5, "cyclic_times_split") == FinAbGroup.from_orders([5, 5, 5])
    for d in (3, 4):
        for case in ("same_cyclic_field", "cyclic_times_split"):
            assert crosscheck(mode="special", d=d, case=case).agree


def test_crosscheck_record():
    v = crosscheck(datum(dihedral_group(4)), datum(cyclic_group(4)))
    rec = v.to_dict()
    assert rec["agree"] and rec["oracle"] == rec["formula"]
    with pytest.raises(ValueError):
        crosscheck(mode="bogus", d=3)
