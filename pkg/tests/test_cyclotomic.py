import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermatbrauer.cyclotomic import (CycInt, NotDivisible, as_root_of_unity, cyc_add, cyc_mul, cyc_neg,
                                     cyclotomic_polynomial, divide_exact, euler_phi, galois_apply, norm_to_int,
                                     root_of_unity, torsion_order, units_mod, xi)

DEGREES = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15]


def embed(x, t=1):
    z = cmath.exp(2j * cmath.pi * t / x.degree)
    return sum(c * z ** k for k, c in enumerate(x.coeffs))


def elements(d):
    n = euler_phi(d)
    return st.lists(st.integers(-20, 20), min_size=n, max_size=n).map(lambda c: CycInt(d, tuple(c)))


pairs = st.sampled_from(DEGREES).flatmap(lambda d: st.tuples(elements(d), elements(d)))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for d in DEGREES:
        assert len(cyclotomic_polynomial(d)) == euler_phi(d) + 1


def test_polynomial_roots_are_primitive():
    for d in DEGREES:
        roots = np.roots(list(reversed(cyclotomic_polynomial(d))))
        assert all(abs(r ** d - 1) < 1e-8 for r in roots)
        assert len(roots) == euler_phi(d)


@settings(max_examples=200, deadline=None)
@given(pairs)
def test_ring_ops_match_embedding(xy):
    x, y = xy
    assert abs(embed(cyc_mul(x, y)) - embed(x) * embed(y)) < 1e-6 * (1 + abs(embed(x) * embed(y)))
    assert abs(embed(cyc_add(x, y)) - embed(x) - embed(y)) < 1e-9
    assert cyc_add(x, cyc_neg(x)).is_zero()
    assert x * y == y * x


@settings(max_examples=100, deadline=None)
@given(pairs)
def test_galois_is_ring_hom(xy):
    x, y = xy
    d = x.degree
    for t in units_mod(d):
        assert galois_apply(t, x * y) == galois_apply(t, x) * galois_apply(t, y)
        assert abs(embed(galois_apply(t, x)) - embed(x, t)) < 1e-6 * (1 + abs(embed(x, t)))


def test_galois_examples():
    z = CycInt.zeta(5)
    assert galois_apply(1, z) == z
    assert galois_apply(2, z) == CycInt.zeta(5, 2)
    with pytest.raises(ValueError):
        galois_apply(2, CycInt.zeta(4))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 12]).flatmap(elements))
def test_norm_matches_embedding(x):
    expected = np.prod([embed(x, t) for t in units_mod(x.degree)])
    assert abs(norm_to_int(x) - expected.real) < 1e-6 * (1 + abs(expected))


def test_roots_of_unity():
    assert as_root_of_unity(CycInt.one(3)).exponent == 0
    r = as_root_of_unity(-CycInt.zeta(3))
    assert r is not None and r.order() == 6
    assert as_root_of_unity(CycInt.one(5) + CycInt.zeta(5)) is None
    for d in DEGREES:
        w = torsion_order(d)
        assert xi(d) ** w == CycInt.one(d)
        assert all(not (xi(d) ** k).is_one() for k in range(1, w))
        assert all(as_root_of_unity(root_of_unity(d, e)).exponent == e for e in range(w))
        if d % 2:
            assert xi(d) ** 2 == CycInt.zeta(d)


def test_divide_exact():
    x = CycInt(5, (3, 6, 9, 0))
    assert divide_exact(x, 3).coeffs == (1, 2, 3, 0)
    with pytest.raises(NotDivisible):
        divide_exact(CycInt(5, (1, 0, 0, 0)), 2)


def test_evaluate_mod():
    p, r = 13, 3  # 3 has order 3 mod 13
    x = CycInt(3, (2, 5))
    assert x.evaluate_mod(p, r) == (2 + 5 * r) % p
    phi = CycInt.from_poly(3, [1, 1, 1])
    assert phi.is_zero()


def test_conjugate():
    z = CycInt.zeta(7)
    assert (z * z.conjugate()).is_one()
