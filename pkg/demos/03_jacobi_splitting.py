"""
Jacobi sums and where the Picard group is defined
=================================================

Frobenius at a prime p = 1 mod w acts on the line of a character chi in
S_flat by h = psi(-1)^a0 J(p) / p, a root of unity.  All h equal 1 exactly
when p splits completely in the field of definition L of the Picard group.
For d = 4 that field is Q(mu_8); for d = 8 it is Q(mu_16, 2^(1/4)).
"""

from collections import Counter

from fermatbrauer.characters import enumerate_s_flat, s_primitive
from fermatbrauer.cyclotomic import galois_apply
from fermatbrauer.jacobi import find_split_primes, h_value, jacobi_sum, kummer_consistency_test, split_prime

pr = split_prime(3, 7)
chi = enumerate_s_flat(3)[0]
j = jacobi_sum(chi, pr)
print(f"d=3, p=7, chi={chi}: J = {j}, J * conj(J) = {j * j.conjugate()}")

for d in (4, 8):
    print()
    print(f"d={d}: primes where every h is 1")
    hits = []
    for pr in find_split_primes(d, 2000):
        if all(h_value(c, pr).is_one for c in enumerate_s_flat(d)):
            hits.append(pr.p)
    print(hits)
    if d == 4:
        print("p = 1 mod 8 among them:", all(p % 8 == 1 for p in hits))
    else:
        print("2 a fourth power mod each:", all(pow(2, (p - 1) // 4, p) == 1 for p in hits))

# the distribution of h over primes for one character of degree 8
chi = s_primitive(8)[0]
dist = Counter(h_value(chi, pr).h_root.exponent for pr in find_split_primes(8, 2000))
print()
print(f"h exponents (xi = zeta_8) for chi={chi}:", dict(sorted(dist.items())))

# h transforms like the character: h_{t chi} = sigma_t(h_chi)
pr = split_prime(8, 17)
h = h_value(chi, pr).h
print("equivariance at p=17:", all(h_value(chi.scaled(t), pr).h == galois_apply(t, h) for t in (3, 5, 7)))

# Kummer test: equal residue signatures of the Delta generators force equal h
v = kummer_consistency_test(8, chi, find_split_primes(8, 2000))
print(f"Kummer test: {v.primes_tested} primes, {v.classes} signature classes, passed {v.passed}")
