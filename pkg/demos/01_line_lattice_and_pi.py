"""
The line lattice and H^1(G, Lambda)
===================================

A surface F(x0, x1) = G(x2, x3) with binary forms of degree d contains d^2
lines L_ij, one for each root i of F and root j of G.  Together with the
hyperplane class h they span a lattice Lambda of rank (d-1)^2 + 1.  Galois
permutes the roots, so Lambda is a module over G_f x G_g, and H^1 of it is
the algebraic part of the Brauer group.
"""

import numpy as np

from fermatbrauer.cohomology import h1, h1_by_saturation
from fermatbrauer.formulas import GaloisDatum, h1_pic_diagonal, pi_group, unit_subgroups
from fermatbrauer.groups import cyclic_group, dihedral_group, frobenius20, symmetric_group
from fermatbrauer.lattices import build_lambda, diagonal_action, lambda_from_action, product_action

# the lattice for d = 4 with both forms having cyclic Galois group
lam = build_lambda(4)
print("rank of Lambda for d=4:", lam.rank)
gram = np.array(lam.gram.to_rows())
print("Gram matrix on L_ij (i, j >= 1) and h:")
print(gram)
print("determinant:", round(np.linalg.det(gram)))

# H^1 by brute force over the Cayley graph, and the closed form Pi_{f,g}
pairs = [
    (cyclic_group(3), cyclic_group(3)),
    (cyclic_group(4), cyclic_group(4)),
    (cyclic_group(5), cyclic_group(5)),
    (symmetric_group(3), cyclic_group(3)),
    (dihedral_group(4), cyclic_group(4)),
    (frobenius20(), cyclic_group(5)),
]
print()
print(f"{'d':>2} {'G_f':>8} {'G_g':>8} {'oracle':>8} {'Pi':>8}")
for gf, gg in pairs:
    d = gf.degree
    oracle = h1(lambda_from_action(d, product_action(gf, gg)).module)
    pi = pi_group(GaloisDatum.from_group(gf), GaloisDatum.from_group(gg)).group
    print(f"{d:>2} {gf.name:>8} {gg.name:>8} {str(oracle):>8} {str(pi):>8}")

# diagonal surfaces a x0^d + b x1^d = c x2^d + e x3^d: the group is (Z/d)^2 x| H
# where H is the image of Galois in the units mod d
print()
print("diagonal surfaces, H^1 for every subgroup H of (Z/d)^x")
for d in range(3, 9):
    row = []
    for sub in unit_subgroups(d):
        row.append(f"{list(sub)}:{h1_pic_diagonal(d, sub)}")
    print(f"d={d}: " + "  ".join(row))

# the oracle agrees; here is the biggest case in the table
d, sub = 8, tuple(unit_subgroups(8)[-1])
oracle = h1(lambda_from_action(d, diagonal_action(d, sub)).module)
print(f"oracle at d=8, H={list(sub)}: {oracle}")

# H^1 is also the torsion of Z^N / B^1 for any lattice with finite action
print("saturation form, d=6 cyclic:", h1_by_saturation(build_lambda(6).module))
