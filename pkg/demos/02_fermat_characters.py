"""
Characters of the Fermat surface
================================

The group (Z/d)^3 acts on x0^d + x1^d + x2^d + x3^d = 0 and splits its
middle cohomology into lines indexed by quadruples (a0, a1, a2, a3) with
entries in [1, d-1] summing to 0 mod d.  The algebraic ones form S_flat:
every unit multiple of the quadruple still has entries summing to 2d.
"""

from fermatbrauer.characters import character_sets, field_report, picard_number
from fermatbrauer.lattices import lattice_checks

print(f"{'d':>3} {'rho':>5} {'S_flat':>7} {'prim':>6} {'S_ind':>6} {'S_reg':>6}")
for d in (3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 24):
    c = character_sets(d).counts()
    print(f"{d:>3} {c['picard_number']:>5} {c['s_flat']:>7} {c['s_primitive']:>6} {c['s_ind']:>6} {c['s_reg']:>6}")

# for d prime to 6 only the lines contribute: rho = 3(d-1)(d-2) + 1
print()
print("rho(F_d) for d = 1..30:")
print([picard_number(d) for d in range(1, 31)])
print("3(d-1)(d-2)+1 when gcd(d, 6) = 1:",
      all(picard_number(d) == 3 * (d - 1) * (d - 2) + 1 for d in range(5, 60) if d % 2 and d % 3))

# which field the Picard group is defined over
print()
for d in (4, 5, 8, 9, 10, 12, 18):
    r = field_report(d)
    print(f"d={d:>2} case {r.case:>12}: {r.field or 'needs exceptional-degree table'}")

# the primitive lattice P and the checks used in the proof that Br is generated by lines
print()
for d in (3, 4, 5):
    rec = lattice_checks(d)
    print(f"d={d}: rank P = {rec['p_rank']}, aC {rec['aC']}, bC {rec['bC']}, <omega, omega-bar> = {rec['omega_values']}")
