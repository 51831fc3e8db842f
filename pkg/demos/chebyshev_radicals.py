"""Inverse multiple-angle polynomials and the pi^2/8 family.

p_K(cos x) = cos(K x) defines polynomials whose increasing inverse branch
f_K contracts toward 1 with multiplier 1/K^2.  The rescaled gaps
K^(2n) (1 - f_K^n(0)) all converge to pi^2/8; the scaled maps K f_K(t/K)
converge to K pi^2/8.  The Koenigs section shows that the same candidate
limit for sqrt(L^2 - L + t) is what defines C(L), with C(2) = pi.
"""

import math

from orbitkit.chebyshev import cheb_nested_table, cheb_poly
from orbitkit.koenigs import currie_c, disk_self_map_check

for K in (2, 3, 4, 5):
    rows = cheb_nested_table(K, 0.0, 12)
    print(f"K={K}  p_K = {cheb_poly(K)}")
    print("     c_4 = %.12f   c_8 = %.12f   c_12 = %.12f" % tuple(float(rows[j][1]) for j in (4, 8, 12)))
print(f"pi^2/8 = {math.pi**2 / 8:.12f}")

rows = cheb_nested_table(3, 0.0, 20, scaled=True)
print(f"\nscaled K=3: {float(rows[-1][1]):.12f}   3 pi^2/8 = {3 * math.pi**2 / 8:.12f}")

print("\nC(L) on a few points:")
for L in (1.25, 1.5, 2.0, 3.0, 4.0):
    chk = disk_self_map_check(L)
    print(f"  L={L:<5} C(L) = {currie_c(L):.12f}   disk self-map margin {chk.margin:.3f}")
