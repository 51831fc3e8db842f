"""Möbius maps, their exact limits, and continued fractions.

A Möbius map (at + b)/(t + d) is diagonalised by its 2x2 matrix, so the
candidate limit is a rational function of the start value.  For
(3t + 6)/(t + 4) that function is (5 t0 - 10)/(t0 + 3).  The continued
fraction 2 + 15/(2 + 15/(...)) is the map 2 + 15/t, whose multiplier is
negative; the limit from t0 = 2 is 24/5.  Last, the golden-ratio fraction
1 + 1/(1 + ...) gives the Fibonacci residual that tends to sqrt(5).
"""

from fractions import Fraction

from orbitkit import Mobius, candidate_sequence_for, estimate_limit
from orbitkit.mobius import MobiusCoeffs, candidate_limit_exact, eigen, fibonacci_residual, iterate_closed

mc = MobiusCoeffs(3, 6, 4)
e = eigen(mc)
print(f"(3t+6)/(t+4): eigenvalues {e.lam}, {e.mu}; L = {e.L}, m = {e.m}")
print(f"third iterate at 0: {iterate_closed(mc, 3, 0)}")
for t0 in (0, 1, 3, 5):
    exact = candidate_limit_exact(mc, t0)
    num = estimate_limit(candidate_sequence_for(Mobius(3, 6, 4), float(t0))).value
    print(f"  t0={t0}: exact {exact} = {float(exact):.12f}   numeric {num:.12f}")

cf = MobiusCoeffs(2, 15, 0)
print(f"\n2 + 15/t from 2: exact limit {candidate_limit_exact(cf, 2)}, m = {eigen(cf).m}")

for n in (5, 10, 15, 20, 25):
    r = float(fibonacci_residual(n))
    print(f"phi^{2 * n} |phi - F_{n + 1}/F_{n}| = {r:.12f}")
print(f"sqrt(5)                     = {5 ** 0.5:.12f}")
print(f"exact Q limits stay rational: {candidate_limit_exact(mc, Fraction(1, 2))}")
