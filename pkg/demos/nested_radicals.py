"""Nested square roots of 2 and the pi^2/4 limit.

Iterating f(t) = sqrt(2 + t) from 0 gives sqrt(2), sqrt(2 + sqrt(2)), ...
which creep up to the fixed point 2.  Dividing the gap 2 - t_n by
m^n = 4^-n leaves a sequence that settles on pi^2/4.  The script prints the
raw gaps, the rescaled terms, and the accelerated estimate, then repeats the
exercise for a cube-root cousin whose limit has no known closed form.
"""

import math

from orbitkit import KthRoot, SqrtAffine, candidate_sequence_for, estimate_limit, orbit

f = SqrtAffine(2)
cs = candidate_sequence_for(f, 0.0, 40)
print(" n   2 - t_n                     c_n = 4^n (2 - t_n)")
for n in range(0, 21, 4):
    gap = 2 - cs.orbit.values[n]
    print(f"{n:2d}  {float(gap):.6e}               {float(cs.c[n]):.15f}")

est = estimate_limit(cs)
print(f"\naccelerated limit  {est.value!r}  (+/- {est.abs_error_bound:.1e}, {est.method})")
print(f"pi^2 / 4           {math.pi**2 / 4!r}")

# the classical form: 2^n sqrt(2 - t_{n-1}) -> pi
t = orbit(f, 0.0, 19).values[19]
print(f"2^20 sqrt(2 - t_19) = {2**20 * math.sqrt(float(2 - t))!r}")

g = KthRoot(3, 3)
for prec in ("extended", "double"):
    e = estimate_limit(candidate_sequence_for(g, 0.0, 400, prec), 1e-6 if prec == "double" else 1e-8)
    print(f"cube-root analogue, {prec:8s}: {e.value!r}")
