"""Building the eigen-function of sqrt(6 + t) as an exact power series.

The eigen-function phi satisfies sqrt(6 + phi(theta)) = phi(theta / 9)
with phi(0) = 3 and phi'(0) = 1.  Its Taylor coefficients are rational and
follow from a triangular recursion.  The script prints them, measures how
well each truncation p_n satisfies the functional equation on [-2, 2], and
finds the root of p_5 whose absolute value approximates the candidate limit
from t0 = 0.
"""

from orbitkit import SqrtAffine, candidate_sequence_for, estimate_limit
from orbitkit.eigen import build_phi_series, phi_root_for_limit, phi_series_error

rs = build_phi_series(6, 8)
print("phi^(n)(0):", ", ".join(str(d) for d in rs.derivs[:6]))
print("p_5 coefficients:", ", ".join(str(c) for c in rs.coeffs(5)))

print("\n n   max E_n      mean E_n")
for n in range(1, 9):
    r = phi_series_error(rs, n)
    print(f"{n:2d}   {r.max_error:.3e}   {r.avg_error:.3e}")

theta = phi_root_for_limit(rs, 0.0, 5)
limit = estimate_limit(candidate_sequence_for(SqrtAffine(6), 0.0)).value
print(f"\nroot of p_5:        {theta:.10f}")
print(f"numeric limit:      {limit:.10f}")
print(f"using all 8 terms:  {phi_root_for_limit(rs, 0.0, 8):.10f}")
