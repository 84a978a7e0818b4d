"""
A polynomial identity with its proof machinery on display
=========================================================

Weight the Touchard polynomials T_1..T_{p-1} by powers of -1/m and the sum
collapses to a closed form: (-x)^m times the sum is congruent mod p to
-x^p times a short factorial polynomial in -x.  Both sides live here as
coefficient lists over the prime field, so equality is exact and visible.
"""

from bellmod import make_context
from bellmod.congruences import (
    geometric_sum_lemma_check,
    proof_intermediate,
    theorem2_lhs,
    theorem2_rhs,
    verify_special_cases,
    weighted_touchard_sum,
)

P = 7
ctx = make_context(P)

print(f"both sides as coefficient lists mod {P} (ascending degree):")
for m in range(1, 7):
    lhs = theorem2_lhs(ctx, m)
    rhs = theorem2_rhs(ctx, m)
    tag = "equal" if lhs.equals(rhs) else "DIFFER"
    print(f"  m = {m}: lhs {list(lhs.coeffs)}")
    print(f"         rhs {list(rhs.coeffs)}  -> {tag}")

# the collapse pivots on r, the least positive residue of -m: only the
# terms x^r..x^{p-1} survive in the intermediate closed form
print()
m = 3
mid = proof_intermediate(ctx, m)
direct = weighted_touchard_sum(ctx, m)
print(f"intermediate closed form at m = {m}: {list(mid.coeffs)}")
print(f"direct weighted sum:                {list(direct.coeffs)}")

# underneath sits a geometric sum that vanishes except at one index
print()
print(f"geometric sums at m = {m}: nonzero only where p divides m + j")
for rep in geometric_sum_lemma_check(ctx, m):
    if rep.lhs != 0:
        print(f"  j = {rep.params['j']}: sum = {rep.lhs}")

# low weights have hand-sized displays; m = 4 evaluates to
# (-6 + 6x - 3x^2 + x^3) / x^3, checked here at every x
print()
print("low-weight rational forms at every point of the field:")
for x in range(1, P):
    marks = [
        f"m={r.params['m']}:{'ok' if r.passed else 'BAD'}"
        for r in verify_special_cases(ctx, x)
    ]
    print(f"  x = {x}: " + "  ".join(marks))
