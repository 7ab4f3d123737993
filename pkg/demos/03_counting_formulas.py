"""The counting formulas: the degree d_N, the pair (ell_N, t_N) by three
independent routes, the arithmetic sums behind them, and ray-class degrees.
"""

from genlambda.counts import (
    count_report,
    ray_class_degree,
    sum_closed,
    sum_enum,
)

print("== d_N, cusp count, ell, t by every applicable route")
print(f"{'N':>3} {'d_N':>5} {'cusps':>6} {'ell':>5} {'t':>4}  routes agree")
for n in range(3, 17):
    rep = count_report(n)
    note = "" if rep.prop4_claimed else "  (sum formulas not claimed at 6)"
    print(f"{n:>3} {rep.d:>5} {rep.cusps:>6} {rep.ell:>5} {rep.t:>4}  {rep.agree}{note}")
print()

print("== the arithmetic sums: closed forms vs brute force")
for (kind, k, L, M) in [("I", 1, 1, 9), ("I", 0, 5, 35), ("J", 1, 5, 5), ("I", 1, 6, 12)]:
    closed = sum_closed(kind, k, L, M)
    brute = sum_enum(kind, k, L, M)
    print(f"{kind}_{k}({L},{M}) = {closed} (closed) = {brute} (enumerated)")
print()

print("== ray-class degrees over the Hilbert class field with zeta adjoined")
for (disc, n) in [(-11, 4), (-11, 3), (-7, 3), (-19, 4), (-8, 8)]:
    print(f"discriminant {disc}, modulus {n}: degree {ray_class_degree(disc, n)}")
