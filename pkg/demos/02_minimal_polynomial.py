"""Building F(X, Y), the minimal polynomial of the lambda function over
K_N(j), and watching its structure theorems hold.

F(X, j) is the product of (X - lambda∘A) over a full coset transversal of
the level-N principal congruence subgroup; the coefficients are recognized
exactly as polynomials in j.
"""

from genlambda.minpoly import (
    build_F,
    q0_structure,
    rational_j_expression,
    specialize_and_factor,
    verify_theorem1,
)

for N in (3, 4, 5):
    F = build_F(N)
    print(f"== level {N}: deg_X = {F.d}, deg_Y = {F.y_degree()}, "
          f"pole cusps t = {F.t}")
    report = verify_theorem1(F)
    for line in report.lines():
        print("   ", line)
    cube = specialize_and_factor(F, 0)
    square = specialize_and_factor(F, 1728)
    print("    F(X, 0)    :", cube.detail)
    print("    F(X, 1728) :", square.detail)
    ok, detail = q0_structure(F)
    print("    Q0 shape   :", detail)
    print()

print("== levels with deg_Y = 1 express j as a rational function of lambda")
F3 = build_F(3)
Q0, Q1 = rational_j_expression(F3)
print("level 3: j = -Q1(L)/Q0(L) with deg Q1 =", len(Q1) - 1, "and deg Q0 =", len(Q0) - 1)
print("Q0 =", " + ".join(f"({c})X^{k}" for k, c in enumerate(Q0) if not c.is_zero()))
