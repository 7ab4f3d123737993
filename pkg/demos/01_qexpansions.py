"""A tour of the exact q-expansion toolkit.

Everything here is exact: coefficients live in the cyclotomic field K_N,
stored in the power basis of zeta_N with rational coordinates, and every
series carries an explicit precision window.
"""

from genlambda.cyclotomic import CycNum
from genlambda.forms import e_series, g_pow_series, j_series, lambda_classical_series
from genlambda.lam import lambda_series
from genlambda.modgroup import SL2Mat

N = 3
z = CycNum.zeta(N)

print("== cyclotomic arithmetic in K_3")
print("zeta^2            =", z * z)
print("(1-zeta)^3 / zeta =", (1 - z) ** 3 / z)
print("1/(1-zeta)        =", (1 - z).inv())
print()

print("== the weight-2 division values E(tau; r, s)")
for (r, s) in [(0, 1), (1, 0), (1, 1)]:
    print(f"E(tau; {r},{s}) =", e_series(r, s, N, 8))
print()

print("== the modular invariant (a series in q^3 at level 3)")
print("j =", j_series(N, 13))
print()

print("== the eta-quotient generator for the level-3 Hecke group")
print("g^12 =", g_pow_series(N, 7))
print()

print("== the generalized lambda function at the identity coset")
lam = lambda_series(SL2Mat.identity(N), 8)
print("L =", lam)
print("leading coefficient is (1-zeta)^3/zeta =", lam.leading())
print()

print("== the classical level-2 lambda in the level-4 context")
print("lambda =", lambda_classical_series(12))
