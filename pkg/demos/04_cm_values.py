"""Values of the lambda function at complex-multiplication points, the
identity suite, and the unit-circle law.

The special values at quadratic irrationalities are algebraic; the reports
compare double-precision evaluations against closed radical forms and the
defining cubics. Two printed values in the published level-4 list are
internally inconsistent with the published minimal-polynomial displays; the
reports show both the printed and the corrected readings.
"""

import math
import random

from genlambda.cmval import (
    eval_lambda_numeric,
    unit_circle_check,
    verify_cm_table,
    verify_identities,
)
from genlambda.modgroup import SL2Mat

for n in (3, 4):
    for line in verify_cm_table(n).lines():
        print(line)
    print()

for n in (3, 4):
    for line in verify_identities(n, prec=100).lines():
        print(line)
    print()

angles = [math.pi * (0.55 + 0.35 * k / 9) for k in range(10)]
rng = random.Random(1)
points = [complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.3)) for _ in range(5)]
for n in (3, 4, 5):
    for line in unit_circle_check(n, angles, points).lines():
        print(line)
    print()

print("== a value on the unit circle, explicitly")
alpha = complex(math.cos(0.6 * math.pi), math.sin(0.6 * math.pi))
val = eval_lambda_numeric(SL2Mat.identity(4), 4, alpha)
print(f"L({alpha:.4f}) = {val:.12f}, |L| - 1 = {abs(val) - 1:.2e}")
