"""Walk through the quartic root analysis that gates the torus family.

The metric polynomial is P(x) = a3 x^4 + a2 x^2 + a0 x + a1 (note: a0 is the
linear coefficient, a1 the constant).  A regular sphere system needs four
distinct real roots beta1 > beta2 > 0 > beta3 > beta4 with zero sum and
beta1 + beta4 < 0 < beta2 + beta3.
"""

import numpy as np

from monopole_lab import admissibility, discriminant, eval_p, from_roots, real_roots

print("-- the working example: roots (3, 2, -1, -4), leading coefficient -1")
params = from_roots([3, 2, -1, -4], -1.0)
print(f"coefficients: a3={params.a3:g} a2={params.a2:g} a0={params.a0:g} a1={params.a1:g}")
print(f"P(3) = {eval_p(params, 3.0):g}   P(0) = {eval_p(params, 0.0):g}")
print(f"discriminant = {discriminant(params):g}  (positive: four distinct real roots)")

roots = real_roots(params)
print(f"recovered roots: {roots.beta}")

report = admissibility(params)
print(f"coefficient sign conditions : {report.conditions_35}")
print(f"discriminant inequality     : {report.condition_36}")
print(f"root inequalities           : {report.root_inequalities}")
print(f"admissible                  : {report.admissible}")

print()
print("-- a quadruple that fails only the root inequalities: (4, 1, -2, -3)")
bad = from_roots([4, 1, -2, -3], -1.0)
rep = admissibility(bad)
print(f"beta1+beta4 = {4 - 3:g} > 0 breaks the sign split; report: "
      f"({rep.conditions_35}, {rep.condition_36}, {rep.root_inequalities})")

print()
print("-- round trip on random admissible quadruples")
rng = np.random.default_rng(1)
worst = 0.0
for _ in range(200):
    b1 = rng.uniform(2.0, 4.0)
    b2 = rng.uniform(0.5, b1 - 0.5)
    b3 = rng.uniform(-b2 + 0.05, -0.05)
    b4 = -(b1 + b2 + b3)
    if not (b3 > b4 and b1 + b4 < 0):
        continue
    back = real_roots(from_roots([b1, b2, b3, b4], -1.0)).beta
    worst = max(worst, max(abs(x - y) for x, y in zip(back, (b1, b2, b3, b4))))
print(f"max |roots -> coefficients -> roots| error: {worst:.3e}")
