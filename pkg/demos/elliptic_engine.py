"""The elliptic function under the special metrics, slice by slice.

Q solves 4 Q'^2 = P(Q).  Its restriction Q1 to the real axis oscillates
between the two largest roots; the restriction Q2 to the imaginary axis (seen
as a real function) oscillates between the middle two and solves
4 Q2'^2 = -P(Q2).
"""

import numpy as np
from scipy.special import ellipk

from monopole_lab import build_model_from_roots, eval_p, jacobi_special

model = build_model_from_roots([3, 2, -1, -4], -1.0)
print(f"half periods: K1 = {model.K1:.12f}, K2 = {model.K2:.12f}")
print(f"Q1 sweeps [{model.beta[1]}, {model.beta[0]}], Q2 sweeps [{model.beta[2]}, {model.beta[1]}]")
print(f"Q1(0) = {model.q1(0.0)}   Q1(K1) = {model.q1(model.K1)}")
print(f"Q2(0) = {model.q2(0.0)}   Q2(K2) = {model.q2(model.K2)}")

u = np.linspace(-5.0, 5.0, 2001)
x1 = model.q1(u)
d1 = model.dq1(u)
res = np.max(np.abs(4.0 * d1**2 - eval_p(model.params, x1)))
print(f"defining ODE residual (closed-form derivative): {res:.3e}")

h = 1e-3
fd = (8 * (model.q1(u + h / 2) - model.q1(u - h / 2)) / h - (model.q1(u + h) - model.q1(u - h)) / h) / 6
print(f"closed-form derivative vs finite differences:   {np.max(np.abs(d1 - fd)):.3e}")

print()
print("-- even quartic (2, 1, -1, -2): the slice is an elementary Jacobi function")
even = build_model_from_roots([2, 1, -1, -2], -1.0)
print(f"K1 = {even.K1:.15f}")
print(f"complete elliptic integral K(sqrt(3)/2) = {ellipk(0.75):.15f}")
z = np.linspace(0.0, 4.0 * even.K1, 1000)
gap = np.max(np.abs(jacobi_special(even, z) - even.q1(z)))
print(f"dn-based closed form vs generic engine: {gap:.3e}")
print("(the imaginary half period differs: K2 =", f"{even.K2:.12f},",
      "which is 2 K(1/2) and not K1)")
