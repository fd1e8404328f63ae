"""
Spin squeezing
==============

xi is 4/3 of the smallest variance of the collective spin transverse to its
mean.  Closed form: a quadratic A cos^2 + B cos sin + C in the transverse
angle, minimized at xi = A/2 + C - sqrt(A^2 + B^2)/2.  Oracle: the smallest
eigenvalue of the transverse covariance block.
"""

import numpy as np

from threeboson import (
    ParamPoint,
    SqueezingSlice,
    abc_coefficients,
    xi_closed,
    xi_direct,
    xi_special,
)

p = ParamPoint(np.sqrt(0.7), np.sqrt(0.1), 0.0)
k = abc_coefficients(p)
print(f"A={k.A:.6f}  B={k.B:.6f}  C={k.c_coef:.6f}")
res = xi_closed(p)
print(f"xi closed = {res.xi:.6f}, direct = {xi_direct(p.to_state()).xi:.6f},"
      f" t=0 slice formula = {xi_special(SqueezingSlice.T_EQUALS_ZERO, np.sqrt(0.1)):.6f}")
print("least-variance direction:", np.round(res.direction, 6))

# the two one-parameter slices
grid = np.linspace(0, 1 / np.sqrt(3), 2001)
r0 = np.array([xi_special(SqueezingSlice.R_EQUALS_ZERO, s) for s in grid])
t0 = np.array([xi_special(SqueezingSlice.T_EQUALS_ZERO, s) for s in grid])
print(f"r=0: min xi {r0.min():.6f} at s={grid[r0.argmin()]:.4f} (sqrt(3)/6 = {np.sqrt(3) / 6:.4f})")
print(f"t=0: min xi {t0.min():.6f} at s={grid[t0.argmin()]:.4f}")
print(f"W end point: {r0[-1]:.6f}")

# no mean spin: the transverse plane is undefined, so the whole sphere is searched
ghz = xi_closed(ParamPoint(1 / np.sqrt(2), 0, 1 / np.sqrt(2)))
print(f"GHZ: xi = {ghz.xi:.6f}, method {ghz.method.value}")
