"""
Standard form and entanglement class
====================================

Any state of three bosons in two modes can be rotated, by one 2x2 unitary
acting on every particle, into

    r|000> + s e^{i phi} (|100> + |010> + |001>) + t|111>

with r, s, t >= 0.  The zero pattern of (r, s, t) then tells W from GHZ.
"""

import numpy as np

from threeboson import (
    apply_mode_transform,
    canonicalize,
    classify,
    decompose_ghz,
    decompose_w,
    make_state,
    random_mode_transform,
    random_state,
)

# a random state: generically every amplitude is nonzero
psi = random_state(2024)
print("amplitudes (a, b, c, d):", np.round(psi.amplitudes, 4))

form = canonicalize(psi)
print(f"r={form.r:.6f}  s={form.s:.6f}  t={form.t:.6f}  phi={form.phi:.6f}")
print("eliminated coefficient residual:", form.residual)
print("class:", classify(form).value)

# the transform maps the representative back onto the input
back = form.reconstruct()
print("round trip overlap:", abs(np.vdot(back.to_fock().vector, psi.to_fock().vector)))

# the same state seen in a rotated basis has the same standard form
moved = apply_mode_transform(psi, random_mode_transform(7))
other = canonicalize(moved)
print("after a random rotation:", np.round([other.r, other.s, other.t, other.phi], 10))

# GHZ-class forms split into two product terms |aaa> + |bbb>
pair = decompose_ghz(form)
print("GHZ decomposition error:", pair.reconstruction_error)

# a hidden W state: rotate W and recover it
w = apply_mode_transform(make_state(0, 1, 0, 0), random_mode_transform(3))
wf = canonicalize(w)
print("rotated W ->", np.round([wf.r, wf.s, wf.t], 12), classify(wf).value)
print("W decomposition error:", decompose_w(wf).reconstruction_error)
