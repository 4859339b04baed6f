"""
Case 2: spin-orbit vector along x, perpendicular to the field.

Now single spins can be rotated about x without any local field along x.
The three-step block V is separable, and Z V Z V rotates spin 1 about x by
the fixed angle 4 epsilon. Continuous angles come from a 17-step circuit
whose Zeeman angle eta sets phi; its range is limited to |phi| <= 8 epsilon.
"""
import math

import numpy as np

from anisogates import circuits as C
from anisogates.model import AnisotropyParams
from anisogates.spin_algebra import expm_evolve, embed_spin, operator_schmidt, phase_fidelity
from anisogates.verify import seventeen_step_range_scan

params = AnisotropyParams.along_x(0.05, gamma=0.1)
eps = params.epsilon

V = C.compile(C.v_block(params), params)
spec = operator_schmidt(V)
print(f'V: operator-Schmidt values {np.round(spec.singular_values, 12)} -> separable')

U8 = C.compile(C.eight_step_x(params), params)
print(f'Z V Z V vs exp(-4i eps S1x): fidelity {phase_fidelity(U8, expm_evolve(4 * eps * embed_spin("x", 1, 2))):.16f}')

choice = C.select_interpretation()
print('\nangle-formula readings (worst fidelity deficit on the validation grid):')
for key, deficit in sorted(choice.worst_deficit.items(), key=lambda kv: kv[1]):
    print(f'  {key:34s} {deficit:.2e}{"  <- selected" if key == choice.selected else ""}')

print('\n17-step rotations:')
for eta in (0.3, 1.0, math.pi / 2, 2.5, -1.0):
    c, phi = C.seventeen_step_x(eta, params)
    f = phase_fidelity(C.compile(c, params), C.seventeen_step_target(phi))
    print(f'  eta={eta:+.4f} -> phi={phi:+.6f}, {c.steps} steps, fidelity {f:.16f}')

peak, where = seventeen_step_range_scan(0.03)
print(f'\nrange at epsilon = 0.03: max |phi| = {peak:.6f} at eta = {where:.4f} (pi/12 = {math.pi / 12:.6f})')

theta = 0.9
c = C.x_rotation(theta, params)
f = phase_fidelity(C.compile(c, params), C.seventeen_step_target(theta))
print(f'arbitrary angle {theta} via 4-epsilon blocks plus a correction: {c.steps} steps, fidelity {f:.16f}')
