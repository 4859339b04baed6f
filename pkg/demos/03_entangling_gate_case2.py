"""
Case 2 entangling gate.

Conjugating two exchange pulses with x rotations on the right spins cancels
everything but an Ising coupling: exp(-i phi S1z S2z) with
phi = 2 varphi sqrt(1 + beta^2). Each x rotation is itself a 17-step
circuit, and merged Zeeman layers keep the total within 55 steps.
"""
from anisogates import circuits as C
from anisogates.model import AnisotropyParams
from anisogates.spin_algebra import phase_fidelity
from anisogates.verify import physical_zz_target

for beta, gamma in ((0.01, 0.0), (0.05, 0.1), (0.1, 1.0)):
    params = AnisotropyParams.along_x(beta, gamma)
    for varphi in (0.2, 1.0):
        c, phi = C.fifty_five_step_zz(varphi, params)
        f = phase_fidelity(C.compile(c, params), physical_zz_target(phi, 1, 2, 2))
        print(f'beta={beta:<5} gamma={gamma:<4} varphi={varphi}: phi={phi:.6f}, {c.steps} steps, '
              f'fidelity {f:.16f}')
