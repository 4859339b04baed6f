"""
Case 1: spin-orbit vector parallel to the field.

With beta along z the exchange pulse conserves total S^z, so two spins
(up-down, down-up) form a protected logical qubit. A single exchange pulse
sandwiched between encoded z rotations through epsilon = arctan(beta) gives
an exact encoded x rotation; two pulses and two Z gates give an exact
encoded ZZ coupling between neighbouring logical qubits.
"""
import math

from anisogates import circuits as C
from anisogates.model import AnisotropyParams, encoded_operator, logical_basis
from anisogates.spin_algebra import expm_evolve, phase_fidelity, subspace_restrict
from anisogates.verify import encoded_zz_target, physical_zz_target, su2_check

params = AnisotropyParams.along_z(0.05, gamma=0.1)
print(f'beta = {params.beta}, epsilon = {params.epsilon:.6f}')
print(f'encoded operators close su(2): max deviation {su2_check(1, 2):.1e}\n')

basis = logical_basis([1], 2)
for phi in (0.1, 0.7, math.pi / 2, math.pi):
    c = C.fig2a_xbar(phi, params)
    U, leak = subspace_restrict(C.compile(c, params), basis)
    T, _ = subspace_restrict(expm_evolve(phi * encoded_operator('x', 1, 2)), basis)
    print(f'x rotation phi={phi:.4f}: {c.steps} steps, fidelity {phase_fidelity(U, T):.16f}, leakage {leak:.1e}')

print('\nthe three-step circuit:')
print(C.fig2a_xbar(0.7, params).to_text())

for phi in (0.7, math.pi):
    c = C.fig2b_zz(phi, params)
    U = C.compile(c, params)
    f_phys = phase_fidelity(U, physical_zz_target(phi, 2, 3, 4))
    Uc, _ = subspace_restrict(U, logical_basis([1, 2], 4))
    Tc, _ = subspace_restrict(encoded_zz_target(phi), logical_basis([1, 2], 4))
    print(f'ZZ phi={phi:.4f}: {c.steps} steps; exp(-i phi S2z S3z) fidelity {f_phys:.16f}; '
          f'encoded exp(+i phi Sz1 Sz2) fidelity {phase_fidelity(Uc, Tc):.16f}')
