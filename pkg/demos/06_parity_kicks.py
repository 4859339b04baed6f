"""
Parity kicks.

The Z1 / Z1Z2 pulses inside the CPHASE sequence average away, to first
order, any perturbation that anti-commutes with Z1Z2 and with Z1 or Z2. A
perturbation of strength lambda added during a cycle of duration lambda
then leaves an error of order lambda^2; perturbations that commute with the
kicks survive at order lambda.
"""
from anisogates import circuits as C
from anisogates.model import AnisotropyParams
from anisogates.pauli import pauli_operator
from anisogates.verify import anisotropy_cancellation_check, eliminated_by_kicks, parity_kick_suppression

params = AnisotropyParams.along_x(0.05, 0.1)
base = C.trotter_cphase(1.0, 1, params)
lambdas = [1e-3, 3e-3, 1e-2, 3e-2]

for probe in ('X1', 'Y2', 'X1*Z2', 'X1*X2', 'Z1', 'Z1*Z2', 'X1*X2 + Y1*Y2 + Z1*Z2'):
    E = pauli_operator(probe, 2) / 2
    r = parity_kick_suppression(E, lambdas, base, params)
    kind = 'removed by kicks' if eliminated_by_kicks(E) else 'survives kicks  '
    order = 'exact (below floor)' if r.vanishing else f'{r.fitted_exponent:.3f}'
    print(f'{probe:22s} {kind} order {order}')

r = anisotropy_cancellation_check(1.0, 1, params)
print(f'\nextra DM term along x: order {r.scaling.fitted_exponent:.3f}, CPHASE fidelity {r.fidelity:.10f}')
