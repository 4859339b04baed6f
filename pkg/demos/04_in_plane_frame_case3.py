"""
Case 3: in-plane spin-orbit vector at angle omega from x.

A Zeeman frame rotation by omega around each exchange pulse maps the
in-plane problem onto Case 2, so every Case-2 circuit carries over with
identical fidelity.
"""
from anisogates import circuits as C
from anisogates.model import AnisotropyParams, beta_frame_rotation
from anisogates.spin_algebra import max_entry, phase_fidelity

inplane = AnisotropyParams.in_plane(0.03, 0.04, 0.1)
omega, aligned = beta_frame_rotation(inplane)
print(f'beta = {inplane.beta[:2]} -> omega = {omega:.6f}, aligned |beta| = {aligned.beta[0]:.6f}')

c, phi = C.seventeen_step_x(1.0, aligned)
wrapped = C.case3_wrap(c, omega)
f_aligned = phase_fidelity(C.compile(c, aligned), C.seventeen_step_target(phi))
f_wrapped = phase_fidelity(C.compile(wrapped, inplane), C.seventeen_step_target(phi))
print(f'17-step: aligned {f_aligned:.16f}, wrapped {f_wrapped:.16f}')
print(f'max entry difference between the two unitaries: '
      f'{max_entry(C.compile(wrapped, inplane) - C.compile(c, aligned)):.1e}')
print(f'steps: {c.steps} aligned, {wrapped.steps} wrapped (frame pulses merge into the Zeeman layers)')
