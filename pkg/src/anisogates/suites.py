"""
Suite orchestration behind the ``aniso-gates`` commands.

Each ``*_row`` function evaluates one grid point and returns one report, so
a single-point sweep and the matching verify-all row run the very same
computation. Suites return reports in a fixed order.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
import scipy.linalg

from . import circuits as C
from .config import RunConfig
from .model import AnisotropyParams, Schedule, beta_frame_rotation, encoded_operator, logical_basis
from .pauli import pauli_operator
from .spin_algebra import embed_spin, expm_evolve, max_entry, phase_fidelity
from .verify import (ScalingReport, VerificationReport, anisotropy_cancellation_check,
                     case4_sx_identity_check, compare, eliminated_by_kicks, encoded_zz_target,
                     parity_kick_suppression, physical_zz_target, separability_check, su2_check,
                     trotter_scaling, verify_identity)

Report = Union[VerificationReport, ScalingReport]

NULL_GATE_REASON = 'ε = 0 yields null gate'
SU2_TOL = 1e-14
SEPARABILITY_TOL = 1e-10
COVARIANCE_TOL = 1e-12
SIGN_SENSITIVITY = 1e-3
RANGE_EPSILON = 0.03
RANGE_REFERENCE = 0.2399
DEFAULT_PROBES = (
    ('kick.x1', 'X1', True),
    ('kick.y2', 'Y2', True),
    ('kick.x1z2', 'X1*Z2', True),
    ('kick.z1', 'Z1', False),
    ('kick.z1z2', 'Z1*Z2', False),
)


@dataclass
class SuiteResult:
    command: str
    reports: list[Report] = field(default_factory=list)
    interpretations: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if all(r.passed for r in self.reports if not (r.diagnostic or r.skipped)) else 1


def label_of(text: str) -> str:
    """Lowercase label restricted to ``[a-z0-9_.-]``."""
    return re.sub(r'[^a-z0-9_.-]+', '_', text.lower()).strip('_') or 'probe'


def measured(label: str, value: float, threshold: float, *, case: str, **meta) -> VerificationReport:
    """Report for a scalar check ``value <= threshold`` with no unitary comparison."""
    notes = list(meta.pop('notes', []))
    passed = bool(value <= threshold)
    return VerificationReport(label=label, fidelity=math.nan, phase_aligned_distance=math.nan,
                              passed=passed, tolerance=threshold, case=case, value=float(value),
                              notes=notes, **meta)


def skipped(label: str, reason: str, *, case: str, **meta) -> VerificationReport:
    return VerificationReport(label=label, fidelity=math.nan, phase_aligned_distance=math.nan,
                              passed=False, tolerance=math.nan, case=case, skipped=True,
                              notes=[reason], **meta)


def selected_interpretation() -> str:
    return C.select_interpretation().selected or 'none'


# --------------------------------------------------------------------------- case 1

def fig2a_row(phi: float, beta: float, gamma: float, cfg: RunConfig) -> VerificationReport:
    params = AnisotropyParams.along_z(beta, gamma)
    target = expm_evolve(phi * encoded_operator('x', 1, 2))
    return verify_identity(C.fig2a_xbar(phi, params), target, params, subspace=logical_basis([1], 2),
                           tol=cfg.tol_exact, leakage_tol=cfg.tol_leakage, case='case1', angle=phi)


def fig2a_sign_row(cfg: RunConfig) -> VerificationReport:
    """The encoded x rotation must fail against the opposite rotation sense."""
    phi = 0.7
    params = AnisotropyParams.along_z(cfg.beta, cfg.gamma)
    wrong = expm_evolve(-phi * encoded_operator('x', 1, 2))
    r = verify_identity(C.fig2a_xbar(phi, params), wrong, params, subspace=logical_basis([1], 2),
                        tol=cfg.tol_exact, label='fig2a_xbar.sign_sensitivity', case='case1', angle=phi)
    deficit = 1 - r.fidelity
    r.value = deficit
    r.tolerance = SIGN_SENSITIVITY
    r.passed = deficit > SIGN_SENSITIVITY
    r.deviation = []
    r.notes = [f'fidelity against the reversed rotation is {r.fidelity:.12f}; '
               f'the check requires a deficit above {SIGN_SENSITIVITY:g}']
    return r


def fig2b_row(phi: float, beta: float, gamma: float, cfg: RunConfig) -> VerificationReport:
    """Full-space check against ``exp(-+i phi S_2^z S_3^z)``; the sign that holds is recorded."""
    params = AnisotropyParams.along_z(beta, gamma)
    c = C.fig2b_zz(phi, params)
    U = C.compile(c, params)
    best = None
    for sign, tag in ((1, 'zz_minus'), (-1, 'zz_plus')):
        r = compare(U, physical_zz_target(sign * phi, 2, 3, 4), label='fig2b_zz', tol=cfg.tol_exact,
                    case='case1', angle=phi, beta=params.beta, gamma=params.gamma,
                    step_count=c.steps, interpretation_id=tag)
        if r.passed:
            return r
        best = best or r
    return best


def fig2b_encoded_row(phi: float, beta: float, gamma: float, cfg: RunConfig) -> VerificationReport:
    params = AnisotropyParams.along_z(beta, gamma)
    return verify_identity(C.fig2b_zz(phi, params), encoded_zz_target(phi), params,
                           subspace=logical_basis([1, 2], 4), tol=cfg.tol_exact,
                           leakage_tol=cfg.tol_leakage, label='fig2b_zz.encoded', case='case1',
                           angle=phi, interpretation_id='encoded_plus')


def su2_row(i: int, n: int) -> VerificationReport:
    return measured(f'su2_check.q{i}n{n}', su2_check(i, n), SU2_TOL, case='case1')


# --------------------------------------------------------------------------- case 2

def v_block_row(beta: float, gamma: float, cfg: RunConfig) -> VerificationReport:
    params = AnisotropyParams.along_x(beta, gamma)
    c = C.v_block(params)
    rank, second = separability_check(C.compile(c, params), SEPARABILITY_TOL)
    return measured('v_block.separability', second, SEPARABILITY_TOL, case='case2',
                    beta=params.beta, gamma=params.gamma, step_count=c.steps,
                    notes=[f'operator-Schmidt rank {rank}'])


def eight_step_row(beta: float, gamma: float, cfg: RunConfig, inverse: bool = False) -> VerificationReport:
    params = AnisotropyParams.along_x(beta, gamma)
    eps = math.atan(beta)
    sign = -1 if inverse else 1
    target = C.seventeen_step_target(-sign * 4 * eps)
    label = 'eight_step_x.inverse' if inverse else 'eight_step_x'
    r = verify_identity(C.eight_step_x(params, inverse=inverse), target, params, tol=cfg.tol_exact,
                        label=label, case='case2', angle=4 * eps * sign)
    if gamma != 0:
        r.diagnostic = True
        r.notes.append('gamma != 0: measured and reported only')
    return r


def seventeen_step_row(eta: float, beta: float, gamma: float, cfg: RunConfig) -> VerificationReport:
    params = AnisotropyParams.along_x(beta, gamma)
    if beta == 0:
        return skipped('seventeen_step_x', NULL_GATE_REASON, case='case2', angle=eta,
                       beta=params.beta, gamma=gamma, interpretation_id=selected_interpretation())
    interp = selected_interpretation()
    c, phi = C.seventeen_step_x(eta, params, interpretation=interp)
    r = verify_identity(c, C.seventeen_step_target(phi), params, tol=cfg.tol_approx, case='case2',
                        angle=eta, interpretation_id=interp)
    r.value = phi
    return r


def disambiguation_row(cfg: RunConfig) -> VerificationReport:
    result = C.select_interpretation(tol=cfg.tol_approx)
    selected = result.selected or 'none'
    notes = [f'{k}: worst deficit {v:.3e}' for k, v in sorted(result.worst_deficit.items())]
    notes.append(f'{len(result.passing)} of {len(result.worst_deficit)} readings pass on '
                 f'{result.grid_size} grid points')
    deficit = result.worst_deficit.get(selected, math.inf)
    r = measured('seventeen_step_x.disambiguation', deficit, cfg.tol_approx, case='case2',
                 interpretation_id=selected, notes=notes)
    r.passed = r.passed and result.unique
    return r


def range_scan_row(cfg: RunConfig) -> VerificationReport:
    from .verify import seventeen_step_range_scan
    interp = selected_interpretation()
    peak, at_eta = seventeen_step_range_scan(RANGE_EPSILON, interpretation=interp)
    gap = abs(peak - RANGE_REFERENCE)
    rel = abs(peak - math.pi / 12) / (math.pi / 12)
    r = measured('seventeen_step_x.range_scan', gap, 1e-3, case='case2', angle=at_eta,
                 interpretation_id=interp,
                 notes=[f'max |phi| = {peak:.6f} at eta = {at_eta:.6f} for epsilon = {RANGE_EPSILON}',
                        f'relative distance to pi/12 is {rel:.4f}'])
    r.passed = r.passed and rel <= 0.15
    r.beta = (math.tan(RANGE_EPSILON), 0.0, 0.0)
    return r


def fifty_five_row(varphi: float, beta: float, gamma: float, cfg: RunConfig) -> VerificationReport:
    params = AnisotropyParams.along_x(beta, gamma)
    interp = selected_interpretation()
    if beta == 0:
        return skipped('fifty_five_step_zz', NULL_GATE_REASON, case='case2', angle=varphi,
                       beta=params.beta, gamma=gamma, interpretation_id=interp)
    c, phi = C.fifty_five_step_zz(varphi, params, interp)
    r = verify_identity(c, physical_zz_target(phi, 1, 2, 2), params, tol=cfg.tol_approx, case='case2',
                        angle=varphi, interpretation_id=interp)
    r.value = phi
    if c.steps > 55:
        r.passed = False
        r.notes.append(f'{c.steps} steps exceed 55')
    if not r.passed:
        r.notes.extend(_fifty_five_breakdown(varphi, params, interp))
    return r


def _fifty_five_breakdown(varphi, params, interp) -> list[str]:
    """Fidelity of each x-type factor against its own target, to localise a failure."""
    eps = math.atan(params.beta[0])
    notes = []
    for theta, site in ((eps / 2, 'diff'), (-eps, 2), (-eps / 2, 'diff')):
        f = phase_fidelity(C.compile(C.x_rotation(theta, params, site, interp), params),
                           C.seventeen_step_target(theta, site))
        notes.append(f'x_rotation({theta:.6g}, {site}): fidelity {f:.15f}')
    return notes


# --------------------------------------------------------------------------- case 3

def _covariance(label, build, target, bx, by, gamma, cfg, angle=0.0) -> VerificationReport:
    inplane = AnisotropyParams.in_plane(bx, by, gamma)
    omega, aligned = beta_frame_rotation(inplane)
    wrapped = C.case3_wrap(build(aligned), omega)
    r_aligned = verify_identity(build(aligned), target(aligned), aligned, tol=cfg.tol_approx)
    r = verify_identity(wrapped, target(aligned), inplane, tol=cfg.tol_approx, label=f'case3.{label}',
                        case='case3', angle=angle, interpretation_id=selected_interpretation())
    gap = abs(r.fidelity - r_aligned.fidelity)
    r.value = gap
    r.notes.append(f'omega = {omega:.12f}; aligned fidelity {r_aligned.fidelity:.16f}')
    if gap > COVARIANCE_TOL:
        r.passed = False
        r.notes.append(f'wrapped and aligned fidelities differ by {gap:.3e} > {COVARIANCE_TOL:g}')
    return r


def case3_rows(cfg: RunConfig) -> list[VerificationReport]:
    bx, by, g = cfg.beta_x, cfg.beta_y, cfg.gamma
    interp = selected_interpretation()
    eta = 1.0
    rows = [
        _covariance('eight_step_x', lambda p: C.eight_step_x(p),
                    lambda p: C.seventeen_step_target(-4 * p.epsilon), bx, by, g, cfg),
        _covariance('seventeen_step_x', lambda p: C.seventeen_step_x(eta, p, interpretation=interp)[0],
                    lambda p: C.seventeen_step_target(C.seventeen_step_x(eta, p, interpretation=interp)[1]),
                    bx, by, g, cfg, angle=eta),
    ]
    varphi = cfg.grid_varphi[0]
    rows.append(_covariance('fifty_five_step_zz', lambda p: C.fifty_five_step_zz(varphi, p, interp)[0],
                            lambda p: physical_zz_target(C.fifty_five_step_zz(varphi, p, interp)[1], 1, 2, 2),
                            bx, by, g, cfg, angle=varphi))
    return rows


# --------------------------------------------------------------------------- case 4

def trotter_families(cfg: RunConfig):
    """``(name, family(n, schedule), target, angle, point tolerance)`` for the three Trotter circuits."""
    zz = embed_spin('z', 1, 2) @ embed_spin('z', 2, 2)
    dm = embed_spin('z', 1, 2) @ embed_spin('y', 2, 2) - embed_spin('y', 1, 2) @ embed_spin('z', 2, 2)
    phi, dphi, xphi = cfg.trotter_phi, cfg.trotter_dm_phi, cfg.trotter_x_phi
    return [
        ('trotter_cphase', lambda n, s: C.trotter_cphase(phi, n, s), expm_evolve(phi * zz), phi,
         cfg.tol_trotter_cphase),
        ('trotter_dm', lambda n, s: C.trotter_dm(dphi, n, s), expm_evolve(dphi * dm), dphi,
         cfg.tol_trotter_dm),
        ('trotter_x', lambda n, s: C.trotter_x(xphi, n, s), expm_evolve(xphi * embed_spin('x', 1, 2)), xphi,
         cfg.tol_trotter_x),
    ]


def trotter_rows(cfg: RunConfig, schedule: Schedule, params: AnisotropyParams, case: str,
                 suffix: str = '', points: bool = False) -> list[Report]:
    rows: list[Report] = []
    n_max = cfg.grid_n_reps[-1]
    for name, family, target, angle, tol in trotter_families(cfg):
        meta = dict(case=case, beta=params.beta, gamma=params.gamma, angle=angle)
        scan = trotter_scaling(lambda n: family(n, schedule), target, cfg.grid_n_reps,
                               label=f'{name}{suffix}.scaling', **meta)
        rows.append(scan)
        final = verify_identity(family(n_max, schedule), target, tol=tol, label=f'{name}{suffix}.n{n_max}',
                                **meta)
        rows.append(final)
        if points:
            for n, err in scan.points:
                rows.append(measured(f'{name}{suffix}.point.n{int(n)}', err, tol, diagnostic=True,
                                     notes=['per-n error 1 - fidelity'], **meta))
    return rows


def case4_exact_row(cfg: RunConfig) -> VerificationReport:
    return case4_sx_identity_check(cfg.trotter_phi, cfg.tol_exact)


def kick_rows(cfg: RunConfig) -> list[Report]:
    params = AnisotropyParams.along_x(cfg.beta, cfg.gamma)
    base = C.trotter_cphase(cfg.kick_phi, cfg.kick_n_reps, params)
    rows: list[Report] = []
    meta = dict(case='case4_kick', beta=params.beta, gamma=params.gamma, angle=cfg.kick_phi)
    probes = list(DEFAULT_PROBES) + [('kick.heisenberg', 'X1*X2 + Y1*Y2 + Z1*Z2', False)]
    probes += [(f'kick.custom.{label_of(text)}', text, None) for text in cfg.kick_probes]
    for label, text, expect in probes:
        E = pauli_operator(text, 2) / 2
        r = parity_kick_suppression(E, cfg.grid_lambda, base, params, label=label,
                                    expect_eliminated=expect, **meta)
        r.notes.append(f'probe {text!r} (Pauli operators scaled by 1/2); '
                       f'{"eliminated" if eliminated_by_kicks(E) else "not eliminated"} by kick averaging')
        rows.append(r)
    rows.append(anisotropy_cancellation_check(cfg.kick_phi, cfg.kick_n_reps, params, cfg.grid_lambda,
                                              tol=cfg.tol_trotter_cphase))
    return rows


# --------------------------------------------------------------------------- numerics

def expm_oracle_row(cfg: RunConfig) -> VerificationReport:
    """``expm_evolve`` on a seeded random Hermitian matrix against an independent Pade expm."""
    rng = np.random.default_rng(cfg.seed)
    A = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    H = (A + A.conj().T) / 2
    gap = max_entry(expm_evolve(H) - scipy.linalg.expm(-1j * H))
    return measured('expm_evolve.random_hermitian', gap, 1e-11, case='numerics',
                    notes=[f'16x16 Hermitian from seed {cfg.seed}'])


# --------------------------------------------------------------------------- commands

def _interpretations() -> dict:
    result = C.select_interpretation()
    return {'seventeen_step': result.selected, 'worst_deficit': dict(sorted(result.worst_deficit.items())),
            'fig2b_physical_sign': 'zz_minus', 'fig2b_encoded_sign': 'encoded_plus'}


def run_verify_all(cfg: RunConfig) -> SuiteResult:
    b, g = cfg.beta, cfg.gamma
    case = cfg.geometry_case
    rows: list[Report] = []
    if case in (0, 1):
        rows += [fig2a_row(phi, b, g, cfg) for phi in cfg.grid_phi]
        rows.append(fig2a_sign_row(cfg))
        rows += [fig2b_row(phi, b, g, cfg) for phi in cfg.grid_phi]
        rows += [fig2b_encoded_row(phi, b, g, cfg) for phi in cfg.grid_phi]
        rows += [su2_row(1, 2), su2_row(2, 4)]
    if case in (0, 2):
        rows += [v_block_row(beta, g, cfg) for beta in cfg.grid_beta]
        rows += [eight_step_row(b, 0.0, cfg), eight_step_row(b, 0.0, cfg, inverse=True)]
        if g != 0:
            rows.append(eight_step_row(b, g, cfg))
        rows.append(disambiguation_row(cfg))
        rows += [seventeen_step_row(eta, b, g, cfg) for eta in cfg.grid_eta]
        rows.append(range_scan_row(cfg))
        rows += [fifty_five_row(v, b, g, cfg) for v in cfg.grid_varphi]
    if case in (0, 3):
        rows += case3_rows(cfg)
    if case in (0, 4):
        params = AnisotropyParams.along_x(b, g)
        rows += trotter_rows(cfg, Schedule.constant(params), params, 'case4')
        rows.append(case4_exact_row(cfg))
        rows += kick_rows(cfg)
    rows.append(expm_oracle_row(cfg))
    return SuiteResult('verify-all', rows, _interpretations())


_SWEEPS = {
    'fig2a': ('grid_phi', fig2a_row),
    'fig2b': ('grid_phi', fig2b_row),
    'v_block': (None, v_block_row),
    'eight_step': (None, eight_step_row),
    'seventeen_step': ('grid_eta', seventeen_step_row),
    'fifty_five': ('grid_varphi', fifty_five_row),
}


def run_sweep(cfg: RunConfig) -> SuiteResult:
    """Cross product ``beta x gamma x angle`` for every circuit in ``sweep.circuits``."""
    rows: list[Report] = []
    for name in cfg.sweep_circuits:
        grid, row = _SWEEPS[name]
        for beta in cfg.grid_beta:
            for gamma in cfg.grid_gamma:
                if grid is None:
                    rows.append(row(beta, gamma, cfg))
                else:
                    rows += [row(angle, beta, gamma, cfg) for angle in getattr(cfg, grid)]
    return SuiteResult('sweep', rows, _interpretations())


def run_trotter(cfg: RunConfig) -> SuiteResult:
    params = AnisotropyParams.along_x(cfg.beta, cfg.gamma)
    rows = trotter_rows(cfg, Schedule.constant(params), params, 'case4', points=True)
    if cfg.trotter_ramp:
        start, stop = (AnisotropyParams.along_x(v, cfg.gamma) for v in cfg.trotter_ramp)
        # rows record the ramp midpoint as beta
        mid = AnisotropyParams.along_x(sum(cfg.trotter_ramp) / 2, cfg.gamma)
        ramp_rows = trotter_rows(cfg, Schedule.linear_ramp(start, stop), mid, 'case4_time_dependent',
                                 suffix='.ramp', points=True)
        for r in ramp_rows:
            r.notes.append(f'beta_x ramps linearly {cfg.trotter_ramp[0]} -> {cfg.trotter_ramp[1]}')
        rows += ramp_rows
    rows.append(case4_exact_row(cfg))
    return SuiteResult('trotter', rows, _interpretations())


def run_kick(cfg: RunConfig) -> SuiteResult:
    return SuiteResult('kick', kick_rows(cfg), _interpretations())


COMMANDS = {'verify-all': run_verify_all, 'sweep': run_sweep, 'trotter': run_trotter, 'kick': run_kick}
