"""
Acceptance criteria, one test per criterion, each at its stated tolerance.

Every test prints a single ``criterion N: PASS|FAIL ...`` line. Run with
``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""
import json
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from anisogates import circuits as C
from anisogates.config import RunConfig
from anisogates.model import AnisotropyParams, beta_frame_rotation, encoded_operator, logical_basis
from anisogates.pauli import pauli_operator
from anisogates.spin_algebra import embed_spin, expm_evolve, operator_schmidt, phase_fidelity, subspace_restrict
from anisogates.verify import (anisotropy_cancellation_check, case4_sx_identity_check,
                               parity_kick_suppression, physical_zz_target, seventeen_step_range_scan,
                               su2_check, trotter_scaling)

BETAS = (0.01, 0.03, 0.05, 0.1)
GAMMAS = (0.0, 0.1, 1.0)
PHIS = (0.1, 0.7, math.pi / 2, math.pi)
ETAS = (0.3, 1.0, math.pi / 2, 2.5, 3.0, -1.0)
N_REPS = (2, 4, 8, 16, 32, 64, 128)
LAMBDAS = (1e-3, 3e-3, 1e-2, 3e-2)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f'\ncriterion {number}: {"PASS" if ok else "FAIL"} {detail}')
        return ok
    return emit


def grid():
    for beta in BETAS:
        for gamma in GAMMAS:
            for phi in PHIS:
                yield beta, gamma, phi


def criterion_1():
    worst_f, worst_leak = 1.0, 0.0
    basis = logical_basis([1], 2)
    for beta, gamma, phi in grid():
        p = AnisotropyParams.along_z(beta, gamma)
        U, leak = subspace_restrict(C.compile(C.fig2a_xbar(phi, p), p), basis)
        T, _ = subspace_restrict(expm_evolve(phi * encoded_operator('x', 1, 2)), basis)
        worst_f = min(worst_f, phase_fidelity(U, T))
        worst_leak = max(worst_leak, leak)
    ok = worst_f >= 1 - 1e-9 and worst_leak <= 1e-12
    return ok, f'fig2a: min fidelity 1-{1 - worst_f:.1e}, max leakage {worst_leak:.1e} over 48 points'


def criterion_2():
    worst, signs = 1.0, set()
    for beta, gamma, phi in grid():
        p = AnisotropyParams.along_z(beta, gamma)
        U = C.compile(C.fig2b_zz(phi, p), p)
        fm = phase_fidelity(U, physical_zz_target(phi, 2, 3, 4))
        fp = phase_fidelity(U, physical_zz_target(-phi, 2, 3, 4))
        signs.add('minus' if fm >= fp else 'plus')
        worst = min(worst, max(fm, fp))
    ok = worst >= 1 - 1e-9 and len(signs) == 1
    return ok, f'fig2b: min fidelity 1-{1 - worst:.1e}, measured sign exp({"-" if "minus" in signs else "+"}i phi S2z S3z)'


def criterion_3():
    dev = max(su2_check(1, 2), su2_check(2, 4))
    return dev <= 1e-14, f'encoded su(2) deviation {dev:.1e}'


def criterion_4():
    second = max(operator_schmidt(C.compile(C.v_block(AnisotropyParams.along_x(b)), AnisotropyParams.along_x(b))).second
                 for b in BETAS)
    f0 = min(phase_fidelity(C.compile(C.eight_step_x(AnisotropyParams.along_x(b)), AnisotropyParams.along_x(b)),
                            expm_evolve(4 * math.atan(b) * embed_spin('x', 1, 2))) for b in BETAS)
    fg = min(phase_fidelity(C.compile(C.eight_step_x(AnisotropyParams.along_x(b, g)), AnisotropyParams.along_x(b, g)),
                            expm_evolve(4 * math.atan(b) * embed_spin('x', 1, 2))) for b in BETAS for g in GAMMAS[1:])
    ok = second <= 1e-10 and f0 >= 1 - 1e-9
    return ok, (f'V second Schmidt value {second:.1e}; 8-step fidelity 1-{1 - f0:.1e} at gamma=0 '
                f'(gamma!=0 measured: 1-{1 - fg:.1e})')


def criterion_5():
    result = C.select_interpretation(BETAS, (0.0, 0.1), ETAS, 1e-6)
    worst = 1.0
    for b in BETAS:
        for g in (0.0, 0.1):
            p = AnisotropyParams.along_x(b, g)
            for eta in ETAS:
                c, phi = C.seventeen_step_x(eta, p, interpretation=result.selected)
                worst = min(worst, phase_fidelity(C.compile(c, p), C.seventeen_step_target(phi)))
    peak, _ = seventeen_step_range_scan(0.03, interpretation=result.selected)
    rel = abs(peak - math.pi / 12) / (math.pi / 12)
    ok = result.unique and worst >= 1 - 1e-6 and rel <= 0.15 and abs(peak - 0.2399) <= 1e-3
    return ok, (f'17-step: reading {result.selected} unique={result.unique}, min fidelity 1-{1 - worst:.1e}; '
                f'range max {peak:.6f} ({100 * rel:.1f}% from pi/12)')


def criterion_6():
    worst, steps = 1.0, 0
    for b in BETAS:
        for g in (0.0, 0.1):
            p = AnisotropyParams.along_x(b, g)
            for varphi in (0.2, 0.4, 1.0):
                c, phi = C.fifty_five_step_zz(varphi, p)
                steps = max(steps, c.steps)
                worst = min(worst, phase_fidelity(C.compile(c, p), physical_zz_target(phi, 1, 2, 2)))
    ok = worst >= 1 - 1e-6 and steps <= 55
    return ok, f'55-step: min fidelity 1-{1 - worst:.1e}, at most {steps} steps'


def criterion_7():
    inplane = AnisotropyParams.in_plane(0.03, 0.04, 0.1)
    omega, aligned = beta_frame_rotation(inplane)
    cases = [
        (C.eight_step_x(aligned), expm_evolve(4 * aligned.epsilon * embed_spin('x', 1, 2))),
        (C.v_block(aligned), C.compile(C.v_block(aligned), aligned)),
    ]
    for eta in (0.3, 1.0, 2.5):
        c, phi = C.seventeen_step_x(eta, aligned)
        cases.append((c, C.seventeen_step_target(phi)))
    c, phi = C.fifty_five_step_zz(0.4, aligned)
    cases.append((c, physical_zz_target(phi, 1, 2, 2)))
    gap = max(abs(phase_fidelity(C.compile(C.case3_wrap(c, omega), inplane), t)
                  - phase_fidelity(C.compile(c, aligned), t)) for c, t in cases)
    return gap <= 1e-12, f'case 3: omega={omega:.6f}, max |F_wrapped - F_aligned| = {gap:.1e}'


def criterion_8():
    p = AnisotropyParams.along_x(0.05, 0.1)
    zz = embed_spin('z', 1, 2) @ embed_spin('z', 2, 2)
    dm = embed_spin('z', 1, 2) @ embed_spin('y', 2, 2) - embed_spin('y', 1, 2) @ embed_spin('z', 2, 2)
    fits = [
        trotter_scaling(lambda n: C.trotter_cphase(1.0, n, p), expm_evolve(1.0 * zz), N_REPS, p, 'cphase'),
        trotter_scaling(lambda n: C.trotter_dm(0.1, n, p), expm_evolve(0.1 * dm), N_REPS, p, 'dm'),
        trotter_scaling(lambda n: C.trotter_x(0.1, n, p), expm_evolve(0.1 * embed_spin('x', 1, 2)), N_REPS, p, 'x'),
    ]
    exact = all(case4_sx_identity_check(phi, 1e-9).passed for phi in (0.1, 1.0, math.pi / 2))
    ok = all(f.fitted_exponent >= 0.9 and f.fit_residual <= 0.2 for f in fits) and exact
    detail = ', '.join(f'{f.label} {f.fitted_exponent:.3f} (res {f.fit_residual:.3f})' for f in fits)
    return ok, f'Trotter exponents {detail}; exact-block Sx identity {"ok" if exact else "FAILED"}'


def criterion_9():
    p = AnisotropyParams.along_x(0.05, 0.1)
    base = C.trotter_cphase(1.0, 1, p)
    anti = [parity_kick_suppression(pauli_operator(s, 2) / 2, LAMBDAS, base, p).fitted_exponent
            for s in ('X1', 'Y2', 'X1*Z2')]
    comm = [parity_kick_suppression(pauli_operator(s, 2) / 2, LAMBDAS, base, p).fitted_exponent
            for s in ('Z1', 'Z1*Z2')]
    cancel = anisotropy_cancellation_check(1.0, 1, p, LAMBDAS)
    ok = min(anti) >= 1.8 and max(comm) <= 1.2 and cancel.scaling.fitted_exponent >= 1.8 and cancel.passed
    return ok, (f'kick exponents anti-commuting min {min(anti):.3f}, commuting max {max(comm):.3f}, '
                f'DM cancellation {cancel.scaling.fitted_exponent:.3f}')


def _cli(outdir, *args):
    env = dict(os.environ, ANISO_GATES_OUTDIR=str(outdir))
    return subprocess.run([sys.executable, '-m', 'anisogates.cli', *args, '--quiet'],
                          env=env, capture_output=True, text=True)


def criterion_10(tmp):
    t0 = time.perf_counter()
    first = _cli(os.path.join(tmp, 'a'), 'verify-all')
    wall = time.perf_counter() - t0
    second = _cli(os.path.join(tmp, 'b'), 'verify-all')

    def load(d):
        doc = json.load(open(os.path.join(tmp, d, 'report.json')))
        doc['metadata'].pop('timestamp')
        doc['metadata']['config'].pop('output.dir')
        return doc, open(os.path.join(tmp, d, 'report.csv')).read()

    (doc_a, csv_a), (doc_b, csv_b) = load('a'), load('b')
    rows = len(doc_a['records'])
    floor = _cli(os.path.join(tmp, 'c'), 'verify-all', '--geometry.case', '1', '--tol.exact', '1e-15')
    empty = _cli(os.path.join(tmp, 'd'), 'verify-all', '--grids.phi=')
    short = _cli(os.path.join(tmp, 'e'), 'trotter', '--grids.n_reps', '2')
    bad = _cli(os.path.join(tmp, 'f'), 'kick', '--kick.probes', 'X1*')
    codes = (first.returncode, floor.returncode, empty.returncode, short.returncode, bad.returncode)
    ok = (doc_a == doc_b and csv_a == csv_b and codes == (0, 1, 2, 2, 2) and rows >= 25 and wall < 60)
    return ok, (f'verify-all {rows} rows in {wall:.1f} s, reports identical={doc_a == doc_b and csv_a == csv_b}, '
                f'exit codes {codes}')


def test_criterion_1_fig2a_encoded_x(report):
    assert report(1, *criterion_1())


def test_criterion_2_fig2b_entangling(report):
    assert report(2, *criterion_2())


def test_criterion_3_encoded_su2(report):
    assert report(3, *criterion_3())


def test_criterion_4_v_separability_and_eight_step(report):
    assert report(4, *criterion_4())


def test_criterion_5_seventeen_step(report):
    assert report(5, *criterion_5())


def test_criterion_6_fifty_five_step(report):
    assert report(6, *criterion_6())


def test_criterion_7_case3_covariance(report):
    assert report(7, *criterion_7())


def test_criterion_8_trotter_convergence(report):
    assert report(8, *criterion_8())


def test_criterion_9_parity_kick(report):
    assert report(9, *criterion_9())


def test_criterion_10_engineering_contract(report, tmp_path):
    assert report(10, *criterion_10(str(tmp_path)))


if __name__ == '__main__':
    import tempfile
    import warnings
    warnings.simplefilter('ignore')
    results = []
    for k, fn in enumerate([criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
                            criterion_7, criterion_8, criterion_9], 1):
        ok, detail = fn()
        results.append(ok)
        print(f'criterion {k}: {"PASS" if ok else "FAIL"} {detail}')
    with tempfile.TemporaryDirectory() as tmp:
        ok, detail = criterion_10(tmp)
    results.append(ok)
    print(f'criterion 10: {"PASS" if ok else "FAIL"} {detail}')
    sys.exit(0 if all(results) else 1)
