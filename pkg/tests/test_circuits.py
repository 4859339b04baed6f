import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anisogates import circuits as C
from anisogates.circuits import (Circuit, EncodedZ, ExchangePulse, FramedPulse, ParallelZ, ZGate,
                                 ZeemanPulse, count_steps)
from anisogates.model import AnisotropyParams, beta_frame_rotation, encoded_operator, logical_basis
from anisogates.spin_algebra import (embed_spin, expm_evolve, max_entry, operator_schmidt,
                                     phase_fidelity, subspace_restrict)

betas = st.floats(0.005, 0.12)
gammas = st.floats(0.0, 1.0)


def zz(phi, a=1, b=2, n=2):
    return expm_evolve(phi * embed_spin('z', a, n) @ embed_spin('z', b, n))


def test_compile_is_time_ordered():
    # Z1 then a Zeeman pulse equals the matrix product Zee @ Z1
    c = Circuit((ZGate(1), ZeemanPulse(1, 0.3)), 1)
    Zee = expm_evolve(0.3 * embed_spin('z', 1, 1))
    np.testing.assert_allclose(C.compile(c), Zee @ C.pulse_unitary(ZGate(1), 1), atol=1e-15)
    c = Circuit((ExchangePulse(1, 2, 0.4), ZGate(1)), 2)
    U = C.compile(c, AnisotropyParams.along_x(0.05))
    V = C.pulse_unitary(ZGate(1), 2) @ C.pulse_unitary(ExchangePulse(1, 2, 0.4), 2, AnisotropyParams.along_x(0.05))
    np.testing.assert_allclose(U, V, atol=1e-15)


def test_step_counting_merges_z_runs():
    pulses = [ZGate(1), ZeemanPulse(2, 0.1), ExchangePulse(1, 2, 0.3), ParallelZ((1, 2)), EncodedZ(1, 0.2),
              ExchangePulse(1, 2, 0.3)]
    assert count_steps(pulses) == 4
    framed = FramedPulse(ExchangePulse(1, 2, 0.3), 0.5)
    assert count_steps([framed]) == 3


def test_circuit_validation():
    with pytest.raises(ValueError, match='outside'):
        Circuit((ZGate(3),), 2)
    with pytest.raises(ValueError, match='non-finite'):
        Circuit((ZeemanPulse(1, math.inf),), 2)
    with pytest.raises(ValueError, match='no anisotropy'):
        C.compile(Circuit((ExchangePulse(1, 2, 0.1),), 2))


def test_pulse_params_override_compile_params():
    own = AnisotropyParams.along_x(0.05)
    c = Circuit((ExchangePulse(1, 2, 0.7, own),), 2)
    np.testing.assert_array_equal(C.compile(c, AnisotropyParams.along_z(0.1)), C.compile(c, own))


@settings(max_examples=25, deadline=None)
@given(beta=st.floats(-0.12, 0.12), gamma=gammas, phi=st.floats(-math.pi, math.pi))
def test_fig2a_encoded_x_rotation(beta, gamma, phi):
    p = AnisotropyParams.along_z(beta, gamma)
    c = C.fig2a_xbar(phi, p)
    assert c.steps == 3
    basis = logical_basis([1], 2)
    U, leak = subspace_restrict(C.compile(c, p), basis)
    T, _ = subspace_restrict(expm_evolve(phi * encoded_operator('x', 1, 2)), basis)
    assert leak < 1e-12
    assert phase_fidelity(U, T) > 1 - 1e-12


@settings(max_examples=25, deadline=None)
@given(beta=st.floats(-0.12, 0.12), gamma=gammas, phi=st.floats(-math.pi, math.pi))
def test_fig2b_physical_zz(beta, gamma, phi):
    p = AnisotropyParams.along_z(beta, gamma)
    c = C.fig2b_zz(phi, p)
    assert c.steps == 4
    assert phase_fidelity(C.compile(c, p), zz(phi, 2, 3, 4)) > 1 - 1e-12


@settings(max_examples=25, deadline=None)
@given(beta=betas, gamma=gammas)
def test_v_block_separable(beta, gamma):
    p = AnisotropyParams.along_x(beta, gamma)
    spec = operator_schmidt(C.compile(C.v_block(p), p))
    assert spec.second < 1e-10


@settings(max_examples=25, deadline=None)
@given(beta=st.floats(-0.12, 0.12).filter(lambda b: abs(b) > 1e-3), site=st.sampled_from([1, 2]),
       inverse=st.booleans())
def test_eight_step_rotation(beta, site, inverse):
    p = AnisotropyParams.along_x(beta)
    c = C.eight_step_x(p, site, inverse)
    assert c.steps == 8
    theta = 4 * math.atan(beta) * (-1 if inverse else 1)
    target = C.seventeen_step_target(-theta, site)
    assert phase_fidelity(C.compile(c, p), target) > 1 - 1e-12


def test_eight_step_with_gamma_still_holds():
    # measured: the symmetric gamma term does not spoil the identity
    p = AnisotropyParams.along_x(0.05, 1.0)
    f = phase_fidelity(C.compile(C.eight_step_x(p), p), C.seventeen_step_target(-4 * p.epsilon))
    assert f > 1 - 1e-12


def test_disambiguation_selects_unique_reading():
    result = C.select_interpretation()
    assert result.unique
    assert result.selected == 'd_tanhalf_mul_cos.p_sinsq_half'
    assert result.worst_deficit[result.selected] < 1e-12
    assert len(result.worst_deficit) == 6


@settings(max_examples=30, deadline=None)
@given(beta=st.floats(-0.12, 0.12).filter(lambda b: abs(b) > 1e-3), gamma=gammas,
       eta=st.floats(-math.pi, math.pi), site=st.sampled_from([1, 2, 'diff']))
def test_seventeen_step(beta, gamma, eta, site):
    p = AnisotropyParams.along_x(beta, gamma)
    c, phi = C.seventeen_step_x(eta, p, site)
    assert c.steps == 17
    assert abs(phi) <= C.continuous_x_range(p) + 1e-12
    assert phase_fidelity(C.compile(c, p), C.seventeen_step_target(phi, site)) > 1 - 1e-10


def test_seventeen_step_null_gate_and_range():
    with pytest.raises(ValueError, match='null gate'):
        C.seventeen_step_x(1.0, AnisotropyParams())
    assert C.continuous_x_range(AnisotropyParams.along_x(math.tan(0.03))) == pytest.approx(0.24, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(beta=st.floats(-0.1, 0.1).filter(lambda b: abs(b) > 5e-3), theta=st.floats(-1.5, 1.5))
def test_eta_for_angle_and_x_rotation(beta, theta):
    p = AnisotropyParams.along_x(beta)
    c = C.x_rotation(theta, p)
    assert phase_fidelity(C.compile(c, p), C.seventeen_step_target(theta)) > 1 - 1e-10


@settings(max_examples=15, deadline=None)
@given(beta=st.floats(0.01, 0.1), gamma=gammas, varphi=st.floats(-1.5, 1.5))
def test_fifty_five_step(beta, gamma, varphi):
    p = AnisotropyParams.along_x(beta, gamma)
    c, phi = C.fifty_five_step_zz(varphi, p)
    assert c.steps <= 55
    assert phi == pytest.approx(2 * varphi * math.sqrt(1 + beta**2))
    assert phase_fidelity(C.compile(c, p), zz(phi)) > 1 - 1e-10


@settings(max_examples=20, deadline=None)
@given(bx=st.floats(-0.08, 0.08), by=st.floats(-0.08, 0.08), gamma=gammas, eta=st.floats(-3, 3))
def test_case3_wrap_reproduces_aligned_unitary(bx, by, gamma, eta):
    p = AnisotropyParams.in_plane(bx, by, gamma)
    if p.magnitude < 5e-3:
        return
    omega, aligned = beta_frame_rotation(p)
    c, _ = C.seventeen_step_x(eta, aligned)
    wrapped = C.case3_wrap(c, omega)
    assert max_entry(C.compile(wrapped, p) - C.compile(c, aligned)) < 1e-12


def test_case3_wrap_zero_angle_is_identity():
    c = C.v_block(AnisotropyParams.along_x(0.05))
    assert C.case3_wrap(c, 0.0) is c


def test_trotter_cphase_structure_and_accuracy():
    p = AnisotropyParams.along_x(0.05, 0.1)
    c = C.trotter_cphase(1.0, 16, p)
    assert len(c.pulses) == 4 * 32
    assert 1 - phase_fidelity(C.compile(c, p), zz(1.0)) < 1e-8
    with pytest.raises(ValueError, match='positive'):
        C.trotter_cphase(1.0, 0, p)


def test_trotter_dm_accuracy():
    p = AnisotropyParams.in_plane(0.03, 0.04, 0.1)
    dm = embed_spin('z', 1, 2) @ embed_spin('y', 2, 2) - embed_spin('y', 1, 2) @ embed_spin('z', 2, 2)
    err = [1 - phase_fidelity(C.compile(C.trotter_dm(0.1, n, p), p), expm_evolve(0.1 * dm)) for n in (16, 32)]
    assert err[1] < 1e-6
    assert err[0] / err[1] == pytest.approx(4, rel=0.05)


def test_trotter_x_accuracy():
    p = AnisotropyParams.along_x(0.05, 0.1)
    U = C.compile(C.trotter_x(0.1, 64, p), p)
    assert 1 - phase_fidelity(U, expm_evolve(0.1 * embed_spin('x', 1, 2))) < 1e-6


def test_trotter_dm_rejects_parallel_beta():
    with pytest.raises(ValueError, match='wrong geometry'):
        C.trotter_dm(0.1, 4, AnisotropyParams.along_z(0.05))
