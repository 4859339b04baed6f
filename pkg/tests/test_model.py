import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anisogates.model import (AnisotropyParams, AnisotropyWarning, Geometry, LogicalQubit, Schedule,
                              beta_frame_rotation, dm_operator, encoded_operator, exchange_generator,
                              frame_rotation, logical_basis, require_geometry, z_gate)
from anisogates.spin_algebra import PAULI, SPIN, embed, embed_spin, expm_evolve, max_entry

small = st.floats(-0.15, 0.15)


def test_exchange_generator_isotropic_limit():
    H = exchange_generator(1, 2, 1.0, AnisotropyParams(), 2)
    expected = sum(np.kron(SPIN[a], SPIN[a]) for a in 'xyz')
    assert max_entry(H - expected) == 0


def test_dm_cross_product_convention():
    # (S1 x S2)_z = S1x S2y - S1y S2x
    z = dm_operator(1, 2, 2)[2]
    expected = np.kron(SPIN['x'], SPIN['y']) - np.kron(SPIN['y'], SPIN['x'])
    assert max_entry(z - expected) == 0


@settings(max_examples=30, deadline=None)
@given(bx=small, by=small, bz=small, gamma=st.floats(0, 1), phi=st.floats(-3, 3))
def test_exchange_generator_hermitian_and_linear(bx, by, bz, gamma, phi):
    p = AnisotropyParams((bx, by, bz), gamma)
    H = exchange_generator(1, 2, phi, p, 2)
    assert max_entry(H - H.conj().T) < 1e-15
    assert max_entry(H - phi * exchange_generator(1, 2, 1.0, p, 2)) < 1e-14


@settings(max_examples=30, deadline=None)
@given(bz=small, gamma=st.floats(0, 1))
def test_parallel_beta_conserves_total_sz(bz, gamma):
    H = exchange_generator(1, 2, 1.0, AnisotropyParams.along_z(bz, gamma), 2)
    Sz = embed_spin('z', 1, 2) + embed_spin('z', 2, 2)
    assert max_entry(H @ Sz - Sz @ H) < 1e-15


def test_warnings_outside_regime():
    with pytest.warns(AnisotropyWarning, match='exceeds 0.2'):
        AnisotropyParams.along_x(0.3)
    with pytest.warns(AnisotropyWarning, match='gamma'):
        AnisotropyParams.along_x(0.15, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        AnisotropyParams.along_x(0.05, 0.1)


def test_invalid_params():
    with pytest.raises(ValueError, match='3 components'):
        AnisotropyParams((0.1, 0.2))
    with pytest.raises(ValueError, match='non-finite'):
        AnisotropyParams((math.nan, 0, 0))


def test_geometry_classification():
    assert Geometry.classify(AnisotropyParams.along_z(0.1)) is Geometry.PARALLEL_B
    assert Geometry.classify(AnisotropyParams.along_x(0.1)) is Geometry.ALONG_X
    assert Geometry.classify(AnisotropyParams.in_plane(0.03, 0.04)) is Geometry.IN_PLANE
    with pytest.raises(ValueError, match='neither'):
        Geometry.classify(AnisotropyParams((0.1, 0, 0.1)))
    with pytest.raises(ValueError, match='wrong geometry'):
        require_geometry(AnisotropyParams.along_x(0.1), Geometry.PARALLEL_B)
    require_geometry(AnisotropyParams(), Geometry.PARALLEL_B)


def test_z_gate_is_pauli_z():
    np.testing.assert_allclose(z_gate(1, 1), PAULI['z'], atol=1e-15)


def test_logical_basis_and_encoding():
    b = logical_basis([1], 2)
    np.testing.assert_array_equal(b[0], [0, 1, 0, 0])
    np.testing.assert_array_equal(b[1], [0, 0, 1, 0])
    assert LogicalQubit(2).pair == (3, 4)
    with pytest.raises(ValueError):
        logical_basis([2], 3)
    # Sz_L = +1/2 on |0_L> = |up down>
    Sz = encoded_operator('z', 1, 2)
    assert (b[0].conj() @ Sz @ b[0]).real == pytest.approx(0.5)


def test_encoded_operators_act_as_spin_half_in_code_space():
    B = np.column_stack(logical_basis([1], 2))
    for axis in 'xyz':
        block = B.conj().T @ encoded_operator(axis, 1, 2) @ B
        np.testing.assert_allclose(block, SPIN[axis], atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(bx=small, by=small, gamma=st.floats(0, 1), phi=st.floats(-3, 3))
def test_beta_frame_rotation_covariance(bx, by, gamma, phi):
    p = AnisotropyParams.in_plane(bx, by, gamma)
    if p.magnitude < 1e-6:
        return
    omega, rotated = beta_frame_rotation(p)
    R = frame_rotation(omega, (1, 2), 2)
    lhs = R @ exchange_generator(1, 2, phi, p, 2) @ R.conj().T
    assert max_entry(lhs - exchange_generator(1, 2, phi, rotated, 2)) < 1e-14
    assert rotated.beta[0] == pytest.approx(p.magnitude)


def test_beta_frame_rotation_rejects():
    with pytest.raises(ValueError, match='x-y plane'):
        beta_frame_rotation(AnisotropyParams.along_z(0.1))
    with pytest.raises(ValueError, match='zero'):
        beta_frame_rotation(AnisotropyParams())


def test_schedule_midpoints_and_windows():
    ramp = Schedule.linear_ramp(AnisotropyParams.along_x(0.04), AnisotropyParams.along_x(0.06))
    assert [p.beta[0] for p in ramp.slices(2)] == pytest.approx([0.045, 0.055])
    w = ramp.window(0.5, 1.0)
    assert w.at(0).beta[0] == pytest.approx(0.05)
    assert w.at(1).beta[0] == pytest.approx(0.06)
    const = Schedule.coerce(AnisotropyParams.along_x(0.05))
    assert const.window(0.2, 0.4) is const
