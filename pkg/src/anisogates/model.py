"""
Physical generators: Zeeman terms, the anisotropic exchange interaction,
the Z gate, the two-spin logical encoding and the in-plane frame rotation.

The exchange generator for spins ``i`` and ``j`` at integrated coupling
``phi`` is::

    H_ij(phi) = phi * (S_i . S_j + beta . (S_i x S_j) + gamma (beta . S_i)(beta . S_j))

with ``(S_i x S_j)_a = eps_abc S_i^b S_j^c`` and ``i`` the left factor.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .spin_algebra import MAX_QUBITS, basis_state, embed_spin, expm_evolve

__all__ = [
    'AnisotropyParams', 'AnisotropyWarning', 'Geometry', 'LogicalQubit', 'Schedule',
    'beta_frame_rotation', 'dm_operator', 'encoded_operator', 'exchange_generator',
    'frame_rotation', 'logical_basis', 'require_geometry', 'total_sz', 'z_gate',
    'zeeman_generator',
]

BETA_WARN = 0.2
GAMMA_BETA2_WARN = 1e-2


class AnisotropyWarning(UserWarning):
    """Parameters outside the few-percent regime the circuits are designed for."""


@dataclass(frozen=True)
class AnisotropyParams:
    """Spin-orbit vector ``beta`` and the symmetric correction ``gamma``."""
    beta: tuple[float, float, float] = (0.0, 0.0, 0.0)
    gamma: float = 0.0

    def __post_init__(self):
        beta = tuple(float(b) for b in self.beta)
        if len(beta) != 3:
            raise ValueError(f'beta must have 3 components, got {len(beta)}')
        if not all(math.isfinite(b) for b in beta) or not math.isfinite(self.gamma):
            raise ValueError(f'non-finite anisotropy parameters: beta={beta}, gamma={self.gamma}')
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'gamma', float(self.gamma))
        if self.magnitude > BETA_WARN:
            warnings.warn(f'|beta| = {self.magnitude:.3g} exceeds {BETA_WARN}', AnisotropyWarning,
                          stacklevel=3)
        if abs(self.gamma) * self.magnitude**2 > GAMMA_BETA2_WARN:
            warnings.warn(f'gamma*|beta|^2 = {self.gamma * self.magnitude**2:.3g} exceeds '
                          f'{GAMMA_BETA2_WARN}', AnisotropyWarning, stacklevel=3)

    @classmethod
    def along_z(cls, beta: float, gamma: float = 0.0) -> 'AnisotropyParams':
        return cls((0.0, 0.0, beta), gamma)

    @classmethod
    def along_x(cls, beta: float, gamma: float = 0.0) -> 'AnisotropyParams':
        return cls((beta, 0.0, 0.0), gamma)

    @classmethod
    def in_plane(cls, beta_x: float, beta_y: float, gamma: float = 0.0) -> 'AnisotropyParams':
        return cls((beta_x, beta_y, 0.0), gamma)

    @property
    def magnitude(self) -> float:
        return math.sqrt(sum(b * b for b in self.beta))

    @property
    def epsilon(self) -> float:
        """The fixed angle ``arctan |beta|`` appearing in the exact circuits."""
        return math.atan(self.magnitude)


class Geometry(enum.Enum):
    """Orientation of ``beta`` relative to the field (which defines ``z``)."""
    PARALLEL_B = 'beta_parallel_b'
    ALONG_X = 'beta_along_x'
    IN_PLANE = 'beta_in_plane'
    TIME_DEPENDENT = 'time_dependent'

    @classmethod
    def classify(cls, params: AnisotropyParams) -> 'Geometry':
        bx, by, bz = params.beta
        if bx == 0 and by == 0:
            return cls.PARALLEL_B
        if bz == 0 and by == 0:
            return cls.ALONG_X
        if bz == 0:
            return cls.IN_PLANE
        raise ValueError(f'beta = {params.beta} is neither parallel nor perpendicular to B')


def require_geometry(params: AnisotropyParams, *allowed: Geometry) -> None:
    """Raise ``ValueError`` unless ``params`` belongs to one of ``allowed``.

    ``beta = 0`` belongs to every geometry.
    """
    if params.magnitude == 0:
        return
    found = Geometry.classify(params)
    if found not in allowed:
        names = ', '.join(g.value for g in allowed)
        raise ValueError(f'wrong geometry: beta = {params.beta} is {found.value}, need {names}')


ParamSource = Union[AnisotropyParams, Callable[[float], AnisotropyParams]]


@dataclass(frozen=True)
class Schedule:
    """
    Piecewise-constant ``beta(t), gamma(t)`` on normalised time ``t in [0, 1]``.

    Each Trotter slice uses the value at its midpoint.
    """
    source: ParamSource
    label: str = 'constant'

    @classmethod
    def constant(cls, params: AnisotropyParams) -> 'Schedule':
        return cls(params, 'constant')

    @classmethod
    def linear_ramp(cls, start: AnisotropyParams, stop: AnisotropyParams) -> 'Schedule':
        b0, b1 = np.array(start.beta), np.array(stop.beta)

        def at(t: float) -> AnisotropyParams:
            return AnisotropyParams(tuple(b0 + t * (b1 - b0)), start.gamma + t * (stop.gamma - start.gamma))
        return cls(at, 'linear_ramp')

    @classmethod
    def coerce(cls, value: 'Schedule | AnisotropyParams') -> 'Schedule':
        return value if isinstance(value, Schedule) else cls.constant(value)

    def at(self, t: float) -> AnisotropyParams:
        if isinstance(self.source, AnisotropyParams):
            return self.source
        return self.source(t)

    def slices(self, count: int) -> list[AnisotropyParams]:
        return [self.at((k + 0.5) / count) for k in range(count)]

    def window(self, t0: float, t1: float) -> 'Schedule':
        """The same schedule restricted to ``[t0, t1]`` and rescaled to ``[0, 1]``."""
        if isinstance(self.source, AnisotropyParams):
            return self
        return Schedule(lambda t: self.source(t0 + t * (t1 - t0)), self.label)


@dataclass(frozen=True)
class LogicalQubit:
    """Logical qubit ``index`` encoded in physical spins ``(2i-1, 2i)``."""
    index: int
    pair: tuple[int, int] = field(init=False)

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f'logical index must be positive, got {self.index}')
        object.__setattr__(self, 'pair', (2 * self.index - 1, 2 * self.index))

    def basis(self, n: int) -> list[np.ndarray]:
        """``|0_L> = |up down>``, ``|1_L> = |down up>`` with the other spins up."""
        return logical_basis([self.index], n)


def logical_basis(indices: Sequence[int], n: int) -> list[np.ndarray]:
    """
    Code-space basis for the logical qubits in ``indices``; physical spins
    outside the encoded pairs are held in ``|up>``. States are ordered with
    the first listed logical qubit as most significant.
    """
    pairs = [LogicalQubit(i).pair for i in indices]
    if any(p[1] > n for p in pairs):
        raise ValueError(f'logical qubits {list(indices)} do not fit in {n} physical qubits')
    states = []
    for code in range(2**len(pairs)):
        bits = ['0'] * n
        for k, (a, b) in enumerate(pairs):
            logical = (code >> (len(pairs) - 1 - k)) & 1
            bits[a - 1], bits[b - 1] = ('1', '0') if logical else ('0', '1')
        states.append(basis_state(''.join(bits)))
    return states


def _pair_ops(i: int, j: int, n: int):
    if i == j:
        raise ValueError(f'exchange needs two distinct sites, got {i} twice')
    Si = [embed_spin(a, i, n) for a in 'xyz']
    Sj = [embed_spin(a, j, n) for a in 'xyz']
    return Si, Sj


def dm_operator(i: int, j: int, n: int) -> list[np.ndarray]:
    """Components of ``S_i x S_j``."""
    Si, Sj = _pair_ops(i, j, n)
    return [Si[(a + 1) % 3] @ Sj[(a + 2) % 3] - Si[(a + 2) % 3] @ Sj[(a + 1) % 3] for a in range(3)]


def exchange_generator(i: int, j: int, phi: float, params: AnisotropyParams, n: int) -> np.ndarray:
    """Anisotropic exchange generator ``H_ij(phi)``; linear in ``phi``."""
    Si, Sj = _pair_ops(i, j, n)
    beta = params.beta
    heisenberg = sum(Si[a] @ Sj[a] for a in range(3))
    cross = dm_operator(i, j, n)
    dm = sum(beta[a] * cross[a] for a in range(3) if beta[a])
    bi = sum(beta[a] * Si[a] for a in range(3))
    bj = sum(beta[a] * Sj[a] for a in range(3))
    return phi * (heisenberg + dm + params.gamma * (bi @ bj))


def zeeman_generator(j: int, eta: float, n: int) -> np.ndarray:
    return eta * embed_spin('z', j, n)


def z_gate(j: int, n: int) -> np.ndarray:
    """``Z_j = i exp(-i pi S_j^z)``, a 180 degree z rotation equal to sigma^z on ``j``."""
    return 1j * expm_evolve(zeeman_generator(j, math.pi, n))


def total_sz(sites: Sequence[int], n: int) -> np.ndarray:
    return sum(embed_spin('z', s, n) for s in sites)


def encoded_operator(axis: str, i: int, n: int) -> np.ndarray:
    """
    Encoded spin component of logical qubit ``i``::

        Sx_L = S_a . S_b - S_a^z S_b^z
        Sy_L = -(S_a x S_b)_z
        Sz_L = (S_a^z - S_b^z) / 2

    where ``(a, b) = (2i-1, 2i)``.
    """
    a, b = LogicalQubit(i).pair
    if b > n:
        raise ValueError(f'logical qubit {i} needs {b} physical qubits, have {n}')
    if axis == 'x':
        return sum(embed_spin(c, a, n) @ embed_spin(c, b, n) for c in 'xy')
    if axis == 'y':
        return -dm_operator(a, b, n)[2]
    if axis == 'z':
        return (embed_spin('z', a, n) - embed_spin('z', b, n)) / 2
    raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")


def frame_rotation(omega: float, sites: Sequence[int], n: int) -> np.ndarray:
    """``exp(i omega sum_k S_k^z)`` over ``sites``."""
    return expm_evolve(-omega * total_sz(sites, n))


def beta_frame_rotation(params: AnisotropyParams) -> tuple[float, AnisotropyParams]:
    """
    Angle ``omega`` and along-x parameters equivalent to an in-plane ``beta``.

    With ``R = exp(i omega (S_1^z + S_2^z))`` the returned parameters satisfy
    ``R H(params) R^dag == H(rotated)``. ``omega`` is the four-quadrant angle
    of ``(beta_x, beta_y)``, which agrees with ``arctan(beta_y / beta_x)``
    whenever ``beta_x > 0``.
    """
    bx, by, bz = params.beta
    if bz != 0:
        raise ValueError(f'beta must lie in the x-y plane, got beta_z = {bz}')
    if bx == 0 and by == 0:
        raise ValueError('in-plane beta is zero; no frame rotation defined')
    omega = math.atan2(by, bx)
    return omega, AnisotropyParams.along_x(math.hypot(bx, by), params.gamma)


def check_n(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f'qubit count must be in [1, {MAX_QUBITS}], got {n}')
