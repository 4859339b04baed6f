"""
Pulse sequences and the gate constructions built from Zeeman and
anisotropic-exchange pulses.

A :class:`Circuit` is a time-ordered tuple of pulses: the first pulse acts
first, so :func:`compile` multiplies right-to-left. Every identity
written as a matrix product ``A B C`` therefore appears here as the pulse
list ``[C, B, A]``.

Step counting follows the parallel-layer convention: each exchange pulse is
one step, and any run of consecutive z-type pulses (Zeeman rotations,
``Z`` gates, parallel ``Z`` layers, encoded ``z`` rotations) collapses into
one step because all of them commute and act in parallel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .model import (AnisotropyParams, Geometry, Schedule, beta_frame_rotation, check_n,
                    encoded_operator, exchange_generator, frame_rotation, require_geometry,
                    z_gate, zeeman_generator)
from .spin_algebra import embed_spin, expm_evolve, phase_fidelity

__all__ = [
    'Circuit', 'DisambiguationError', 'EncodedZ', 'ExchangePulse', 'FramedPulse', 'INTERPRETATIONS',
    'Interpretation', 'ParallelZ', 'ZGate', 'ZeemanPulse', 'case3_wrap', 'compile',
    'continuous_x_range', 'eight_step_x', 'eta_for_angle', 'fifty_five_step_zz', 'fig2a_xbar',
    'fig2b_zz', 'select_interpretation', 'seventeen_step_x', 'seventeen_step_target',
    'trotter_cphase', 'trotter_dm', 'trotter_x', 'v_block', 'x_generator', 'x_rotation',
]


# --------------------------------------------------------------------------- pulses

@dataclass(frozen=True)
class ExchangePulse:
    """``U_ij(phi) = exp(-i H_ij(phi))``.

    ``params`` pins the anisotropy for this pulse (used by Trotter slices);
    when ``None`` the parameters passed to :func:`compile` apply. ``extra``
    is an additional Hermitian term added to the generator, used to inject
    perturbations.
    """
    i: int
    j: int
    phi: float
    params: Optional[AnisotropyParams] = None
    extra: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError(f'exchange pulse needs distinct sites, got {self.i} twice')

    @property
    def sites(self):
        return (self.i, self.j)


@dataclass(frozen=True)
class ZeemanPulse:
    """``exp(-i eta S_j^z)``."""
    j: int
    eta: float

    @property
    def sites(self):
        return (self.j,)


@dataclass(frozen=True)
class ZGate:
    """``Z_j = i exp(-i pi S_j^z)``."""
    j: int

    @property
    def sites(self):
        return (self.j,)


@dataclass(frozen=True)
class ParallelZ:
    """Simultaneous ``Z`` gates on several sites, one step."""
    sites: tuple[int, ...]

    def __post_init__(self):
        sites = tuple(sorted(set(self.sites)))
        if not sites:
            raise ValueError('ParallelZ needs at least one site')
        object.__setattr__(self, 'sites', sites)


@dataclass(frozen=True)
class EncodedZ:
    """``exp(-i epsilon Sz_L)`` on logical qubit ``i``."""
    i: int
    epsilon: float

    @property
    def sites(self):
        return (2 * self.i - 1, 2 * self.i)


@dataclass(frozen=True)
class FramedPulse:
    """``R U R^dag`` with ``R = exp(i omega (S_i^z + S_j^z))`` over the inner pulse's sites."""
    inner: ExchangePulse
    omega: float

    @property
    def sites(self):
        return self.inner.sites


Pulse = Union[ExchangePulse, ZeemanPulse, ZGate, ParallelZ, EncodedZ, FramedPulse]
_Z_TYPES = (ZeemanPulse, ZGate, ParallelZ, EncodedZ)


def _angles(p: Pulse) -> list[float]:
    if isinstance(p, ExchangePulse):
        return [p.phi]
    if isinstance(p, ZeemanPulse):
        return [p.eta]
    if isinstance(p, EncodedZ):
        return [p.epsilon]
    if isinstance(p, FramedPulse):
        return [p.omega] + _angles(p.inner)
    return []


def count_steps(pulses: Iterable[Pulse]) -> int:
    """Number of parallel layers in a time-ordered pulse list."""
    kinds = []
    for p in pulses:
        if isinstance(p, FramedPulse):
            kinds += ['z', 'x', 'z']
        else:
            kinds.append('z' if isinstance(p, _Z_TYPES) else 'x')
    steps = 0
    previous = None
    for k in kinds:
        if k == 'x' or previous != 'z':
            steps += 1
        previous = k
    return steps


@dataclass(frozen=True)
class Circuit:
    """Time-ordered pulse sequence on ``n_qubits`` physical qubits."""
    pulses: tuple[Pulse, ...]
    n_qubits: int
    label: str = 'circuit'
    declared_steps: Optional[int] = None

    def __post_init__(self):
        check_n(self.n_qubits)
        object.__setattr__(self, 'pulses', tuple(self.pulses))
        for p in self.pulses:
            if any(not 1 <= s <= self.n_qubits for s in p.sites):
                raise ValueError(f'{p} addresses a site outside 1..{self.n_qubits}')
            if not all(math.isfinite(a) for a in _angles(p)):
                raise ValueError(f'non-finite angle in {p}')
        if self.declared_steps is None:
            object.__setattr__(self, 'declared_steps', count_steps(self.pulses))

    @property
    def steps(self) -> int:
        return count_steps(self.pulses)

    def __add__(self, other: 'Circuit') -> 'Circuit':
        """``a + b`` runs ``a`` first, then ``b``."""
        if other.n_qubits != self.n_qubits:
            raise ValueError('cannot concatenate circuits on different registers')
        return Circuit(self.pulses + other.pulses, self.n_qubits, self.label)

    def then(self, *pulses: Pulse) -> 'Circuit':
        return Circuit(self.pulses + tuple(pulses), self.n_qubits, self.label)

    def repeat(self, k: int) -> 'Circuit':
        return Circuit(self.pulses * k, self.n_qubits, self.label)

    def relabel(self, label: str) -> 'Circuit':
        return replace(self, label=label)

    def to_text(self) -> str:
        from .textio import circuit_to_text
        return circuit_to_text(self)


def _seq(label: str, n: int, *parts: Union[Pulse, Circuit]) -> Circuit:
    pulses: list[Pulse] = []
    for part in parts:
        pulses.extend(part.pulses if isinstance(part, Circuit) else (part,))
    return Circuit(tuple(pulses), n, label)


# --------------------------------------------------------------------------- compilation

def pulse_unitary(p: Pulse, n: int, params: Optional[AnisotropyParams] = None) -> np.ndarray:
    if isinstance(p, ExchangePulse):
        use = p.params if p.params is not None else params
        if use is None:
            raise ValueError(f'no anisotropy parameters available for {p}')
        H = exchange_generator(p.i, p.j, p.phi, use, n)
        if p.extra is not None:
            H = H + p.extra
        return expm_evolve(H)
    if isinstance(p, ZeemanPulse):
        return expm_evolve(zeeman_generator(p.j, p.eta, n))
    if isinstance(p, ZGate):
        return z_gate(p.j, n)
    if isinstance(p, ParallelZ):
        U = np.eye(2**n, dtype=complex)
        for s in p.sites:
            U = z_gate(s, n) @ U
        return U
    if isinstance(p, EncodedZ):
        return expm_evolve(p.epsilon * encoded_operator('z', p.i, n))
    if isinstance(p, FramedPulse):
        R = frame_rotation(p.omega, p.inner.sites, n)
        return R @ pulse_unitary(p.inner, n, params) @ R.conj().T
    raise TypeError(f'unknown pulse {p!r}')


def compile(c: Circuit, params: Optional[AnisotropyParams] = None) -> np.ndarray:
    """Unitary of the circuit: product of pulse unitaries, latest pulse leftmost."""
    n = c.n_qubits
    U = np.eye(2**n, dtype=complex)
    for p in c.pulses:
        U = pulse_unitary(p, n, params) @ U
    return U


# --------------------------------------------------------------------------- case 1

def _signed_beta(params: AnisotropyParams, axis: int) -> float:
    return params.beta[axis]


def fig2a_xbar(phi: float, params: AnisotropyParams, n: int = 2, logical: int = 1) -> Circuit:
    """
    Three-step encoded x rotation ``exp(-i phi Sx_L)`` for beta parallel to B.

    Conjugates one exchange pulse of angle ``phi / sqrt(1 + beta^2)`` by
    encoded z rotations through ``epsilon = arctan(beta)``.
    """
    require_geometry(params, Geometry.PARALLEL_B)
    beta = _signed_beta(params, 2)
    eps = math.atan(beta)
    a, b = 2 * logical - 1, 2 * logical
    return _seq('fig2a_xbar', n,
                EncodedZ(logical, -eps),
                ExchangePulse(a, b, phi / math.sqrt(1 + beta**2)),
                EncodedZ(logical, eps))


def fig2b_zz(phi: float, params: AnisotropyParams, n: int = 4, sites: tuple[int, int] = (2, 3)) -> Circuit:
    """
    Four-step ``U(theta) Z U(theta) Z`` on ``sites`` with ``theta = phi / (2 (1 + gamma beta^2))``.

    Compiles to ``exp(-i phi S_a^z S_b^z)`` on the physical sites.
    """
    require_geometry(params, Geometry.PARALLEL_B)
    a, b = sites
    theta = 0.5 * phi / (1 + params.gamma * params.magnitude**2)
    return _seq('fig2b_zz', n, ZGate(a), ExchangePulse(a, b, theta), ZGate(a), ExchangePulse(a, b, theta))


# --------------------------------------------------------------------------- case 2

def v_block(params: AnisotropyParams, n: int = 2) -> Circuit:
    """``V = U(pi/sqrt(1+beta^2)) Z1 Z2 U(-pi/sqrt(1+beta^2))``, separable across 1|2."""
    require_geometry(params, Geometry.ALONG_X)
    a = math.pi / math.sqrt(1 + params.magnitude**2)
    return _seq('v_block', n, ExchangePulse(1, 2, -a), ParallelZ((1, 2)), ExchangePulse(1, 2, a))


def x_generator(site: Union[int, str], n: int = 2) -> np.ndarray:
    """
    The x-type generator a Case-2 rotation on ``site`` produces:
    ``S_1^x`` for site 1, ``-S_2^x`` for site 2 and ``S_1^x - S_2^x`` for ``'diff'``.
    """
    if site == 1:
        return embed_spin('x', 1, n)
    if site == 2:
        return -embed_spin('x', 2, n)
    if site == 'diff':
        return embed_spin('x', 1, n) - embed_spin('x', 2, n)
    raise ValueError(f"site must be 1, 2 or 'diff', got {site!r}")


def _zeeman_sites(site):
    # sign of each Zeeman pulse relative to the generator S_1^z, S_2^z or S_1^z - S_2^z
    return {1: ((1, 1),), 2: ((2, 1),), 'diff': ((1, 1), (2, -1))}[site]


def _rot_z(site, t: float) -> list[ZeemanPulse]:
    """Pulses for ``exp(i t G)`` with ``G`` the z generator matching ``site``."""
    return [ZeemanPulse(j, -s * t) for j, s in _zeeman_sites(site)]


def eight_step_x(params: AnisotropyParams, site: int = 1, inverse: bool = False, n: int = 2) -> Circuit:
    """
    Discrete rotation ``Z V Z V = exp(-4 i epsilon X)`` with ``X = x_generator(site)``.

    ``inverse=True`` gives ``V Z V Z = exp(+4 i epsilon X)``.
    """
    if site not in (1, 2):
        raise ValueError(f'eight-step rotation acts on site 1 or 2, got {site!r}')
    V = v_block(params, n)
    if inverse:
        return _seq('eight_step_x', n, ZGate(site), V, ZGate(site), V)
    return _seq('eight_step_x', n, V, ZGate(site), V, ZGate(site))


@dataclass(frozen=True)
class Interpretation:
    """One reading of the printed 17-step angle formulas."""
    id: str
    description: str
    delta: Callable[[float, float], float]
    phi: Callable[[float, float], float]


def _half_sq(eta, eps):
    return 2 * math.acos(max(-1.0, 1 - 2 * math.sin(eta / 2)**2 * math.sin(2 * eps)**2))


def _sq_over_two(eta, eps):
    return 2 * math.acos(max(-1.0, 1 - 2 * (math.sin(eta)**2 / 2) * math.sin(2 * eps)**2))


_DELTAS = {
    'd_tanhalf_mul_cos': ('arctan(tan(eta/2) * cos(2 eps))', lambda eta, eps: math.atan(math.tan(eta / 2) * math.cos(2 * eps))),
    'd_tan_div_2cos': ('arctan(tan(eta) / (2 cos(2 eps)))', lambda eta, eps: math.atan(math.tan(eta) / (2 * math.cos(2 * eps)))),
    'd_tanhalf_div_cos': ('arctan(tan(eta/2) / cos(2 eps))', lambda eta, eps: math.atan(math.tan(eta / 2) / math.cos(2 * eps))),
}
_PHIS = {
    'p_sinsq_half': ('sin^2(eta/2)', _half_sq),
    'p_sinsq_over_2': ('sin^2(eta)/2', _sq_over_two),
}

INTERPRETATIONS: dict[str, Interpretation] = {}
for _d, (_dd, _df) in _DELTAS.items():
    for _p, (_pd, _pf) in _PHIS.items():
        _id = f'{_d}.{_p}'
        INTERPRETATIONS[_id] = Interpretation(
            _id, f'delta = pi/2 - {_dd}; phi = 2 arccos(1 - 2 {_pd} sin^2(2 eps))',
            lambda eta, eps, f=_df: math.pi / 2 - f(eta, eps), _pf)


def _wrap(eta: float) -> float:
    # exp(2 pi i S^z) = -1, so eta is only meaningful modulo 2 pi
    return math.remainder(eta, 2 * math.pi)


def continuous_x_range(params: AnisotropyParams) -> float:
    """Largest ``|phi|`` the 17-step circuit reaches for the given ``|beta|``."""
    return _half_sq(math.pi, params.epsilon)


def _seventeen_step(eta: float, eps_signed: float, params: AnisotropyParams, site, interp: Interpretation,
                    n: int) -> tuple[Circuit, float]:
    eta = _wrap(eta)
    delta = interp.delta(eta, eps_signed)
    # rotation sense follows sign(eta) * sign(beta)
    phi = math.copysign(interp.phi(eta, eps_signed), eta * eps_signed) if eta else 0.0
    V = v_block(params, n)
    zz = ParallelZ((1, 2))
    circuit = _seq('seventeen_step_x', n,
                   *_rot_z(site, -delta), zz, V, *_rot_z(site, -eta), V, zz, V,
                   *_rot_z(site, eta), V, *_rot_z(site, delta))
    return circuit, phi


def seventeen_step_target(phi: float, site: Union[int, str] = 1, n: int = 2) -> np.ndarray:
    """``exp(i phi X)`` with ``X = x_generator(site)``."""
    return expm_evolve(-phi * x_generator(site, n))


DEFAULT_VALIDATION_BETAS = (0.01, 0.03, 0.05, 0.1)
DEFAULT_VALIDATION_GAMMAS = (0.0, 0.1)
DEFAULT_VALIDATION_ETAS = (0.3, 1.0, math.pi / 2, 2.5, 3.0, -1.0)


@dataclass(frozen=True)
class Disambiguation:
    """Outcome of checking every formula reading on a validation grid."""
    selected: Optional[str]
    worst_deficit: dict[str, float]
    passing: tuple[str, ...]
    tolerance: float
    grid_size: int

    @property
    def unique(self) -> bool:
        return len(self.passing) == 1


class DisambiguationError(RuntimeError):
    """No reading of the 17-step formulas reproduces the target gate."""

    def __init__(self, result: Disambiguation):
        best = min(result.worst_deficit, key=result.worst_deficit.get)
        super().__init__(f'no 17-step interpretation reaches fidelity 1 - {result.tolerance:g}; '
                         f'best is {best} with worst deficit {result.worst_deficit[best]:.3e}')
        self.result = result


def select_interpretation(betas: Sequence[float] = DEFAULT_VALIDATION_BETAS,
                          gammas: Sequence[float] = DEFAULT_VALIDATION_GAMMAS,
                          etas: Sequence[float] = DEFAULT_VALIDATION_ETAS,
                          tol: float = 1e-6) -> Disambiguation:
    """
    Compile the 17-step circuit under every candidate reading of its angle
    formulas and keep the readings whose fidelity against ``exp(i phi S_1^x)``
    stays within ``tol`` of one on the whole grid. The selection is the
    passing reading with the smallest worst-case deficit.
    """
    return _select_cached(tuple(betas), tuple(gammas), tuple(etas), tol)


@lru_cache(maxsize=16)
def _select_cached(betas, gammas, etas, tol) -> Disambiguation:
    worst = {}
    for key, interp in INTERPRETATIONS.items():
        deficit = 0.0
        for beta in betas:
            for gamma in gammas:
                params = AnisotropyParams.along_x(beta, gamma)
                for eta in etas:
                    c, phi = _seventeen_step(eta, math.atan(beta), params, 1, interp, 2)
                    f = phase_fidelity(compile(c, params), seventeen_step_target(phi))
                    deficit = max(deficit, 1 - f)
        worst[key] = deficit
    passing = tuple(sorted((k for k, d in worst.items() if d <= tol), key=lambda k: worst[k]))
    size = len(betas) * len(gammas) * len(etas)
    return Disambiguation(passing[0] if passing else None, worst, passing, tol, size)


def _resolve(interpretation: Optional[str]) -> Interpretation:
    if interpretation is None:
        result = select_interpretation()
        if result.selected is None:
            raise DisambiguationError(result)
        interpretation = result.selected
    try:
        return INTERPRETATIONS[interpretation]
    except KeyError:
        raise ValueError(f'unknown interpretation {interpretation!r}') from None


def seventeen_step_x(eta: float, params: AnisotropyParams, site: Union[int, str] = 1,
                     interpretation: Optional[str] = None, n: int = 2) -> tuple[Circuit, float]:
    """
    Continuous x rotation from four ``V`` blocks and Zeeman pulses.

    Returns the circuit and the angle ``phi`` it achieves; the circuit
    compiles to ``exp(i phi X)`` with ``X = x_generator(site)``. The sign of
    ``phi`` is ``sign(eta) * sign(beta_x)``, with ``eta`` taken modulo ``2 pi``
    into ``(-pi, pi]``.
    """
    require_geometry(params, Geometry.ALONG_X)
    if params.magnitude == 0:
        raise ValueError('beta = 0 gives epsilon = 0: the 17-step circuit is a null gate')
    interp = _resolve(interpretation)
    return _seventeen_step(eta, math.atan(params.beta[0]), params, site, interp, n)


def eta_for_angle(phi: float, params: AnisotropyParams, interpretation: Optional[str] = None) -> float:
    """Zeeman angle ``eta`` for which the 17-step circuit achieves ``phi``."""
    interp = _resolve(interpretation)
    eps = params.epsilon
    reach = interp.phi(math.pi / 2 if interp.phi is _sq_over_two else math.pi, eps)
    if abs(phi) > reach * (1 + 1e-12):
        raise ValueError(f'|phi| = {abs(phi):.6g} exceeds the continuous range {reach:.6g}')
    if interp.phi is _half_sq:
        s = min(1.0, math.sin(abs(phi) / 4) / abs(math.sin(2 * eps)))
        return math.copysign(2 * math.asin(s), phi * params.beta[0])
    from scipy.optimize import brentq
    target = abs(phi)
    eta = brentq(lambda e: interp.phi(e, eps) - target, 0.0, math.pi / 2) if target else 0.0
    return math.copysign(eta, phi * params.beta[0])


def x_rotation(theta: float, params: AnisotropyParams, site: Union[int, str] = 1,
               interpretation: Optional[str] = None, n: int = 2) -> Circuit:
    """
    ``exp(i theta X)`` for any ``theta``: a single 17-step circuit when
    ``theta`` is within the continuous range, otherwise whole 8-step
    ``4 epsilon`` rotations followed by a 17-step correction.
    """
    reach = continuous_x_range(params)
    if abs(theta) <= reach:
        c, _ = seventeen_step_x(eta_for_angle(theta, params, interpretation), params, site, interpretation, n)
        return c.relabel('x_rotation')
    if site == 'diff':
        return (x_rotation(theta, params, 1, interpretation, n)
                + x_rotation(theta, params, 2, interpretation, n)).relabel('x_rotation')
    quantum = 4 * math.atan(params.beta[0])
    k = round(theta / quantum)
    coarse = eight_step_x(params, site, inverse=k > 0, n=n).repeat(abs(k))
    remainder = theta - k * quantum
    fine = x_rotation(remainder, params, site, interpretation, n) if remainder else Circuit((), n)
    return (coarse + fine).relabel('x_rotation')


def fifty_five_step_zz(varphi: float, params: AnisotropyParams, interpretation: Optional[str] = None,
                       n: int = 2) -> tuple[Circuit, float]:
    """
    Entangling gate ``exp(-i phi S_1^z S_2^z)`` with ``phi = 2 varphi sqrt(1 + beta^2)``.

    The three x-type factors are each a 17-step circuit; merged Zeeman
    layers bring the total to at most 55 steps.
    """
    require_geometry(params, Geometry.ALONG_X)
    eps = math.atan(params.beta[0])
    target_phi = 2 * varphi * math.sqrt(1 + params.magnitude**2)
    U = ExchangePulse(1, 2, varphi)
    circuit = _seq('fifty_five_step_zz', n,
                   x_rotation(eps / 2, params, 'diff', interpretation, n),
                   U,
                   x_rotation(-eps, params, 2, interpretation, n),
                   ZGate(2),
                   U,
                   x_rotation(-eps / 2, params, 'diff', interpretation, n),
                   ZGate(2))
    return circuit, target_phi


# --------------------------------------------------------------------------- case 3

def case3_wrap(c: Circuit, omega: float) -> Circuit:
    """
    Wrap every exchange pulse in the frame rotation ``omega``.

    Compiled with in-plane ``beta`` at angle ``omega``, the wrapped circuit
    equals the original compiled with ``beta`` rotated onto x.
    """
    if omega == 0:
        return c
    pulses = tuple(FramedPulse(p, omega) if isinstance(p, ExchangePulse) else p for p in c.pulses)
    return Circuit(pulses, c.n_qubits, c.label)


# --------------------------------------------------------------------------- case 4

def trotter_cphase(phi: float, n_reps: int, schedule: Union[Schedule, AnisotropyParams],
                   sites: tuple[int, int] = (1, 2), n: int = 2) -> Circuit:
    """
    ``(U(phi/4n) Z_a Z_b U(phi/4n) Z_a)^(2n)`` approximating ``exp(-i phi S_a^z S_b^z)``.

    Each of the ``2n`` four-pulse blocks takes its parameters from the
    schedule at the block midpoint.
    """
    if n_reps < 1:
        raise ValueError(f'n_reps must be positive, got {n_reps}')
    schedule = Schedule.coerce(schedule)
    a, b = sites
    h = phi / (4 * n_reps)
    pulses: list[Pulse] = []
    for p in schedule.slices(2 * n_reps):
        pulses += [ZGate(a), ExchangePulse(a, b, h, p), ParallelZ((a, b)), ExchangePulse(a, b, h, p)]
    return Circuit(tuple(pulses), n, 'trotter_cphase')


def trotter_dm(phi: float, n_reps: int, schedule: Union[Schedule, AnisotropyParams], n: int = 2) -> Circuit:
    """
    Framed block repeated ``n`` times approximating
    ``exp(-i phi (S_1^z S_2^y - S_1^y S_2^z))``.

    Each block ``F U(-dphi) Z1Z2 U(dphi) Z1Z2 F^dag`` generates ``2 dphi |beta|``
    of the target angle, so ``dphi = phi / (2 n |beta|)`` per slice.
    """
    if n_reps < 1:
        raise ValueError(f'n_reps must be positive, got {n_reps}')
    schedule = Schedule.coerce(schedule)
    pulses: list[Pulse] = []
    for p in schedule.slices(n_reps):
        require_geometry(p, Geometry.ALONG_X, Geometry.IN_PLANE)
        omega, rotated = beta_frame_rotation(p)
        dphi = phi / (2 * n_reps * rotated.magnitude)
        zz = ParallelZ((1, 2))
        pulses += [ZeemanPulse(1, omega), ZeemanPulse(2, omega), zz, ExchangePulse(1, 2, dphi, p), zz,
                   ExchangePulse(1, 2, -dphi, p), ZeemanPulse(1, -omega), ZeemanPulse(2, -omega)]
    return Circuit(tuple(pulses), n, 'trotter_dm')


def trotter_x(phi: float, n_reps: int, schedule: Union[Schedule, AnisotropyParams], n: int = 2) -> Circuit:
    """
    ``exp(-i phi S_1^x)`` from two DM blocks, two CPHASE blocks and two ``Z_2``::

        exp(-i pi S1zS2z) D(phi) Z2 D(phi) exp(+i pi S1zS2z) Z2

    The schedule is split into four equal windows, one per approximate block.
    """
    schedule = Schedule.coerce(schedule)
    windows = [schedule.window(k / 4, (k + 1) / 4) for k in range(4)]
    return _seq('trotter_x', n,
                ZGate(2),
                trotter_cphase(-math.pi, n_reps, windows[0], n=n),
                trotter_dm(phi, n_reps, windows[1], n),
                ZGate(2),
                trotter_dm(phi, n_reps, windows[2], n),
                trotter_cphase(math.pi, n_reps, windows[3], n=n))
