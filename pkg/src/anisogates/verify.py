"""
Certification of compiled circuits against their target gates.

Two equivalence measures are reported for every identity: the global-phase
fidelity ``|tr(U^dag V)| / d`` (which decides pass/fail) and the Frobenius
distance after optimal phase alignment (which localises structured error).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import circuits as C
from .circuits import Circuit, ExchangePulse, FramedPulse
from .model import AnisotropyParams, dm_operator, encoded_operator, z_gate
from .spin_algebra import (commutator, embed_spin, expm_evolve, hermiticity_deviation,
                           max_entry, n_qubits_of, operator_schmidt, phase_aligned_distance,
                           phase_fidelity, subspace_restrict)

NUMERICAL_FLOOR = 1e-13
EXACT_TOL = 1e-9
APPROX_TOL = 1e-6
LEAKAGE_TOL = 1e-12
FIT_FLOOR = 10 * NUMERICAL_FLOOR


@dataclass
class VerificationReport:
    label: str
    fidelity: float
    phase_aligned_distance: float
    passed: bool
    tolerance: float
    step_count: int = 0
    leakage: Optional[float] = None
    leakage_tolerance: float = LEAKAGE_TOL
    interpretation_id: str = 'printed'
    case: str = ''
    beta: tuple[float, float, float] = (0.0, 0.0, 0.0)
    gamma: float = 0.0
    angle: float = 0.0
    diagnostic: bool = False
    skipped: bool = False
    notes: list[str] = field(default_factory=list)
    deviation: list[tuple[int, int, float]] = field(default_factory=list)
    scaling: Optional['ScalingReport'] = None
    value: Optional[float] = None

    kind = 'identity'


@dataclass
class ScalingReport:
    """Power-law fit ``error ~ x**slope`` on log-log points.

    ``fitted_exponent`` is the slope for perturbation scans and minus the
    slope for convergence-in-``n`` studies (so both read as an order).
    """
    label: str
    points: list[tuple[float, float]]
    fitted_exponent: float
    fit_residual: float
    degenerate: bool
    excluded: list[tuple[float, float]] = field(default_factory=list)
    threshold: Optional[float] = None
    comparison: str = 'min'
    max_residual: Optional[float] = None
    case: str = ''
    beta: tuple[float, float, float] = (0.0, 0.0, 0.0)
    gamma: float = 0.0
    angle: float = 0.0
    diagnostic: bool = False
    skipped: bool = False
    interpretation_id: str = 'printed'
    notes: list[str] = field(default_factory=list)

    kind = 'scaling'

    @property
    def vanishing(self) -> bool:
        return bool(self.points) and len(self.excluded) == len(self.points)

    @property
    def passed(self) -> bool:
        if self.threshold is None:
            return not self.degenerate
        if self.degenerate:
            # error below the floor everywhere: cancelled beyond any finite order
            return self.vanishing and self.comparison == 'min'
        ok = (self.fitted_exponent >= self.threshold if self.comparison == 'min'
              else self.fitted_exponent <= self.threshold)
        if self.max_residual is not None:
            ok = ok and self.fit_residual <= self.max_residual
        return ok


# --------------------------------------------------------------------------- identities

def _fidelity(U: np.ndarray, V: np.ndarray) -> float:
    return float(min(1.0, abs(np.vdot(U, V)) / U.shape[0]))


def deviation_entries(U: np.ndarray, V: np.ndarray, k: int = 4) -> list[tuple[int, int, float]]:
    """Largest entries of ``V - exp(i theta) U`` after phase alignment."""
    overlap = np.vdot(U, V)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    D = np.abs(V - phase * U)
    flat = np.argsort(D, axis=None)[::-1][:k]
    return [(int(r), int(c), float(D[r, c])) for r, c in zip(*np.unravel_index(flat, D.shape))]


def compare(U: np.ndarray, target: np.ndarray, *, label: str, tol: float = EXACT_TOL,
            subspace: Optional[Sequence[np.ndarray]] = None, leakage_tol: float = LEAKAGE_TOL,
            **meta) -> VerificationReport:
    """Build a report comparing an already compiled unitary with its target."""
    leakage = None
    if subspace is not None:
        U, leakage = subspace_restrict(U, subspace)
        if target.shape[0] != len(subspace):
            target, _ = subspace_restrict(target, subspace)
    elif U.shape != target.shape:
        raise ValueError(f'dimension mismatch: compiled {U.shape} vs target {target.shape}')
    fid = _fidelity(target, U)
    dist = phase_aligned_distance(target, U)
    notes = list(meta.pop('notes', []))
    passed = fid >= 1 - tol and (leakage is None or leakage <= leakage_tol)
    if tol < NUMERICAL_FLOOR:
        passed = False
        notes.append(f'tolerance {tol:g} is below the numerical floor {NUMERICAL_FLOOR:g}')
    if leakage is not None and leakage > leakage_tol:
        notes.append(f'leakage {leakage:.3e} exceeds {leakage_tol:g}; restricted block is not unitary')
    report = VerificationReport(label=label, fidelity=fid, phase_aligned_distance=dist, passed=passed,
                                tolerance=tol, leakage=leakage, leakage_tolerance=leakage_tol,
                                notes=notes, **meta)
    if not passed:
        report.deviation = deviation_entries(target, U)
    return report


def _meta_from(params: Optional[AnisotropyParams]) -> dict:
    if params is None:
        return {}
    return {'beta': params.beta, 'gamma': params.gamma}


def verify_identity(c: Circuit, target: np.ndarray, params: Optional[AnisotropyParams] = None,
                    subspace: Optional[Sequence[np.ndarray]] = None, tol: float = EXACT_TOL,
                    **meta) -> VerificationReport:
    """
    Compile ``c`` and compare it with ``target`` up to global phase.

    With ``subspace`` both sides are restricted to the span of the given
    orthonormal states and the compiled unitary's leakage out of it is
    recorded. ``meta`` fills the descriptive report fields.
    """
    meta = {**_meta_from(params), **meta}
    meta.setdefault('label', c.label)
    meta.setdefault('step_count', c.steps)
    return compare(C.compile(c, params), np.asarray(target, dtype=complex), tol=tol, subspace=subspace, **meta)


def verify_signed(c: Circuit, printed: np.ndarray, flipped: np.ndarray, params=None, **kwargs) -> VerificationReport:
    """
    Verify against the printed target; if that fails, try the sign-flipped
    target and record which one holds in ``interpretation_id``.
    """
    report = verify_identity(c, printed, params, interpretation_id='printed', **kwargs)
    if report.passed:
        return report
    alt = verify_identity(c, flipped, params, interpretation_id='sign_flipped', **kwargs)
    if alt.passed:
        alt.notes.append(f'printed sign fails (fidelity {report.fidelity:.12f}); flipped sign verified')
        return alt
    return report


def su2_check(i: int = 1, n: int = 2, operators: Optional[dict] = None) -> float:
    """Largest deviation from ``[S_a, S_b] = i S_c`` over cyclic encoded components."""
    ops = operators or {a: encoded_operator(a, i, n) for a in 'xyz'}
    return max(max_entry(commutator(ops[a], ops[b]) - 1j * ops[c])
               for a, b, c in (('x', 'y', 'z'), ('y', 'z', 'x'), ('z', 'x', 'y')))


def separability_check(U: np.ndarray, tol: float = 1e-10) -> tuple[int, float]:
    """Schmidt rank across 1|2 and the second singular value."""
    if n_qubits_of(U) != 2:
        raise ValueError(f'separability check needs a two-qubit operator, got shape {U.shape}')
    spec = operator_schmidt(U, (1,))
    return spec.rank(tol), spec.second


# --------------------------------------------------------------------------- scaling

def fit_power_law(points: Sequence[tuple[float, float]], floor: float = FIT_FLOOR):
    """
    Least-squares line through ``(log x, log err)`` for the points above ``floor``.

    Returns ``(slope, rms_residual, used, excluded)``; slope is ``nan`` when
    fewer than two points survive.
    """
    used = [(x, e) for x, e in points if e > floor]
    excluded = [(x, e) for x, e in points if e <= floor]
    if len(used) < 2:
        return math.nan, math.nan, used, excluded
    lx = np.log([x for x, _ in used])
    le = np.log([e for _, e in used])
    slope, intercept = np.polyfit(lx, le, 1)
    resid = le - (slope * lx + intercept)
    return float(slope), float(np.sqrt(np.mean(resid**2))), used, excluded


def _scaling_report(label, points, slope_sign, **kwargs) -> ScalingReport:
    slope, resid, used, excluded = fit_power_law(points)
    notes = list(kwargs.pop('notes', []))
    if excluded:
        notes.append(f'{len(excluded)} point(s) at or below the fit floor {FIT_FLOOR:g} excluded')
    degenerate = math.isnan(slope)
    if degenerate and len(excluded) == len(points):
        notes.append('every error is at or below the floor: cancelled to all orders')
    elif degenerate:
        notes.append('degenerate fit: fewer than two points above the floor')
    return ScalingReport(label=label, points=list(points), fitted_exponent=slope_sign * slope,
                         fit_residual=resid, degenerate=degenerate, excluded=excluded, notes=notes, **kwargs)


def trotter_scaling(family: Callable[[int], Circuit], target: np.ndarray, n_list: Sequence[int],
                    params: Optional[AnisotropyParams] = None, label: str = 'trotter_scaling',
                    threshold: Optional[float] = 0.9, max_residual: Optional[float] = 0.2,
                    **meta) -> ScalingReport:
    """
    Error ``1 - fidelity`` of ``family(n)`` against ``target`` for each ``n``
    and the fitted convergence order in ``1/n``.
    """
    n_list = list(n_list)
    if len(n_list) < 4 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f'n_list must hold at least 4 ascending values, got {n_list}')
    points = []
    for n in n_list:
        U = family(n) if callable(family) else family
        U = C.compile(U, params) if isinstance(U, Circuit) else U
        points.append((float(n), max(0.0, 1 - phase_fidelity(U, target))))
    return _scaling_report(label, points, -1.0, threshold=threshold, comparison='min',
                           max_residual=max_residual, **meta)


def scale_cycle(c: Circuit, lam: float, error_generator: Optional[np.ndarray] = None) -> Circuit:
    """
    Shrink every exchange pulse generator by ``lam`` and add ``lam * error_generator``.

    Kicks (z-type pulses) are left untouched, so ``lam`` plays the role of the
    cycle duration in the bang-bang limit.
    """
    def scaled(p):
        if isinstance(p, ExchangePulse):
            extra = None if error_generator is None else lam * error_generator
            return ExchangePulse(p.i, p.j, lam * p.phi, p.params, extra)
        if isinstance(p, FramedPulse):
            return FramedPulse(scaled(p.inner), p.omega)
        return p
    return Circuit(tuple(scaled(p) for p in c.pulses), c.n_qubits, c.label)


def kick_commutant_part(E: np.ndarray, sites: Sequence[int] = (1, 2)) -> np.ndarray:
    """Average of ``K E K`` over the kick group generated by ``Z`` on ``sites``."""
    n = n_qubits_of(E)
    avg = np.zeros_like(E, dtype=complex)
    group = [np.eye(2**n, dtype=complex)]
    for s in sites:
        Z = z_gate(s, n)
        group = group + [Z @ g for g in group]
    for K in group:
        avg += K @ E @ K.conj().T
    return avg / len(group)


def eliminated_by_kicks(E: np.ndarray, tol: float = 1e-12) -> bool:
    """True when no part of ``E`` commutes with both ``Z_1`` and ``Z_2``."""
    return max_entry(kick_commutant_part(E)) <= tol


def parity_kick_suppression(error_generator: np.ndarray, lambdas: Sequence[float], base: Circuit,
                            params: Optional[AnisotropyParams] = None, label: str = 'parity_kick',
                            expect_eliminated: Optional[bool] = None, **meta) -> ScalingReport:
    """
    Order in ``lambda`` at which an error term survives the kick sequence.

    For each ``lambda`` the exchange generators of ``base`` are scaled by
    ``lambda`` and ``lambda * error_generator`` is added to each of them;
    the deviation is the phase-aligned distance to the same scaled sequence
    without the error. A fitted exponent near 2 means the first-order
    contribution cancels, near 1 means it does not.
    """
    E = np.asarray(error_generator, dtype=complex)
    dev = hermiticity_deviation(E)
    if dev > 1e-12:
        raise ValueError(f'error generator is not Hermitian (max |E - E^dag| = {dev:.3e})')
    if any(not 0 < lam <= 0.1 for lam in lambdas):
        raise ValueError(f'lambda values must lie in (0, 0.1], got {list(lambdas)}')
    points = []
    for lam in lambdas:
        ideal = C.compile(scale_cycle(base, lam), params)
        noisy = C.compile(scale_cycle(base, lam, E), params)
        points.append((float(lam), phase_aligned_distance(ideal, noisy)))
    if expect_eliminated is None:
        expect_eliminated = eliminated_by_kicks(E)
    threshold, comparison = (1.8, 'min') if expect_eliminated else (1.2, 'max')
    if max_entry(E) == 0:
        threshold = None
    return _scaling_report(label, points, 1.0, threshold=threshold, comparison=comparison, **meta)


def dm_direction_operator(axis: Sequence[float], n: int = 2) -> np.ndarray:
    """``u . (S_1 x S_2)`` for a unit direction ``u``."""
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    cross = dm_operator(1, 2, n)
    return sum(u[a] * cross[a] for a in range(3))


DEFAULT_LAMBDAS = (1e-3, 3e-3, 1e-2, 3e-2)


def anisotropy_cancellation_check(phi: float, n_reps: int, params: AnisotropyParams,
                                  strengths: Sequence[float] = DEFAULT_LAMBDAS,
                                  error_generator: Optional[np.ndarray] = None,
                                  tol: float = 1e-4, label: str = 'anisotropy_cancellation',
                                  expect_eliminated: Optional[bool] = None) -> VerificationReport:
    """
    Trotterized CPHASE check with an extra anisotropic term whose strength is
    independent of the exchange angle.

    The report's fidelity is that of the undisturbed sequence against
    ``exp(-i phi S_1^z S_2^z)``; ``scaling`` holds the strength scan. The
    check passes when the fidelity is within ``tol`` and the scan shows the
    expected order (at least 1.8 for a term the kicks remove).
    """
    base = C.trotter_cphase(phi, n_reps, params)
    target = expm_evolve(phi * embed_spin('z', 1, 2) @ embed_spin('z', 2, 2))
    report = verify_identity(base, target, params, tol=tol, label=label, case='case4_kick', angle=phi)
    strengths = [s for s in strengths if s > 0]
    if not strengths:
        report.notes.append('no decoupled strength: plain Trotter CPHASE verification')
        return report
    E = dm_direction_operator((1.0, 0.0, 0.0)) if error_generator is None else error_generator
    scan = parity_kick_suppression(E, strengths, base, label=f'{label}.scan', case='case4_kick',
                                   expect_eliminated=expect_eliminated, beta=params.beta, gamma=params.gamma,
                                   angle=phi)
    report.scaling = scan
    report.passed = report.passed and scan.passed
    report.notes.append(f'decoupled-term exponent {scan.fitted_exponent:.4f} '
                        f'({"eliminated" if scan.comparison == "min" else "not eliminated"} expected)')
    return report


# --------------------------------------------------------------------------- case-specific checks

def seventeen_step_range_scan(epsilon: float, eta_grid: Optional[Sequence[float]] = None,
                              interpretation: Optional[str] = None) -> tuple[float, float]:
    """Maximum of ``|phi(eta)|`` over ``eta_grid`` and where it is attained."""
    if eta_grid is None:
        eta_grid = np.linspace(-math.pi, math.pi, 2001)
    interp = C._resolve(interpretation)
    values = [abs(interp.phi(eta, epsilon)) for eta in eta_grid]
    # ties (the scan is even in eta) resolve to the largest eta
    k = len(values) - 1 - int(np.argmax(values[::-1]))
    return float(values[k]), float(eta_grid[k])


def case4_sx_identity_check(phi: float, tol: float = EXACT_TOL) -> VerificationReport:
    """
    The composite single-qubit identity with its DM and CPHASE factors
    replaced by exact exponentials, isolating the algebra from Trotter error.
    """
    n = 2
    zz = embed_spin('z', 1, n) @ embed_spin('z', 2, n)
    dm = embed_spin('z', 1, n) @ embed_spin('y', 2, n) - embed_spin('y', 1, n) @ embed_spin('z', 2, n)
    Z2 = z_gate(2, n)
    D = expm_evolve(phi * dm)
    W = expm_evolve(math.pi * zz) @ D @ Z2 @ D @ expm_evolve(-math.pi * zz) @ Z2
    target = expm_evolve(phi * embed_spin('x', 1, n))
    return compare(W, target, label='case4_sx_exact_blocks', tol=tol, case='case4', angle=phi,
                   step_count=0, diagnostic=False)


def encoded_zz_target(phi: float, n: int = 4) -> np.ndarray:
    """``exp(+i phi Sz_1 Sz_2)`` on the two logical qubits."""
    return expm_evolve(-phi * encoded_operator('z', 1, n) @ encoded_operator('z', 2, n))


def physical_zz_target(phi: float, a: int, b: int, n: int) -> np.ndarray:
    """``exp(-i phi S_a^z S_b^z)``."""
    return expm_evolve(phi * embed_spin('z', a, n) @ embed_spin('z', b, n))
