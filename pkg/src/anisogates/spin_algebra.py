"""
Dense operator algebra on small multi-qubit Hilbert spaces.

Operators are plain complex ``numpy`` arrays of shape ``(2**n, 2**n)``.
Conventions used everywhere in the package:

* spin operators are half the Pauli matrices, ``S = sigma / 2``;
* ``|up>`` is basis index 0, ``|down>`` is index 1;
* qubit 1 is the leftmost tensor factor (most significant bit).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

__all__ = [
    'MAX_QUBITS', 'PAULI', 'SPIN', 'SchmidtSpectrum', 'basis_state', 'commutator',
    'embed', 'embed_spin', 'expm_evolve', 'hermiticity_deviation', 'max_entry',
    'n_qubits_of', 'operator_schmidt', 'phase_aligned_distance', 'phase_fidelity',
    'subspace_restrict', 'unitarity_deviation',
]

MAX_QUBITS = 8
RANK_TOLERANCE = 1e-10
HERMITIAN_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-10

PAULI = {
    'i': np.eye(2, dtype=complex),
    'x': np.array([[0, 1], [1, 0]], dtype=complex),
    'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'z': np.array([[1, 0], [0, -1]], dtype=complex),
}
SPIN = {axis: PAULI[axis] / 2 for axis in 'xyz'}


def max_entry(A: np.ndarray) -> float:
    """Largest absolute entry of ``A``."""
    return float(np.max(np.abs(A))) if A.size else 0.0


def n_qubits_of(A: np.ndarray) -> int:
    """Number of qubits an operator acts on; raises for non-2**n shapes."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f'operator must be square, got shape {A.shape}')
    d = A.shape[0]
    n = d.bit_length() - 1
    if d < 2 or 2**n != d:
        raise ValueError(f'dimension {d} is not a power of two')
    return n


def _check_sites(sites: Sequence[int], n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f'qubit count must be in [1, {MAX_QUBITS}], got {n}')
    for s in sites:
        if not 1 <= s <= n:
            raise ValueError(f'site {s} out of range for {n} qubits')


def embed(ops: dict[int, np.ndarray], n: int) -> np.ndarray:
    """Tensor product placing ``ops[site]`` on each listed site, identity elsewhere."""
    _check_sites(list(ops), n)
    factors = [ops.get(k, PAULI['i']) for k in range(1, n + 1)]
    return reduce(np.kron, factors).astype(complex)


def embed_spin(axis: str, site: int, n: int) -> np.ndarray:
    """Spin component ``S^axis`` on ``site`` of an ``n``-qubit register."""
    if axis not in SPIN:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    return embed({site: SPIN[axis]}, n)


def basis_state(bits: str) -> np.ndarray:
    """Computational basis vector from a string of ``0``/``1`` (or ``u``/``d``)."""
    table = {'0': 0, 'u': 0, '1': 1, 'd': 1}
    try:
        index = int(''.join(str(table[b]) for b in bits), 2)
    except KeyError as exc:
        raise ValueError(f'invalid basis label {bits!r}') from exc
    v = np.zeros(2**len(bits), dtype=complex)
    v[index] = 1
    return v


def hermiticity_deviation(H: np.ndarray) -> float:
    return max_entry(H - H.conj().T)


def unitarity_deviation(U: np.ndarray) -> float:
    return max_entry(U @ U.conj().T - np.eye(U.shape[0]))


def expm_evolve(H: np.ndarray, tol: float = HERMITIAN_TOLERANCE) -> np.ndarray:
    r"""
    Return :math:`\exp(-iH)` for a Hermitian generator.

    The exponential is taken in the eigenbasis of ``H``, so the result is
    unitary to machine precision.

    Raises
    ------
    ValueError
        If ``H`` deviates from Hermiticity by more than ``tol`` (max entry).
    """
    H = np.asarray(H, dtype=complex)
    n_qubits_of(H)
    dev = hermiticity_deviation(H)
    if dev > tol:
        raise ValueError(f'generator is not Hermitian (max |H - H^dag| = {dev:.3e})')
    w, v = np.linalg.eigh((H + H.conj().T) / 2)
    return (v * np.exp(-1j * w)) @ v.conj().T


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape:
        raise ValueError(f'dimension mismatch: {A.shape} vs {B.shape}')
    return A @ B - B @ A


def _check_unitary_pair(U, V, tol):
    if U.shape != V.shape:
        raise ValueError(f'dimension mismatch: {U.shape} vs {V.shape}')
    for name, M in (('U', U), ('V', V)):
        dev = unitarity_deviation(M)
        if dev > tol:
            raise ValueError(f'{name} is not unitary (max |MM^dag - I| = {dev:.3e})')


def phase_fidelity(U: np.ndarray, V: np.ndarray, tol: float = UNITARY_TOLERANCE) -> float:
    r"""
    Global-phase-insensitive overlap :math:`|\mathrm{tr}(U^\dagger V)| / d`.

    Equals one exactly when ``U`` and ``V`` differ by an overall phase.
    Rounding can push the raw value a hair above one; it is clipped.
    """
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    _check_unitary_pair(U, V, tol)
    f = abs(np.vdot(U, V)) / U.shape[0]
    return float(min(f, 1.0))


def phase_aligned_distance(U: np.ndarray, V: np.ndarray) -> float:
    """Frobenius distance ``min_theta ||V - exp(i theta) U||``."""
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if U.shape != V.shape:
        raise ValueError(f'dimension mismatch: {U.shape} vs {V.shape}')
    overlap = np.vdot(U, V)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(V - phase * U))


def subspace_restrict(U: np.ndarray, basis: Sequence[np.ndarray],
                      tol: float = 1e-12) -> tuple[np.ndarray, float]:
    """
    Restrict ``U`` to the span of ``basis``.

    Returns
    -------
    restricted : ndarray
        Matrix of elements ``<b_i|U|b_j>``.
    leakage : float
        Spectral norm of the block mapping the subspace into its complement.
    """
    B = np.column_stack([np.asarray(b, dtype=complex) for b in basis])
    if B.shape[0] != U.shape[0]:
        raise ValueError(f'basis vectors have length {B.shape[0]}, operator has dimension {U.shape[0]}')
    gram_dev = max_entry(B.conj().T @ B - np.eye(B.shape[1]))
    if gram_dev > tol:
        raise ValueError(f'basis is not orthonormal (max Gram deviation {gram_dev:.3e})')
    UB = U @ B
    restricted = B.conj().T @ UB
    outside = UB - B @ restricted
    leakage = float(np.linalg.norm(outside, 2)) if outside.size else 0.0
    return restricted, leakage


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Operator-Schmidt coefficients of an operator across a bipartition."""
    singular_values: tuple[float, ...]
    bipartition: tuple[tuple[int, ...], tuple[int, ...]]

    def rank(self, tol: float = RANK_TOLERANCE) -> int:
        return sum(s > tol for s in self.singular_values)

    @property
    def second(self) -> float:
        return self.singular_values[1] if len(self.singular_values) > 1 else 0.0


def operator_schmidt(U: np.ndarray, part_a: Sequence[int] = (1,)) -> SchmidtSpectrum:
    """
    Operator-Schmidt decomposition of ``U`` across ``part_a | rest``.

    The operator is reshuffled so that row index = (out_A, in_A) and column
    index = (out_B, in_B); its singular values are the Schmidt coefficients.
    With this normalisation the squares sum to ``||U||_F**2``.
    """
    U = np.asarray(U, dtype=complex)
    n = n_qubits_of(U)
    a = tuple(sorted(set(part_a)))
    _check_sites(a, n)
    b = tuple(k for k in range(1, n + 1) if k not in a)
    if not a or not b:
        raise ValueError('both sides of the bipartition must be non-empty')
    T = U.reshape((2,) * (2 * n))
    # axes 0..n-1 are output qubits, n..2n-1 input qubits
    order = ([k - 1 for k in a] + [n + k - 1 for k in a]
             + [k - 1 for k in b] + [n + k - 1 for k in b])
    R = T.transpose(order).reshape(4**len(a), 4**len(b))
    s = np.linalg.svd(R, compute_uv=False)
    return SchmidtSpectrum(tuple(float(x) for x in s), (a, b))
