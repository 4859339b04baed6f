import warnings

import numpy as np
import pytest

from anisogates.model import AnisotropyWarning


@pytest.fixture(autouse=True)
def _quiet_anisotropy():
    # the few-percent regime warning fires for gamma = 1 on the beta = 0.1 grid edge
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', AnisotropyWarning)
        yield


def random_hermitian(rng, n):
    A = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
    return (A + A.conj().T) / 2


def taylor_expm(A, terms=30):
    """Scaling-and-squaring Taylor exponential, an oracle independent of eigh."""
    norm = np.linalg.norm(A, 1)
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0 else 0
    B = A / 2**s
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ B / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out
