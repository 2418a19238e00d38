import numpy as np
import pytest

from purity_bounds import validate_density


@pytest.fixture
def bell_state():
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
    return validate_density(np.outer(psi, psi.conj()), (2, 2))


@pytest.fixture
def ghz_state():
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1.0 / np.sqrt(2.0)
    return validate_density(np.outer(psi, psi.conj()), (2, 2, 2))


@pytest.fixture
def plus_state():
    def make(d=4):
        psi = np.full(d, 1.0 / np.sqrt(d), dtype=complex)
        return validate_density(np.outer(psi, psi.conj()), (d,))
    return make


@pytest.fixture
def isotropic_state():
    """Bell state mixed with white noise: p |phi><phi| + (1-p) I/4."""
    def make(p):
        psi = np.zeros(4, dtype=complex)
        psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
        mat = p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(4) / 4.0
        return validate_density(mat, (2, 2))
    return make
