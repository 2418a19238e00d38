"""Eigensolver kernels against the LAPACK oracle, both backends."""

import numpy as np
import pytest

from purity_bounds import NoConvergence, NotHermitian, hermitian_eigenvalues
from purity_bounds._kernels import (
    available_backends,
    eigh_desc,
    eigvalsh_desc,
    eigvalsh_desc_batch,
)

from oracles import lapack_eigs_desc

BACKENDS = available_backends()


def random_hermitian(rng, n, scale=1.0):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (a + a.conj().T) / 2.0


@pytest.mark.parametrize("backend", BACKENDS)
def test_eigenvalues_match_lapack(backend):
    rng = np.random.default_rng(101)
    for n in (1, 2, 3, 4, 5, 8, 16):
        for _ in range(8):
            m = random_hermitian(rng, n)
            vals = eigvalsh_desc(m, backend=backend)
            ref = lapack_eigs_desc(m)
            scale = max(1.0, np.abs(ref).max())
            assert np.all(np.diff(vals) <= 1e-12), "must be sorted descending"
            assert np.max(np.abs(vals - ref)) <= 1e-11 * scale * n


@pytest.mark.parametrize("backend", BACKENDS)
def test_eigenvectors_reconstruct(backend):
    rng = np.random.default_rng(202)
    for n in (2, 4, 7):
        m = random_hermitian(rng, n, scale=3.0)
        vals, vecs, sweeps = eigh_desc(m, vectors=True, backend=backend)
        assert sweeps >= 1
        # columns are eigenvectors
        resid = m @ vecs - vecs * vals[None, :]
        assert np.max(np.abs(resid)) < 1e-10
        gram = vecs.conj().T @ vecs
        assert np.max(np.abs(gram - np.eye(n))) < 1e-12


@pytest.mark.parametrize("backend", BACKENDS)
def test_diagonal_input_short_circuits(backend):
    m = np.diag([3.0, -1.0, 0.5]).astype(complex)
    vals, vecs, sweeps = eigh_desc(m, vectors=True, backend=backend)
    assert sweeps == 0
    assert np.allclose(vals, [3.0, 0.5, -1.0])


@pytest.mark.parametrize("backend", BACKENDS)
def test_batch_matches_single(backend):
    rng = np.random.default_rng(303)
    stack = np.array([random_hermitian(rng, 4) for _ in range(10)])
    batch = eigvalsh_desc_batch(stack, backend=backend)
    for i in range(10):
        single = eigvalsh_desc(stack[i], backend=backend)
        assert np.array_equal(batch[i], single)


@pytest.mark.parametrize("backend", BACKENDS)
def test_scale_invariance_of_tolerance(backend):
    # convergence threshold is relative: huge and tiny matrices both work
    rng = np.random.default_rng(404)
    for scale in (1e-8, 1.0, 1e8):
        m = random_hermitian(rng, 5, scale=scale)
        vals = eigvalsh_desc(m, backend=backend)
        ref = lapack_eigs_desc(m)
        assert np.max(np.abs(vals - ref)) <= 1e-10 * max(1.0, np.abs(ref).max())


@pytest.mark.parametrize("backend", BACKENDS)
def test_determinism(backend):
    rng = np.random.default_rng(505)
    m = random_hermitian(rng, 6)
    a = eigvalsh_desc(m, backend=backend)
    b = eigvalsh_desc(m.copy(), backend=backend)
    assert np.array_equal(a, b)


def test_no_convergence_raises():
    rng = np.random.default_rng(606)
    m = random_hermitian(rng, 5)
    with pytest.raises(NoConvergence):
        eigvalsh_desc(m, max_sweeps=0)


def test_input_not_mutated():
    rng = np.random.default_rng(707)
    m = random_hermitian(rng, 4)
    keep = m.copy()
    eigvalsh_desc(m)
    assert np.array_equal(m, keep)


def test_not_hermitian_rejected():
    m = np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex)
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(m)


def test_dephased_spectrum_known():
    # diag(0.7, 0.3) needs no rotations at all
    vals = hermitian_eigenvalues(np.diag([0.7, 0.3]).astype(complex))
    assert np.allclose(vals, [0.7, 0.3], atol=1e-15)
