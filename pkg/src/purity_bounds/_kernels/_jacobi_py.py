"""Pure-Python cyclic Jacobi eigensolver for dense complex Hermitian matrices.

Fallback twin of the compiled extension ``_jacobi``.  The rotation sequence,
convergence rule, and return conventions are kept in lockstep so either
backend can stand in for the other; only the speed differs.
"""

import math

import numpy as np


def eigh_inplace(a, v, want_vectors, tol, max_sweeps):
    """Diagonalize the Hermitian matrix ``a`` in place.

    Runs cyclic sweeps of 2x2 unitary rotations over all index pairs until
    the off-diagonal Frobenius norm drops to ``tol * max(1, ||a||_F)`` or
    ``max_sweeps`` full sweeps have run.  Eigenvalues end up on the diagonal
    of ``a``.  When ``want_vectors`` is true the accumulated rotations are
    written into ``v`` (eigenvectors in columns, same order as the diagonal).

    Returns ``(sweeps_used, converged, off_norm)``.
    """
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    thr2 = (tol * scale) ** 2
    skip = tol * scale / max(n, 1)

    off2 = _offdiag_sq(a)
    for sweeps in range(max_sweeps + 1):
        if off2 <= thr2:
            return sweeps, True, math.sqrt(off2)
        if sweeps == max_sweeps:
            return sweeps, False, math.sqrt(off2)
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                babs = abs(b)
                if babs <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * babs)
                t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sigma = (b / babs) * s
                sigc = sigma.conjugate()

                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - sigc * colq
                a[:, q] = sigma * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - sigma * rowq
                a[q, :] = sigc * rowp + c * rowq

                # closed forms keep the diagonal exactly real and the
                # eliminated pair exactly zero
                a[p, p] = app * c * c + aqq * s * s - 2.0 * s * c * babs
                a[q, q] = app * s * s + aqq * c * c + 2.0 * s * c * babs
                a[p, q] = 0.0
                a[q, p] = 0.0

                if want_vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - sigc * vq
                    v[:, q] = sigma * vp + c * vq
        off2 = _offdiag_sq(a)
    raise AssertionError("unreachable")


def eigh_batch(a, tol, max_sweeps):
    """Diagonalize a stack of Hermitian matrices; values only.

    Returns ``(diagonals (m, n), sweeps (m,), converged (m,) bool)``; the
    diagonals are unsorted, exactly as ``eigh_inplace`` leaves them.
    """
    m = a.shape[0]
    n = a.shape[1]
    vals = np.empty((m, n), dtype=np.float64)
    sweeps = np.empty(m, dtype=np.int64)
    conv = np.empty(m, dtype=bool)
    dummy = np.zeros((1, 1), dtype=np.complex128)
    for i in range(m):
        sw, ok, _ = eigh_inplace(a[i], dummy, False, tol, max_sweeps)
        vals[i] = np.diagonal(a[i]).real
        sweeps[i] = sw
        conv[i] = ok
    return vals, sweeps, conv


def _offdiag_sq(a):
    # summed directly over off-diagonal entries; subtracting the diagonal
    # from the full norm would cancel catastrophically near convergence
    m = np.abs(a) ** 2
    np.fill_diagonal(m, 0.0)
    return float(m.sum())
