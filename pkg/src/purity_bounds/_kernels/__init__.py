"""Eigensolver backend selection.

The cyclic Jacobi kernel exists twice: a compiled Cython extension
(``_jacobi``) and a pure-Python twin (``_jacobi_py``).  The compiled one is
picked at import time when available.  Set ``PURITY_BOUNDS_KERNEL`` to
``compiled`` or ``python`` to force a backend; the default ``auto`` falls
back silently when the extension was not built.

Convergence rule: off-diagonal Frobenius norm <= tol * max(1, ||a||_F),
with tol = 1e-14 and a cap of 100 full sweeps.  Eigenvalues are returned
in descending order.
"""

import os

import numpy as np

from ..errors import NoConvergence

DEFAULT_TOL = 1e-14
DEFAULT_MAX_SWEEPS = 100

from . import _jacobi_py

_requested = os.environ.get("PURITY_BOUNDS_KERNEL", "auto").strip().lower()
_compiled = None
if _requested in ("auto", "compiled"):
    try:
        from . import _jacobi as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None
    if _requested == "compiled" and _compiled is None:
        raise ImportError(
            "PURITY_BOUNDS_KERNEL=compiled but the compiled kernel is not built"
        )
elif _requested in ("python", "py"):
    _compiled = None
else:
    raise ValueError(f"unrecognized PURITY_BOUNDS_KERNEL value: {_requested!r}")

BACKEND = "compiled" if _compiled is not None else "python"
_active = _compiled if _compiled is not None else _jacobi_py


def available_backends():
    """Names of the backends importable right now."""
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return tuple(names)


def _module_for(backend):
    if backend is None:
        return _active
    if backend == "python":
        return _jacobi_py
    if backend == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernel is not built")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")


def _as_square_c128(m):
    a = np.array(m, dtype=np.complex128, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
    return a


def eigh_desc(m, vectors=False, tol=DEFAULT_TOL, max_sweeps=DEFAULT_MAX_SWEEPS,
              backend=None):
    """Eigenvalues (descending) and optionally eigenvectors of Hermitian ``m``.

    Returns ``(vals, vecs, sweeps)``; ``vecs`` is None unless requested,
    otherwise its columns match ``vals``.  Raises ``NoConvergence`` if the
    sweep cap is hit, reporting the sweep count.
    """
    mod = _module_for(backend)
    a = _as_square_c128(m)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if vectors else np.zeros((1, 1), np.complex128)
    sweeps, ok, off = mod.eigh_inplace(a, v, bool(vectors), float(tol), int(max_sweeps))
    if not ok:
        raise NoConvergence(sweeps, off)
    vals = np.diagonal(a).real.copy()
    order = np.argsort(vals)[::-1]
    return vals[order], (v[:, order] if vectors else None), sweeps


def eigvalsh_desc(m, tol=DEFAULT_TOL, max_sweeps=DEFAULT_MAX_SWEEPS, backend=None):
    """Descending eigenvalues of Hermitian ``m``."""
    vals, _, _ = eigh_desc(m, vectors=False, tol=tol, max_sweeps=max_sweeps,
                           backend=backend)
    return vals


def eigvalsh_desc_batch(ms, tol=DEFAULT_TOL, max_sweeps=DEFAULT_MAX_SWEEPS,
                        backend=None):
    """Descending eigenvalues for a stack of Hermitian matrices (m, n, n)."""
    mod = _module_for(backend)
    a = np.array(ms, dtype=np.complex128, order="C", copy=True)
    if a.ndim != 3 or a.shape[1] != a.shape[2] or a.shape[1] == 0:
        raise ValueError(f"expected a (m, n, n) stack, got shape {a.shape}")
    vals, sweeps, conv = mod.eigh_batch(a, float(tol), int(max_sweeps))
    if not np.all(conv):
        bad = int(np.argmin(conv))
        raise NoConvergence(int(sweeps[bad]), float("nan"))
    return np.sort(vals, axis=1)[:, ::-1]
