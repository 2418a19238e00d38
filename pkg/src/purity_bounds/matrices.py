"""Dense complex linear algebra for density matrices.

Validation, Hermitian eigendecomposition (cyclic Jacobi backend), partial
trace, dephasing, trace powers, Kronecker products, and the JSON state-file
format.  Functions are pure: density matrices are frozen after validation
and every operation returns a fresh object.  Intended scale is desk-sized
dimensions (up to ~64).
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    BadOrder,
    DimMismatch,
    NotHermitian,
    NotPSD,
    NotUnitTrace,
    StateFileError,
)

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


def as_complex_matrix(entries) -> np.ndarray:
    """Coerce to a square complex128 array, raising ``DimMismatch`` otherwise."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimMismatch(f"expected a nonempty square matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class DensityMatrix:
    """A validated quantum state.

    Holds the (read-only) matrix, the tensor-factor dimensions, and the
    eigenvalues found during validation, kept in descending order and
    clamped to [0, 1].  Construct through :func:`validate_density`.
    """

    mat: np.ndarray
    dims: tuple
    eigs: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def purity(self) -> float:
        # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
        return float(np.vdot(self.mat, self.mat).real)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues, descending, clamped to [0, 1], summing to 1."""
        return self.eigs.copy()


def validate_density(entries, dims) -> DensityMatrix:
    """Check the density-matrix invariants and freeze the state.

    Parameters
    ----------
    entries : array-like
        Square complex matrix.
    dims : int or sequence of int
        Tensor-factor dimensions; their product must match the matrix size.

    Raises ``NotHermitian`` / ``NotUnitTrace`` / ``NotPSD`` (each carrying
    the offending magnitude) or ``DimMismatch``.  Eigenvalues within
    tolerance of the valid range are clamped to [0, 1] and renormalized.
    """
    m = as_complex_matrix(entries)
    if isinstance(dims, (int, np.integer)):
        dims = (int(dims),)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims) or math.prod(dims) != m.shape[0]:
        raise DimMismatch(f"dims {dims} do not factor a {m.shape[0]}-dimensional matrix")

    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > HERM_TOL:
        raise NotHermitian(herm_dev)
    trace_dev = abs(complex(np.trace(m)) - 1.0)
    if trace_dev > TRACE_TOL:
        raise NotUnitTrace(trace_dev)

    h = (m + m.conj().T) / 2.0
    vals = _kernels.eigvalsh_desc(h)
    if vals[-1] < -PSD_TOL:
        raise NotPSD(float(vals[-1]))
    vals = np.clip(vals, 0.0, 1.0)
    vals = vals / vals.sum()

    out = m.copy()
    out.setflags(write=False)
    vals.setflags(write=False)
    return DensityMatrix(mat=out, dims=dims, eigs=vals)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Descending real eigenvalues of a Hermitian matrix.

    The matrix must be Hermitian within ``1e-10 * max(1, |m|_max)``.  Solved
    with cyclic Jacobi rotations; raises ``NoConvergence`` (with the sweep
    count) if the 100-sweep cap is reached, which does not happen for sane
    inputs at desk scale.
    """
    m = as_complex_matrix(m)
    scale = max(1.0, float(np.max(np.abs(m))))
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > HERM_TOL * scale:
        raise NotHermitian(herm_dev)
    h = (m + m.conj().T) / 2.0
    return _kernels.eigvalsh_desc(h)


def hermitian_eigensystem(m):
    """Like :func:`hermitian_eigenvalues` but also returns eigenvectors.

    Returns ``(vals, vecs)`` with eigenvectors in the columns of ``vecs``,
    ordered to match the descending eigenvalues.
    """
    m = as_complex_matrix(m)
    scale = max(1.0, float(np.max(np.abs(m))))
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > HERM_TOL * scale:
        raise NotHermitian(herm_dev)
    h = (m + m.conj().T) / 2.0
    vals, vecs, _ = _kernels.eigh_desc(h, vectors=True)
    return vals, vecs


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out all subsystems not listed in ``keep``.

    Parameters
    ----------
    rho : DensityMatrix
    keep : int or sequence of int
        Indices into ``rho.dims`` of the subsystems to retain.  Order of
        the retained factors follows their original order.

    Returns the reduced state, which is validated like any other.
    """
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted(int(k) for k in keep))
    n = len(rho.dims)
    if len(keep) == 0 or len(set(keep)) != len(keep):
        raise DimMismatch(f"keep indices {keep} must be nonempty and unique")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimMismatch(f"keep indices {keep} out of range for {n} subsystems")

    tensor = rho.mat.reshape(rho.dims + rho.dims)
    row_labels = list(range(n))
    col_labels = [n + i if i in keep else i for i in range(n)]
    out_labels = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(tensor, row_labels + col_labels, out_labels)

    kept_dims = tuple(rho.dims[i] for i in keep)
    dk = math.prod(kept_dims)
    return validate_density(reduced.reshape(dk, dk), kept_dims)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Zero all off-diagonal entries (computational-basis dephasing)."""
    return validate_density(np.diag(np.diagonal(rho.mat)), rho.dims)


def trace_power(rho: DensityMatrix, k: int) -> float:
    """Tr(rho^k) for integer k >= 2, by repeated matrix multiplication."""
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise BadOrder(f"trace power needs an integer order k >= 2, got {k!r}")
    return float(np.trace(np.linalg.matrix_power(rho.mat, int(k))).real)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two square complex matrices."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def save_state_json(rho: DensityMatrix, path) -> None:
    """Write a state file: ``{"dims": [...], "re": [[...]], "im": [[...]]}``.

    Row-major, full float precision, so a load round-trips bit-exactly.
    """
    obj = {
        "dims": list(rho.dims),
        "re": rho.mat.real.tolist(),
        "im": rho.mat.imag.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def load_state_json(path) -> DensityMatrix:
    """Read and validate a state file written in the format above."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFileError(f"cannot read state file {path}: {exc}") from exc
    if not isinstance(obj, dict) or not {"dims", "re", "im"} <= set(obj):
        raise StateFileError(f"state file {path} must contain dims, re, im")
    try:
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"state file {path} has non-numeric entries") from exc
    if re.shape != im.shape:
        raise DimMismatch(f"re shape {re.shape} differs from im shape {im.shape}")
    return validate_density(re + 1j * im, obj["dims"])
