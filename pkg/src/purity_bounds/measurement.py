"""Simulators for purity measurements on pairs (or k-tuples) of state copies.

The expectation of the swap operator V on two copies equals the purity:
Tr(V rho x rho) = Tr(rho^2).  This module builds that identity out of the
concrete measurement schemes that realize it:

* an ancilla-controlled swap circuit (Hadamard, controlled-V, Hadamard),
  where the ancilla reads 0 with probability (1 + purity) / 2;
* Bell-basis readout on a qubit pair, where the antisymmetric singlet
  (|01> - |10>)/sqrt(2) occurs with probability (1 - purity) / 2;
* per-qubit factorized Bell readout on n-qubit states, whose
  singlet-parity-signed outcome average recovers the global purity;
* a dephased-copy overlap Tr(V (dephase(rho) x rho)) equal to the purity
  of the dephased state;
* cyclic shifts V_k on k copies with Tr(V_k rho^(x k)) = Tr(rho^k).

``simulate_shots`` draws finite-shot binomial/multinomial statistics from
the exact outcome probabilities of a chosen scheme and reports the standard
error of the resulting purity estimate.
"""

import itertools
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    BadMethod,
    BadOrder,
    DimMismatch,
    InvariantViolation,
    OutOfRange,
    TooLarge,
)
from .matrices import DensityMatrix, dephase, trace_power

MAX_SWAP_DIM = 64          # swap operator lives on d^2 <= 4096
MAX_CIRCUIT_DIM = 32       # explicit ancilla circuit lives on 2 * d^2
MAX_SHIFT_SPACE = 4096     # k copies live on d^k
MAX_PATTERN_QUBITS = 5

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
_SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=np.complex128) / math.sqrt(2.0)


def _shift_targets(d: int, k: int) -> np.ndarray:
    """Flat index map of the cyclic shift |i1 i2 ... ik> -> |i2 ... ik i1>."""
    b = np.arange(d ** k)
    lead = d ** (k - 1)
    return (b % lead) * d + b // lead


def swap_operator(d: int) -> np.ndarray:
    """The swap permutation V|i j> = |j i> on a d x d bipartite space."""
    if d < 1 or d > MAX_SWAP_DIM:
        raise TooLarge(f"swap operator supports 1 <= d <= {MAX_SWAP_DIM}, got {d}")
    return shift_operator(d, 2)


def shift_operator(d: int, k: int) -> np.ndarray:
    """The cyclic shift V_k|i1 ... ik> = |i2 ... ik i1> on k copies, dense.

    Satisfies Tr(V_k (rho_1 x ... x rho_k)) = Tr(rho_1 rho_2 ... rho_k).
    """
    _check_shift_args(d, k)
    space = d ** k
    v = np.zeros((space, space), dtype=np.complex128)
    v[_shift_targets(d, k), np.arange(space)] = 1.0
    return v


def _check_shift_args(d: int, k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 2 or k > 4:
        raise BadOrder(f"cyclic shift supports 2 <= k <= 4, got {k!r}")
    if d < 1 or d ** k > MAX_SHIFT_SPACE:
        raise TooLarge(f"d^k = {d}^{k} exceeds the supported {MAX_SHIFT_SPACE}")


def swap_expectation(rho: DensityMatrix) -> float:
    """Tr(V (rho x rho)), the two-copy swap expectation (equals the purity)."""
    v = swap_operator(rho.dim)
    pair = np.kron(rho.mat, rho.mat)
    return float(np.einsum("ij,ji->", v, pair).real)


def ancilla_swap_prob0(rho: DensityMatrix) -> float:
    """P(ancilla = 0) of the swap-test circuit, by explicit simulation.

    The circuit is Hadamard on a fresh ancilla, controlled-swap on the two
    state copies, Hadamard again; the 0 outcome has probability
    (1 + purity) / 2.  The simulated value is checked against that closed
    form to 1e-10 before being returned.
    """
    d = rho.dim
    if d > MAX_CIRCUIT_DIM:
        raise TooLarge(f"ancilla circuit supports d <= {MAX_CIRCUIT_DIM}, got {d}")
    space = d * d
    v = swap_operator(d)
    controlled_v = np.zeros((2 * space, 2 * space), dtype=np.complex128)
    controlled_v[:space, :space] = np.eye(space)
    controlled_v[space:, space:] = v
    h_layer = np.kron(_HADAMARD, np.eye(space, dtype=np.complex128))
    u = h_layer @ controlled_v @ h_layer

    total = np.zeros((2 * space, 2 * space), dtype=np.complex128)
    total[:space, :space] = np.kron(rho.mat, rho.mat)
    out = u @ total @ u.conj().T
    p0 = float(np.trace(out[:space, :space]).real)

    expected = (1.0 + swap_expectation(rho)) / 2.0
    if abs(p0 - expected) > 1e-10:
        raise InvariantViolation(
            f"ancilla circuit gave P(0) = {p0!r}, closed form {expected!r}"
        )
    return p0


def singlet_prob(rho: DensityMatrix) -> float:
    """Singlet probability <psi-| rho x rho |psi-> for a single-qubit state.

    Equals (1 - purity) / 2; the singlet is antisymmetric, so it is the one
    Bell outcome whose deficit encodes the overlap of the two copies.
    """
    if rho.dim != 2:
        raise DimMismatch(f"singlet projection needs a qubit state, got dim {rho.dim}")
    pair = np.kron(rho.mat, rho.mat)
    return float(np.real(_SINGLET.conj() @ pair @ _SINGLET))


def dephased_overlap(rho: DensityMatrix) -> float:
    """Tr(V (dephase(rho) x rho)), the overlap of a dephased and a raw copy.

    Equals the purity of the dephased state, because rho and dephase(rho)
    share a diagonal; the equality is asserted to 1e-10 at runtime.
    """
    v = swap_operator(rho.dim)
    mixed_pair = np.kron(dephase(rho).mat, rho.mat)
    value = float(np.einsum("ij,ji->", v, mixed_pair).real)
    expected = trace_power(dephase(rho), 2)
    if abs(value - expected) > 1e-10:
        raise InvariantViolation(
            f"dephased overlap {value!r} differs from dephased purity {expected!r}"
        )
    return value


def shift_expectation(rho: DensityMatrix, k: int) -> float:
    """Tr(V_k rho^(x k)) = Tr(rho^k) for k in {2, 3, 4}.

    Evaluated by contracting the explicit k-fold Kronecker power against
    the shift permutation; needs d^k <= 4096.
    """
    d = rho.dim
    _check_shift_args(d, k)
    stacked = reduce(np.kron, [rho.mat] * int(k))
    value = complex(stacked[np.arange(d ** k), _shift_targets(d, k)].sum())
    return float(value.real)


def shift_product_trace(states) -> complex:
    """Tr(rho_1 rho_2 ... rho_k) via the cyclic shift on distinct states."""
    states = list(states)
    k = len(states)
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise DimMismatch(f"states must share one dimension, got {sorted(dims)}")
    d = states[0].dim
    _check_shift_args(d, k)
    stacked = reduce(np.kron, [s.mat for s in states])
    return complex(stacked[np.arange(d ** k), _shift_targets(d, k)].sum())


@dataclass(frozen=True)
class OutcomePattern:
    """One joint outcome of per-qubit Bell readout on two state copies."""

    bits: tuple
    probability: float

    @property
    def singlet_count(self) -> int:
        return sum(1 for b in self.bits if b == "singlet")


def pair_pattern_distribution(rho: DensityMatrix):
    """Joint singlet/triplet distribution of per-qubit Bell measurements.

    Two copies of an n-qubit state are measured pairwise: qubit i of copy
    one against qubit i of copy two.  Returns the 2^n ``OutcomePattern``
    entries in lexicographic order (triplet before singlet, last qubit
    fastest).  The parity-signed sum of the probabilities equals the global
    purity, since the product of the per-pair (triplet - singlet) projector
    differences is the global swap.
    """
    n = len(rho.dims)
    if any(d != 2 for d in rho.dims):
        raise DimMismatch(f"pair patterns need qubit factors, got dims {rho.dims}")
    if n > MAX_PATTERN_QUBITS:
        raise TooLarge(f"pair patterns support n <= {MAX_PATTERN_QUBITS} qubits")

    singlet_proj = np.outer(_SINGLET, _SINGLET.conj())
    triplet_proj = np.eye(4, dtype=np.complex128) - singlet_proj
    ops = {"singlet": singlet_proj, "triplet": triplet_proj}

    # two copies, regrouped pair-major: one size-4 axis per qubit pair,
    # combining (copy1_i, copy2_i) with copy 1 as the high bit
    pair = np.kron(rho.mat, rho.mat).reshape((2,) * (4 * n))
    perm = []
    for i in range(n):
        perm += [i, n + i]
    perm = perm + [2 * n + ax for ax in perm]
    tensor = pair.transpose(perm).reshape((4,) * (2 * n))

    # trace against a product of per-pair 4x4 operators: Tr(M T) sums
    # M[x, y] T[y, x], so operator rows bind the tensor's column block
    patterns = []
    for bits in itertools.product(("triplet", "singlet"), repeat=n):
        operands = [tensor, list(range(n, 2 * n)) + list(range(n))]
        for i, b in enumerate(bits):
            operands += [ops[b], [i, n + i]]
        value = np.einsum(*operands, [])
        patterns.append(OutcomePattern(bits=bits, probability=float(value.real)))
    return patterns


@dataclass(frozen=True)
class EstimatorResult:
    """A finite-shot purity (or trace-power) estimate.

    ``estimate`` is the raw linear-transform value; ``estimate_clamped`` is
    pushed into the physical range (flagged by ``clamped`` when that moved
    it).  ``std_error`` is sqrt(p(1-p)/shots) carried through the
    estimator's linear transform.
    """

    method: str
    shots: int
    estimate: float
    std_error: float
    estimate_clamped: float
    clamped: bool


def _bernoulli_result(method, shots, p, transform, slope, floor, rng):
    p = min(max(p, 0.0), 1.0)
    hits = int(rng.binomial(shots, p))
    phat = hits / shots
    estimate = transform(phat)
    std_error = slope * math.sqrt(phat * (1.0 - phat) / shots)
    clamped_value = min(1.0, max(floor, estimate))
    return EstimatorResult(
        method=method,
        shots=shots,
        estimate=estimate,
        std_error=std_error,
        estimate_clamped=clamped_value,
        clamped=clamped_value != estimate,
    )


def simulate_shots(rho: DensityMatrix, method: str, shots: int,
                   rng: np.random.Generator) -> EstimatorResult:
    """Draw finite-shot outcomes of a purity measurement scheme.

    Methods: ``ancilla-swap`` (any dimension), ``bell-basis`` (qubit states;
    multi-qubit states use the factorized per-qubit readout with the
    parity-signed estimator), and ``shift-2``/``shift-3``/``shift-4``
    (ancilla-controlled cyclic shift estimating Tr(rho^k)).

    Outcomes are drawn from the exact probabilities of the scheme, so with
    an explicitly seeded generator results are reproducible bit for bit.
    """
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise OutOfRange("shots", shots if isinstance(shots, (int, float)) else -1,
                         1, np.inf)
    shots = int(shots)
    d = rho.dim

    if method == "ancilla-swap":
        p0 = (1.0 + swap_expectation(rho)) / 2.0
        return _bernoulli_result(method, shots, p0,
                                 lambda ph: 2.0 * ph - 1.0, 2.0, 1.0 / d, rng)

    if method == "bell-basis":
        if d == 2:
            p_singlet = singlet_prob(rho)
            return _bernoulli_result(method, shots, p_singlet,
                                     lambda ph: 1.0 - 2.0 * ph, 2.0, 1.0 / d, rng)
        if all(f == 2 for f in rho.dims) and len(rho.dims) >= 2:
            patterns = pair_pattern_distribution(rho)
            probs = np.clip([pt.probability for pt in patterns], 0.0, None)
            probs = probs / probs.sum()
            counts = rng.multinomial(shots, probs)
            signs = np.array([(-1.0) ** pt.singlet_count for pt in patterns])
            estimate = float(np.dot(counts, signs) / shots)
            std_error = math.sqrt(max(0.0, 1.0 - estimate ** 2) / shots)
            clamped_value = min(1.0, max(1.0 / d, estimate))
            return EstimatorResult(method=method, shots=shots, estimate=estimate,
                                   std_error=std_error,
                                   estimate_clamped=clamped_value,
                                   clamped=clamped_value != estimate)
        raise DimMismatch(
            f"bell-basis readout needs qubit factors, got dims {rho.dims}"
        )

    if method in ("shift-2", "shift-3", "shift-4"):
        k = int(method[-1])
        p0 = (1.0 + shift_expectation(rho, k)) / 2.0
        return _bernoulli_result(method, shots, p0,
                                 lambda ph: 2.0 * ph - 1.0, 2.0,
                                 float(d) ** (1 - k), rng)

    raise BadMethod(
        f"unknown method {method!r}; expected ancilla-swap, bell-basis, "
        f"or shift-2/shift-3/shift-4"
    )


def simulate_dephased_overlap_shots(rho: DensityMatrix, shots: int,
                                    rng: np.random.Generator) -> EstimatorResult:
    """Finite-shot ancilla readout of the dephased-copy overlap.

    Estimates the purity of dephase(rho) without preparing its eigenbasis:
    the swap test runs on one dephased and one raw copy.
    """
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise OutOfRange("shots", shots if isinstance(shots, (int, float)) else -1,
                         1, np.inf)
    p0 = (1.0 + dephased_overlap(rho)) / 2.0
    return _bernoulli_result("ancilla-dephased", int(shots), p0,
                             lambda ph: 2.0 * ph - 1.0, 2.0, 1.0 / rho.dim, rng)
