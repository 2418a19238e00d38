"""Seeded random-state ensembles and Monte-Carlo bound datasets.

Provides Haar-uniform pure states, induced-measure mixed states (partial
trace of a larger Haar pure state, sampled as a normalized Ginibre Gram
matrix), scatter datasets pairing exact information quantities with their
purity-only bounds, a rectangular bound surface that needs no states at
all, and a stochastic search pushing the coherent information down toward
its lower bound at fixed purities.

Reproducibility contract: all randomness flows through numpy Generators
(PCG64 under ``default_rng``).  Dataset records draw from per-record
child streams spawned from the root seed, so the emitted dataset is
byte-identical for a given (config, seed) no matter how many workers run.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .bounds import (
    coherence_bounds,
    coherent_info_bounds,
    exact_coherence,
    exact_coherent_information,
    renyi_coherent_info,
)
from .errors import (
    BadMethod,
    DimMismatch,
    InvariantViolation,
    OutOfRange,
    ProjectionFailed,
    SandwichViolation,
)
from .extremal import max_entropy_spectrum, min_entropy_spectrum, shannon_entropy
from .matrices import (
    DensityMatrix,
    dephase,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    partial_trace,
    validate_density,
)

GENERATOR_LABEL = "numpy default_rng (PCG64)"
SANDWICH_SLACK = 1e-9
PURITY_MATCH_TOL = 1e-6

SCATTER_HEADER = "gamma_global,gamma_marginal,exact,renyi,lower,upper,seed,index"
SURFACE_HEADER = "gamma_global,gamma_marginal,lower,upper"


def make_stream(seed) -> np.random.Generator:
    """A fresh PCG64 generator; identical seeds give identical sequences."""
    return np.random.default_rng(seed)


def spawn_streams(seed, n: int):
    """n independent child generators derived from one root seed.

    Children depend only on (seed, position), never on which worker or in
    what order they are consumed.
    """
    return [np.random.default_rng(c) for c in np.random.SeedSequence(seed).spawn(n)]


def _dims_tuple(dims) -> tuple:
    if isinstance(dims, (int, np.integer)):
        dims = (int(dims),)
    out = tuple(int(x) for x in dims)
    if not out or any(x < 1 for x in out):
        raise DimMismatch(f"bad subsystem dimensions {dims!r}")
    return out


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r).copy()
    mag = np.abs(ph)
    ph = np.where(mag < 1e-300, 1.0, ph / np.where(mag < 1e-300, 1.0, mag))
    return q * ph[None, :]


def random_pure_state(dims, rng: np.random.Generator) -> DensityMatrix:
    """Haar-uniform pure state: a normalized complex-Gaussian vector."""
    dims = _dims_tuple(dims)
    d = int(np.prod(dims))
    if d < 2:
        raise DimMismatch(f"need total dimension >= 2, got {d}")
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    psi /= np.linalg.norm(psi)
    return validate_density(np.outer(psi, psi.conj()), dims)


def random_mixed_state(dims, ancilla_dim: int,
                       rng: np.random.Generator) -> DensityMatrix:
    """Induced-measure mixed state: trace out a K-dim ancilla of a pure state.

    Sampled directly as Z Z~ / Tr(Z Z~) with Z a d x K complex Ginibre
    matrix.  K=1 gives pure states; large K concentrates toward maximally
    mixed.
    """
    dims = _dims_tuple(dims)
    d = int(np.prod(dims))
    k = int(ancilla_dim)
    if k < 1:
        raise OutOfRange("ancilla_dim", k, 1, np.inf)
    z = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    gram = z @ z.conj().T
    gram /= np.trace(gram).real
    return validate_density(gram, dims)


@dataclass(frozen=True)
class SampleRecord:
    """One sampled state reduced to purities, exact value, and bounds."""

    gamma_global: float
    gamma_marginal: float
    exact: float
    renyi: float
    lower: float
    upper: float
    dims: tuple
    seed: int
    index: int


@dataclass(frozen=True)
class ScatterConfig:
    """What to sample for a scatter dataset.

    ``ensemble`` lists the induced-measure ancilla dimensions cycled over
    records; None selects (1, 2, d, d^2) to spread samples across the
    purity range.  ``inject`` states become the first records, before any
    sampling.
    """

    dims: tuple
    n_samples: int
    quantity: str
    ensemble: tuple = None
    inject: tuple = ()


def sample_record(rho: DensityMatrix, quantity: str, seed: int,
                  index: int) -> SampleRecord:
    """Reduce one state to a dataset record, enforcing the sandwich check."""
    if quantity == "coherent-info":
        if len(rho.dims) != 2:
            raise DimMismatch(
                f"coherent information needs two subsystems, got dims {rho.dims}"
            )
        gamma_global = rho.purity
        marginal = partial_trace(rho, keep=1)
        gamma_marginal = marginal.purity
        exact = exact_coherent_information(rho)
        renyi = renyi_coherent_info(gamma_global, gamma_marginal)
        interval = coherent_info_bounds(gamma_global, gamma_marginal,
                                        rho.dims[0], rho.dims[1])
    elif quantity == "coherence":
        gamma_global = rho.purity
        gamma_marginal = dephase(rho).purity
        exact = exact_coherence(rho)
        renyi = float("nan")
        interval = coherence_bounds(gamma_global, gamma_marginal, rho.dim)
    else:
        raise BadMethod(f"unknown scatter quantity {quantity!r}")

    if not (interval.lower - SANDWICH_SLACK <= exact
            <= interval.upper + SANDWICH_SLACK):
        raise SandwichViolation(
            f"record {index}: exact {exact!r} outside "
            f"[{interval.lower!r}, {interval.upper!r}]"
        )
    return SampleRecord(
        gamma_global=gamma_global,
        gamma_marginal=gamma_marginal,
        exact=exact,
        renyi=renyi,
        lower=interval.lower,
        upper=interval.upper,
        dims=rho.dims,
        seed=int(seed),
        index=int(index),
    )


def emit_bound_scatter(config: ScatterConfig, seed, workers: int = 1):
    """Sample states and emit sandwich-checked records, sorted for stable files.

    Records are ordered by (lower bound, index); per-record child streams
    make the output independent of ``workers``.
    """
    dims = _dims_tuple(config.dims)
    n = int(config.n_samples)
    if n < 0:
        raise OutOfRange("n_samples", n, 0, np.inf)
    if config.quantity not in ("coherent-info", "coherence"):
        raise BadMethod(f"unknown scatter quantity {config.quantity!r}")
    ensemble = config.ensemble
    if ensemble is None:
        d = int(np.prod(dims))
        ensemble = tuple(sorted({1, 2, d, d * d}))
    ensemble = tuple(int(k) for k in ensemble)
    if not ensemble or any(k < 1 for k in ensemble):
        raise OutOfRange("ensemble", 0, 1, np.inf)

    records = [sample_record(state, config.quantity, seed, i)
               for i, state in enumerate(config.inject)]
    offset = len(records)

    children = np.random.SeedSequence(seed).spawn(n) if n else []

    def one(i: int) -> SampleRecord:
        rng = np.random.default_rng(children[i])
        rho = random_mixed_state(dims, ensemble[i % len(ensemble)], rng)
        return sample_record(rho, config.quantity, seed, offset + i)

    if workers > 1 and n:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            records += list(pool.map(one, range(n)))
    else:
        records += [one(i) for i in range(n)]

    records.sort(key=lambda r: (r.lower, r.index))
    return records


def grid_bound_surface(quantity: str, dims, grid_n: int):
    """Bounds over a rectangular purity grid; no states are sampled.

    Returns (gamma_global, gamma_marginal, lower, upper) rows.  For
    coherence the dephased purity cannot exceed the state purity, so rows
    above the diagonal are omitted.
    """
    grid_n = int(grid_n)
    if grid_n < 2:
        raise OutOfRange("grid_n", grid_n, 2, np.inf)
    dims = _dims_tuple(dims)
    rows = []
    if quantity == "coherent-info":
        if len(dims) != 2:
            raise DimMismatch(
                f"coherent information needs two subsystems, got dims {dims}"
            )
        dim_a, dim_b = dims
        joint = int(dim_a * dim_b)
        for g in np.linspace(1.0 / joint, 1.0, grid_n):
            for m in np.linspace(1.0 / dim_b, 1.0, grid_n):
                iv = coherent_info_bounds(float(g), float(m), dim_a, dim_b)
                rows.append((float(g), float(m), iv.lower, iv.upper))
    elif quantity == "coherence":
        d = int(np.prod(dims))
        axis = np.linspace(1.0 / d, 1.0, grid_n)
        for g in axis:
            for m in axis:
                if m > g + 1e-12:
                    continue
                iv = coherence_bounds(float(g), float(m), d)
                rows.append((float(g), float(m), iv.lower, iv.upper))
    else:
        raise BadMethod(f"unknown surface quantity {quantity!r}")
    return rows


def _fmt(x) -> str:
    return f"{x:.12g}"


def write_scatter_csv(records, path) -> None:
    """Scatter records as CSV: 12-significant-digit floats, LF endings."""
    lines = [SCATTER_HEADER]
    for r in records:
        lines.append(",".join([
            _fmt(r.gamma_global), _fmt(r.gamma_marginal), _fmt(r.exact),
            _fmt(r.renyi), _fmt(r.lower), _fmt(r.upper),
            str(r.seed), str(r.index),
        ]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_surface_csv(rows, path) -> None:
    """Surface rows as CSV with the same formatting as scatter files."""
    lines = [SURFACE_HEADER]
    for g, m, lo, up in rows:
        lines.append(",".join([_fmt(g), _fmt(m), _fmt(lo), _fmt(up)]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _marginal_matrix(raw: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    return np.einsum("abad->bd", raw.reshape(dim_a, dim_b, dim_a, dim_b))


def _marginal_purity(raw: np.ndarray, dim_a: int, dim_b: int) -> float:
    m = _marginal_matrix(raw, dim_a, dim_b)
    return float(np.einsum("bd,db->", m, m).real)


def _state_of(basis: np.ndarray, spectrum: np.ndarray) -> np.ndarray:
    return (basis * spectrum) @ basis.conj().T


def _project_spectrum(probs: np.ndarray, gamma: float, d: int) -> np.ndarray:
    """Push a probability vector to purity gamma along a convex mixture.

    Mixes toward the pure corner to raise purity or toward uniform to
    lower it; the mixture weight comes from a one-dimensional root-find.
    """
    p = np.sort(np.clip(np.asarray(probs, dtype=float), 0.0, None))[::-1]
    p /= p.sum()
    current = float(p @ p)
    if abs(current - gamma) <= 1e-13:
        return p
    if current < gamma:
        anchor = np.zeros(d)
        anchor[0] = 1.0
    else:
        anchor = np.full(d, 1.0 / d)

    def gap(t):
        q = (1.0 - t) * p + t * anchor
        return float(q @ q) - gamma

    t = brentq(gap, 0.0, 1.0, xtol=1e-15, rtol=8.9e-16)
    q = (1.0 - t) * p + t * anchor
    q = np.clip(q, 0.0, None)
    q /= q.sum()
    return np.sort(q)[::-1]


_BELL_BASIS = np.array([
    [1.0, 0.0, 0.0, 1.0],
    [0.0, 1.0, 1.0, 0.0],
    [0.0, 1.0, -1.0, 0.0],
    [1.0, 0.0, 0.0, -1.0],
], dtype=np.complex128).T / math.sqrt(2.0)


def search_min_coherent_info(gamma_joint: float, gamma_marginal: float,
                             dims, budget: int, rng: np.random.Generator):
    """Stochastic search for low coherent information at fixed purities.

    Random restarts pick a joint spectrum (the entropy-maximizing one most
    of the time, since the joint entropy is subtracted; occasionally an
    exploratory random spectrum projected back to the target purity) and a
    random eigenbasis, then root-find along one-parameter unitary paths
    until the marginal purity matches its target.  A polish phase perturbs
    the best candidate, accepting only improvements.  ``budget`` counts
    candidate-state evaluations.

    Returns (state, value); value never undercuts the certified lower
    bound.  Raises ProjectionFailed if no purity-feasible state was found.
    """
    dims = _dims_tuple(dims)
    if len(dims) != 2:
        raise DimMismatch(f"need two subsystems, got dims {dims}")
    dim_a, dim_b = dims
    joint_dim = dim_a * dim_b
    budget = int(budget)
    if budget < 1:
        raise OutOfRange("budget", budget, 1, np.inf)
    interval = coherent_info_bounds(gamma_joint, gamma_marginal, dim_a, dim_b)
    floor = interval.lower

    anchor_max = np.asarray(max_entropy_spectrum(gamma_joint, joint_dim).probs)
    anchor_min = np.asarray(min_entropy_spectrum(gamma_joint, joint_dim).probs)
    target = float(gamma_marginal)
    evals = [0]

    def marginal_of(basis, spectrum):
        evals[0] += 1
        return _marginal_purity(_state_of(basis, spectrum), dim_a, dim_b)

    def value_of(basis, spectrum):
        raw = _state_of(basis, spectrum)
        vals = hermitian_eigenvalues(_marginal_matrix(raw, dim_a, dim_b))
        return shannon_entropy(np.clip(vals, 0.0, 1.0)) - shannon_entropy(spectrum)

    def random_hermitian():
        a = rng.standard_normal((joint_dim, joint_dim)) \
            + 1j * rng.standard_normal((joint_dim, joint_dim))
        return (a + a.conj().T) / 2.0

    def match_marginal(spectrum, start_basis, span=math.pi, tries=3):
        """Move along unitary paths until the marginal purity hits target."""
        if abs(marginal_of(start_basis, spectrum) - target) <= 1e-10:
            return start_basis
        for _ in range(tries):
            if evals[0] >= budget:
                return None
            w, wvecs = hermitian_eigensystem(random_hermitian())

            def basis_at(s):
                rot = wvecs @ (np.exp(1j * s * w)[:, None]
                               * (wvecs.conj().T @ start_basis))
                return rot

            def gap(s):
                return marginal_of(basis_at(s), spectrum) - target

            grid = np.linspace(0.0, span, 17)
            prev_s, prev_g = 0.0, gap(0.0)
            bracket = None
            for s in grid[1:]:
                if evals[0] >= budget:
                    break
                g = gap(float(s))
                if prev_g == 0.0 or prev_g * g <= 0.0:
                    bracket = (prev_s, float(s))
                    break
                prev_s, prev_g = float(s), g
            if bracket is None:
                continue
            s_star = brentq(gap, bracket[0], bracket[1], xtol=1e-12)
            basis = basis_at(s_star)
            if abs(marginal_of(basis, spectrum) - target) <= PURITY_MATCH_TOL:
                return basis
        return None

    best = None
    restart = 0
    while evals[0] < budget:
        slot = restart % 10
        if slot in (8, 9):
            spectrum = _project_spectrum(rng.dirichlet(np.ones(joint_dim)),
                                         gamma_joint, joint_dim)
        elif slot == 7:
            spectrum = anchor_min
        else:
            spectrum = anchor_max
        if restart == 0 and dim_a == 2 and dim_b == 2:
            start = _BELL_BASIS.copy()
        else:
            start = haar_unitary(joint_dim, rng)
        basis = match_marginal(spectrum, start)
        if basis is not None:
            value = value_of(basis, spectrum)
            if best is None or value < best[0]:
                best = (value, spectrum, basis)
            if best[0] <= floor + 1e-12:
                break
        restart += 1

    # polish: spectrum nudges toward the entropy-maximizing anchor plus
    # basis re-matching, accept only improvements
    while best is not None and best[0] > floor + 1e-12 and evals[0] < budget:
        t = rng.uniform(0.0, 0.25)
        candidate = _project_spectrum((1.0 - t) * best[1] + t * anchor_max,
                                      gamma_joint, joint_dim)
        basis = match_marginal(candidate, best[2], span=0.5, tries=2)
        if basis is not None:
            value = value_of(basis, candidate)
            if value < best[0]:
                best = (value, candidate, basis)

    if best is None:
        raise ProjectionFailed(
            f"no state matched purities ({gamma_joint!r}, {gamma_marginal!r}) "
            f"within budget {budget}"
        )

    state = validate_density(_state_of(best[2], best[1]), dims)
    if abs(state.purity - gamma_joint) > PURITY_MATCH_TOL:
        raise ProjectionFailed(
            f"joint purity drifted to {state.purity!r}, target {gamma_joint!r}"
        )
    marg = partial_trace(state, keep=1)
    if abs(marg.purity - target) > PURITY_MATCH_TOL:
        raise ProjectionFailed(
            f"marginal purity drifted to {marg.purity!r}, target {target!r}"
        )
    value = exact_coherent_information(state)
    if value < floor - 1e-9:
        raise InvariantViolation(
            f"search undercut the lower bound: {value!r} < {floor!r}"
        )
    return state, float(value)
