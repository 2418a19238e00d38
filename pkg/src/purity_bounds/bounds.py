"""Purity-only bounds on information quantities, and their exact values.

Coherent information I(A>B) = S(rho_B) - S(rho_AB), relative entropy of
coherence C(rho) = S(dephase(rho)) - S(rho), and multi-information
sum_i S(rho_{A_i}) - S(rho) are all differences of von Neumann entropies.
Knowing only purities, each entropy is pinned between the entropies of the
min- and max-entropy spectra at that purity, so every quantity inherits a
two-sided bound.  Bounds are assembled exclusively by evaluating Shannon
entropy on those extremal spectra.

The order-2 Renyi coherent information log2(gamma_joint / gamma_marginal)
is also provided; when positive it witnesses distillable entanglement.
All values are in bits.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimMismatch,
    InconsistentPurities,
    InvariantViolation,
    OutOfRange,
)
from .extremal import _checked_purity, entropy_range, shannon_entropy
from .matrices import DensityMatrix, dephase, hermitian_eigensystem, partial_trace

INTERVAL_SLACK = 1e-10
COHERENCE_PURITY_SLACK = 1e-10


@dataclass(frozen=True)
class BoundInterval:
    """A two-sided bound plus the inputs it was computed from."""

    lower: float
    upper: float
    quantity: str
    inputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.lower <= self.upper + INTERVAL_SLACK:
            raise InvariantViolation(
                f"bound interval inverted for {self.quantity}: "
                f"[{self.lower}, {self.upper}]"
            )


def coherent_info_bounds(gamma_joint: float, gamma_marginal: float,
                         dim_a: int, dim_b: int) -> BoundInterval:
    """Bounds on I(A>B) from the joint and marginal-B purities.

    lower = s_min(gamma_marginal, d_B) - s_max(gamma_joint, d_A * d_B)
    upper = s_max(gamma_marginal, d_B) - s_min(gamma_joint, d_A * d_B)

    The pair of purities is not checked for joint realizability; the bounds
    hold for every state compatible with both numbers.
    """
    da, db = int(dim_a), int(dim_b)
    if da < 1 or db < 1:
        raise DimMismatch(f"subsystem dimensions must be >= 1, got {dim_a}, {dim_b}")
    gj = _checked_purity(gamma_joint, da * db, "gamma_joint")
    gm = _checked_purity(gamma_marginal, db, "gamma_marginal")
    lo_m, hi_m = entropy_range(gm, db)
    lo_j, hi_j = entropy_range(gj, da * db)
    return BoundInterval(
        lower=lo_m - hi_j,
        upper=hi_m - lo_j,
        quantity="coherent-info",
        inputs={"gamma_joint": gj, "gamma_marginal": gm, "dims": [da, db]},
    )


def coherence_bounds(gamma_state: float, gamma_dephased: float,
                     dim: int) -> BoundInterval:
    """Bounds on the relative entropy of coherence from two purities.

    ``gamma_state`` is the purity of the state, ``gamma_dephased`` the purity
    of its computational-basis dephasing.  Dephasing never increases purity,
    so ``gamma_dephased <= gamma_state`` is required (within 1e-10).
    The lower bound is clamped at zero since coherence is nonnegative.
    """
    d = int(dim)
    gs = _checked_purity(gamma_state, d, "gamma_state")
    gd = _checked_purity(gamma_dephased, d, "gamma_dephased")
    if gd > gs + COHERENCE_PURITY_SLACK:
        raise InconsistentPurities(
            f"dephased purity {gd:.12g} exceeds state purity {gs:.12g}"
        )
    lo_d, hi_d = entropy_range(gd, d)
    lo_s, hi_s = entropy_range(gs, d)
    return BoundInterval(
        lower=max(0.0, lo_d - hi_s),
        upper=hi_d - lo_s,
        quantity="coherence",
        inputs={"gamma_state": gs, "gamma_dephased": gd, "dims": [d]},
    )


def multi_information_bounds(gamma_full: float, gamma_marginals,
                             dims) -> BoundInterval:
    """Bounds on sum_i S(rho_{A_i}) - S(rho) from the full and marginal purities."""
    dims = tuple(int(d) for d in dims)
    gammas = tuple(float(g) for g in gamma_marginals)
    if len(dims) < 2:
        raise DimMismatch(f"multi-information needs >= 2 subsystems, got dims {dims}")
    if len(gammas) != len(dims):
        raise DimMismatch(
            f"{len(gammas)} marginal purities for {len(dims)} subsystems"
        )
    d_full = math.prod(dims)
    gf = _checked_purity(gamma_full, d_full, "gamma_full")
    checked = [
        _checked_purity(g, d, f"gamma_marginal[{i}]")
        for i, (g, d) in enumerate(zip(gammas, dims))
    ]
    ranges = [entropy_range(g, d) for g, d in zip(checked, dims)]
    lo_f, hi_f = entropy_range(gf, d_full)
    return BoundInterval(
        lower=max(0.0, sum(r[0] for r in ranges) - hi_f),
        upper=sum(r[1] for r in ranges) - lo_f,
        quantity="multi-info",
        inputs={"gamma_full": gf, "gamma_marginals": list(checked), "dims": list(dims)},
    )


def renyi_coherent_info(gamma_joint: float, gamma_marginal: float) -> float:
    """Order-2 Renyi coherent information log2(gamma_joint / gamma_marginal).

    Positive values witness entanglement (one-way distillable at that).
    """
    gj, gm = float(gamma_joint), float(gamma_marginal)
    if not 0.0 < gj <= 1.0 + 1e-12:
        raise OutOfRange("gamma_joint", gj, 0.0, 1.0)
    if not 0.0 < gm <= 1.0 + 1e-12:
        raise OutOfRange("gamma_marginal", gm, 0.0, 1.0)
    return math.log2(min(gj, 1.0) / min(gm, 1.0))


def exact_coherent_information(rho: DensityMatrix) -> float:
    """I(A>B) = S(rho_B) - S(rho_AB) for a bipartite state."""
    if len(rho.dims) != 2:
        raise DimMismatch(f"coherent information needs 2 subsystems, got {rho.dims}")
    marginal = partial_trace(rho, keep=1)
    return shannon_entropy(marginal.spectrum()) - shannon_entropy(rho.spectrum())


def exact_coherence(rho: DensityMatrix) -> float:
    """Relative entropy of coherence S(dephase(rho)) - S(rho), >= 0."""
    value = shannon_entropy(dephase(rho).spectrum()) - shannon_entropy(rho.spectrum())
    if value < -1e-10:
        raise InvariantViolation(f"coherence came out {value}, below -1e-10")
    return max(0.0, value)


def exact_multi_information(rho: DensityMatrix) -> float:
    """sum_i S(rho_{A_i}) - S(rho) over the tensor factors of the state."""
    if len(rho.dims) < 2:
        raise DimMismatch(f"multi-information needs >= 2 subsystems, got {rho.dims}")
    total = sum(
        shannon_entropy(partial_trace(rho, keep=i).spectrum())
        for i in range(len(rho.dims))
    )
    value = total - shannon_entropy(rho.spectrum())
    if value < -1e-10:
        raise InvariantViolation(f"multi-information came out {value}, below -1e-10")
    return max(0.0, value)


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy S(rho || sigma) in bits.

    Returns ``inf`` when rho has weight outside sigma's support.
    """
    if rho.dim != sigma.dim:
        raise DimMismatch(f"dimension mismatch {rho.dim} vs {sigma.dim}")
    svals, svecs = hermitian_eigensystem(sigma.mat)
    weights = np.einsum("ji,jk,ki->i", svecs.conj(), rho.mat, svecs).real
    cross = 0.0
    for w, s in zip(np.clip(weights, 0.0, None), svals):
        if w <= 1e-15:
            continue
        if s <= 1e-15:
            return float("inf")
        cross += w * math.log2(s)
    return -shannon_entropy(rho.spectrum()) - cross


@dataclass(frozen=True)
class PuritySummary:
    """Global and per-subsystem purities of a state."""

    gamma_global: float
    gamma_marginals: tuple
    dims: tuple


def purity_summary(rho: DensityMatrix) -> PuritySummary:
    """Purity of the state and of every single-subsystem marginal."""
    marginals = tuple(
        partial_trace(rho, keep=i).purity for i in range(len(rho.dims))
    ) if len(rho.dims) > 1 else (rho.purity,)
    return PuritySummary(gamma_global=rho.purity, gamma_marginals=marginals,
                         dims=rho.dims)
