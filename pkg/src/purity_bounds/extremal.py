"""Entropy-extremal spectra at fixed purity.

Among all probability vectors of length ``dim`` with a given purity
``gamma = sum(p_i^2)``, two spectra pin down the possible Shannon entropy:

* the max-entropy spectrum has one large entry
  ``x1 = 1/d + sqrt((d-1)/d * (gamma - 1/d))`` and ``d - 1`` equal entries
  ``(1 - x1)/(d - 1)``;
* the min-entropy spectrum lives on ``k`` levels, where ``k`` is the unique
  integer with ``1/k <= gamma <= 1/(k-1)``: the first ``k - 1`` entries equal
  ``(1 - alpha)/(k - 1)`` with ``alpha = 1/k - sqrt((1 - 1/k)(gamma - 1/k))``,
  entry ``k`` equals ``alpha``, and the rest vanish.

Every other entropy value at that purity sits between the two, which is what
turns purity measurements into entropy (and hence information) bounds.
All entropies are in bits; ``0 * log(0)`` counts as zero.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange

PURITY_SLACK = 1e-12
SQRT_CLAMP = -1e-12


def _checked_purity(gamma: float, dim: int, name: str = "gamma") -> float:
    """Clamp ``gamma`` into [1/dim, 1], raising ``OutOfRange`` beyond slack."""
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise OutOfRange("dim", dim, 1, np.inf)
    lo = 1.0 / dim
    g = float(gamma)
    if not (lo - PURITY_SLACK <= g <= 1.0 + PURITY_SLACK):
        raise OutOfRange(name, g, lo, 1.0)
    return min(max(g, lo), 1.0)


def _safe_sqrt(x: float) -> float:
    if x < SQRT_CLAMP:
        raise OutOfRange("sqrt argument", x, 0.0, np.inf)
    return math.sqrt(max(x, 0.0))


def shannon_entropy(probs) -> float:
    """Shannon entropy in bits of a probability vector (0 log 0 = 0)."""
    p = np.asarray(probs, dtype=np.float64)
    p = p[p > 0.0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def renyi2_entropy(gamma: float, dim: int) -> float:
    """Order-2 Renyi entropy -log2(gamma) in bits, for gamma in [1/dim, 1]."""
    g = _checked_purity(gamma, dim)
    return -math.log2(g)


def level_index(gamma: float) -> int:
    """The number of occupied levels of the min-entropy spectrum.

    Returns the unique integer k with 1/k <= gamma <= 1/(k-1); at an exact
    boundary the smaller k wins (both describe the same spectrum).  k == 1
    exactly when gamma == 1.
    """
    g = float(gamma)
    if not (0.0 < g <= 1.0 + PURITY_SLACK):
        raise OutOfRange("gamma", g, 0.0, 1.0)
    g = min(g, 1.0)
    k = math.ceil(1.0 / g)
    if k > 1 and 1.0 / (k - 1) <= g:
        k -= 1
    while 1.0 / k > g:  # floating-point guard
        k += 1
    return k


@dataclass(frozen=True)
class ExtremalSpectrum:
    """An entropy-extremal spectrum and the parameters that shaped it.

    ``kind`` is ``"max"`` or ``"min"``; ``k_level`` and ``alpha`` are set
    only for the min-entropy case.
    """

    probs: np.ndarray
    kind: str
    gamma: float
    dim: int
    k_level: int | None = None
    alpha: float | None = None

    def entropy_bits(self) -> float:
        return shannon_entropy(self.probs)


def max_entropy_spectrum(gamma: float, dim: int) -> ExtremalSpectrum:
    """The entropy-maximizing spectrum at the given purity and dimension."""
    g = _checked_purity(gamma, dim)
    d = int(dim)
    if d == 1:
        probs = np.array([1.0])
    else:
        x1 = 1.0 / d + _safe_sqrt((d - 1.0) / d * (g - 1.0 / d))
        x1 = min(x1, 1.0)
        probs = np.full(d, (1.0 - x1) / (d - 1))
        probs[0] = x1
    probs /= probs.sum()
    probs.setflags(write=False)
    return ExtremalSpectrum(probs=probs, kind="max", gamma=g, dim=d)


def min_entropy_spectrum(gamma: float, dim: int) -> ExtremalSpectrum:
    """The entropy-minimizing spectrum at the given purity and dimension."""
    g = _checked_purity(gamma, dim)
    d = int(dim)
    k = min(level_index(g), d)
    alpha = 1.0 / k - _safe_sqrt((1.0 - 1.0 / k) * (g - 1.0 / k))
    alpha = min(max(alpha, 0.0), 1.0 / k)
    probs = np.zeros(d)
    if k > 1:
        probs[: k - 1] = (1.0 - alpha) / (k - 1)
    probs[k - 1] = alpha
    probs /= probs.sum()
    probs.setflags(write=False)
    return ExtremalSpectrum(probs=probs, kind="min", gamma=g, dim=d,
                            k_level=k, alpha=float(alpha))


def entropy_range(gamma: float, dim: int):
    """(smallest, largest) Shannon entropy compatible with the purity.

    Both ends are attained, by the min- and max-entropy spectra.
    """
    s_min = min_entropy_spectrum(gamma, dim).entropy_bits()
    s_max = max_entropy_spectrum(gamma, dim).entropy_bits()
    return s_min, s_max
