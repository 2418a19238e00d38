"""Two-sided bounds on entropic quantities from purity measurements.

Knowing only Tr(rho^2) of a state and of its reduction (or of its dephased
version), one can still certify rigorous intervals for the coherent
information, the relative entropy of coherence, and the multi-information:
the spectra extremizing entropy at fixed purity pin both endpoints.  The
package computes those intervals, evaluates the exact quantities for known
states, simulates the swap-test family of purity measurements with finite
shots, and emits reproducible Monte-Carlo datasets.
"""

from ._kernels import BACKEND as kernel_backend
from ._kernels import available_backends
from .errors import (
    BadMethod,
    BadOrder,
    DimMismatch,
    InconsistentPurities,
    InvariantViolation,
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotUnitTrace,
    OutOfRange,
    ProjectionFailed,
    PurityBoundsError,
    SandwichViolation,
    StateFileError,
    TooLarge,
)
from .matrices import (
    DensityMatrix,
    dephase,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    load_state_json,
    partial_trace,
    save_state_json,
    tensor_product,
    trace_power,
    validate_density,
)
from .extremal import (
    ExtremalSpectrum,
    entropy_range,
    level_index,
    max_entropy_spectrum,
    min_entropy_spectrum,
    renyi2_entropy,
    shannon_entropy,
)
from .bounds import (
    BoundInterval,
    PuritySummary,
    coherence_bounds,
    coherent_info_bounds,
    exact_coherence,
    exact_coherent_information,
    exact_multi_information,
    multi_information_bounds,
    purity_summary,
    relative_entropy,
    renyi_coherent_info,
)
from .measurement import (
    EstimatorResult,
    OutcomePattern,
    ancilla_swap_prob0,
    dephased_overlap,
    pair_pattern_distribution,
    shift_expectation,
    shift_operator,
    shift_product_trace,
    simulate_dephased_overlap_shots,
    simulate_shots,
    singlet_prob,
    swap_expectation,
    swap_operator,
)
from .sampling import (
    SampleRecord,
    ScatterConfig,
    emit_bound_scatter,
    grid_bound_surface,
    haar_unitary,
    make_stream,
    random_mixed_state,
    random_pure_state,
    sample_record,
    search_min_coherent_info,
    spawn_streams,
    write_scatter_csv,
    write_surface_csv,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "available_backends",
    "PurityBoundsError",
    "NotHermitian",
    "NotUnitTrace",
    "NotPSD",
    "DimMismatch",
    "StateFileError",
    "OutOfRange",
    "InconsistentPurities",
    "BadOrder",
    "TooLarge",
    "BadMethod",
    "NoConvergence",
    "ProjectionFailed",
    "InvariantViolation",
    "SandwichViolation",
    "DensityMatrix",
    "validate_density",
    "hermitian_eigenvalues",
    "hermitian_eigensystem",
    "partial_trace",
    "dephase",
    "trace_power",
    "tensor_product",
    "save_state_json",
    "load_state_json",
    "ExtremalSpectrum",
    "shannon_entropy",
    "renyi2_entropy",
    "level_index",
    "max_entropy_spectrum",
    "min_entropy_spectrum",
    "entropy_range",
    "BoundInterval",
    "coherent_info_bounds",
    "coherence_bounds",
    "multi_information_bounds",
    "renyi_coherent_info",
    "exact_coherent_information",
    "exact_coherence",
    "exact_multi_information",
    "relative_entropy",
    "PuritySummary",
    "purity_summary",
    "EstimatorResult",
    "OutcomePattern",
    "swap_operator",
    "shift_operator",
    "swap_expectation",
    "ancilla_swap_prob0",
    "singlet_prob",
    "dephased_overlap",
    "pair_pattern_distribution",
    "shift_expectation",
    "shift_product_trace",
    "simulate_shots",
    "simulate_dephased_overlap_shots",
    "SampleRecord",
    "ScatterConfig",
    "make_stream",
    "spawn_streams",
    "haar_unitary",
    "random_pure_state",
    "random_mixed_state",
    "sample_record",
    "emit_bound_scatter",
    "grid_bound_surface",
    "write_scatter_csv",
    "write_surface_csv",
    "search_min_coherent_info",
]
