"""Random bipartite states, mixedness-based entanglement witnesses and the
partial-transpose test, with the analytic thresholds and bounds around them."""

from .bounds import (
    EntropyBounds,
    PurityPoint,
    entropy_bounds,
    kappa_of_purity,
    marginal_eigenvalue_density,
    max_entropy_vector,
    min_entropy_vector,
    nearly_mm_fraction,
    nearly_mm_fraction_ball,
    nearly_pure_fraction,
)
from .estimators import EnsembleSampler, MixednessWitness, NPTWitness, WitnessTransformer
from .exceptions import (
    DimensionMismatch,
    InvalidOrder,
    MixwitError,
    NoSignChange,
    NonFinite,
    NonHermitian,
    NotAState,
    OddQubitCount,
    ParseError,
    PurityOutOfRange,
    RejectionExhausted,
    ShapeMismatch,
)
from .linalg import (
    BipartiteShape,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    tensor_product,
    trace_norm,
    validate_density,
)
from .sampling import (
    EnsembleKind,
    EnsembleSpec,
    SliceSamplerConfig,
    StreamKey,
    sample_density_matrix,
    sample_haar_unitary,
    sample_naive_probability_vector,
    sample_pure_state,
    sample_simplex_uniform,
    sample_sphere_slice,
    sample_sphere_slice_chain,
    sample_spectrum,
)
from .states import (
    AnomalousParams,
    WernerParams,
    anomalous_state,
    bell_state,
    find_anomalous_advantage,
    threshold_log2,
    werner_npt_threshold,
    werner_state,
    werner_threshold,
    werner_threshold_log_domain,
)
from .witnesses import (
    COLLISION,
    MIN_ENTROPY,
    VON_NEUMANN,
    WitnessReport,
    classical_mutual_information,
    conditional_renyi,
    log_negativity,
    majorization_criterion,
    majorizes,
    mixedness_witness,
    npt_check,
    purity,
    renyi_entropy,
    witness_report,
)

__version__ = "0.1.0"
