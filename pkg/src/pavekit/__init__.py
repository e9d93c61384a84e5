"""pavekit: desk-scale searchers and verifiers for operator paving,
frame partitions, Riesz-class splittings, Fourier-frame compressions and
subspace decompositions.

Each existence statement in this circle of results is realized as
"search a witness at desk scale, then verify the inequality": searches
emit certificates carrying the exact achieved block norms or eigenvalue
ranges, and every certificate can be re-checked independently of the
search that produced it.
"""

from .errors import (
    BadPartition,
    EmptySet,
    HypothesisFails,
    IndexOutOfRange,
    NonSquare,
    NormExceedsOne,
    NotAFrame,
    NotAProjection,
    NotEtaTight,
    NotHermitian,
    NotIdentityResolution,
    NotLarge,
    NotParseval,
    NotPSD,
    NotSelfAdjoint,
    NotUnitNorm,
    NotZeroDiagonal,
    PavekitError,
    TooLarge,
)
from .frames import (
    Frame,
    FrameBounds,
    canonical_parseval,
    frame_bounds,
    frame_from_json,
    frame_operator,
    frame_to_json,
    frames_isomorphic,
    gram,
    naimark_dilate,
    project_frame,
    range_frame_bounds,
)
from .harmonic import (
    FreqWindow,
    IntervalSet,
    SyndeticReport,
    ap_partition_check,
    chi_hat,
    fourier_gram,
    general_set_partition,
    syndetic_analyze,
)
from .linalg import (
    EigenDecomposition,
    as_matrix,
    coordinate_projection,
    delta_diag,
    hermitian_eig,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    psd_sqrt,
)
from .paving import (
    PartitionCertificate,
    SearchBudget,
    exhaustive_min_r,
    heuristic_paving,
    min_blocks_partition,
    mss_partition,
    normalize_zero_diag,
    pave_complex,
    pave_selfadjoint_via_projection,
    projection_lift,
    projection_paving,
    selfadjoint_involution,
    two_paving_projection,
    verify_paving,
    weaver_partition,
)
from .sequences import (
    BtSubsetResult,
    RieszCertificate,
    bt_partition,
    bt_subset_search,
    feichtinger_partition,
    renorm,
    renorm_value,
    riesz_bounds,
    sundberg_split,
)
from .subspaces import (
    SubspaceModel,
    decompose,
    decompose_certificate,
    is_A_large,
    subspace_from_json,
    subspace_to_json,
    verify_decomposition,
)

__version__ = "0.1.0"
