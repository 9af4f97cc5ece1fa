"""Transform-domain algebra and low-rank recovery for third-order tensors.

The algebra multiplies tensors slice by slice in the transform domain of
the length-n3 discrete Fourier transform along the tubes; on top of it
sit the spectral nuclear norm, its shrinkage operator, and a family of
augmented-Lagrangian solvers for completion, robust decomposition,
denoising, and clustering problems.
"""

from .admm import SolverConfig, SolverReport, default_sparse_weight
from .backend import backend_name
from .clustering import (
    affinity,
    dissimilarity_matrix,
    solve_representation,
    spectral_cluster,
    stack_images,
)
from .core import (
    as_mask3,
    as_tensor3,
    bcirc,
    bdfold,
    bdiag,
    bvec,
    bvfold,
    fold,
    frobenius_norm,
    frontal_slice,
    horizontal_slice,
    inner_product,
    l1_norm,
    lateral_slice,
    project_mask,
    squeeze,
    twist,
    unfold,
)
from .matrix import DegradationOp, lrmc, lrtv_super_resolve, matrix_svt, rpca
from .metrics import (
    MetricsRow,
    append_metrics_row,
    cluster_accuracy,
    f_measure,
    psnr,
    rse,
)
from .prox import (
    diff,
    diff_adjoint,
    masked_soft_threshold,
    reweighted_weights,
    soft_threshold,
    tsvt,
    weighted_tsvt,
)
from .solvers import (
    derain,
    hsi_mixed_denoise,
    lrtc,
    mod_decompose,
    trpca,
    wtnn_denoise,
)
from .spectral import (
    SpectralSymmetryError,
    SvdConvergenceError,
    from_spectral,
    to_spectral,
)
from .tensorfile import (
    BadMagicError,
    TensorFileError,
    TruncatedFileError,
    UnknownDtypeError,
    UnsupportedOrderError,
    read_tensor,
    tensor_from_bytes,
    tensor_to_bytes,
    write_tensor,
)
from .tprod import (
    TSvdFactors,
    identity_tensor,
    multirank,
    t_product,
    t_svd,
    t_transpose,
    tnn,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SolverConfig",
    "SolverReport",
    "default_sparse_weight",
    "backend_name",
    "as_tensor3",
    "as_mask3",
    "frontal_slice",
    "lateral_slice",
    "horizontal_slice",
    "unfold",
    "fold",
    "bcirc",
    "bvec",
    "bvfold",
    "bdiag",
    "bdfold",
    "twist",
    "squeeze",
    "frobenius_norm",
    "l1_norm",
    "inner_product",
    "project_mask",
    "to_spectral",
    "from_spectral",
    "SpectralSymmetryError",
    "SvdConvergenceError",
    "t_product",
    "t_transpose",
    "identity_tensor",
    "t_svd",
    "TSvdFactors",
    "multirank",
    "tnn",
    "tsvt",
    "weighted_tsvt",
    "reweighted_weights",
    "soft_threshold",
    "masked_soft_threshold",
    "diff",
    "diff_adjoint",
    "lrtc",
    "trpca",
    "wtnn_denoise",
    "hsi_mixed_denoise",
    "mod_decompose",
    "derain",
    "lrmc",
    "rpca",
    "matrix_svt",
    "DegradationOp",
    "lrtv_super_resolve",
    "stack_images",
    "dissimilarity_matrix",
    "solve_representation",
    "affinity",
    "spectral_cluster",
    "psnr",
    "rse",
    "f_measure",
    "cluster_accuracy",
    "MetricsRow",
    "append_metrics_row",
    "read_tensor",
    "write_tensor",
    "tensor_to_bytes",
    "tensor_from_bytes",
    "TensorFileError",
    "BadMagicError",
    "TruncatedFileError",
    "UnknownDtypeError",
    "UnsupportedOrderError",
]
