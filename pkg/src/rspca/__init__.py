"""Sparse PCA by l1-constrained relaxation and randomized rounding.

The pipeline finds a near-optimal dense unit vector under an l1 budget of
sqrt(k), rounds it to a sparse vector whose expected nonzero count is s,
and renormalizes on the chosen support. Deflation repeats the pipeline for
further components; baselines, an exhaustive oracle, a synthetic generator,
a Monte Carlo bound verifier, and a scikit-learn style estimator round out
the toolkit.
"""

from ._version import __version__
from .baselines import (NORMALIZATION_MODES, canonical_mode, max_comp,
                        normalize, threshold_top_vector)
from .deflation import ComponentSet, compute_k_components, deflate_step, rspca
from .estimator import RandomizedSparsePCA
from .evaluation import (EvalReport, SizeGuardError, captured_variance,
                         exhaustive_sparse_pca, f_metric)
from .experiment import (CurvePoint, ExperimentConfig, ExperimentResult,
                         run_bound_check, run_deflation, run_experiment,
                         run_generate, run_solve)
from .linalg import (ConvergenceError, Covariance, SingularPair,
                     center_columns, covariance, top_singular_pair)
from .matio import infer_format, load_matrix, save_matrix, write_json
from .relaxation import (DenseDirection, SolverConfig, project_feasible,
                         solve_relaxed)
from .rounding import (BestOfResult, RoundingPlan, SparseDirection,
                       keep_probabilities, norm_cap_for, sparsify,
                       sparsify_best_of)
from .synthetic import (SyntheticData, SyntheticSpec, generate,
                        givens_composition, hadamard_orthonormal)
from .verifier import BoundCheckReport, verify_theorem1

__all__ = [
    "BestOfResult",
    "BoundCheckReport",
    "ComponentSet",
    "ConvergenceError",
    "Covariance",
    "CurvePoint",
    "DenseDirection",
    "EvalReport",
    "ExperimentConfig",
    "ExperimentResult",
    "NORMALIZATION_MODES",
    "RandomizedSparsePCA",
    "RoundingPlan",
    "SingularPair",
    "SizeGuardError",
    "SolverConfig",
    "SparseDirection",
    "SyntheticData",
    "SyntheticSpec",
    "__version__",
    "canonical_mode",
    "captured_variance",
    "center_columns",
    "compute_k_components",
    "covariance",
    "deflate_step",
    "exhaustive_sparse_pca",
    "f_metric",
    "generate",
    "givens_composition",
    "hadamard_orthonormal",
    "infer_format",
    "keep_probabilities",
    "load_matrix",
    "max_comp",
    "norm_cap_for",
    "normalize",
    "project_feasible",
    "rspca",
    "run_bound_check",
    "run_deflation",
    "run_experiment",
    "run_generate",
    "run_solve",
    "save_matrix",
    "solve_relaxed",
    "sparsify",
    "sparsify_best_of",
    "threshold_top_vector",
    "top_singular_pair",
    "verify_theorem1",
    "write_json",
]
