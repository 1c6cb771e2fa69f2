"""Quality metric, captured-variance accounting, and the exact small oracle."""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .linalg import Covariance
from .rounding import SparseDirection

__all__ = [
    "EvalReport",
    "SizeGuardError",
    "captured_variance",
    "exhaustive_sparse_pca",
    "f_metric",
]


class SizeGuardError(RuntimeError):
    """Instance too large for the exhaustive enumeration oracle."""


@dataclass
class EvalReport:
    """One curve/table row: metric value plus sparsity bookkeeping."""

    f_value: float
    sparsity_ratio: float
    nnz: int
    method: str
    normalization: str
    captured_variance_pct: float = None


def f_metric(x, A):
    """Quality metric x^T A x / ||A||_2, in [0, 1] for unit-norm feasible x."""
    if not isinstance(A, Covariance):
        raise TypeError("A must be a Covariance")
    norm = A.spectral_norm()
    if norm == 0.0:
        raise ValueError("f is undefined for A with zero spectral norm")
    if isinstance(x, SparseDirection):
        return x.quadratic_form(A) / norm
    x = np.asarray(x, dtype=np.float64)
    return float(x @ A.matrix @ x) / norm


def captured_variance(X, components):
    """Cumulative percentages 100 * sum_i ||X v_i||^2 / ||X||_F^2.

    Evaluated on the original X for every prefix of the component list, so
    the output is non-decreasing.
    """
    X = np.asarray(X, dtype=np.float64)
    total = np.linalg.norm(X) ** 2
    if total == 0.0:
        raise ValueError("X has zero Frobenius norm")
    out = []
    acc = 0.0
    for v in components:
        v = v.to_dense() if isinstance(v, SparseDirection) else np.asarray(v)
        if abs(np.linalg.norm(v) - 1.0) > 1e-8:
            raise ValueError("components must have unit l2 norm")
        acc += np.linalg.norm(X @ v) ** 2
        out.append(100.0 * acc / total)
    return out


def exhaustive_sparse_pca(A, k):
    """Exact sparse-PCA optimum by support enumeration.

    Scans every support of size min(k, n), taking the top eigenvalue of the
    principal submatrix; any smaller support is contained in one of these,
    so the scan is exhaustive. Ties go to the lexicographically smallest
    support. Guarded to n <= 20 and C(n, k) <= 1e6.

    Returns
    -------
    (value, vector) : float and zero-padded unit ndarray
    """
    if not isinstance(A, Covariance):
        raise TypeError("A must be a Covariance")
    n = A.n
    if not 1 <= k <= n:
        raise ValueError("k must satisfy 1 <= k <= n")
    kk = min(k, n)
    if n > 20 or math.comb(n, kk) > 10**6:
        raise SizeGuardError(
            "exhaustive oracle guarded to n <= 20 and C(n,k) <= 1e6"
        )
    M = A.matrix
    best_val = -np.inf
    best_support = None
    for support in itertools.combinations(range(n), kk):
        sub = M[np.ix_(support, support)]
        val = float(np.linalg.eigvalsh(sub)[-1])
        if val > best_val:
            best_val = val
            best_support = support
    sub = M[np.ix_(best_support, best_support)]
    w, V = np.linalg.eigh(sub)
    vec = V[:, -1]
    idx = int(np.argmax(np.abs(vec)))
    if vec[idx] < 0:
        vec = -vec
    x = np.zeros(n)
    x[list(best_support)] = vec
    return best_val, x
