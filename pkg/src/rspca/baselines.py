"""MaxComp baseline and the two renormalization schemes.

Every method's sparse output goes through the same renormalization so the
comparison between methods stays fair: naive rescales to the unit sphere,
svd replaces the values with the top eigenvector of the support-induced
principal submatrix (which can only improve the quality metric on that
support).
"""

import numpy as np

from .linalg import Covariance, _sign_normalize, top_singular_pair
from .rounding import SparseDirection

__all__ = ["NORMALIZATION_MODES", "canonical_mode", "max_comp", "normalize",
           "threshold_top_vector"]

NORMALIZATION_MODES = ("naive", "svd")


def canonical_mode(mode):
    if mode in ("svd", "svd_based"):
        return "svd"
    if mode == "naive":
        return "naive"
    raise ValueError("unknown normalization mode: %r" % (mode,))


def max_comp(A, k, seed=0):
    """Keep the k largest-magnitude entries of the top singular vector.

    Ties go to the lowest index; exact zeros are never part of the support.
    No renormalization happens here.
    """
    if not isinstance(A, Covariance):
        raise TypeError("A must be a Covariance")
    if not 1 <= k <= A.n:
        raise ValueError("k must satisfy 1 <= k <= n")
    pair = top_singular_pair(A, seed=seed)
    v = pair.vector
    order = np.argsort(-np.abs(v), kind="stable")[:k]
    order = order[v[order] != 0.0]
    return SparseDirection(A.n, order, v[order])


def threshold_top_vector(A, k, seed=0):
    """Alias of max_comp for the thresholding baseline family."""
    return max_comp(A, k, seed=seed)


def normalize(d, A, mode):
    """Renormalize a sparse direction on its own support.

    naive: divide by the l2 norm. svd: top eigenvector of the support
    principal submatrix of A, zero-padded back to full length; entries of
    that eigenvector that are exactly zero drop out of the support. The svd
    result is guaranteed to score at least as well as naive on the same
    support: when the submatrix top eigenvalue is (numerically) degenerate
    and the naive vector edges out the computed eigenvector, the naive
    values are kept.
    """
    mode = canonical_mode(mode)
    if not isinstance(d, SparseDirection):
        raise TypeError("d must be a SparseDirection")
    if d.nnz == 0:
        raise ValueError("cannot normalize a zero vector")
    unit = d.values / d.norm()
    if mode == "naive":
        return SparseDirection(d.n, d.indices, unit)
    M = A.matrix if isinstance(A, Covariance) else np.asarray(A, dtype=np.float64)
    sub = M[np.ix_(d.indices, d.indices)]
    _, vecs = np.linalg.eigh(sub)
    vec = _sign_normalize(vecs[:, -1])
    if float(vec @ sub @ vec) < float(unit @ sub @ unit):
        vec = unit
    keep = vec != 0.0
    return SparseDirection(d.n, d.indices[keep], vec[keep])
