"""Shared builders and independent oracles for the test suite."""

from itertools import combinations

import numpy as np

from rspca.linalg import Covariance, covariance


def random_covariance(seed, n=None, m=None):
    """Unit-row-scaled covariance of a Gaussian data matrix."""
    rng = np.random.default_rng(seed)
    if n is None:
        n = int(rng.integers(6, 15))
    if m is None:
        m = int(rng.integers(4, 20))
    X = rng.normal(size=(m, n))
    return covariance(X)


def brute_force_sparse_max(A, k):
    """Enumeration oracle: best top eigenvalue over all size-k supports.

    Written independently of the package oracle; first strict maximum wins,
    so ties resolve to the lexicographically smallest support.
    """
    M = A.matrix if isinstance(A, Covariance) else np.asarray(A, dtype=np.float64)
    n = M.shape[0]
    k = min(int(k), n)
    best = -np.inf
    best_support = None
    for support in combinations(range(n), k):
        sub = M[np.ix_(support, support)]
        val = float(np.linalg.eigvalsh(sub)[-1])
        if val > best:
            best = val
            best_support = support
    return best, best_support
