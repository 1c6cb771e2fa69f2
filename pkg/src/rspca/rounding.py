"""Randomized sparsification of a dense direction, with best-of-t selection.

Coordinate i of the input survives with probability
p_i = min(s |x_i| / ||x||_1, 1) and is rescaled by 1/p_i when kept, so the
output is an unbiased estimator of the input with expected sparsity at most
s. Repeating the rounding t times and keeping the best qualifying vector
amplifies the constant success probability.

Randomness contract: one uniform variate per coordinate, consumed in
ascending index order from a generator seeded per trial (plan.seed + trial
index), so results are reproducible and independent of scheduling.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import Covariance

__all__ = [
    "BestOfResult",
    "RoundingPlan",
    "SparseDirection",
    "keep_probabilities",
    "norm_cap_for",
    "sparsify",
    "sparsify_best_of",
]


def norm_cap_for(epsilon):
    """Norm acceptance threshold 1 + 0.15*eps used by the best-of filter."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return 1.0 + 0.15 * epsilon


@dataclass
class RoundingPlan:
    """Sparsity target s, trial count t, seed, and optional norm cap."""

    s: int
    trials: int = 32
    seed: int = 0
    norm_cap: float = field(default=np.inf)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.norm_cap is None:
            self.norm_cap = np.inf


class SparseDirection:
    """Sparse vector stored as (index, value) pairs.

    Attributes
    ----------
    n : int
        Ambient dimension.
    indices : ndarray of int
        Sorted support.
    values : ndarray of float
        Values on the support, never exactly zero.
    degenerate : bool
        Set by pipeline stages that had to emit a zero vector.
    """

    def __init__(self, n, indices, values, degenerate=False):
        indices = np.asarray(indices, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if indices.shape != values.shape:
            raise ValueError("indices and values must align")
        order = np.argsort(indices)
        self.n = int(n)
        self.indices = indices[order]
        self.values = values[order]
        self.degenerate = bool(degenerate)

    @classmethod
    def from_dense(cls, x, degenerate=False):
        x = np.asarray(x, dtype=np.float64)
        idx = np.flatnonzero(x)
        return cls(x.shape[0], idx, x[idx], degenerate=degenerate)

    @property
    def nnz(self):
        return int(self.indices.shape[0])

    @property
    def support(self):
        return self.indices

    def to_dense(self):
        x = np.zeros(self.n)
        x[self.indices] = self.values
        return x

    def norm(self):
        return float(np.linalg.norm(self.values))

    def quadratic_form(self, A):
        """x^T A x computed on the support submatrix."""
        M = A.matrix if isinstance(A, Covariance) else np.asarray(A)
        if self.nnz == 0:
            return 0.0
        sub = M[np.ix_(self.indices, self.indices)]
        return float(self.values @ sub @ self.values)

    def __eq__(self, other):
        if not isinstance(other, SparseDirection):
            return NotImplemented
        return (
            self.n == other.n
            and self.degenerate == other.degenerate
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return "SparseDirection(n=%d, nnz=%d%s)" % (
            self.n,
            self.nnz,
            ", degenerate" if self.degenerate else "",
        )


@dataclass
class BestOfResult:
    """Winning trial of sparsify_best_of, with the fallback recorded."""

    direction: SparseDirection
    trial_index: int
    quad_form: float
    n_qualified: int
    fallback_used: bool


def keep_probabilities(x, s):
    """Per-coordinate survival probabilities p_i = min(s |x_i|/||x||_1, 1).

    Parameters
    ----------
    x : ndarray
        Input vector; x = 0 yields all-zero probabilities.
    s : int
        Expected-sparsity target, at least 1.

    Returns
    -------
    ndarray
        Probabilities in [0, 1] with sum(p) <= s and p_i = 0 iff x_i = 0.
    """
    if int(s) != s or s < 1:
        raise ValueError("s must be an integer >= 1")
    s = int(s)
    x = np.asarray(x, dtype=np.float64)
    l1 = np.abs(x).sum()
    if l1 == 0.0:
        return np.zeros_like(x)
    p = np.minimum(s * np.abs(x) / l1, 1.0)
    # float guard: keep sum(p) <= s exactly by shaving ulp excess off the
    # largest unclipped entry; resummation can round back up, so repeat and
    # force at least a one-ulp decrease per pass
    excess = p.sum() - s
    while excess > 0.0:
        open_idx = np.flatnonzero((p > 0.0) & (p < 1.0))
        target = int(open_idx[np.argmax(p[open_idx])]) if open_idx.size else int(np.argmax(p))
        shaved = max(p[target] - excess, 0.0)
        if shaved == p[target]:
            shaved = np.nextafter(p[target], 0.0)
        p[target] = shaved
        excess = p.sum() - s
    return p


def sparsify(x, s, seed):
    """One randomized rounding pass over x.

    Each coordinate independently survives with probability p_i and is
    rescaled to x_i/p_i; coordinates with p_i = 1 are kept unscaled exactly.

    Parameters
    ----------
    x : ndarray
    s : int
        Expected-sparsity target.
    seed : int
        Generator seed; identical (x, s, seed) gives identical output.

    Returns
    -------
    SparseDirection
    """
    x = np.asarray(x, dtype=np.float64)
    p = keep_probabilities(x, s)
    rng = np.random.default_rng(seed)
    u = rng.random(x.shape[0])
    keep = u < p  # p = 1 always survives since u < 1
    idx = np.flatnonzero(keep)
    values = x[idx] / p[idx]
    return SparseDirection(x.shape[0], idx, values)


def sparsify_best_of(x, A, plan):
    """Round t times; keep the best vector passing the norm cap.

    Trials use seeds plan.seed + trial. Among trials with ||xhat||_2 <=
    plan.norm_cap the one maximizing xhat^T A xhat wins, ties to the lowest
    trial index. If no trial passes the cap, the best over all trials is
    returned and the fallback is recorded on the result.

    Parameters
    ----------
    x : ndarray
    A : Covariance
    plan : RoundingPlan

    Returns
    -------
    BestOfResult
    """
    best = None
    fallback_best = None
    n_qualified = 0
    for trial in range(plan.trials):
        d = sparsify(x, plan.s, plan.seed + trial)
        quad = d.quadratic_form(A)
        if d.norm() <= plan.norm_cap:
            n_qualified += 1
            if best is None or quad > best[1]:
                best = (d, quad, trial)
        if fallback_best is None or quad > fallback_best[1]:
            fallback_best = (d, quad, trial)
    if best is not None:
        d, quad, trial = best
        return BestOfResult(d, trial, quad, n_qualified, False)
    d, quad, trial = fallback_best
    return BestOfResult(d, trial, quad, 0, True)
