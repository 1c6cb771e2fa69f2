"""Scikit-learn style estimator wrapping the full pipeline."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .deflation import compute_k_components
from .relaxation import SolverConfig
from .rounding import RoundingPlan, norm_cap_for

__all__ = ["RandomizedSparsePCA"]


class RandomizedSparsePCA(BaseEstimator, TransformerMixin):
    """Sparse PCA via an l1-constrained relaxation and randomized rounding.

    Each component is a unit vector with few nonzeros, found by solving the
    relaxed problem, rounding the dense solution to a sparse support, and
    renormalizing on that support. Later components come from deflated data.

    Parameters
    ----------
    n_components : int, default=1
        Number of sparse components to extract.
    k : int or None, default=None
        Sparsity target per component. None picks max(1, round(0.1 * n)).
    s : int or None, default=None
        Expected nonzero count used by the rounding step. None uses k.
    trials : int, default=32
        Rounding repetitions per component; the best draw is kept.
    epsilon : float or None, default=None
        Accuracy parameter; when set, rounding draws with l2 norm above
        1 + 0.15 * epsilon are rejected before the best-of selection.
    normalization : {'svd', 'naive'}, default='svd'
        How the rounded vector is renormalized on its support.
    scale_rows : bool, default=True
        Scale the covariance to unit maximum row norm before solving.
    center : bool, default=True
        Subtract column means before fitting; transform reuses them.
    tol : float, default=1e-8
        Relaxation convergence threshold on the objective increase.
    max_iter : int, default=5000
        Iteration cap per relaxation restart.
    restarts : int, default=8
        Number of restarts per component.
    random_state : int, default=0
        Seed for restarts and rounding draws.

    Attributes
    ----------
    components_ : ndarray of shape (n_components_, n_features)
        Sparse directions, one per row.
    mean_ : ndarray of shape (n_features,)
        Column means; present only when ``center=True``.
    n_components_ : int
        Components actually extracted (early stop can reduce it).
    k_ : int
        Resolved sparsity target (``k`` or the 10% default).
    truncated_ : bool
        True when extraction stopped before ``n_components``.
    support_ : list of ndarray
        Nonzero index set of each component.
    f_values_ : ndarray of shape (n_components_,)
        Rayleigh quotient of each component on the original covariance.
    captured_variance_pct_ : ndarray of shape (n_components_,)
        Cumulative percentage of squared data norm explained.
    n_features_in_ : int
        Feature count seen during fit.
    """

    def __init__(self, n_components=1, k=None, s=None, trials=32,
                 epsilon=None, normalization="svd", scale_rows=True,
                 center=True, tol=1e-8, max_iter=5000, restarts=8,
                 random_state=0):
        self.n_components = n_components
        self.k = k
        self.s = s
        self.trials = trials
        self.epsilon = epsilon
        self.normalization = normalization
        self.scale_rows = scale_rows
        self.center = center
        self.tol = tol
        self.max_iter = max_iter
        self.restarts = restarts
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_min_samples=1)
        n = X.shape[1]
        self.n_features_in_ = n
        if self.center:
            self.mean_ = X.mean(axis=0)
            X = X - self.mean_
        elif hasattr(self, "mean_"):
            del self.mean_
        k = self.k if self.k is not None else max(1, round(0.1 * n))
        self.k_ = k
        seed = 0 if self.random_state is None else int(self.random_state)
        cap = norm_cap_for(self.epsilon) if self.epsilon else np.inf
        plan = RoundingPlan(s=self.s or k, trials=self.trials, seed=seed,
                            norm_cap=cap)
        cfg = SolverConfig(max_iter=self.max_iter, tol=self.tol,
                           restarts=self.restarts, seed=seed)
        cs = compute_k_components(X, self.n_components, k, plan, cfg,
                                  mode=self.normalization,
                                  scale_rows=self.scale_rows,
                                  compute_left=False)
        self.n_components_ = len(cs.V)
        self.truncated_ = cs.truncated
        self.components_ = np.vstack([v.to_dense() for v in cs.V]) \
            if cs.V else np.zeros((0, n))
        self.support_ = [v.indices.copy() for v in cs.V]
        self.f_values_ = np.array([r.f_value for r in cs.reports])
        self.captured_variance_pct_ = np.array(
            [r.captured_variance_pct for r in cs.reports])
        return self

    def transform(self, X):
        check_is_fitted(self, "components_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError("X has %d features, expected %d"
                             % (X.shape[1], self.n_features_in_))
        if hasattr(self, "mean_"):
            X = X - self.mean_
        return X @ self.components_.T
