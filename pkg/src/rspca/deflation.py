"""Multiple sparse components by alternating the pipeline with deflation.

rspca runs the full two-step method (relaxation then best-of-t rounding,
then renormalization) on one matrix. compute_k_components alternates it on
X and Y = X^T, removing each found direction from the residual with a
rank-one projection before the next round. The projection acts on the data,
not the candidate set, so extracted directions need not be orthogonal.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .baselines import canonical_mode, normalize
from .evaluation import EvalReport, f_metric
from .linalg import covariance
from .relaxation import SolverConfig, solve_relaxed
from .rounding import RoundingPlan, SparseDirection, sparsify_best_of

__all__ = ["ComponentSet", "compute_k_components", "deflate_step", "rspca"]


@dataclass
class ComponentSet:
    """Left/right sparse component lists with per-component reports."""

    U: list = field(default_factory=list)
    V: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    requested: int = 0
    truncated: bool = False


def _zero_direction(n):
    return SparseDirection(n, [], [], degenerate=True)


def rspca(X, k, plan, cfg=None, mode="svd", scale_rows=True):
    """Two-step sparse direction for the feature space of X.

    covariance -> solve_relaxed -> sparsify_best_of -> normalize. A zero
    input (or an all-dropped rounding) yields a zero direction flagged
    degenerate instead of an error.
    """
    X = np.asarray(X, dtype=np.float64)
    mode = canonical_mode(mode)
    cfg = cfg or SolverConfig(seed=plan.seed)
    n = X.shape[1]
    if not np.any(X):
        return _zero_direction(n)
    A = covariance(X, scale_to_unit_rows=scale_rows)
    dense = solve_relaxed(A, k, cfg)
    if not np.any(dense.x):
        return _zero_direction(n)
    best = sparsify_best_of(dense.x, A, plan)
    if best.direction.nnz == 0:
        return _zero_direction(n)
    return normalize(best.direction, A, mode)


def deflate_step(X, v):
    """Residual X(I - v v^T); the result maps v to zero."""
    X = np.asarray(X, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise ValueError("v must have unit l2 norm")
    return X - np.outer(X @ v, v)


def compute_k_components(X, n_components, k, plan, cfg=None, mode="svd",
                         scale_rows=True, compute_left=True):
    """Extract n_components sparse pairs by alternating rspca and deflation.

    Component i uses rounding seed plan.seed + i. A residual whose Frobenius
    norm falls below 1e-12 of the original (or a degenerate direction) stops
    the extraction early with ``truncated`` set; completed components are
    kept.

    Returns
    -------
    ComponentSet
        V holds right (feature-space) directions of X, U left directions;
        reports carry f and cumulative captured variance on the original X.
    """
    X0 = np.asarray(X, dtype=np.float64)
    m, n = X0.shape
    if not 1 <= n_components <= min(m, n):
        raise ValueError("n_components must satisfy 1 <= K <= min(m, n)")
    cfg = cfg or SolverConfig(seed=plan.seed)
    mode = canonical_mode(mode)
    out = ComponentSet(requested=n_components)
    A0 = covariance(X0, scale_to_unit_rows=scale_rows)
    total0 = np.linalg.norm(X0)
    Xc = X0.copy()
    Yc = X0.T.copy()
    acc_var = 0.0
    denom = total0**2
    for i in range(n_components):
        if np.linalg.norm(Xc) < 1e-12 * total0:
            out.truncated = True
            break
        plan_i = replace(plan, seed=plan.seed + i)
        v = rspca(Xc, k, plan_i, cfg, mode, scale_rows)
        if v.degenerate:
            out.truncated = True
            break
        u = None
        if compute_left:
            u = rspca(Yc, min(k, m), plan_i, cfg, mode, scale_rows)
        out.V.append(v)
        out.U.append(u)
        vd = v.to_dense()
        acc_var += np.linalg.norm(X0 @ vd) ** 2
        out.reports.append(
            EvalReport(
                f_value=f_metric(v, A0),
                sparsity_ratio=v.nnz / n,
                nnz=v.nnz,
                method="rspca",
                normalization=mode,
                captured_variance_pct=100.0 * acc_var / denom,
            )
        )
        Xc = deflate_step(Xc, vd)
        if compute_left and u is not None and not u.degenerate:
            Yc = deflate_step(Yc, u.to_dense())
    return out
