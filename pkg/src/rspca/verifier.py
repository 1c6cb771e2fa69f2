"""Monte Carlo verification of the rounding guarantees.

The analysis promises, for s = ceil(200 k / eps^2) and a feasible input
x of the relaxation: expected sparsity at most s; norm inflation at most
1 + 0.15 eps with probability 3/4 (and at most the stricter 1 + 2 sqrt(k/s)
form it is derived from); additive quality loss at most eps with
probability 3/4;
mean squared rounding residual at most k/s; cross and quadratic error terms
bounded with probability 7/8 each; and a nonnegative expectation gap for
the quadratic form. This module measures all of those as frequencies and
means over N independent roundings and reports them next to their floors.
"""

import math
from dataclasses import dataclass

import numpy as np

from .evaluation import SizeGuardError, exhaustive_sparse_pca
from .linalg import Covariance
from .relaxation import SolverConfig, solve_relaxed
from .rounding import keep_probabilities, sparsify

__all__ = ["BoundCheckReport", "verify_theorem1"]


@dataclass
class BoundCheckReport:
    """Measured frequencies and means next to their analytic floors."""

    n: int
    k: int
    epsilon: float
    s: int
    n_trials: int
    z_opt: float
    z_opt_source: str
    relaxation_objective: float
    expected_nnz: float
    mean_nnz: float
    nnz_se: float
    frac_norm_ok: float
    norm_frac_sqrt_cap: float
    frac_additive_ok: float
    joint_frac: float
    mean_sq_residual: float
    sq_residual_bound: float
    cross_term_frac: float
    cross_term_bound: float
    quad_term_frac: float
    quad_term_bound: float
    expectation_gap: float
    gap_se: float
    gap_rare_slack: float

    def _floor(self, p):
        return p - 3.0 * math.sqrt(p * (1.0 - p) / self.n_trials)

    def checks(self):
        """Pass/fail map: each frequency against its floor minus MC slack.

        The nnz standard error is the analytic binomial one (the keep
        probabilities are known exactly). The expectation-gap check carries
        a slack for coordinates so rarely kept that no trial plausibly saw
        them: conditioned on their absence, the empirical mean sits below
        the true expectation by up to their contribution to the quadratic
        form, which the empirical SE cannot reflect.
        """
        nnz_ok = (abs(self.mean_nnz - self.expected_nnz)
                  <= 3.0 * self.nnz_se + 1e-9)
        gap_slack = (self.gap_rare_slack
                     + 1e-12 * max(1.0, abs(self.relaxation_objective)))
        return {
            "expected_nnz_le_s": self.expected_nnz <= self.s,
            "mean_nnz_within_3se": nnz_ok,
            "norm_frac_above_floor": self.frac_norm_ok >= self._floor(0.75),
            "additive_frac_above_floor":
                self.frac_additive_ok >= self._floor(0.75),
            "mean_sq_residual_bounded":
                self.mean_sq_residual
                <= self.sq_residual_bound * (1.0 + 3.0 / math.sqrt(self.n_trials)),
            "cross_frac_above_floor":
                self.cross_term_frac >= self._floor(7.0 / 8.0),
            "quad_frac_above_floor":
                self.quad_term_frac >= self._floor(7.0 / 8.0),
            "expectation_gap_nonneg":
                self.expectation_gap >= -3.0 * self.gap_se - gap_slack,
        }

    def all_ok(self):
        return all(self.checks().values())

    def to_dict(self):
        d = {name: getattr(self, name) for name in (
            "n", "k", "epsilon", "s", "n_trials", "z_opt", "z_opt_source",
            "relaxation_objective", "expected_nnz", "mean_nnz", "nnz_se",
            "frac_norm_ok", "norm_frac_sqrt_cap", "frac_additive_ok",
            "joint_frac", "mean_sq_residual", "sq_residual_bound",
            "cross_term_frac", "cross_term_bound", "quad_term_frac",
            "quad_term_bound", "expectation_gap", "gap_se", "gap_rare_slack",
        )}
        d["checks"] = self.checks()
        d["all_ok"] = self.all_ok()
        return d


def verify_theorem1(A, k, epsilon, n_trials=1000, seed=0, cfg=None):
    """Measure every rounding guarantee on one instance.

    Solves the relaxation once, then rounds it n_trials times with
    s = ceil(200 k / eps^2) and per-trial seeds seed + trial. The additive
    check compares against the exact sparse optimum when the instance is
    small enough for the enumeration oracle, else against the relaxation
    objective (an upper surrogate), with the source labeled in the report.

    Parameters
    ----------
    A : Covariance
        Rescaled to unit rows here if it is not already.
    k : int
    epsilon : float
    n_trials : int
    seed : int
    cfg : SolverConfig, optional

    Returns
    -------
    BoundCheckReport
    """
    if not isinstance(A, Covariance):
        raise TypeError("A must be a Covariance")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    M = A.matrix
    row_max = float(np.linalg.norm(M, axis=1).max()) if M.size else 0.0
    if row_max > 1.0 + 1e-12:
        A = Covariance(M / row_max, A.max_row_norm, True)
        M = A.matrix
    n = A.n

    s = int(math.ceil(200.0 * k / epsilon**2))
    cfg = cfg or SolverConfig(seed=seed)
    dense = solve_relaxed(A, k, cfg)
    x = dense.x
    xAx = float(x @ M @ x)
    try:
        z_opt, _ = exhaustive_sparse_pca(A, k)
        z_source = "exhaustive"
    except SizeGuardError:
        z_opt, z_source = xAx, "relaxation"

    p = keep_probabilities(x, s)
    expected_nnz = float(p.sum())
    norm_cap = 1.0 + 0.15 * epsilon
    sqrt_cap = 1.0 + 2.0 * math.sqrt(k / s)
    cross_bound = math.sqrt(8.0 * k / s)
    quad_bound = math.sqrt(
        24.0 * k**2 / s**2 + 6.0 * k**2 / s**3 + 54.0 * math.sqrt(k) / s
    )

    Ax = M @ x
    nnzs = np.empty(n_trials)
    quads = np.empty(n_trials)
    norm_ok = np.empty(n_trials, dtype=bool)
    sqrt_cap_ok = np.empty(n_trials, dtype=bool)
    additive_ok = np.empty(n_trials, dtype=bool)
    sq_resid = np.empty(n_trials)
    cross_ok = np.empty(n_trials, dtype=bool)
    quad_ok = np.empty(n_trials, dtype=bool)
    for t in range(n_trials):
        d = sparsify(x, s, seed + t)
        xhat = d.to_dense()
        diff = x - xhat
        quad = float(xhat @ M @ xhat)
        nnzs[t] = d.nnz
        quads[t] = quad
        nrm = float(np.linalg.norm(xhat))
        norm_ok[t] = nrm <= norm_cap
        sqrt_cap_ok[t] = nrm <= sqrt_cap
        additive_ok[t] = quad >= z_opt - epsilon
        sq_resid[t] = float(diff @ diff)
        cross_ok[t] = abs(float(Ax @ diff)) <= cross_bound
        quad_ok[t] = abs(float(diff @ M @ diff)) <= quad_bound

    gap_se = float(quads.std(ddof=1) / math.sqrt(n_trials)) if n_trials > 1 else 0.0
    # analytic binomial SE: the keep probabilities are known exactly
    nnz_se = math.sqrt(float((p * (1.0 - p)).sum()) / n_trials)
    # coordinates plausibly absent from every trial bias the empirical mean
    # of the quadratic form downward by at most their own contribution
    rare = (p > 0.0) & ((1.0 - p) ** n_trials >= 1e-3)
    diag_amp = np.sqrt(np.maximum(np.diag(M), 0.0)) * np.abs(x)
    gap_rare_slack = float(
        (2.0 * np.abs(x * Ax))[rare].sum() + diag_amp[rare].sum() ** 2
    )
    return BoundCheckReport(
        n=n,
        k=int(k),
        epsilon=float(epsilon),
        s=s,
        n_trials=int(n_trials),
        z_opt=float(z_opt),
        z_opt_source=z_source,
        relaxation_objective=xAx,
        expected_nnz=expected_nnz,
        mean_nnz=float(nnzs.mean()),
        nnz_se=nnz_se,
        frac_norm_ok=float(norm_ok.mean()),
        norm_frac_sqrt_cap=float(sqrt_cap_ok.mean()),
        frac_additive_ok=float(additive_ok.mean()),
        joint_frac=float((norm_ok & additive_ok).mean()),
        mean_sq_residual=float(sq_resid.mean()),
        sq_residual_bound=k / s,
        cross_term_frac=float(cross_ok.mean()),
        cross_term_bound=cross_bound,
        quad_term_frac=float(quad_ok.mean()),
        quad_term_bound=quad_bound,
        expectation_gap=float(quads.mean()) - xAx,
        gap_se=gap_se,
        gap_rare_slack=gap_rare_slack,
    )
