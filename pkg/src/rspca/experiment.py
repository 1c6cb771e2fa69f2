"""Experiment orchestration: curve sweeps, bound checks, deflation runs.

The sweep protocol keeps comparisons fair: at every grid value the pipeline
runs first, its realized nonzero count is recorded, and the baseline is
forced to that same count before both renormalizations are applied. Curve
CSVs carry exactly the quality-vs-sparsity axes; the JSON manifest records
every seed and scale factor. Nothing here depends on wall-clock state, so
identical (config, seed) runs produce byte-identical artifacts.
"""

import os
from dataclasses import asdict, dataclass, field

import numpy as np

from ._version import __version__
from .baselines import canonical_mode, max_comp, normalize
from .deflation import compute_k_components
from .evaluation import f_metric
from .linalg import center_columns, covariance
from .matio import load_matrix, save_matrix, write_json
from .relaxation import SolverConfig, solve_relaxed
from .rounding import RoundingPlan, norm_cap_for, sparsify_best_of
from .synthetic import SyntheticSpec, generate
from .verifier import verify_theorem1

__all__ = [
    "CurvePoint",
    "ExperimentConfig",
    "run_bound_check",
    "run_deflation",
    "run_experiment",
    "run_generate",
    "run_solve",
]

METHODS = ("rspca", "maxcomp")


@dataclass
class CurvePoint:
    sparsity_ratio: float
    f_value: float
    method: str
    normalization: str
    k: int
    nnz: int


@dataclass
class ExperimentConfig:
    """One sweep: data source, method/normalization grid, solver knobs."""

    input_path: str = None
    input_format: str = None
    synthetic: SyntheticSpec = None
    methods: tuple = METHODS
    normalizations: tuple = ("naive", "svd")
    grid: tuple = (1,)
    s: int = None              # None: s = k at every grid point
    trials: int = 32
    epsilon: float = None      # None: no norm cap in best-of selection
    scale_rows: bool = True
    center: bool = False
    tol: float = 1e-8
    max_iter: int = 5000
    restarts: int = 8
    seed: int = 0
    out_dir: str = "."

    def __post_init__(self):
        if (self.input_path is None) == (self.synthetic is None):
            raise ValueError("exactly one of input_path or synthetic is required")
        if not self.methods or not set(self.methods) <= set(METHODS):
            raise ValueError("methods must be a nonempty subset of %s" % (METHODS,))
        self.normalizations = tuple(canonical_mode(m) for m in self.normalizations)
        if not self.normalizations:
            raise ValueError("normalizations must be nonempty")
        self.grid = tuple(int(k) for k in self.grid)
        if not self.grid or any(k < 1 for k in self.grid):
            raise ValueError("grid must be a nonempty list of k >= 1")

    def config_dict(self):
        d = {}
        for name in ("input_path", "input_format", "methods",
                     "normalizations", "grid", "s", "trials", "epsilon",
                     "scale_rows", "center", "tol", "max_iter", "restarts",
                     "seed", "out_dir"):
            value = getattr(self, name)
            d[name] = list(value) if isinstance(value, tuple) else value
        d["synthetic"] = asdict(self.synthetic) if self.synthetic else None
        return d


@dataclass
class ExperimentResult:
    curves: dict
    manifest: dict
    curve_files: dict
    manifest_file: str
    failures: list = field(default_factory=list)


def _resolve_matrix(cfg):
    if cfg.synthetic is not None:
        return generate(cfg.synthetic).X
    return load_matrix(cfg.input_path, cfg.input_format)


def _plan_for(cfg, k, point_seed):
    cap = norm_cap_for(cfg.epsilon) if cfg.epsilon else np.inf
    return RoundingPlan(s=cfg.s or k, trials=cfg.trials, seed=point_seed,
                        norm_cap=cap)


def _evaluate_both(vec, A):
    # always compute both renormalizations so the dominance check is universal
    out = {}
    for mode in ("naive", "svd"):
        nx = normalize(vec, A, mode)
        out[mode] = (nx, f_metric(nx, A))
    assert out["svd"][1] >= out["naive"][1] - 1e-10
    return out


def run_experiment(cfg):
    """Sweep the grid, enforce the fairness protocol, write curves+manifest.

    Returns an ExperimentResult; per-point errors are recorded in the
    manifest instead of aborting the sweep.
    """
    os.makedirs(cfg.out_dir, exist_ok=True)
    X = _resolve_matrix(cfg)
    if cfg.center:
        X = center_columns(X)
    A = covariance(X, scale_to_unit_rows=cfg.scale_rows)
    n = A.n

    curves = {(m, nm): [] for m in cfg.methods for nm in cfg.normalizations}
    point_records = []
    failures = []
    for j, k in enumerate(cfg.grid):
        point_seed = cfg.seed + j
        record = {"k": k, "seed": point_seed, "nnz": None,
                  "failed": False, "error": None}
        try:
            plan = _plan_for(cfg, k, point_seed)
            solver = SolverConfig(max_iter=cfg.max_iter, tol=cfg.tol,
                                  restarts=cfg.restarts, seed=point_seed)
            vectors = {}
            if "rspca" in cfg.methods:
                dense = solve_relaxed(A, min(k, n), solver)
                best = sparsify_best_of(dense.x, A, plan)
                if best.direction.nnz == 0:
                    raise RuntimeError("rounding produced an empty vector")
                vectors["rspca"] = best.direction
                shared_nnz = best.direction.nnz
            else:
                shared_nnz = min(k, n)
            if "maxcomp" in cfg.methods:
                mc = max_comp(A, min(shared_nnz, n), seed=point_seed)
                if mc.nnz != min(shared_nnz, n):
                    raise RuntimeError(
                        "fairness violated: maxcomp nnz %d != %d"
                        % (mc.nnz, shared_nnz))
                vectors["maxcomp"] = mc
            record["nnz"] = shared_nnz
            for method, vec in vectors.items():
                both = _evaluate_both(vec, A)
                for nm in cfg.normalizations:
                    curves[(method, nm)].append(CurvePoint(
                        sparsity_ratio=shared_nnz / n,
                        f_value=both[nm][1],
                        method=method,
                        normalization=nm,
                        k=k,
                        nnz=shared_nnz,
                    ))
        except Exception as err:  # per-point isolation
            record["failed"] = True
            record["error"] = "%s: %s" % (type(err).__name__, err)
            failures.append(record)
        point_records.append(record)

    # emit one CSV per series, points ordered by the x axis
    curve_files = {}
    for (method, nm), points in curves.items():
        points.sort(key=lambda p: (p.sparsity_ratio, p.k))
        fname = "curve_%s_%s.csv" % (method, nm)
        path = os.path.join(cfg.out_dir, fname)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("sparsity_ratio,f_value,method,normalization,k,nnz\n")
            for p in points:
                fh.write("%.17g,%.17g,%s,%s,%d,%d\n" % (
                    p.sparsity_ratio, p.f_value, p.method, p.normalization,
                    p.k, p.nnz))
        curve_files["%s_%s" % (method, nm)] = fname

    manifest = {
        "version": __version__,
        "config": cfg.config_dict(),
        "n_rows": int(X.shape[0]),
        "n_cols": int(X.shape[1]),
        "scale_factor": A.max_row_norm,
        "scaled": A.scaled,
        "points": point_records,
        "curve_files": curve_files,
    }
    manifest_file = os.path.join(cfg.out_dir, "manifest.json")
    write_json(manifest_file, manifest)
    return ExperimentResult(curves, manifest, curve_files, manifest_file,
                            failures)


def run_generate(spec, out_dir):
    """Write a synthetic matrix, its ground truth, and a JSON sidecar."""
    os.makedirs(out_dir, exist_ok=True)
    data = generate(spec)
    files = {"X": "X.mtx", "V": "V.mtx", "sigma": "sigma.csv"}
    save_matrix(os.path.join(out_dir, files["X"]), data.X)
    save_matrix(os.path.join(out_dir, files["V"]), data.V)
    np.savetxt(os.path.join(out_dir, files["sigma"]),
               data.sigma[None, :], delimiter=",", fmt="%.17g")
    sidecar = {"spec": asdict(spec), "files": files}
    write_json(os.path.join(out_dir, "generate.json"), sidecar)
    return data


def _load_input(input_path, input_format, synthetic, center):
    if (input_path is None) == (synthetic is None):
        raise ValueError("exactly one of input_path or synthetic is required")
    X = generate(synthetic).X if synthetic else load_matrix(input_path,
                                                            input_format)
    return center_columns(X) if center else X


def run_solve(input_path=None, input_format=None, synthetic=None, k=1,
              s=None, trials=32, epsilon=None, normalization="svd",
              scale_rows=True, center=False, seed=0, out_dir=".",
              tol=1e-8, max_iter=5000, restarts=8):
    """Single pipeline run; writes solution.json and returns its dict."""
    os.makedirs(out_dir, exist_ok=True)
    X = _load_input(input_path, input_format, synthetic, center)
    A = covariance(X, scale_to_unit_rows=scale_rows)
    cfg = SolverConfig(max_iter=max_iter, tol=tol, restarts=restarts,
                       seed=seed)
    dense = solve_relaxed(A, min(k, A.n), cfg)
    cap = norm_cap_for(epsilon) if epsilon else np.inf
    plan = RoundingPlan(s=s or k, trials=trials, seed=seed, norm_cap=cap)
    best = sparsify_best_of(dense.x, A, plan)
    mode = canonical_mode(normalization)
    if best.direction.nnz == 0:
        solution = None
        f_val = 0.0
        nnz = 0
    else:
        solution = normalize(best.direction, A, mode)
        f_val = f_metric(solution, A)
        nnz = solution.nnz
    out = {
        "n": A.n,
        "k": int(k),
        "s": int(plan.s),
        "trials": int(trials),
        "epsilon": epsilon,
        "normalization": mode,
        "seed": int(seed),
        "scale_factor": A.max_row_norm,
        "relaxation_objective": dense.objective,
        "relaxation_converged": dense.converged,
        "nnz": nnz,
        "f_value": f_val,
        "chosen_trial": best.trial_index,
        "norm_cap_fallback": best.fallback_used,
        "indices": [] if solution is None else solution.indices.tolist(),
        "values": [] if solution is None else solution.values.tolist(),
    }
    write_json(os.path.join(out_dir, "solution.json"), out)
    return out


def run_bound_check(input_path=None, input_format=None, synthetic=None, k=1,
                    epsilon=0.5, n_trials=1000, scale_rows=True,
                    center=False, seed=0, out_dir="."):
    """Verify the rounding bounds on one matrix; writes bound_check.json."""
    os.makedirs(out_dir, exist_ok=True)
    X = _load_input(input_path, input_format, synthetic, center)
    A = covariance(X, scale_to_unit_rows=scale_rows)
    report = verify_theorem1(A, k, epsilon, n_trials=n_trials, seed=seed)
    write_json(os.path.join(out_dir, "bound_check.json"), report.to_dict())
    return report


def run_deflation(input_path=None, input_format=None, synthetic=None,
                  n_components=1, k=1, s=None, trials=32, epsilon=None,
                  normalization="svd", scale_rows=True, center=False,
                  seed=0, out_dir=".", tol=1e-8, max_iter=5000, restarts=8):
    """Extract several components; writes components.json and a CSV summary."""
    os.makedirs(out_dir, exist_ok=True)
    X = _load_input(input_path, input_format, synthetic, center)
    cap = norm_cap_for(epsilon) if epsilon else np.inf
    plan = RoundingPlan(s=s or k, trials=trials, seed=seed, norm_cap=cap)
    cfg = SolverConfig(max_iter=max_iter, tol=tol, restarts=restarts,
                       seed=seed)
    cs = compute_k_components(X, n_components, k, plan, cfg,
                              mode=normalization, scale_rows=scale_rows)

    def _pack(d):
        if d is None:
            return None
        return {"n": d.n, "indices": d.indices.tolist(),
                "values": d.values.tolist(), "degenerate": d.degenerate}

    payload = {
        "requested": cs.requested,
        "extracted": len(cs.V),
        "truncated": cs.truncated,
        "V": [_pack(v) for v in cs.V],
        "U": [_pack(u) for u in cs.U],
        "reports": [
            {"component": i + 1, "nnz": r.nnz, "f_value": r.f_value,
             "sparsity_ratio": r.sparsity_ratio,
             "captured_variance_pct": r.captured_variance_pct}
            for i, r in enumerate(cs.reports)
        ],
    }
    write_json(os.path.join(out_dir, "components.json"), payload)
    path = os.path.join(out_dir, "components.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("component,nnz,f_value,captured_variance_pct\n")
        for row in payload["reports"]:
            fh.write("%d,%d,%.17g,%.17g\n" % (
                row["component"], row["nnz"], row["f_value"],
                row["captured_variance_pct"]))
    return cs
