"""Dense matrix and vector kernels shared by every other module.

Covariance formation, column centering, and the top singular pair of a
symmetric positive semidefinite matrix via power iteration. Everything here
is deterministic given the seed and safe to share across threads.
"""

import numpy as np

__all__ = [
    "ConvergenceError",
    "Covariance",
    "SingularPair",
    "center_columns",
    "covariance",
    "top_singular_pair",
]


class ConvergenceError(RuntimeError):
    """Power iteration failed to converge within max_iter.

    Carries the last iterate and residual so callers can degrade gracefully.
    """

    def __init__(self, message, value=None, vector=None, residual=None):
        super().__init__(message)
        self.value = value
        self.vector = vector
        self.residual = residual


class SingularPair:
    """Top singular value/vector pair of a symmetric PSD matrix.

    Attributes
    ----------
    value : float
        Top singular value (equals the top eigenvalue for PSD input).
    vector : ndarray
        Unit l2 vector, sign-normalized so its largest-magnitude entry is
        positive (ties broken by lowest index).
    iterations : int
        Power iteration steps performed.
    """

    def __init__(self, value, vector, iterations):
        self.value = float(value)
        self.vector = vector
        self.iterations = int(iterations)

    def __iter__(self):
        return iter((self.value, self.vector))


class Covariance:
    """Symmetric PSD matrix A = X^T X with optional unit-row scaling.

    Attributes
    ----------
    matrix : ndarray
        Dense symmetric n x n array.
    max_row_norm : float
        Largest row l2 norm of the unscaled matrix; when ``scaled`` this is
        the factor the matrix was divided by.
    scaled : bool
        Whether the stored matrix was divided by max_row_norm.
    """

    def __init__(self, matrix, max_row_norm, scaled):
        self.matrix = matrix
        self.max_row_norm = float(max_row_norm)
        self.scaled = bool(scaled)
        self._spectral_norm = None

    @property
    def n(self):
        return self.matrix.shape[0]

    def spectral_norm(self):
        """Cached ||A||_2, computed with the same power-iteration kernel."""
        if self._spectral_norm is None:
            if not np.any(self.matrix):
                self._spectral_norm = 0.0
            else:
                pair = top_singular_pair(
                    self, tol=1e-12, max_iter=50000, seed=0
                )
                self._spectral_norm = pair.value
        return self._spectral_norm


def _require_finite(X, name):
    if not np.all(np.isfinite(X)):
        raise ValueError("%s contains non-finite entries" % name)


def center_columns(X):
    """Subtract the column means so every column of the result sums to zero.

    Parameters
    ----------
    X : ndarray, shape (m, n)
        Object-by-feature data matrix.

    Returns
    -------
    ndarray
        Centered copy of X, same shape.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError("X must be a 2-d matrix with m >= 1, n >= 1")
    _require_finite(X, "X")
    return X - X.mean(axis=0, keepdims=True)


def covariance(X, scale_to_unit_rows=True):
    """Form A = X^T X, optionally scaled so every row has l2 norm <= 1.

    Parameters
    ----------
    X : ndarray, shape (m, n)
        Data matrix. Centering, when wanted, is the caller's responsibility.
    scale_to_unit_rows : bool
        Divide A by its largest row l2 norm. Scaling leaves the quality
        metric f and every argmax decision unchanged; the factor is recorded
        on the result.

    Returns
    -------
    Covariance
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError("X must be a 2-d matrix with m >= 1, n >= 1")
    _require_finite(X, "X")
    A = X.T @ X
    A = 0.5 * (A + A.T)  # exact symmetry regardless of BLAS rounding
    row_norms = np.linalg.norm(A, axis=1)
    max_row_norm = float(row_norms.max()) if A.size else 0.0
    scaled = bool(scale_to_unit_rows) and max_row_norm > 0.0
    if scaled:
        A = A / max_row_norm
    return Covariance(A, max_row_norm, scaled)


def _sign_normalize(v):
    # largest-magnitude entry positive; np.argmax takes the lowest index on ties
    idx = int(np.argmax(np.abs(v)))
    if v[idx] < 0:
        v = -v
    return v


def top_singular_pair(A, tol=1e-9, max_iter=10000, seed=0):
    """Top singular pair of a symmetric PSD matrix by power iteration.

    Parameters
    ----------
    A : Covariance or ndarray
        Symmetric matrix.
    tol : float
        Relative residual tolerance: stop when ||Av - lambda v|| <= tol*lambda.
    max_iter : int
        Iteration cap.
    seed : int
        Seed for the random start vector.

    Returns
    -------
    SingularPair

    Raises
    ------
    ConvergenceError
        If the residual test is not met within max_iter; the error carries
        the last iterate and residual.
    """
    M = A.matrix if isinstance(A, Covariance) else np.asarray(A, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError("A must be a square matrix with n >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = M.shape[0]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = 0.0
    residual = np.inf
    for it in range(1, max_iter + 1):
        w = M @ v
        lam = float(v @ w)
        residual = float(np.linalg.norm(w - lam * v))
        if residual <= tol * abs(lam) or residual == 0.0:
            return SingularPair(max(lam, 0.0), _sign_normalize(v), it)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # v is in the null space; the quotient is exactly 0
            return SingularPair(0.0, _sign_normalize(v), it)
        v = w / nw
    raise ConvergenceError(
        "power iteration did not reach tol=%g in %d iterations "
        "(residual %g)" % (tol, max_iter, residual),
        value=max(lam, 0.0),
        vector=_sign_normalize(v),
        residual=residual,
    )
