"""Synthetic data with a planted sparse top component.

X = U Sigma V^T + E where U and Vtilde are column-normalized Sylvester
Hadamard matrices, V = G_n(theta) Vtilde applies n/4 disjoint plane
rotations to bottom-half row pairs of Vtilde, the spectrum is (sigma_1,
e^-2, ..., e^-m), and E is i.i.d. Gaussian noise. The rotations turn the
flat +-1/sqrt(n) Hadamard columns into a three-level magnitude profile:
per column, a quarter of the entries become large (cos + sin)/sqrt(n), a
quarter nearly vanish at |cos - sin|/sqrt(n), and the untouched top half
stays at 1/sqrt(n). Heuristics that chase the largest entries of the top
singular vector face maximal ties on this family.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import hadamard

__all__ = [
    "SyntheticData",
    "SyntheticSpec",
    "generate",
    "givens_composition",
    "hadamard_orthonormal",
]


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


@dataclass
class SyntheticSpec:
    """Generator parameters; sigma_i = e^-i for i >= 2 is implied."""

    m: int
    n: int
    theta: float
    sigma1: float = 100.0
    noise_std: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if not _is_power_of_two(self.m) or not _is_power_of_two(self.n):
            raise ValueError("m and n must be powers of two")
        if self.n % 4 != 0:
            raise ValueError("n must be divisible by 4")
        if not 0.0 < self.theta < np.pi / 2:
            raise ValueError("theta must lie in (0, pi/2)")
        if self.sigma1 <= 0:
            raise ValueError("sigma1 must be positive")
        if self.noise_std < 0:
            raise ValueError("noise_std must be nonnegative")


@dataclass
class SyntheticData:
    """Generated matrix plus the ground truth needed by recovery tests."""

    X: np.ndarray
    V: np.ndarray
    sigma: np.ndarray
    spec: SyntheticSpec


def hadamard_orthonormal(n):
    """Sylvester Hadamard matrix divided by sqrt(n); columns orthonormal.

    Parameters
    ----------
    n : int
        Power of two.

    Returns
    -------
    ndarray, shape (n, n)
        Entries are +-1/sqrt(n) and H^T H = I.
    """
    if not _is_power_of_two(n):
        raise ValueError("n must be a power of two")
    return hadamard(n).astype(np.float64) / np.sqrt(n)


def _rotation_pairs(n):
    # 1-based pairs (n/2 + 2k - 1, n/2 + 2k) for k = 1..n/4, as 0-based rows
    ii = np.arange(n // 2, n, 2)
    return ii, ii + 1


def givens_composition(n, theta):
    """Product of n/4 disjoint plane rotations on bottom-half index pairs.

    Each rotation acts on rows (i, j) = (n/2 + 2k - 1, n/2 + 2k) (1-based)
    with the sign pattern (i,i) = cos, (i,j) = -sin, (j,i) = sin,
    (j,j) = cos. The pairs are disjoint, so the composition order is
    irrelevant and the product is orthogonal.

    Parameters
    ----------
    n : int
        Divisible by 4.
    theta : float
        Rotation angle in radians.

    Returns
    -------
    ndarray, shape (n, n)
    """
    if n % 4 != 0:
        raise ValueError("n must be divisible by 4")
    c, s = np.cos(theta), np.sin(theta)
    G = np.eye(n)
    ii, jj = _rotation_pairs(n)
    G[ii, ii] = c
    G[ii, jj] = -s
    G[jj, ii] = s
    G[jj, jj] = c
    return G


def _apply_givens_rows(M, theta):
    # row-pair mixing equal to givens_composition(n, theta) @ M without
    # materializing the n x n rotation matrix
    c, s = np.cos(theta), np.sin(theta)
    ii, jj = _rotation_pairs(M.shape[0])
    out = M.copy()
    out[ii] = c * M[ii] - s * M[jj]
    out[jj] = s * M[ii] + c * M[jj]
    return out


def generate(spec):
    """Draw one synthetic data matrix with its ground truth.

    Parameters
    ----------
    spec : SyntheticSpec

    Returns
    -------
    SyntheticData
        X of shape (m, n), the rotated factor V (n x n), and the singular
        values (sigma_1, e^-2, ..., e^-m).
    """
    if not isinstance(spec, SyntheticSpec):
        raise TypeError("spec must be a SyntheticSpec")
    m, n = spec.m, spec.n
    if m > n:
        raise ValueError("m must not exceed n")
    U = hadamard_orthonormal(m)
    Vt = hadamard_orthonormal(n)
    V = _apply_givens_rows(Vt, spec.theta)
    sigma = np.empty(m)
    sigma[0] = spec.sigma1
    sigma[1:] = np.exp(-np.arange(2, m + 1, dtype=np.float64))
    X = (U * sigma) @ V[:, :m].T
    if spec.noise_std > 0:
        rng = np.random.default_rng(spec.seed)
        X = X + rng.normal(0.0, spec.noise_std, size=(m, n))
    return SyntheticData(X, V, sigma, spec)
