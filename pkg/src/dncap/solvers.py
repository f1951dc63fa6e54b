"""Numeric kernels: monotone bisection and nonnegative power iteration."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

BISECT_TOL = 1e-12
BISECT_MAX_ITER = 200
POWER_TOL = 1e-14
POWER_MAX_ITER = 10000


@dataclass(frozen=True)
class RootResult:
    root: float
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    residual: float
    iterations: int


def bisect_decreasing(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    target: float = 1.0,
    tol: float = BISECT_TOL,
    max_iter: int = BISECT_MAX_ITER,
) -> RootResult:
    """Solve f(s) = target for a strictly decreasing f on [lo, inf).

    ``hi`` is doubled until f(hi) drops below the target, so the initial
    upper bound only needs to be eventually valid.  Returns the bracket
    midpoint once the bracket is narrower than ``tol`` (absolute).
    """
    f_lo = f(lo)
    if f_lo < target:
        raise ValueError(
            f"f(lo)={f_lo} already below target {target}; no root in [lo, inf)"
        )
    if f_lo == target:
        return RootResult(lo, lo, lo, f_lo, f_lo, 0.0, 0)
    if hi <= lo:
        hi = lo + 1.0
    f_hi = f(hi)
    expansions = 0
    while f_hi > target:
        lo, f_lo = hi, f_hi
        hi = 2.0 * hi if hi > 0 else 1.0
        f_hi = f(hi)
        expansions += 1
        if expansions > 200:
            raise ValueError("could not bracket the root by doubling hi")
    iterations = 0
    while hi - lo > tol and iterations < max_iter:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid > target:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        iterations += 1
    root = 0.5 * (lo + hi)
    return RootResult(
        root, lo, hi, f_lo, f_hi, abs(f(root) - target), iterations,
    )


def power_iteration(
    matrix: np.ndarray,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
) -> tuple[float, np.ndarray, int]:
    """Dominant eigenvalue and eigenvector of a nonnegative square matrix.

    Starts from the uniform positive vector and tracks the Rayleigh-style
    ratio sum(Ax)/sum(x) under 1-norm normalization; stops when successive
    ratios differ by less than ``tol`` relatively.  Convergence is only
    guaranteed for matrices whose dominant eigenvalue is strictly larger in
    modulus than the rest (e.g. after a +I shift of a nonnegative matrix);
    see ``spectral_radius_nonneg`` for the shifted wrapper.
    """
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return float(matrix[0, 0]), np.ones(1), 1
    x = np.full(n, 1.0 / n)
    ratio = 0.0
    for iteration in range(1, max_iter + 1):
        y = matrix @ x
        total = float(y.sum())
        if total == 0.0:
            return 0.0, x, iteration
        new_ratio = total  # sum(x) == 1
        new_x = y / total
        # The ratio alone can stabilize immediately (constant row sums make
        # it exact from step one), so require the vector to settle as well.
        settled = (
            abs(new_ratio - ratio) <= tol * max(1.0, abs(new_ratio))
            and float(np.abs(new_x - x).max()) <= 10.0 * tol
        )
        x = new_x
        if settled:
            return new_ratio, x, iteration
        ratio = new_ratio
    return ratio, x, max_iter


def spectral_radius_nonneg(
    matrix: np.ndarray,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
) -> tuple[float, np.ndarray, int]:
    """Perron root and vector of a nonnegative matrix via a shifted iteration.

    Power iteration runs on matrix + I: the shift adds exactly 1 to the
    Perron root of a nonnegative matrix and makes the iteration converge
    even on periodic (imprimitive) transition structures, without any
    cycle-structure analysis.
    """
    matrix = np.asarray(matrix, dtype=float)
    if (matrix < 0).any():
        raise ValueError("matrix must be elementwise nonnegative")
    shifted = matrix + np.eye(matrix.shape[0])
    rho_shifted, vector, iterations = power_iteration(shifted, tol, max_iter)
    return rho_shifted - 1.0, vector, iterations
