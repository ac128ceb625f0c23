"""
Removable-singularity helpers and the damped Newton solver shared by the models.

The quotient helpers accept real or complex scalars and switch to a four-term
Taylor series below their threshold, where the direct quotient loses digits.
"""

import logging

import numpy as np

from errors import NoConvergenceError

logger = logging.getLogger(__name__)

SERIES_THRESHOLD = 1e-4
SLOPE_SERIES_THRESHOLD = 1e-2


def exprel(z):
    """(e^z - 1)/z, equal to 1 at z = 0."""
    if abs(z) < SERIES_THRESHOLD:
        return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    return np.expm1(z) / z


def sinhc(z):
    """sinh(z)/z, equal to 1 at z = 0."""
    if abs(z) < SERIES_THRESHOLD:
        z2 = z * z
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0
    return np.sinh(z) / z


def sinc(z):
    """sin(z)/z (unnormalized), equal to 1 at z = 0."""
    if abs(z) < SERIES_THRESHOLD:
        z2 = z * z
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0
    return np.sin(z) / z


def sinhc_slope(z):
    """(cosh(z) - sinh(z)/z)/z^2, the derivative of sinhc divided by z; 1/3 at z = 0."""
    if abs(z) < SLOPE_SERIES_THRESHOLD:
        z2 = z * z
        return 1.0 / 3.0 + z2 / 30.0 + z2 * z2 / 840.0 + z2 * z2 * z2 / 45360.0
    return (np.cosh(z) - np.sinh(z) / z) / (z * z)


def newton_solve(func, target, seed, tol=1e-12, max_iter=100, fd_step=1e-7):
    """
    Solve func(v) = target by damped Newton iteration with a central-difference Jacobian.

    Args:
        func (callable): map from a real vector to a real vector of the same size
        target (array-like): right-hand side
        seed (array-like): starting point
        tol (float): convergence tolerance on the max-norm residual, scaled by 1 + |target|
        max_iter (int): iteration budget
        fd_step (float): relative finite-difference step for the Jacobian

    Returns:
        numpy.ndarray: the solution
    """
    target = np.asarray(target, dtype=float)
    v = np.array(seed, dtype=float)
    threshold = tol * (1.0 + np.max(np.abs(target)))
    residual = func(v) - target
    size = v.size

    for iteration in range(max_iter):
        error = np.max(np.abs(residual))
        if error <= threshold:
            logger.debug(f"Newton converged after {iteration} iterations (residual {error:.3e})")
            return v

        jacobian = np.empty((size, size))
        for j in range(size):
            h = fd_step * max(1.0, abs(v[j]))
            step = np.zeros(size)
            step[j] = h
            jacobian[:, j] = (func(v + step) - func(v - step)) / (2.0 * h)

        try:
            delta = np.linalg.solve(jacobian, -residual)
        except np.linalg.LinAlgError as e:
            raise NoConvergenceError(f"Singular Jacobian at Newton iteration {iteration}: {str(e)}") from e
        damping = 1.0
        for _ in range(30):
            candidate = v + damping * delta
            candidate_residual = func(candidate) - target
            if np.all(np.isfinite(candidate_residual)) and np.max(np.abs(candidate_residual)) < error:
                break
            damping *= 0.5
        v = candidate
        residual = candidate_residual

    error = np.max(np.abs(residual))
    if error <= threshold:
        return v
    raise NoConvergenceError(f"Newton iteration did not converge in {max_iter} steps (residual {error:.3e})")
