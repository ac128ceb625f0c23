"""
Bracket-engine dynamics: dz_i/dt = {H, z_i} = sum_j pi_ji dH/dz_j, classic
RK4, step-doubling adaptive RK4, Jacobi-identity residuals and exact-flow
comparisons.
"""

import logging

import numpy as np

from engine.poisson_model import (
    ComparisonReport,
    IntegrationStatus,
    Method,
    Trajectory,
    evaluate_monitors,
)
from errors import MaxStepsExceededError, OutsidePhaseSpaceError, UnsupportedOperationError

logger = logging.getLogger(__name__)

SAFETY = 0.9
GROWTH_MIN = 0.2
GROWTH_MAX = 5.0
RICHARDSON = 15.0
GRID_SLACK = 1e-9


def hamiltonian_rhs(model, point):
    """
    Velocity {H, z} at a point.

    Args:
        model (PoissonModel): system
        point (numpy.ndarray): state vector

    Returns:
        numpy.ndarray: dz/dt
    """
    z = np.asarray(point, dtype=float)
    if model.vector_field is not None:
        return np.asarray(model.vector_field(z), dtype=float)
    return model.bracket_table(z).T @ model.hamiltonian_gradient(z)


def _rk4_step(model, y, h):
    k1 = hamiltonian_rhs(model, y)
    k2 = hamiltonian_rhs(model, y + 0.5 * h * k1)
    k3 = hamiltonian_rhs(model, y + 0.5 * h * k2)
    k4 = hamiltonian_rhs(model, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _valid(model, y):
    return bool(np.all(np.isfinite(y))) and model.is_admissible(y)


def fixed_grid(config):
    """Sample times 0, dt, 2dt, ..., t_end with the last step shortened to land on t_end."""
    if config.t_end == 0:
        return np.array([0.0])
    steps = max(int(np.ceil(config.t_end / config.dt - GRID_SLACK)), 1)
    times = np.arange(steps + 1, dtype=float) * config.dt
    times[-1] = config.t_end
    return times


def _finish(model, times, states, method, status):
    states = np.array(states)
    return Trajectory(
        times=np.array(times),
        states=states,
        monitor_values=evaluate_monitors(model.monitors, states),
        method=method,
        status=status,
    )


def _integrate_rk4(model, y0, config):
    grid = fixed_grid(config)
    if len(grid) - 1 > config.max_steps:
        raise MaxStepsExceededError(f"{len(grid) - 1} RK4 steps needed, max_steps is {config.max_steps}")

    times = [grid[0]]
    states = [y0]
    y = y0
    for k in range(1, len(grid)):
        candidate = _rk4_step(model, y, grid[k] - grid[k - 1])
        if not _valid(model, candidate):
            logger.warning(f"Model {model.name} left its phase space at t = {grid[k]:.6g}; stopping at t = {times[-1]:.6g}")
            return _finish(model, times, states, Method.RK4, IntegrationStatus.DOMAIN_EXIT)
        y = candidate
        times.append(grid[k])
        states.append(y)
    return _finish(model, times, states, Method.RK4, IntegrationStatus.COMPLETED)


def _integrate_adaptive(model, y0, config):
    times = [0.0]
    states = [y0]
    y = y0
    t = 0.0
    h = config.dt
    attempts = 0
    remaining_floor = GRID_SLACK * config.dt

    while config.t_end - t > remaining_floor:
        attempts += 1
        if attempts > config.max_steps:
            raise MaxStepsExceededError(f"Adaptive integration exceeded {config.max_steps} steps at t = {t:.6g}")

        last = h >= config.t_end - t
        if last:
            h = config.t_end - t
        full = _rk4_step(model, y, h)
        half = _rk4_step(model, _rk4_step(model, y, 0.5 * h), 0.5 * h)
        error = float(np.max(np.abs(half - full))) / RICHARDSON

        if error == 0.0:
            growth = GROWTH_MAX
        else:
            growth = min(GROWTH_MAX, max(GROWTH_MIN, SAFETY * (config.adaptive_tol / error) ** 0.2))

        if error <= config.adaptive_tol:
            if not _valid(model, half):
                logger.warning(f"Model {model.name} left its phase space after t = {t:.6g}")
                return _finish(model, times, states, Method.ADAPTIVE, IntegrationStatus.DOMAIN_EXIT)
            t = config.t_end if last else t + h
            y = half
            times.append(t)
            states.append(y)
            logger.debug(f"Accepted step h = {h:.3e} at t = {t:.6g} (error {error:.3e})")
        h *= growth

    return _finish(model, times, states, Method.ADAPTIVE, IntegrationStatus.COMPLETED)


def _integrate_exact(model, y0, config):
    if model.exact_flow is None:
        raise UnsupportedOperationError(f"Model {model.name} has no exact flow")
    grid = fixed_grid(config)
    states = [np.asarray(model.exact_flow(y0, t), dtype=float) for t in grid]
    return _finish(model, grid, states, Method.EXACT, IntegrationStatus.COMPLETED)


def integrate(model, point0, config, method=Method.RK4):
    """
    Integrate a model from point0 to config.t_end.

    Leaving the admissible set ends the run with status DOMAIN_EXIT and the
    last valid state as the final sample.

    Args:
        model (PoissonModel): system
        point0 (array-like): initial state, admissible
        config (IntegratorConfig): step, horizon and tolerances
        method (Method | str): rk4, adaptive or exact

    Returns:
        Trajectory: the sampled solution
    """
    method = Method(method)
    y0 = np.array(point0, dtype=float)
    if not _valid(model, y0):
        raise OutsidePhaseSpaceError(f"Initial point {y0} is outside the phase space of {model.name}")

    logger.debug(f"Integrating {model.name} with {method.value} to t = {config.t_end} (dt = {config.dt})")
    if method is Method.RK4:
        return _integrate_rk4(model, y0, config)
    if method is Method.ADAPTIVE:
        return _integrate_adaptive(model, y0, config)
    return _integrate_exact(model, y0, config)


def jacobi_residual(model, point, fd_step=1e-5):
    """
    Largest cyclic sum {z_i, {z_j, z_k}} + cyclic over all index triples.

    sum_l pi_il d_l pi_jk with the derivatives taken by central differences.

    Args:
        model (PoissonModel): system with a bracket table
        point (array-like): where to evaluate
        fd_step (float): finite-difference step

    Returns:
        float: max absolute Jacobiator entry
    """
    if model.bracket_table is None:
        raise UnsupportedOperationError(f"Model {model.name} has no bracket table")
    z = np.asarray(point, dtype=float)
    n = z.size
    pi = model.bracket_table(z)

    derivative = np.empty((n, n, n))
    for l in range(n):
        step = np.zeros(n)
        step[l] = fd_step
        derivative[l] = (model.bracket_table(z + step) - model.bracket_table(z - step)) / (2.0 * fd_step)

    partial = np.einsum("il,ljk->ijk", pi, derivative)
    cyclic = partial + np.einsum("jki->ijk", partial) + np.einsum("kij->ijk", partial)
    return float(np.max(np.abs(cyclic)))


def compare_exact(model, point0, config, method=Method.RK4):
    """
    Integrate numerically and measure against the exact flow on the same time grid.

    Args:
        model (PoissonModel): system with an exact flow
        point0 (array-like): initial state
        config (IntegratorConfig): integration settings
        method (Method | str): numerical method to compare

    Returns:
        ComparisonReport: max state deviation and monitor drifts
    """
    if model.exact_flow is None:
        raise UnsupportedOperationError(f"Model {model.name} has no exact flow to compare against")

    trajectory = integrate(model, point0, config, method)
    y0 = trajectory.states[0]
    exact = np.array([model.exact_flow(y0, t) for t in trajectory.times])
    max_deviation = float(np.max(np.abs(trajectory.states - exact)))

    drift = {}
    for name, values in trajectory.monitor_values.items():
        drift[name] = float(np.max(np.abs(values - values[0])))

    return ComparisonReport(Method(method), len(trajectory), max_deviation, drift, trajectory.status)
