"""
Value types of the bracket engine: models, integrator settings and trajectories.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional

import numpy as np

from errors import InvalidParameterError

ANTISYMMETRY_TOL = 1e-13


@dataclass(frozen=True)
class PoissonModel:
    """
    A Hamiltonian system on R^n given by its Poisson tensor.

    bracket_table(z)[i, j] = {z_i, z_j}. A model whose flow is not written
    through a bracket table (the sphere's matrix embedding) supplies
    vector_field instead and has no bracket_table.
    """

    name: str
    dimension: int
    bracket_table: Optional[Callable[[np.ndarray], np.ndarray]]
    hamiltonian: Callable[[np.ndarray], float]
    hamiltonian_gradient: Optional[Callable[[np.ndarray], np.ndarray]]
    exact_flow: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    monitors: Dict[str, Callable[[np.ndarray], float]] = field(default_factory=dict)
    admissible: Optional[Callable[[np.ndarray], bool]] = None
    vector_field: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def is_admissible(self, point):
        if self.admissible is None:
            return True
        return bool(self.admissible(point))


class Method(str, Enum):
    RK4 = "rk4"
    ADAPTIVE = "adaptive"
    EXACT = "exact"


class IntegrationStatus(str, Enum):
    COMPLETED = "completed"
    DOMAIN_EXIT = "domain_exit"


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float
    t_end: float
    adaptive_tol: float = 1e-10
    max_steps: int = 1_000_000

    def __post_init__(self):
        if not self.dt > 0:
            raise InvalidParameterError(f"dt must be positive, got {self.dt}")
        if not self.adaptive_tol > 0:
            raise InvalidParameterError(f"adaptive_tol must be positive, got {self.adaptive_tol}")
        if self.max_steps < 1:
            raise InvalidParameterError(f"max_steps must be at least 1, got {self.max_steps}")
        if self.t_end < 0:
            raise InvalidParameterError(f"t_end must be non-negative, got {self.t_end}")


@dataclass
class Trajectory:
    """Sampled solution; times strictly increase and every sequence has one entry per sample."""

    times: np.ndarray
    states: np.ndarray
    monitor_values: Dict[str, np.ndarray]
    method: Method
    status: IntegrationStatus = IntegrationStatus.COMPLETED

    def __len__(self):
        return len(self.times)

    @property
    def final_state(self):
        return self.states[-1]


@dataclass(frozen=True)
class ComparisonReport:
    """Numerical trajectory measured against the exact flow on the same time grid."""

    method: Method
    samples: int
    max_deviation: float
    monitor_drift: Dict[str, float]
    status: IntegrationStatus

    def to_dict(self):
        return {
            "method": self.method.value,
            "samples": self.samples,
            "max_deviation": float(self.max_deviation),
            "monitor_drift": {name: float(value) for name, value in self.monitor_drift.items()},
            "status": self.status.value,
        }


def evaluate_monitors(monitors, states):
    """Per-monitor arrays over a stack of states."""
    values: Dict[str, List[float]] = {name: [] for name in monitors}
    for state in states:
        for name, monitor in monitors.items():
            values[name].append(float(monitor(state)))
    return {name: np.array(series) for name, series in values.items()}
