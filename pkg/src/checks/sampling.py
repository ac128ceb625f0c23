"""
Seeded random samples for the invariant suites and tests.
"""

import numpy as np

from manin.groups import Mat2C, SU2Element, Su2Vector
from models.minkowski import MinkCotangentPoint, MinkowskiModel, MinkParams, MinkPhasePoint
from models.plane import PlaneCotangentPoint, PlanePhasePoint

MIN_DET = 0.25


def complex_normal(rng, size=None):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_sl2c(rng):
    """Gaussian complex matrix rescaled to determinant one; resampled while |det| < 0.25."""
    while True:
        entries = complex_normal(rng, 4)
        m = Mat2C(*entries)
        det = m.det()
        if abs(det) >= MIN_DET:
            return m.scale(1.0 / np.sqrt(det))


def random_su2(rng):
    """Uniform (Haar) SU(2) element from a normalized Gaussian column."""
    column = complex_normal(rng, 2)
    u, v = column / np.linalg.norm(column)
    return SU2Element.from_column(u, v)


def random_su2_vector(rng, scale=1.0):
    return Su2Vector.from_array(scale * rng.standard_normal(3))


def random_complex(rng, low, high):
    """Complex number with uniform phase and modulus in [low, high]."""
    return rng.uniform(low, high) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))


def random_plane_point(rng, x_range=(0.2, 1.5), eta_range=(0.1, 2.0)):
    return PlanePhasePoint(random_complex(rng, *x_range), random_complex(rng, *eta_range))


def random_plane_cotangent(rng, q_range=(0.2, 1.0), p_range=(0.1, 1.0)):
    return PlaneCotangentPoint(random_complex(rng, *q_range), random_complex(rng, *p_range))


def random_mink_point(rng, epsilon, scale=1.0):
    """Admissible Minkowski phase point, by rejection."""
    model = MinkowskiModel(MinkParams(epsilon))
    while True:
        point = MinkPhasePoint.from_array(rng.uniform(-scale, scale, 4))
        if min(model.admissibility_factors(point)) > 0.05:
            return point


def random_mink_cotangent(rng, scale=1.0):
    return MinkCotangentPoint.from_array(rng.uniform(-scale, scale, 4))
