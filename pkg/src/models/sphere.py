"""
The Poisson sphere S^2 = SU(2)/S^1 and its phase space SL(2,C) = SU(2) x Borel.

A phase point is xi = g b with g in SU(2) and b in the Borel group written
as (s, w): rho = exp(eps s), n = 2 eps w. The deformed free motion keeps b
fixed and moves g along a big circle g0 exp(t F(b)); its image under the
projection g -> Ad_g(J3) is a circle on S^2, never a great one unless at rest.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from errors import InvalidInputError, InvalidParameterError, TooFewSamplesError
from manin.factorization import factor_su2_borel
from manin.groups import E3_VECTOR, J3, TOL_GROUP, BorelElement, Mat2C, SU2Element, Su2Vector
from manin.su2 import adjoint, su2_exp, su2_metric
from numerics import sinhc

logger = logging.getLogger(__name__)

TOL_UNIT = 1e-12
TOL_POINT_SPREAD = 1e-9
TOL_GREAT = 1e-8
TOL_PERPENDICULAR = 1e-12
TOL_CONSTRAINT = 1e-12
MIN_CIRCLE_SAMPLES = 8


@dataclass(frozen=True)
class SphereParams:
    epsilon: float


@dataclass(frozen=True)
class DualSphereElement:
    """Borel element [[exp(eps s), 2 eps w], [0, exp(-eps s)]]."""

    s: float
    w: complex

    def __post_init__(self):
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "w", complex(self.w))

    def to_borel(self, epsilon):
        return BorelElement(np.exp(epsilon * self.s), 2.0 * epsilon * self.w)

    def matrix(self, epsilon):
        return self.to_borel(epsilon).matrix

    @classmethod
    def from_borel(cls, b, epsilon):
        if epsilon == 0:
            raise InvalidParameterError("(s, w) coordinates need a non-zero epsilon")
        return cls(np.log(b.rho) / epsilon, b.n / (2.0 * epsilon))


@dataclass(frozen=True)
class SpherePhasePoint:
    g: SU2Element
    b: DualSphereElement

    def xi(self, epsilon):
        """The phase-space matrix g b in SL(2,C)."""
        return self.g.matrix @ self.b.matrix(epsilon)

    @classmethod
    def from_matrix(cls, xi, epsilon):
        """
        Recover (g, b) from a determinant-one matrix by the SU(2) x Borel split.

        Args:
            xi (Mat2C): phase-space matrix
            epsilon (float): deformation parameter

        Returns:
            SpherePhasePoint: the factors of xi
        """
        k, b = factor_su2_borel(xi)
        return cls(k, DualSphereElement.from_borel(b, epsilon))


@dataclass(frozen=True)
class SpherePoint:
    n1: float
    n2: float
    n3: float

    def __post_init__(self):
        for name in ("n1", "n2", "n3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        defect = abs(self.n1 * self.n1 + self.n2 * self.n2 + self.n3 * self.n3 - 1.0)
        if defect > TOL_UNIT:
            raise InvalidInputError(f"Sphere point is not a unit vector (defect {defect:.3e})")

    def to_array(self):
        return np.array([self.n1, self.n2, self.n3])


class CircleKind(str, Enum):
    POINT = "point"
    GREAT_CIRCLE = "great_circle"
    SMALL_CIRCLE = "small_circle"


@dataclass(frozen=True)
class CircleReport:
    """
    Geometry of a circle on S^2: the plane axis . n = cos_polar cuts the sphere along it.

    The axis is oriented so that cos_polar >= 0. angular_speed is None when
    the samples carry no timing.
    """

    kind: CircleKind
    axis: Tuple[float, float, float]
    cos_polar: float
    angular_speed: Optional[float]
    fit_residual: float

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "axis": [float(a) for a in self.axis],
            "cos_polar": float(self.cos_polar),
            "angular_speed": None if self.angular_speed is None else float(self.angular_speed),
            "fit_residual": float(self.fit_residual),
        }


def project_matrix(m):
    """Unit vector of Ad_m(J3) for a (nearly) unitary 2x2 matrix, as a numpy array."""
    v = Su2Vector.from_matrix(m @ J3 @ m.dagger()).to_array()
    return v / np.linalg.norm(v)


def hopf_project(g):
    """
    Point Ad_g(J3) of S^2 in the orthonormal J basis; constant on right cosets of exp(t J3).

    Args:
        g (SU2Element): group element

    Returns:
        SpherePoint: the projected point
    """
    n = project_matrix(g.matrix)
    return SpherePoint(n[0], n[1], n[2])


def big_circle(g0, X, t):
    """g0 exp(t X), a translated one-parameter subgroup of SU(2)."""
    return g0 @ su2_exp(X.scale(t))


def perpendicularity_criterion(X):
    """True when X is metric-orthogonal to J3, i.e. its big circles project to great circles (or points)."""
    return bool(abs(su2_metric(X, E3_VECTOR)) <= TOL_PERPENDICULAR)


def _as_points(samples):
    rows = [s.to_array() if isinstance(s, SpherePoint) else np.asarray(s, dtype=float) for s in samples]
    return np.array(rows, dtype=float).reshape(-1, 3)


def _swept_angle_rate(points, axis, cos_polar, times):
    in_plane = points - cos_polar * axis
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    angles = np.unwrap(np.arctan2(in_plane @ e2, in_plane @ e1))
    elapsed = times[-1] - times[0]
    if elapsed <= 0:
        return None
    return float(abs(angles[-1] - angles[0]) / elapsed)


def classify_projected_circle(samples, times=None, tol_great=TOL_GREAT):
    """
    Fit a plane to points of S^2 and classify the circle it cuts.

    The normal is the smallest-eigenvalue eigenvector of the sample covariance.

    Args:
        samples (list): SpherePoint values (or 3-vectors), at least 8
        times (array-like): optional sample times, used for the angular speed
        tol_great (float): |cos_polar| below this is a great circle

    Returns:
        CircleReport: the fitted circle
    """
    points = _as_points(samples)
    if len(points) < MIN_CIRCLE_SAMPLES:
        raise TooFewSamplesError(f"Circle classification needs at least {MIN_CIRCLE_SAMPLES} samples, got {len(points)}")

    centroid = points.mean(axis=0)
    centered = points - centroid
    spread = float(np.max(np.linalg.norm(centered, axis=1)))
    if spread < TOL_POINT_SPREAD:
        axis = centroid / np.linalg.norm(centroid)
        return CircleReport(CircleKind.POINT, tuple(axis), 1.0, 0.0, spread)

    covariance = centered.T @ centered / len(points)
    _, vectors = np.linalg.eigh(covariance)
    axis = vectors[:, 0]
    cos_polar = float(np.mean(points @ axis))
    if cos_polar < 0:
        axis = -axis
        cos_polar = -cos_polar
    fit_residual = float(np.max(np.abs(points @ axis - cos_polar)))

    kind = CircleKind.GREAT_CIRCLE if abs(cos_polar) < tol_great else CircleKind.SMALL_CIRCLE
    angular_speed = None
    if times is not None:
        angular_speed = _swept_angle_rate(points, axis, cos_polar, np.asarray(times, dtype=float))
    return CircleReport(kind, tuple(axis), cos_polar, angular_speed, fit_residual)


class SphereModel:
    """
    Deformed free particle on the Poisson sphere.

    g^{-1} dg/dt = F(b) with b constant, F the deformed Legendre map.
    """

    def __init__(self, params):
        """
        Initialize the model.

        Args:
            params (SphereParams): deformation parameter
        """
        self.logger = logging.getLogger(__name__)
        self.params = params
        self.epsilon = float(params.epsilon)

    @staticmethod
    def classical_hamiltonian(J):
        """Free energy (k1^2 + k2^2 + k3^2)/2 of a body-frame momentum."""
        return 0.5 * su2_metric(J, J)

    @staticmethod
    def rest_energy_limit(w):
        """H~ on the constraint s = 0, exactly |w|^2/2."""
        return 0.5 * abs(w) ** 2

    def phase_matrix(self, point):
        return point.xi(self.epsilon)

    def rescaled_energy(self, xi):
        """
        H~ = (H - 1)/(4 eps^2) without the det check.

        For det xi = 1, tr(xi^+ xi) - 2 = |a - conj(d)|^2 + |b + conj(c)|^2,
        which keeps H~ accurate as eps -> 0.
        """
        if self.epsilon == 0:
            raise InvalidParameterError("The rescaled Hamiltonian needs a non-zero epsilon")
        excess = abs(xi.a - xi.d.conjugate()) ** 2 + abs(xi.b + xi.c.conjugate()) ** 2
        return excess / (8.0 * self.epsilon ** 2)

    def deformed_hamiltonian(self, xi):
        """
        Free Hamiltonian H = tr(xi^+ xi)/2 and its rescaling H~ = (H - 1)/(4 eps^2).

        Args:
            xi (Mat2C): determinant-one phase matrix

        Returns:
            tuple: (H, H~)
        """
        det_error = abs(xi.det() - 1.0)
        if det_error > TOL_GROUP:
            raise InvalidInputError(f"Phase matrix determinant differs from 1 by {det_error:.3e}")
        total = abs(xi.a) ** 2 + abs(xi.b) ** 2 + abs(xi.c) ** 2 + abs(xi.d) ** 2
        return 0.5 * total, self.rescaled_energy(xi)

    def legendre(self, b):
        """
        Deformed Legendre map F(b) in the J basis.

        k3 = (sinh(2 eps s)/(2 eps) + eps |w|^2)/2, k1 + i k2 = w exp(-eps s)/2.

        Args:
            b (DualSphereElement): dual-group momentum

        Returns:
            Su2Vector: body-frame velocity
        """
        eps = self.epsilon
        twisted = b.w * np.exp(-eps * b.s)
        k3 = 0.5 * (b.s * sinhc(2.0 * eps * b.s) + eps * abs(b.w) ** 2)
        return Su2Vector(0.5 * twisted.real, 0.5 * twisted.imag, k3)

    def phase_trajectory(self, p0, t):
        """The phase point at time t: g = g0 exp(t F(b0)), b unchanged."""
        velocity = self.legendre(p0.b)
        return SpherePhasePoint(big_circle(p0.g, velocity, t), p0.b)

    @staticmethod
    def constraint_check(b):
        """True on H°, where rho = 1 (s = 0)."""
        return bool(abs(b.s) <= TOL_CONSTRAINT)

    def circle_geometry(self, b, g0=None):
        """
        Analytic geometry of the projected trajectory.

        The image rotates about Ad_{g0} F(b) at angular speed 2|F(b)|; on s = 0
        the polar cosine is eps|w|/sqrt(1 + eps^2 |w|^2).

        Args:
            b (DualSphereElement): momentum, normally on s = 0
            g0 (SU2Element): initial group element (identity by default)

        Returns:
            CircleReport: analytic circle
        """
        if not self.constraint_check(b):
            self.logger.warning(f"Circle geometry requested off the constraint s = 0 (s = {b.s})")
        velocity = self.legendre(b)
        speed = velocity.norm()
        if speed == 0:
            n = hopf_project(g0) if g0 is not None else SpherePoint(0.0, 0.0, 1.0)
            return CircleReport(CircleKind.POINT, tuple(n.to_array()), 1.0, 0.0, 0.0)

        direction = velocity.scale(1.0 / speed)
        cos_polar = su2_metric(direction, E3_VECTOR)
        if cos_polar < 0:
            direction = -direction
            cos_polar = -cos_polar
        axis = adjoint(g0, direction) if g0 is not None else direction
        deformed_orbit = self.epsilon != 0 and b.w != 0
        kind = CircleKind.SMALL_CIRCLE if deformed_orbit or cos_polar >= TOL_GREAT else CircleKind.GREAT_CIRCLE
        return CircleReport(kind, tuple(axis.to_array()), float(cos_polar), 2.0 * speed, 0.0)

    def circle_period(self, b):
        """Period 2 pi / (2|F(b)|) of the projected circle, None at rest."""
        speed = self.legendre(b).norm()
        if speed == 0:
            return None
        return np.pi / speed
