"""
The Poisson plane: configuration space E(2)/H with {conj(x), x} = 2 i eps |x|^2.

Phase points are complex pairs (x, eta) with 1 - i eps conj(x) eta != 0.
Real coordinates are ordered (x1, x2, eta1, eta2) with x = x1 + i x2.

Commuting positions use complex cotangent coordinates (q, p) with
{p, conj(q)} = 2; in real coordinates this is {p_k, q^k} = 1, so that
the engine's dz/dt = {H, z} gives dq/dt = dH/dp.
"""

import logging
from dataclasses import dataclass

import numpy as np

from errors import InvalidParameterError, OutsidePhaseSpaceError, UndefinedIdentityError
from manin.factorization import factor_borel_e2
from manin.groups import BorelElement, Mat2C
from numerics import exprel, newton_solve, sinc, sinhc_slope

TOL_DECOMPOSABLE = 1e-10
TOL_DENOMINATOR = 1e-14
CIRCLE_STEPS = 2000
LARGE_RADIUS = 100.0


@dataclass(frozen=True)
class PlaneParams:
    epsilon: float


@dataclass(frozen=True)
class PlanePhasePoint:
    x: complex
    eta: complex

    def __post_init__(self):
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "eta", complex(self.eta))

    @classmethod
    def from_array(cls, values):
        v = np.asarray(values, dtype=float)
        return cls(complex(v[0], v[1]), complex(v[2], v[3]))

    def to_array(self):
        return np.array([self.x.real, self.x.imag, self.eta.real, self.eta.imag])


@dataclass(frozen=True)
class PlaneCotangentPoint:
    q: complex
    p: complex

    def __post_init__(self):
        object.__setattr__(self, "q", complex(self.q))
        object.__setattr__(self, "p", complex(self.p))

    @classmethod
    def from_array(cls, values):
        v = np.asarray(values, dtype=float)
        return cls(complex(v[0], v[1]), complex(v[2], v[3]))

    def to_array(self):
        return np.array([self.q.real, self.q.imag, self.p.real, self.p.imag])


@dataclass(frozen=True)
class DualElement:
    """
    Element of the dual group in (P, s) coordinates: rho = exp(eps s), n = i eps conj(P).

    P and s become the translational and rotational momenta as eps -> 0.
    """

    P: complex
    s: float

    def __post_init__(self):
        object.__setattr__(self, "P", complex(self.P))
        object.__setattr__(self, "s", float(self.s))

    def to_borel(self, epsilon):
        return BorelElement(np.exp(epsilon * self.s), 1j * epsilon * self.P.conjugate())

    @classmethod
    def from_borel(cls, b, epsilon):
        if epsilon == 0:
            raise InvalidParameterError("(P, s) coordinates need a non-zero epsilon")
        return cls(1j * b.n.conjugate() / epsilon, np.log(b.rho) / epsilon)


@dataclass(frozen=True)
class CircleParams:
    center: complex
    radius: float
    period: float

    @property
    def steps_per_period(self):
        """Default RK4 steps per revolution, doubled past LARGE_RADIUS."""
        return CIRCLE_STEPS if self.radius <= LARGE_RADIUS else 2 * CIRCLE_STEPS


@dataclass(frozen=True)
class PointTrajectory:
    """Rest: the trajectory is the single point `center`."""

    center: complex


class PlaneModel:
    """
    Deformed free particle on the Poisson plane.
    Free trajectories are circles of radius 1/(eps |eta|) or points.
    """

    def __init__(self, params):
        """
        Initialize the model.

        Args:
            params (PlaneParams): deformation parameter
        """
        self.logger = logging.getLogger(__name__)
        self.params = params
        self.epsilon = float(params.epsilon)

    def _require_deformed(self, operation):
        if self.epsilon == 0:
            raise InvalidParameterError(f"{operation} needs a non-zero epsilon")

    def config_bracket(self, x):
        """Coefficient 2 eps |x|^2 in {conj(x), x} = 2 i eps |x|^2; {x1, x2} is half of it."""
        return 2.0 * self.epsilon * abs(x) ** 2

    def decomposability_factor(self, point):
        """1 - i eps conj(x) eta."""
        return 1.0 - 1j * self.epsilon * point.x.conjugate() * point.eta

    def is_admissible(self, point):
        return abs(self.decomposability_factor(point)) >= TOL_DECOMPOSABLE

    def _checked_factor(self, point):
        factor = self.decomposability_factor(point)
        if abs(factor) < TOL_DECOMPOSABLE:
            raise OutsidePhaseSpaceError(f"Point {point} is outside the phase space (|1 - i eps x* eta| = {abs(factor):.3e})")
        return factor

    def phase_brackets(self, point):
        """
        Poisson tensor in real coordinates (x1, x2, eta1, eta2).

        Built from {eta, x} = -2 i eps eta x and {eta, conj(x)} = 2(1 - i eps conj(x) eta).

        Args:
            point (PlanePhasePoint): phase point

        Returns:
            numpy.ndarray: 4x4 antisymmetric matrix
        """
        eps = self.epsilon
        x, eta = point.x, point.eta
        a = -2j * eps * eta * x
        b = 2.0 * self.decomposability_factor(point)
        pi = np.zeros((4, 4))
        pi[0, 1] = eps * abs(x) ** 2
        pi[2, 3] = -eps * abs(eta) ** 2
        pi[2, 0] = (a + b).real / 2.0
        pi[3, 0] = (a + b).imag / 2.0
        pi[2, 1] = (a - b).imag / 2.0
        pi[3, 1] = (b - a).real / 2.0
        return pi - pi.T

    def projections(self, point):
        """
        Groupoid projections (left, right) = (x, x / (1 - i eps conj(x) eta)).

        Args:
            point (PlanePhasePoint): admissible phase point

        Returns:
            tuple: (left, right) complex positions
        """
        factor = self._checked_factor(point)
        return point.x, point.x / factor

    def _phase_matrix(self, point):
        """[[1, 0], [x, 1]] @ [[1, i eps conj(eta)], [0, 1]]."""
        n = 1j * self.epsilon * point.eta.conjugate()
        return Mat2C(1.0, n, point.x, 1.0 + point.x * n)

    def right_projection_via_factorization(self, point):
        """Right projection read from the E(2) factor of the phase matrix written as u @ l."""
        _, l = factor_borel_e2(self._phase_matrix(point))
        return l.plane_coordinate

    def moment(self, point):
        """
        Moment map J(x, eta) = (eta |C|/C, -(1/eps) log|C|), C = 1 - i eps conj(x) eta.

        Args:
            point (PlanePhasePoint): admissible phase point

        Returns:
            DualElement: (P, s)
        """
        factor = self._checked_factor(point)
        P = point.eta * abs(factor) / factor
        if self.epsilon == 0:
            s = -(point.x.conjugate() * point.eta).imag
        else:
            s = -np.log(abs(factor)) / self.epsilon
        return DualElement(P, s)

    def moment_via_factorization(self, point):
        """Moment map read from the Borel factor of the phase matrix written as u @ l."""
        self._require_deformed("The matrix route to the moment map")
        u, _ = factor_borel_e2(self._phase_matrix(point))
        return DualElement.from_borel(u, self.epsilon)

    @staticmethod
    def hamiltonian(eta):
        return 0.5 * abs(eta) ** 2

    def eom_rhs(self, point):
        """(dx/dt, deta/dt) = (eta, -i eps |eta|^2 eta)."""
        eta = point.eta
        return eta, -1j * self.epsilon * abs(eta) ** 2 * eta

    def exact_trajectory(self, p0, t):
        """
        Exact flow: eta rotates at angular rate eps |eta0|^2 and x traces the matching circle.

        Args:
            p0 (PlanePhasePoint): initial point
            t (float): time

        Returns:
            PlanePhasePoint: the point at time t
        """
        w = -1j * self.epsilon * abs(p0.eta) ** 2 * t
        return PlanePhasePoint(p0.x + p0.eta * t * exprel(w), p0.eta * np.exp(w))

    def circle_params(self, p0):
        """
        Centre, radius and period of the circle traced from p0.

        Args:
            p0 (PlanePhasePoint): initial point

        Returns:
            CircleParams | PointTrajectory: the circle, or the rest point when eta0 = 0
        """
        if p0.eta == 0:
            return PointTrajectory(p0.x)
        self._require_deformed("Circle parameters")
        speed2 = abs(p0.eta) ** 2
        center = p0.x - 1j * p0.eta / (self.epsilon * speed2)
        radius = 1.0 / (abs(self.epsilon) * abs(p0.eta))
        period = 2.0 * np.pi / (abs(self.epsilon) * speed2)
        return CircleParams(center, radius, period)

    def qp_projections(self, c):
        """
        Groupoid projections in commuting coordinates: exp(-/+ i eps/2 conj(q) p) q.

        Args:
            c (PlaneCotangentPoint): cotangent point

        Returns:
            tuple: (left, right)
        """
        phase = 0.5j * self.epsilon * c.q.conjugate() * c.p
        return np.exp(-phase) * c.q, np.exp(phase) * c.q

    def effective_momentum(self, c):
        """
        Effective momentum P = sin(eps/2 conj(q) p)/(eps/2 conj(q)) and rotational part -Im conj(q) p.

        Args:
            c (PlaneCotangentPoint): cotangent point

        Returns:
            tuple: (P, J_s)
        """
        z = c.q.conjugate() * c.p
        P = complex(c.p * sinc(0.5 * self.epsilon * z))
        return P, -z.imag

    def qp_hamiltonian(self, c):
        P, _ = self.effective_momentum(c)
        return 0.5 * abs(P) ** 2

    def qp_hamiltonian_gradient(self, c):
        """Gradient of H = |P|^2/2 with respect to (q1, q2, p1, p2)."""
        half = 0.5 * self.epsilon
        qbar = c.q.conjugate()
        w = half * qbar * c.p
        P, _ = self.effective_momentum(c)
        dP_dqbar = -half * half * qbar * c.p ** 3 * sinhc_slope(1j * w)
        dP_dp = np.cos(w)
        grad_q = P.conjugate() * dP_dqbar
        grad_p = P * np.conj(dP_dp)
        return np.array([grad_q.real, grad_q.imag, grad_p.real, grad_p.imag])

    def qp_trajectory(self, c0, t):
        """
        Commuting position q(t) = q0 sin(eps/2 (z0* + 2Et)) / sin(eps/2 z0*), z0 = conj(q0) p0.

        Args:
            c0 (PlaneCotangentPoint): initial cotangent point
            t (float): time

        Returns:
            complex: q(t)
        """
        half = 0.5 * self.epsilon
        energy = self.qp_hamiltonian(c0)
        zbar0 = c0.q * c0.p.conjugate()
        zbar = zbar0 + 2.0 * energy * t
        denominator = zbar0 * sinc(half * zbar0)
        if abs(denominator) < TOL_DENOMINATOR:
            raise UndefinedIdentityError("sin(eps/2 q0 conj(p0)) vanishes; the commuting-position formula is undefined")
        return complex(c0.q * zbar * sinc(half * zbar) / denominator)

    def qp_exact_flow(self, c0, t):
        """Cotangent point at time t: conj(q) p advances by 2Et and p = (conj(q) p) / conj(q)."""
        energy = self.qp_hamiltonian(c0)
        z = c0.q.conjugate() * c0.p + 2.0 * energy * t
        q = self.qp_trajectory(c0, t)
        return PlaneCotangentPoint(q, z / q.conjugate())

    def qp_curve(self, c0, times):
        return np.array([self.qp_trajectory(c0, t) for t in times], dtype=complex)

    def qp_period_sign(self, c0):
        """
        Measured sign of q(T)/q0 after one energy period T = 2 pi / (eps |P|^2).

        Args:
            c0 (PlaneCotangentPoint): initial cotangent point

        Returns:
            float: +1.0 or -1.0
        """
        self._require_deformed("The energy period")
        energy = self.qp_hamiltonian(c0)
        if energy == 0:
            raise UndefinedIdentityError("A point at rest has no period")
        period = 2.0 * np.pi / (abs(self.epsilon) * 2.0 * energy)
        ratio = self.qp_trajectory(c0, period) / c0.q
        return float(np.sign(ratio.real))

    def hamiltonian_identity(self, xiL, xiR):
        """
        |1/xi_L - 1/xi_R|^2 / (2 eps^2), equal to the Hamiltonian |eta|^2/2.

        Args:
            xiL (complex): left projection
            xiR (complex): right projection

        Returns:
            float: the identity's value
        """
        self._require_deformed("The Hamiltonian identity")
        if xiL == 0 or xiR == 0:
            raise UndefinedIdentityError("The Hamiltonian identity is undefined at a zero projection")
        return abs(1.0 / xiL - 1.0 / xiR) ** 2 / (2.0 * self.epsilon ** 2)

    def convert(self, c):
        """
        Phase point with the same groupoid projections as the cotangent point.

        x is the left projection and 1 - i eps conj(x) eta = exp(-i eps conj(q) p).

        Args:
            c (PlaneCotangentPoint): cotangent point

        Returns:
            PlanePhasePoint: the corresponding phase point
        """
        eps = self.epsilon
        z = c.q.conjugate() * c.p
        x = np.exp(-0.5j * eps * z) * c.q
        eta = c.p * exprel(-1j * eps * z) * np.exp(-0.5j * eps * z.conjugate())
        return PlanePhasePoint(complex(x), complex(eta))

    def invert(self, point, tol=1e-12, max_iter=100):
        """
        Cotangent point mapped to the given phase point, by damped Newton iteration seeded at (q, p) = (x, eta).

        Args:
            point (PlanePhasePoint): admissible phase point
            tol (float): convergence tolerance
            max_iter (int): iteration budget

        Returns:
            PlaneCotangentPoint: the preimage under convert
        """
        self._checked_factor(point)
        target = point.to_array()

        def forward(v):
            return self.convert(PlaneCotangentPoint.from_array(v)).to_array()

        solution = newton_solve(forward, target, target, tol=tol, max_iter=max_iter)
        return PlaneCotangentPoint.from_array(solution)
