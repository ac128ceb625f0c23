"""
Two-dimensional Minkowski space-time with the deformed light-cone Poisson structure.

Phase points are (x+, x-, eta+, eta-) in light-cone coordinates; the
admissible component is 1 + eps*eta-*x- > 0 and 1 - eps*eta+*x+ > 0.
The commuting-coordinate picture uses canonical (q+, q-, p+, p-) with
{p_k, q^k} = 1.
"""

import logging
from dataclasses import dataclass

import numpy as np

from errors import InvalidParameterError, OutsidePhaseSpaceError
from numerics import exprel, newton_solve, sinhc, sinhc_slope

MASS_SHELL_TOL = 1e-10


@dataclass(frozen=True)
class MinkParams:
    epsilon: float
    m: float = 1.0

    def __post_init__(self):
        if not self.m > 0.0:
            raise InvalidParameterError(f"Mass must be positive, got {self.m}")


@dataclass(frozen=True)
class MinkPhasePoint:
    xplus: float
    xminus: float
    etaplus: float
    etaminus: float

    @classmethod
    def from_array(cls, values):
        v = np.asarray(values, dtype=float)
        return cls(v[0], v[1], v[2], v[3])

    def to_array(self):
        return np.array([self.xplus, self.xminus, self.etaplus, self.etaminus], dtype=float)


@dataclass(frozen=True)
class MinkCotangentPoint:
    qplus: float
    qminus: float
    pplus: float
    pminus: float

    @classmethod
    def from_array(cls, values):
        v = np.asarray(values, dtype=float)
        return cls(v[0], v[1], v[2], v[3])

    def to_array(self):
        return np.array([self.qplus, self.qminus, self.pplus, self.pminus], dtype=float)


@dataclass(frozen=True)
class MinkQpMoment:
    """Moment map in commuting coordinates: J = (P+, P-, Pi+ - Pi-)."""

    P_plus: float
    P_minus: float
    Pi_plus: float
    Pi_minus: float

    @property
    def s_component(self):
        return self.Pi_plus - self.Pi_minus

    @property
    def mass_squared(self):
        return self.P_plus * self.P_minus


class MinkowskiModel:
    """
    Deformed free particle on 2D Minkowski space-time.
    Brackets, groupoid projections, moment map, exact flow and the
    commuting-coordinate realization.
    """

    def __init__(self, params):
        """
        Initialize the model.

        Args:
            params (MinkParams): deformation parameter and mass
        """
        self.logger = logging.getLogger(__name__)
        self.params = params
        self.epsilon = float(params.epsilon)

    def _require_deformed(self, operation):
        if self.epsilon == 0:
            raise InvalidParameterError(f"{operation} needs a non-zero epsilon")

    def config_bracket(self, xplus, xminus):
        """{x+, x-} = eps x+ x- on the configuration space."""
        return self.epsilon * xplus * xminus

    def brackets(self, point):
        """
        Poisson tensor of the phase space in the order (x+, x-, eta+, eta-).

        Args:
            point (MinkPhasePoint): phase point

        Returns:
            numpy.ndarray: 4x4 antisymmetric matrix of brackets {z_i, z_j}
        """
        eps = self.epsilon
        xp, xm, ep, em = point.xplus, point.xminus, point.etaplus, point.etaminus
        pi = np.zeros((4, 4))
        pi[0, 1] = eps * xp * xm
        pi[2, 3] = eps * ep * em
        pi[2, 0] = 1.0 - eps * ep * xp
        pi[2, 1] = -eps * ep * xm
        pi[3, 0] = eps * em * xp
        pi[3, 1] = 1.0 + eps * em * xm
        return pi - pi.T

    def admissibility_factors(self, point):
        """The two factors (1 + eps eta- x-, 1 - eps eta+ x+) that must stay positive."""
        eps = self.epsilon
        return (1.0 + eps * point.etaminus * point.xminus, 1.0 - eps * point.etaplus * point.xplus)

    def is_admissible(self, point):
        a, b = self.admissibility_factors(point)
        return bool(a > 0.0 and b > 0.0)

    def _checked_factors(self, point):
        a, b = self.admissibility_factors(point)
        if not (a > 0.0 and b > 0.0):
            raise OutsidePhaseSpaceError(f"Point {point} is outside the phase space (factors {a:.6g}, {b:.6g})")
        return a, b

    def left_projection(self, point):
        return (point.xplus, point.xminus)

    def right_projection(self, point):
        a, b = self._checked_factors(point)
        return (point.xplus / a, point.xminus / b)

    def moment(self, point):
        """
        Moment map to the dual group.

        P+ and P- carry reciprocal square-root factors, so P+ P- = eta+ eta-.

        Args:
            point (MinkPhasePoint): admissible phase point

        Returns:
            tuple: (P+, P-, s-component)
        """
        a, b = self._checked_factors(point)
        ratio = np.sqrt(a / b)
        if self.epsilon == 0:
            s = point.etaplus * point.xplus - point.etaminus * point.xminus
        else:
            s = -(np.log(a) + np.log(b)) / self.epsilon
        return (point.etaplus * ratio, point.etaminus / ratio, float(s))

    @staticmethod
    def hamiltonian(point):
        """H = eta+ eta-, the transported Casimir of the dual group."""
        return point.etaplus * point.etaminus

    def on_mass_shell(self, point, tol=MASS_SHELL_TOL):
        return abs(self.hamiltonian(point) - self.params.m ** 2) <= tol

    def eom_rhs(self, point):
        """(dx+/dt, dx-/dt, deta+/dt, deta-/dt) for H = eta+ eta-."""
        eps = self.epsilon
        ep, em = point.etaplus, point.etaminus
        return np.array([em, ep, -eps * em * ep * ep, eps * ep * em * em])

    def exact_trajectory(self, p0, t):
        """
        Exact flow of H = eta+ eta- from p0 after time t.

        eta+ decays and eta- grows at rate eps*mu^2 (mu^2 = eta+ eta-); the
        positions follow by quadrature, straight lines when eps*mu^2 = 0.

        Args:
            p0 (MinkPhasePoint): initial point
            t (float): time

        Returns:
            MinkPhasePoint: the point at time t
        """
        k = self.epsilon * p0.etaplus * p0.etaminus
        kt = k * t
        return MinkPhasePoint(
            p0.xplus + p0.etaminus * t * exprel(kt),
            p0.xminus + p0.etaplus * t * exprel(-kt),
            p0.etaplus * np.exp(-kt),
            p0.etaminus * np.exp(kt),
        )

    def conserved_offsets(self, point):
        """
        Centre (c+, c-) of the world-line hyperbola, conserved along the flow.

        Args:
            point (MinkPhasePoint): phase point with eps*eta+*eta- != 0

        Returns:
            tuple: (c+, c-)
        """
        k = self.epsilon * point.etaplus * point.etaminus
        if k == 0:
            raise InvalidParameterError("The hyperbola centre needs eps * eta+ * eta- != 0")
        return (point.xplus - point.etaminus / k, point.xminus + point.etaplus / k)

    def hyperbola_residual(self, point, offsets):
        """(x+ - c+)(x- - c-) + 1/(eps m)^2, zero along on-shell world lines."""
        self._require_deformed("The hyperbola identity")
        cplus, cminus = offsets
        scale = 1.0 / (self.epsilon * self.params.m) ** 2
        return (point.xplus - cplus) * (point.xminus - cminus) + scale

    def qp_projections(self, c):
        """
        Groupoid projections in commuting coordinates.

        Args:
            c (MinkCotangentPoint): cotangent point

        Returns:
            tuple: ((left+, left-), (right+, right-))
        """
        half = 0.5 * self.epsilon
        pi_plus = c.pplus * c.qplus
        pi_minus = c.pminus * c.qminus
        left = (c.qplus * np.exp(half * pi_minus), c.qminus * np.exp(-half * pi_plus))
        right = (c.qplus * np.exp(-half * pi_minus), c.qminus * np.exp(half * pi_plus))
        return left, right

    def qp_moment(self, c):
        """
        Moment map in commuting coordinates.

        P = sinh(eps/2 p q)/(eps/2 q), evaluated as p * sinhc(eps/2 p q) so q = 0 is regular.

        Args:
            c (MinkCotangentPoint): cotangent point

        Returns:
            MinkQpMoment: (P+, P-, Pi+, Pi-)
        """
        half = 0.5 * self.epsilon
        pi_plus = c.pplus * c.qplus
        pi_minus = c.pminus * c.qminus
        return MinkQpMoment(
            float(c.pplus * sinhc(half * pi_plus)),
            float(c.pminus * sinhc(half * pi_minus)),
            float(pi_plus),
            float(pi_minus),
        )

    def qp_hamiltonian_gradient(self, c):
        """Gradient of H = P+ P- with respect to (q+, q-, p+, p-)."""
        half = 0.5 * self.epsilon
        moment = self.qp_moment(c)
        zp = half * c.pplus * c.qplus
        zm = half * c.pminus * c.qminus
        dP_plus_dq = half * half * c.pplus ** 3 * c.qplus * sinhc_slope(zp)
        dP_minus_dq = half * half * c.pminus ** 3 * c.qminus * sinhc_slope(zm)
        return np.array([
            moment.P_minus * dP_plus_dq,
            moment.P_plus * dP_minus_dq,
            moment.P_minus * np.cosh(zp),
            moment.P_plus * np.cosh(zm),
        ])

    def qp_worldline(self, a, b, tau):
        """
        World line in commuting positions, parametrized by tau.

        Args:
            a (float): boost constant
            b (float): shift of the second light-cone branch
            tau (float): parameter

        Returns:
            tuple: (q+, q-)
        """
        half = 0.5 * self.epsilon
        m = self.params.m
        qplus = np.exp(a) * tau * sinhc(half * tau) / m
        qminus = np.exp(-a) * (tau - b) * sinhc(half * (tau - b)) / m
        return (float(qplus), float(qminus))

    def qp_worldline_point(self, a, b, tau):
        """
        Full cotangent point on the world line: Pi+ = tau, Pi- = tau - b, P+ P- = m^2.

        Args:
            a (float): boost constant
            b (float): shift of the second light-cone branch
            tau (float): parameter (equal to m^2 t up to a constant)

        Returns:
            MinkCotangentPoint: the point at parameter tau
        """
        half = 0.5 * self.epsilon
        m = self.params.m
        qplus, qminus = self.qp_worldline(a, b, tau)
        pplus = m * np.exp(-a) / sinhc(half * tau)
        pminus = m * np.exp(a) / sinhc(half * (tau - b))
        return MinkCotangentPoint(qplus, qminus, float(pplus), float(pminus))

    def qp_exact_flow(self, c0, t):
        """
        Exact flow of H = P+ P- in commuting coordinates.

        P+ and P- are constant and Pi+, Pi- both advance at rate mu^2 = P+ P-.

        Args:
            c0 (MinkCotangentPoint): initial point with P+ P- != 0
            t (float): time

        Returns:
            MinkCotangentPoint: the point at time t
        """
        half = 0.5 * self.epsilon
        moment = self.qp_moment(c0)
        if moment.P_plus == 0 or moment.P_minus == 0:
            raise InvalidParameterError("The commuting-coordinate flow needs P+ and P- both non-zero")
        advance = moment.mass_squared * t
        pi_plus = moment.Pi_plus + advance
        pi_minus = moment.Pi_minus + advance
        shape_plus = sinhc(half * pi_plus)
        shape_minus = sinhc(half * pi_minus)
        return MinkCotangentPoint(
            float(pi_plus * shape_plus / moment.P_plus),
            float(pi_minus * shape_minus / moment.P_minus),
            float(moment.P_plus / shape_plus),
            float(moment.P_minus / shape_minus),
        )

    def convert(self, c):
        """
        Phase point whose groupoid projections equal those of the cotangent point.

        x is the left projection; eta solves the right-projection equations in
        closed form, 1 + eps eta- x- = e^{eps Pi-} and 1 - eps eta+ x+ = e^{-eps Pi+}.

        Args:
            c (MinkCotangentPoint): cotangent point

        Returns:
            MinkPhasePoint: the corresponding admissible phase point
        """
        eps = self.epsilon
        half = 0.5 * eps
        pi_plus = c.pplus * c.qplus
        pi_minus = c.pminus * c.qminus
        (xplus, xminus), _ = self.qp_projections(c)
        etaplus = c.pplus * np.exp(-half * pi_minus) * exprel(-eps * pi_plus)
        etaminus = c.pminus * np.exp(half * pi_plus) * exprel(eps * pi_minus)
        return MinkPhasePoint(float(xplus), float(xminus), float(etaplus), float(etaminus))

    def invert(self, point, tol=1e-12, max_iter=100):
        """
        Cotangent point mapped to the given phase point, by damped Newton iteration seeded at (q, p) = (x, eta).

        Args:
            point (MinkPhasePoint): admissible phase point
            tol (float): convergence tolerance
            max_iter (int): iteration budget

        Returns:
            MinkCotangentPoint: the preimage under convert
        """
        self._checked_factors(point)
        target = point.to_array()

        def forward(v):
            return self.convert(MinkCotangentPoint.from_array(v)).to_array()

        solution = newton_solve(forward, target, target, tol=tol, max_iter=max_iter)
        return MinkCotangentPoint.from_array(solution)
