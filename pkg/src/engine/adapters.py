"""
PoissonModel builders: each model's complex or matrix coordinates flattened to real vectors.
"""

import numpy as np

from engine.poisson_model import PoissonModel
from manin.groups import Mat2C, SU2Element
from models.minkowski import MinkCotangentPoint, MinkPhasePoint
from models.plane import PlaneCotangentPoint, PlanePhasePoint
from models.sphere import DualSphereElement, SpherePhasePoint

SPHERE_STATE_SIZE = 11


def canonical_table(pairs):
    """
    Constant tensor of `pairs` canonical pairs ordered (q_1..q_n, p_1..p_n) with {p_k, q_k} = 1.

    Args:
        pairs (int): number of degrees of freedom

    Returns:
        numpy.ndarray: 2n x 2n antisymmetric matrix
    """
    table = np.zeros((2 * pairs, 2 * pairs))
    for k in range(pairs):
        table[pairs + k, k] = 1.0
        table[k, pairs + k] = -1.0
    return table


def harmonic_oscillator_model():
    """Reference system q' = p, p' = -q with H = (q^2 + p^2)/2."""
    table = canonical_table(1)

    def energy(z):
        return 0.5 * (z[0] ** 2 + z[1] ** 2)

    def flow(z, t):
        c, s = np.cos(t), np.sin(t)
        return np.array([z[0] * c + z[1] * s, z[1] * c - z[0] * s])

    return PoissonModel(
        name="harmonic",
        dimension=2,
        bracket_table=lambda z: table,
        hamiltonian=energy,
        hamiltonian_gradient=lambda z: np.array([z[0], z[1]]),
        exact_flow=flow,
        monitors={"H": energy},
    )


def minkowski_poisson_model(model, point0=None):
    """
    Minkowski phase space (x+, x-, eta+, eta-).

    Args:
        model (MinkowskiModel): deformed model
        point0 (MinkPhasePoint): when given and eps eta+ eta- != 0, adds the
            hyperbola monitor centred on this point's world line

    Returns:
        PoissonModel: engine view of the model
    """

    def casimir(z):
        return z[2] * z[3]

    monitors = {"casimir": casimir}
    if point0 is not None and model.epsilon * point0.etaplus * point0.etaminus != 0:
        offsets = model.conserved_offsets(point0)
        monitors["hyperbola"] = lambda z: model.hyperbola_residual(MinkPhasePoint.from_array(z), offsets)

    return PoissonModel(
        name="minkowski",
        dimension=4,
        bracket_table=lambda z: model.brackets(MinkPhasePoint.from_array(z)),
        hamiltonian=casimir,
        hamiltonian_gradient=lambda z: np.array([0.0, 0.0, z[3], z[2]]),
        exact_flow=lambda z, t: model.exact_trajectory(MinkPhasePoint.from_array(z), t).to_array(),
        monitors=monitors,
        admissible=lambda z: model.is_admissible(MinkPhasePoint.from_array(z)),
    )


def minkowski_qp_poisson_model(model):
    """Minkowski commuting coordinates (q+, q-, p+, p-) with H = P+ P-."""
    table = canonical_table(2)

    def energy(z):
        return model.qp_moment(MinkCotangentPoint.from_array(z)).mass_squared

    return PoissonModel(
        name="minkowski-qp",
        dimension=4,
        bracket_table=lambda z: table,
        hamiltonian=energy,
        hamiltonian_gradient=lambda z: model.qp_hamiltonian_gradient(MinkCotangentPoint.from_array(z)),
        exact_flow=lambda z, t: model.qp_exact_flow(MinkCotangentPoint.from_array(z), t).to_array(),
        monitors={"H": energy},
    )


def plane_poisson_model(model):
    """Plane phase space (x1, x2, eta1, eta2) with H = |eta|^2/2."""

    def energy(z):
        return 0.5 * (z[2] ** 2 + z[3] ** 2)

    def momentum_modulus(z):
        return abs(model.moment(PlanePhasePoint.from_array(z)).P)

    return PoissonModel(
        name="plane",
        dimension=4,
        bracket_table=lambda z: model.phase_brackets(PlanePhasePoint.from_array(z)),
        hamiltonian=energy,
        hamiltonian_gradient=lambda z: np.array([0.0, 0.0, z[2], z[3]]),
        exact_flow=lambda z, t: model.exact_trajectory(PlanePhasePoint.from_array(z), t).to_array(),
        monitors={"H": energy, "absP": momentum_modulus},
        admissible=lambda z: model.is_admissible(PlanePhasePoint.from_array(z)),
    )


def plane_qp_poisson_model(model):
    """Plane commuting coordinates (q1, q2, p1, p2) with H = |P|^2/2."""
    table = canonical_table(2)

    def energy(z):
        return model.qp_hamiltonian(PlaneCotangentPoint.from_array(z))

    return PoissonModel(
        name="plane-qp",
        dimension=4,
        bracket_table=lambda z: table,
        hamiltonian=energy,
        hamiltonian_gradient=lambda z: model.qp_hamiltonian_gradient(PlaneCotangentPoint.from_array(z)),
        exact_flow=lambda z, t: model.qp_exact_flow(PlaneCotangentPoint.from_array(z), t).to_array(),
        monitors={"H": energy},
    )


def sphere_state(point):
    """Flatten (g, b) to (Re/Im of g's entries, s, Re w, Im w)."""
    m = point.g.matrix
    entries = [m.a, m.b, m.c, m.d]
    flat = [part for e in entries for part in (e.real, e.imag)]
    return np.array(flat + [point.b.s, point.b.w.real, point.b.w.imag])


def sphere_group_matrix(z):
    return Mat2C(complex(z[0], z[1]), complex(z[2], z[3]), complex(z[4], z[5]), complex(z[6], z[7]))


def sphere_momentum(z):
    return DualSphereElement(z[8], complex(z[9], z[10]))


def sphere_point_from_state(z):
    return SpherePhasePoint(SU2Element(sphere_group_matrix(z)), sphere_momentum(z))


def sphere_poisson_model(model):
    """
    Sphere phase space embedded in R^11: dg/dt = g F(b), db/dt = 0.

    The group part is carried as a plain matrix so numerical states that
    drift off SU(2) stay representable.
    """

    def energy(z):
        xi = sphere_group_matrix(z) @ sphere_momentum(z).matrix(model.epsilon)
        return model.rescaled_energy(xi)

    def velocity(z):
        g = sphere_group_matrix(z)
        dg = g @ model.legendre(sphere_momentum(z)).matrix
        entries = [dg.a, dg.b, dg.c, dg.d]
        flat = [part for e in entries for part in (e.real, e.imag)]
        return np.array(flat + [0.0, 0.0, 0.0])

    def flow(z, t):
        return sphere_state(model.phase_trajectory(sphere_point_from_state(z), t))

    return PoissonModel(
        name="sphere",
        dimension=SPHERE_STATE_SIZE,
        bracket_table=None,
        hamiltonian=energy,
        hamiltonian_gradient=None,
        exact_flow=flow,
        monitors={"Htilde": energy},
        vector_field=velocity,
    )
