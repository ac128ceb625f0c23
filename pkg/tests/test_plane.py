import numpy as np
import pytest

from checks.sampling import random_plane_cotangent, random_plane_point
from errors import InvalidParameterError, OutsidePhaseSpaceError, UndefinedIdentityError
from models.plane import (
    CircleParams,
    DualElement,
    PlaneCotangentPoint,
    PlaneModel,
    PlaneParams,
    PlanePhasePoint,
    PointTrajectory,
)


def closed_form_inverse(model, point):
    """(q, p) from the logarithm of 1 - i eps conj(x) eta."""
    eps = model.epsilon
    z = (1j / eps) * np.log(model.decomposability_factor(point))
    q = point.x * np.exp(0.5j * eps * z)
    return q, z / np.conj(q)


def test_brackets_at_origin_are_canonical(plane):
    point = PlanePhasePoint(0.0, 1.0 - 2.0j)
    pi = plane.phase_brackets(point)
    np.testing.assert_array_equal(pi, -pi.T)
    assert pi[2, 0] == pytest.approx(1.0)
    assert pi[3, 1] == pytest.approx(1.0)
    assert pi[0, 1] == 0.0
    assert pi[2, 3] == pytest.approx(-0.1 * 5.0)


def test_configuration_bracket(plane):
    point = PlanePhasePoint(0.6 - 0.8j, 0.3)
    assert plane.config_bracket(point.x) == pytest.approx(0.2)
    assert plane.phase_brackets(point)[0, 1] == pytest.approx(0.5 * plane.config_bracket(point.x))


def test_projections_and_units(plane):
    point = PlanePhasePoint(1.0 + 1.0j, 0.5j)
    left, right = plane.projections(point)
    assert left == point.x
    assert right == pytest.approx(point.x / (1.0 - 1j * 0.1 * np.conj(point.x) * point.eta))
    assert plane.projections(PlanePhasePoint(2.0 - 1.0j, 0.0)) == (2.0 - 1.0j, 2.0 - 1.0j)


def test_outside_phase_space():
    model = PlaneModel(PlaneParams(1.0))
    point = PlanePhasePoint(1.0, -1.0j)
    assert not model.is_admissible(point)
    with pytest.raises(OutsidePhaseSpaceError):
        model.projections(point)
    with pytest.raises(OutsidePhaseSpaceError):
        model.moment(point)


def test_casimir_and_matrix_routes(rng):
    for _ in range(1000):
        model = PlaneModel(PlaneParams(rng.uniform(0.1, 1.0)))
        point = random_plane_point(rng)
        moment = model.moment(point)
        assert abs(abs(moment.P) - abs(point.eta)) <= 1e-13
        routed = model.moment_via_factorization(point)
        assert abs(routed.P - moment.P) <= 1e-12
        assert abs(routed.s - moment.s) <= 1e-12
        _, right = model.projections(point)
        assert abs(model.right_projection_via_factorization(point) - right) <= 1e-12


def test_dual_element_borel_coordinates():
    element = DualElement(0.4 - 1.3j, 0.7)
    b = element.to_borel(0.25)
    assert b.rho == pytest.approx(np.exp(0.25 * 0.7))
    back = DualElement.from_borel(b, 0.25)
    assert back.P == pytest.approx(element.P, abs=1e-15)
    assert back.s == pytest.approx(element.s, abs=1e-15)
    with pytest.raises(InvalidParameterError):
        DualElement.from_borel(b, 0.0)


def test_classical_moment():
    model = PlaneModel(PlaneParams(0.0))
    moment = model.moment(PlanePhasePoint(1.0, 2.0j))
    assert moment.P == 2.0j
    assert moment.s == pytest.approx(-2.0)


@pytest.mark.parametrize("eps", [0.01, 0.1, 1.0])
@pytest.mark.parametrize("speed", [0.5, 1.0, 2.0])
def test_free_motion_is_a_circle(eps, speed):
    model = PlaneModel(PlaneParams(eps))
    p0 = PlanePhasePoint(0.3 - 0.2j, speed * np.exp(0.7j))
    circle = model.circle_params(p0)
    assert isinstance(circle, CircleParams)
    assert circle.radius == pytest.approx(1.0 / (eps * speed))
    for t in np.linspace(0.0, circle.period, 97):
        point = model.exact_trajectory(p0, t)
        assert abs(abs(point.x - circle.center) - circle.radius) <= 1e-10
        assert abs(abs(point.eta) - speed) <= 1e-12
    closed = model.exact_trajectory(p0, circle.period)
    assert abs(closed.x - p0.x) <= 1e-10
    assert abs(closed.eta - p0.eta) <= 1e-10


def test_exact_flow_solves_equations_of_motion(plane):
    p0 = PlanePhasePoint(0.5 + 0.5j, 1.0 - 0.5j)
    t, h = 2.0, 1e-5
    forward = plane.exact_trajectory(p0, t + h)
    backward = plane.exact_trajectory(p0, t - h)
    dx, deta = plane.eom_rhs(plane.exact_trajectory(p0, t))
    assert abs((forward.x - backward.x) / (2 * h) - dx) <= 1e-8
    assert abs((forward.eta - backward.eta) / (2 * h) - deta) <= 1e-8


def test_rest_and_classical_circles():
    model = PlaneModel(PlaneParams(0.5))
    assert model.circle_params(PlanePhasePoint(1.0, 0.0)) == PointTrajectory(1.0)
    with pytest.raises(InvalidParameterError):
        PlaneModel(PlaneParams(0.0)).circle_params(PlanePhasePoint(1.0, 1.0))


def test_classical_limit_is_straight():
    model = PlaneModel(PlaneParams(1e-6))
    p0 = PlanePhasePoint(0.2 + 0.1j, 0.6 + 0.8j)
    for t in np.linspace(0.0, 1.0, 11):
        assert abs(model.exact_trajectory(p0, t).x - (p0.x + p0.eta * t)) <= 1e-4


def test_hamiltonian_identity(rng):
    for _ in range(1000):
        model = PlaneModel(PlaneParams(rng.uniform(0.1, 1.0)))
        point = random_plane_point(rng)
        left, right = model.projections(point)
        assert abs(model.hamiltonian_identity(left, right) - model.hamiltonian(point.eta)) <= 1e-10


def test_hamiltonian_identity_undefined_at_origin(plane):
    with pytest.raises(UndefinedIdentityError):
        plane.hamiltonian_identity(0.0, 1.0)


def test_convert_agrees_with_commuting_projections(rng):
    model = PlaneModel(PlaneParams(0.7))
    for _ in range(200):
        c = random_plane_cotangent(rng)
        point = model.convert(c)
        left, right = model.projections(point)
        expected_left, expected_right = model.qp_projections(c)
        assert abs(left - expected_left) <= 1e-14
        assert abs(right - expected_right) <= 1e-13
        assert abs(left * right - c.q ** 2) <= 1e-13
        P, _ = model.effective_momentum(c)
        assert abs(abs(P) - abs(point.eta)) <= 1e-13


def test_invert_agrees_with_logarithmic_inverse(rng):
    model = PlaneModel(PlaneParams(0.4))
    for _ in range(100):
        c = random_plane_cotangent(rng)
        point = model.convert(c)
        recovered = model.invert(point)
        np.testing.assert_allclose(recovered.to_array(), c.to_array(), atol=1e-10)
        q, p = closed_form_inverse(model, point)
        assert abs(q - c.q) <= 1e-12
        assert abs(p - c.p) <= 1e-12


def test_commuting_gradient_matches_finite_differences(rng):
    model = PlaneModel(PlaneParams(0.8))
    h = 1e-6
    for _ in range(20):
        z = random_plane_cotangent(rng).to_array()
        numeric = np.empty(4)
        for k in range(4):
            step = np.zeros(4)
            step[k] = h
            plus = model.qp_hamiltonian(PlaneCotangentPoint.from_array(z + step))
            minus = model.qp_hamiltonian(PlaneCotangentPoint.from_array(z - step))
            numeric[k] = (plus - minus) / (2 * h)
        np.testing.assert_allclose(model.qp_hamiltonian_gradient(PlaneCotangentPoint.from_array(z)), numeric, atol=1e-8)


def test_commuting_flow_matches_phase_flow():
    model = PlaneModel(PlaneParams(0.5))
    c0 = PlaneCotangentPoint(0.8 + 0.3j, -0.2 + 0.6j)
    p0 = model.convert(c0)
    for t in (0.0, 0.4, 1.7, 5.0):
        c = model.qp_exact_flow(c0, t)
        assert c.q == pytest.approx(model.qp_trajectory(c0, t), abs=1e-14)
        phase = model.exact_trajectory(p0, t)
        converted = model.convert(c)
        assert abs(converted.x - phase.x) <= 1e-9
        assert abs(converted.eta - phase.eta) <= 1e-9


def test_commuting_position_changes_sign_after_one_period():
    model = PlaneModel(PlaneParams(0.5))
    c0 = PlaneCotangentPoint(0.8 + 0.3j, -0.2 + 0.6j)
    assert model.qp_period_sign(c0) == -1.0
    energy = model.qp_hamiltonian(c0)
    times = np.linspace(0.0, 2.0 * np.pi / (0.5 * 2.0 * energy), 33)
    curve = model.qp_curve(c0, times)
    assert curve[0] == pytest.approx(c0.q)
    assert curve[-1] == pytest.approx(-c0.q, abs=1e-12)


def test_commuting_trajectory_undefined_at_zero_position(plane):
    with pytest.raises(UndefinedIdentityError):
        plane.qp_trajectory(PlaneCotangentPoint(0.0, 1.0), 1.0)
