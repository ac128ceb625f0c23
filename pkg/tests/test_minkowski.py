import numpy as np
import pytest

from checks.sampling import random_mink_cotangent, random_mink_point
from errors import InvalidParameterError, OutsidePhaseSpaceError
from models.minkowski import MinkCotangentPoint, MinkowskiModel, MinkParams, MinkPhasePoint


def on_shell_point(m=1.0, rapidity=0.3, x=(0.2, -0.1)):
    return MinkPhasePoint(x[0], x[1], m * np.exp(-rapidity), m * np.exp(rapidity))


def closed_form_inverse(model, point):
    """Commuting coordinates of a phase point, from the logarithms of the admissibility factors."""
    eps = model.epsilon
    a, b = model.admissibility_factors(point)
    pi_minus = np.log(a) / eps
    pi_plus = -np.log(b) / eps
    qplus = point.xplus * np.exp(-0.5 * eps * pi_minus)
    qminus = point.xminus * np.exp(0.5 * eps * pi_plus)
    return np.array([qplus, qminus, pi_plus / qplus, pi_minus / qminus])


def test_mass_must_be_positive():
    with pytest.raises(InvalidParameterError):
        MinkParams(0.1, 0.0)


def test_brackets_are_antisymmetric_with_light_cone_entries(minkowski):
    point = MinkPhasePoint(0.7, -0.4, 0.3, 0.9)
    pi = minkowski.brackets(point)
    np.testing.assert_array_equal(pi, -pi.T)
    assert pi[0, 1] == pytest.approx(0.1 * 0.7 * -0.4)
    assert pi[2, 0] == pytest.approx(1.0 - 0.1 * 0.3 * 0.7)
    assert pi[3, 1] == pytest.approx(1.0 + 0.1 * 0.9 * -0.4)
    assert minkowski.config_bracket(0.7, -0.4) == pi[0, 1]


def test_casimir_transport(rng):
    for _ in range(1000):
        eps = rng.uniform(0.1, 1.0)
        model = MinkowskiModel(MinkParams(eps))
        point = random_mink_point(rng, eps)
        P_plus, P_minus, _ = model.moment(point)
        assert abs(P_plus * P_minus - model.hamiltonian(point)) <= 1e-13


def test_classical_moment():
    model = MinkowskiModel(MinkParams(0.0))
    point = MinkPhasePoint(0.5, 2.0, 1.5, -0.5)
    P_plus, P_minus, s = model.moment(point)
    assert (P_plus, P_minus) == (1.5, -0.5)
    assert s == pytest.approx(1.5 * 0.5 + 0.5 * 2.0)


def test_right_projection_outside_phase_space(minkowski):
    with pytest.raises(OutsidePhaseSpaceError):
        minkowski.right_projection(MinkPhasePoint(20.0, 0.0, 1.0, 1.0))
    assert not minkowski.is_admissible(MinkPhasePoint(20.0, 0.0, 1.0, 1.0))


def test_units_project_to_the_same_point(minkowski):
    point = MinkPhasePoint(0.3, -1.2, 0.0, 0.0)
    assert minkowski.left_projection(point) == minkowski.right_projection(point)


def test_exact_flow_keeps_casimir_and_hyperbola(minkowski):
    p0 = on_shell_point()
    assert minkowski.on_mass_shell(p0)
    offsets = minkowski.conserved_offsets(p0)
    for t in np.linspace(0.0, 5.0, 51):
        point = minkowski.exact_trajectory(p0, t)
        assert abs(minkowski.hamiltonian(point) - 1.0) <= 1e-12
        assert abs(minkowski.hyperbola_residual(point, offsets)) <= 1e-8
        np.testing.assert_allclose(minkowski.conserved_offsets(point), offsets, atol=1e-10)


def test_exact_flow_solves_equations_of_motion(minkowski):
    p0 = on_shell_point()
    t, h = 1.3, 1e-5
    forward = minkowski.exact_trajectory(p0, t + h).to_array()
    backward = minkowski.exact_trajectory(p0, t - h).to_array()
    velocity = minkowski.eom_rhs(minkowski.exact_trajectory(p0, t))
    np.testing.assert_allclose((forward - backward) / (2 * h), velocity, atol=1e-8)
    assert minkowski.exact_trajectory(p0, 0.0) == p0


def test_classical_limit_is_straight():
    model = MinkowskiModel(MinkParams(1e-6))
    p0 = MinkPhasePoint(0.1, 0.2, 0.8, 1.0)
    for t in np.linspace(0.0, 1.0, 11):
        point = model.exact_trajectory(p0, t)
        straight = np.array([0.1 + 1.0 * t, 0.2 + 0.8 * t])
        assert np.max(np.abs([point.xplus, point.xminus] - straight)) <= 1e-4


def test_hyperbola_needs_deformation():
    model = MinkowskiModel(MinkParams(0.0))
    with pytest.raises(InvalidParameterError):
        model.conserved_offsets(on_shell_point())
    with pytest.raises(InvalidParameterError):
        model.hyperbola_residual(on_shell_point(), (0.0, 0.0))


def test_world_line_has_unit_rate_and_fixed_mass():
    model = MinkowskiModel(MinkParams(0.4, 2.0))
    c = model.qp_worldline_point(0.3, 0.5, 1.2)
    moment = model.qp_moment(c)
    assert moment.Pi_plus == pytest.approx(1.2, abs=1e-14)
    assert moment.Pi_minus == pytest.approx(0.7, abs=1e-14)
    assert moment.mass_squared == pytest.approx(4.0, abs=1e-13)
    assert moment.s_component == pytest.approx(0.5, abs=1e-14)
    assert model.qp_worldline(0.3, 0.5, 1.2) == (c.qplus, c.qminus)


def test_commuting_flow_moves_along_world_line():
    model = MinkowskiModel(MinkParams(0.4, 2.0))
    c0 = model.qp_worldline_point(0.3, 0.5, 1.2)
    later = model.qp_exact_flow(c0, 0.25)
    expected = model.qp_worldline_point(0.3, 0.5, 1.2 + 4.0 * 0.25)
    np.testing.assert_allclose(later.to_array(), expected.to_array(), atol=1e-12)


def test_commuting_gradient_matches_finite_differences(minkowski, rng):
    h = 1e-6
    for _ in range(20):
        c = random_mink_cotangent(rng)
        z = c.to_array()
        numeric = np.empty(4)
        for k in range(4):
            step = np.zeros(4)
            step[k] = h
            plus = minkowski.qp_moment(MinkCotangentPoint.from_array(z + step)).mass_squared
            minus = minkowski.qp_moment(MinkCotangentPoint.from_array(z - step)).mass_squared
            numeric[k] = (plus - minus) / (2 * h)
        np.testing.assert_allclose(minkowski.qp_hamiltonian_gradient(c), numeric, atol=1e-8)


def test_convert_matches_projections_and_casimir(rng):
    model = MinkowskiModel(MinkParams(0.6))
    for _ in range(200):
        c = random_mink_cotangent(rng)
        point = model.convert(c)
        left, right = model.qp_projections(c)
        np.testing.assert_allclose(model.left_projection(point), left, atol=1e-14)
        np.testing.assert_allclose(model.right_projection(point), right, atol=1e-13)
        assert model.hamiltonian(point) == pytest.approx(model.qp_moment(c).mass_squared, abs=1e-13)
        assert left[0] * right[0] == pytest.approx(c.qplus ** 2, abs=1e-13)
        assert left[1] * right[1] == pytest.approx(c.qminus ** 2, abs=1e-13)


def test_invert_agrees_with_logarithmic_inverse(rng):
    model = MinkowskiModel(MinkParams(0.3))
    for _ in range(100):
        c = MinkCotangentPoint.from_array(rng.uniform(0.2, 0.8, 4) * rng.choice([-1.0, 1.0], 4))
        point = model.convert(c)
        recovered = model.invert(point)
        np.testing.assert_allclose(recovered.to_array(), c.to_array(), atol=1e-10)
        np.testing.assert_allclose(closed_form_inverse(model, point), c.to_array(), atol=1e-12)
