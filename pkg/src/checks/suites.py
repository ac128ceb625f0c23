"""
Invariant suites behind `main.py check`. Each suite draws seeded samples,
measures residuals of closed-form identities and reports the worst one.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from checks.sampling import (
    complex_normal,
    random_complex,
    random_mink_cotangent,
    random_mink_point,
    random_plane_cotangent,
    random_plane_point,
    random_sl2c,
    random_su2,
    random_su2_vector,
)
from engine.adapters import minkowski_poisson_model, plane_poisson_model
from engine.integrator import jacobi_residual
from engine.poisson_model import PoissonModel
from errors import OutsideDecomposableSetError
from manin.factorization import factor_borel_e2, factor_borel_su2, factor_e2_borel, factor_su2_borel
from manin.groups import Mat2C, Su2Vector
from models.minkowski import MinkowskiModel, MinkParams, MinkPhasePoint
from models.plane import PlaneModel, PlaneParams, PlanePhasePoint
from models.sphere import (
    CircleKind,
    DualSphereElement,
    SphereModel,
    SphereParams,
    SpherePhasePoint,
    big_circle,
    classify_projected_circle,
    hopf_project,
    perpendicularity_criterion,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES = {
    "factorization": 1e-12,
    "jacobi": 1e-6,
    "casimir": 1e-13,
    "groupoid": 1e-12,
    "circle-geometry": 1e-8,
    "identities": 1e-10,
}

JACOBI_FD_STEP = 1e-5
CORRUPTION_THRESHOLD = 1e-2
CIRCLE_SAMPLES = 64
LEMMA_SAMPLES = 2000
LEMMA_BINS = 20
LEMMA_POINTS_PER_CIRCLE = 16
TINY_PIVOT = 1e-11
SMALL_PIVOT = 1e-9


@dataclass
class CheckReport:
    """Outcome of one suite; passed is True exactly when max_residual <= tolerance."""

    suite: str
    seed: int
    samples: int
    tolerance: float
    cases: List[Dict] = field(default_factory=list)

    def add_case(self, name, residuals):
        residuals = np.atleast_1d(np.asarray(residuals, dtype=float))
        worst = float(np.max(residuals)) if residuals.size else 0.0
        self.cases.append({
            "name": name,
            "count": int(residuals.size),
            "max_residual": worst,
            "pass": worst <= self.tolerance,
        })
        logger.debug(f"{self.suite}/{name}: {residuals.size} cases, max residual {worst:.3e}")

    @property
    def max_residual(self):
        return max((case["max_residual"] for case in self.cases), default=0.0)

    @property
    def passed(self):
        return self.max_residual <= self.tolerance

    def to_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "pass": self.passed,
            "cases": self.cases,
        }


def _random_epsilon(rng, low=0.1, high=1.0):
    return float(rng.uniform(low, high))


def _matrix_with_tiny_entry(rng, size, corner):
    """Determinant-one matrix whose (1,1) or (2,2) entry has modulus `size`."""
    pivot = size * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    other, c = complex_normal(rng, 2)
    b = (pivot * other - 1.0) / c
    if corner == "a":
        return Mat2C(pivot, b, c, other)
    return Mat2C(other, b, c, pivot)


def _raises_outside(split, matrix):
    try:
        split(matrix)
    except OutsideDecomposableSetError:
        return True
    return False


def run_factorization(samples, seed, tolerance):
    rng = np.random.default_rng(seed)
    report = CheckReport("factorization", seed, samples, tolerance)
    matrices = [random_sl2c(rng) for _ in range(samples)]

    for name, split in (
        ("su2_borel", factor_su2_borel),
        ("borel_su2", factor_borel_su2),
        ("e2_borel", factor_e2_borel),
        ("borel_e2", factor_borel_e2),
    ):
        report.add_case(name, [(split(m).recompose() - m).max_abs() for m in matrices])

    rejected = [
        _raises_outside(factor_e2_borel, _matrix_with_tiny_entry(rng, TINY_PIVOT, "a"))
        and _raises_outside(factor_borel_e2, _matrix_with_tiny_entry(rng, TINY_PIVOT, "d"))
        for _ in range(samples)
    ]
    report.add_case("e2_reject_below_threshold", [0.0 if ok else 1.0 for ok in rejected])

    accepted = []
    for _ in range(samples):
        left = factor_e2_borel(_matrix_with_tiny_entry(rng, SMALL_PIVOT, "a"))
        right = factor_borel_e2(_matrix_with_tiny_entry(rng, SMALL_PIVOT, "d"))
        accepted.append(0.0 if left.near_singular and right.near_singular else 1.0)
    report.add_case("e2_accept_near_singular", accepted)

    residuals = []
    for _ in range(samples):
        model = PlaneModel(PlaneParams(_random_epsilon(rng)))
        point = random_plane_point(rng)
        _, right = model.projections(point)
        residuals.append(abs(model.right_projection_via_factorization(point) - right))
    report.add_case("plane_right_projection_matrix_route", residuals)
    return report


def corrupted_minkowski_model(model):
    """Minkowski engine model with the sign of {x+, x-} flipped; fails the Jacobi identity."""
    honest = minkowski_poisson_model(model)

    def table(z):
        pi = honest.bracket_table(z).copy()
        pi[0, 1] = -pi[0, 1]
        pi[1, 0] = -pi[1, 0]
        return pi

    return PoissonModel(
        name="minkowski-corrupted",
        dimension=4,
        bracket_table=table,
        hamiltonian=honest.hamiltonian,
        hamiltonian_gradient=honest.hamiltonian_gradient,
    )


def run_jacobi(samples, seed, tolerance):
    rng = np.random.default_rng(seed)
    report = CheckReport("jacobi", seed, samples, tolerance)
    plane, mink, control = [], [], []
    for _ in range(samples):
        eps = _random_epsilon(rng)
        plane_model = plane_poisson_model(PlaneModel(PlaneParams(eps)))
        plane.append(jacobi_residual(plane_model, random_plane_point(rng).to_array(), JACOBI_FD_STEP))

        mink_model = MinkowskiModel(MinkParams(eps))
        point = random_mink_point(rng, eps).to_array()
        mink.append(jacobi_residual(minkowski_poisson_model(mink_model), point, JACOBI_FD_STEP))
        if abs(point[1]) > 0.1:
            corrupted = jacobi_residual(corrupted_minkowski_model(mink_model), point, JACOBI_FD_STEP)
            control.append(0.0 if corrupted > CORRUPTION_THRESHOLD else 1.0)

    report.add_case("plane_table", plane)
    report.add_case("minkowski_table", mink)
    report.add_case("corrupted_table_detected", control)
    return report


def run_casimir(samples, seed, tolerance):
    rng = np.random.default_rng(seed)
    report = CheckReport("casimir", seed, samples, tolerance)
    plane, mink, mink_qp = [], [], []
    for _ in range(samples):
        eps = _random_epsilon(rng)
        plane_model = PlaneModel(PlaneParams(eps))
        point = random_plane_point(rng)
        plane.append(abs(abs(plane_model.moment(point).P) - abs(point.eta)))

        mink_model = MinkowskiModel(MinkParams(eps))
        mpoint = random_mink_point(rng, eps)
        P_plus, P_minus, _ = mink_model.moment(mpoint)
        mink.append(abs(P_plus * P_minus - mink_model.hamiltonian(mpoint)))

        c = random_mink_cotangent(rng)
        converted = mink_model.convert(c)
        mink_qp.append(abs(mink_model.qp_moment(c).mass_squared - mink_model.hamiltonian(converted)))

    report.add_case("plane_momentum_modulus", plane)
    report.add_case("minkowski_mass_squared", mink)
    report.add_case("minkowski_commuting_mass_squared", mink_qp)
    return report


def run_groupoid(samples, seed, tolerance):
    rng = np.random.default_rng(seed)
    report = CheckReport("groupoid", seed, samples, tolerance)
    plane_proj, mink_proj, units, moments = [], [], [], []
    for _ in range(samples):
        eps = _random_epsilon(rng)
        plane_model = PlaneModel(PlaneParams(eps))
        c = random_plane_cotangent(rng)
        expected = plane_model.qp_projections(c)
        actual = plane_model.projections(plane_model.convert(c))
        plane_proj.append(max(abs(actual[0] - expected[0]), abs(actual[1] - expected[1])))

        point = random_plane_point(rng)
        exact = plane_model.moment(point)
        routed = plane_model.moment_via_factorization(point)
        moments.append(max(abs(exact.P - routed.P), abs(exact.s - routed.s)))

        mink_model = MinkowskiModel(MinkParams(eps))
        mc = random_mink_cotangent(rng)
        (left_plus, left_minus), (right_plus, right_minus) = mink_model.qp_projections(mc)
        phase = mink_model.convert(mc)
        got_left = mink_model.left_projection(phase)
        got_right = mink_model.right_projection(phase)
        mink_proj.append(max(
            abs(got_left[0] - left_plus), abs(got_left[1] - left_minus),
            abs(got_right[0] - right_plus), abs(got_right[1] - right_minus),
        ))

        x = random_complex(rng, 0.1, 2.0)
        xl, xr = plane_model.projections(PlanePhasePoint(x, 0.0))
        mpoint = MinkPhasePoint(*rng.uniform(-1.0, 1.0, 2), 0.0, 0.0)
        ml, mr = mink_model.left_projection(mpoint), mink_model.right_projection(mpoint)
        units.append(max(abs(xl - xr), abs(ml[0] - mr[0]), abs(ml[1] - mr[1])))

    report.add_case("plane_projections", plane_proj)
    report.add_case("minkowski_projections", mink_proj)
    report.add_case("plane_moment_matrix_route", moments)
    report.add_case("units_project_equal", units)
    return report


def _sampled_circle(model, point, period):
    times = np.arange(CIRCLE_SAMPLES) * (period / CIRCLE_SAMPLES)
    samples = [hopf_project(model.phase_trajectory(point, t).g) for t in times]
    return classify_projected_circle(samples, times)


def run_circle_geometry(samples, seed, tolerance):
    rng = np.random.default_rng(seed)
    report = CheckReport("circle-geometry", seed, samples, tolerance)
    kinds, axes, cosines, fits, great = [], [], [], [], []

    for _ in range(samples):
        eps = float(rng.uniform(0.05, 1.0))
        model = SphereModel(SphereParams(eps))
        b = DualSphereElement(0.0, random_complex(rng, 0.1, 2.0))
        g0 = random_su2(rng)
        analytic = model.circle_geometry(b, g0)
        measured = _sampled_circle(model, SpherePhasePoint(g0, b), model.circle_period(b))

        kinds.append(0.0 if measured.kind == analytic.kind == CircleKind.SMALL_CIRCLE else 1.0)
        axes.append(1.0 - abs(float(np.dot(measured.axis, analytic.axis))))
        cosines.append(abs(measured.cos_polar - analytic.cos_polar))
        fits.append(measured.fit_residual)
        great.append(1.0 if measured.kind == CircleKind.GREAT_CIRCLE else 0.0)

    rest = SphereModel(SphereParams(0.5))
    at_rest = _sampled_circle(rest, SpherePhasePoint(random_su2(rng), DualSphereElement(0.0, 0.0)), 1.0)

    report.add_case("kind_agreement", kinds)
    report.add_case("axis_alignment", axes)
    report.add_case("cos_polar", cosines)
    report.add_case("fit_residual", fits)
    report.add_case("no_great_circles", great)
    report.add_case("rest_is_point", [0.0 if at_rest.kind == CircleKind.POINT else 1.0])
    report.add_case("perpendicularity_agreement", _perpendicularity_mismatches(rng, samples))
    report.add_case("lemma_coverage", [_lemma_empty_bins(rng)])
    return report


def _perpendicularity_mismatches(rng, samples):
    mismatches = []
    for k in range(samples):
        X = random_su2_vector(rng)
        if k % 2 == 0:
            X = Su2Vector(X.k1, X.k2, 0.0)
        g0 = random_su2(rng)
        period = np.pi / X.norm()
        times = np.arange(LEMMA_POINTS_PER_CIRCLE) * (period / LEMMA_POINTS_PER_CIRCLE)
        circle = classify_projected_circle([hopf_project(big_circle(g0, X, t)) for t in times])
        mismatches.append(0.0 if perpendicularity_criterion(X) == (circle.kind == CircleKind.GREAT_CIRCLE) else 1.0)
    return mismatches


def _lemma_empty_bins(rng):
    """Fraction of empty cos_polar bins over projected random big circles."""
    counts = np.zeros(LEMMA_BINS, dtype=int)
    for _ in range(LEMMA_SAMPLES):
        X = random_su2_vector(rng)
        g0 = random_su2(rng)
        period = np.pi / X.norm()
        times = np.arange(LEMMA_POINTS_PER_CIRCLE) * (period / LEMMA_POINTS_PER_CIRCLE)
        circle = classify_projected_circle([hopf_project(big_circle(g0, X, t)) for t in times])
        counts[min(int(circle.cos_polar * LEMMA_BINS), LEMMA_BINS - 1)] += 1
    return float(np.count_nonzero(counts == 0)) / LEMMA_BINS


def run_identities(samples, seed, tolerance):
    rng = np.random.default_rng(seed)
    report = CheckReport("identities", seed, samples, tolerance)
    energy, plane_mean, mink_mean, qp_energy = [], [], [], []
    for _ in range(samples):
        eps = _random_epsilon(rng)
        plane_model = PlaneModel(PlaneParams(eps))
        point = random_plane_point(rng)
        left, right = plane_model.projections(point)
        energy.append(abs(plane_model.hamiltonian_identity(left, right) - plane_model.hamiltonian(point.eta)))

        c = random_plane_cotangent(rng)
        converted = plane_model.convert(c)
        left, right = plane_model.projections(converted)
        plane_mean.append(abs(left * right - c.q ** 2))
        qp_energy.append(abs(plane_model.qp_hamiltonian(c) - plane_model.hamiltonian(converted.eta)))

        mink_model = MinkowskiModel(MinkParams(eps))
        mc = random_mink_cotangent(rng)
        phase = mink_model.convert(mc)
        (lp, lm), (rp, rm) = mink_model.left_projection(phase), mink_model.right_projection(phase)
        mink_mean.append(max(abs(lp * rp - mc.qplus ** 2), abs(lm * rm - mc.qminus ** 2)))

    report.add_case("plane_hamiltonian_identity", energy)
    report.add_case("plane_geometric_mean", plane_mean)
    report.add_case("plane_commuting_energy", qp_energy)
    report.add_case("minkowski_geometric_mean", mink_mean)
    return report


SUITES = {
    "factorization": run_factorization,
    "jacobi": run_jacobi,
    "casimir": run_casimir,
    "groupoid": run_groupoid,
    "circle-geometry": run_circle_geometry,
    "identities": run_identities,
}


def run_suite(name, samples, seed, tolerance=None):
    """
    Run one named suite.

    Args:
        name (str): key of SUITES
        samples (int): number of random cases per check
        seed (int): seed of the numpy generator
        tolerance (float): pass threshold (suite default when None)

    Returns:
        CheckReport: the suite's report
    """
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCES[name]
    logger.info(f"Running {name} suite with {samples} samples (seed {seed}, tolerance {tolerance:g})")
    report = SUITES[name](samples, seed, tolerance)
    logger.info(f"Suite {name}: max residual {report.max_residual:.3e}, {'pass' if report.passed else 'FAIL'}")
    return report
