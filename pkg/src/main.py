import argparse
import logging
import math
import os
import sys
import traceback
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from checks.suites import SUITES, run_suite
from config import load_settings, setup_logging
from engine.adapters import (
    minkowski_poisson_model,
    plane_poisson_model,
    plane_qp_poisson_model,
    sphere_poisson_model,
    sphere_state,
)
from engine.integrator import compare_exact, integrate
from engine.poisson_model import IntegrationStatus, IntegratorConfig, Method
from errors import InvalidParameterError, PoissonMotionError
from manin.groups import SU2Element
from models.minkowski import MinkowskiModel, MinkParams, MinkPhasePoint
from models.plane import CircleParams, PlaneCotangentPoint, PlaneModel, PlaneParams, PlanePhasePoint
from models.sphere import DualSphereElement, SphereModel, SphereParams, SpherePhasePoint, classify_projected_circle
from plotting.svg_plot import TrajectoryPlotter
from processing.trajectory_processor import TrajectoryProcessor

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

DEFAULT_STEPS_PER_RUN = 2000
FALLBACK_T_END = 1.0
MINKOWSKI_E_FOLDS = 4.0


@dataclass
class RunSpec:
    """Everything `simulate` needs: model, deformation, initial data, horizon and outputs."""

    model: str
    epsilon: float
    t_end: Optional[float]
    dt: Optional[float]
    method: str
    seed: int
    output_dir: str
    output_format: str
    picture: str = "phase"
    initial: dict = field(default_factory=dict)


def parse_complex(text):
    """Parse "re,im" (or a bare real) into a complex number."""
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got '{text}'")


def parse_t_end(text):
    if str(text).lower() == "auto":
        return None
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'auto', got '{text}'")
    if value < 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"t-end must be a finite non-negative number, got '{text}'")
    return value


def build_parser(settings):
    """
    Build the command-line parser; defaults come from the environment settings.

    Args:
        settings (Settings): environment-derived defaults

    Returns:
        argparse.ArgumentParser: the parser
    """
    parser = argparse.ArgumentParser(description="Deformed free motion on Poisson homogeneous spaces")
    parser.add_argument("--seed", type=int, default=settings.seed, help="Seed for sampled suites")
    parser.add_argument("--out", default=settings.output_dir, help="Output directory")
    parser.add_argument("--format", choices=["csv", "json"], default=settings.output_format, help="Trajectory file format")
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Integrate a free trajectory and export it")
    simulate.add_argument("--model", choices=["minkowski", "plane", "sphere"], required=True)
    simulate.add_argument("--epsilon", type=float, required=True, help="Deformation parameter")
    simulate.add_argument("--t-end", type=parse_t_end, default=None, help="Final time or 'auto'")
    simulate.add_argument("--dt", type=float, default=None, help="Step (default t_end/2000, t_end/4000 for plane circles of radius above 100)")
    simulate.add_argument("--method", choices=["exact", "rk4", "adaptive", "both"], default="both")
    simulate.add_argument("--picture", choices=["phase", "qp"], default="phase", help="Plane coordinates: phase (x, eta) or commuting (q, p)")
    simulate.add_argument("--x0", type=parse_complex, default=complex(0.0, 0.0), help="Plane x0 or Minkowski (x+, x-) as 're,im'")
    simulate.add_argument("--eta0", type=parse_complex, default=complex(1.0, 0.0), help="Plane eta0 as 're,im'")
    simulate.add_argument("--q0", type=parse_complex, default=complex(1.0, 0.0), help="Plane commuting position q0")
    simulate.add_argument("--p0", type=parse_complex, default=complex(0.0, 1.0), help="Plane commuting momentum p0")
    simulate.add_argument("--mass", type=float, default=1.0, help="Minkowski mass m")
    simulate.add_argument("--rapidity", type=float, default=0.0, help="Minkowski rapidity: eta+ = m e^-a, eta- = m e^a")
    simulate.add_argument("--w", type=parse_complex, default=complex(1.0, 0.0), help="Sphere momentum w as 're,im'")
    simulate.add_argument("--s", type=float, default=0.0, help="Sphere momentum s")

    check = commands.add_parser("check", help="Run an invariant suite")
    check.add_argument("--suite", choices=sorted(SUITES), required=True)
    check.add_argument("--samples", type=int, default=settings.samples)
    check.add_argument("--tol", type=float, default=None, help="Pass threshold (suite default when omitted)")

    plot = commands.add_parser("plot", help="Render a trajectory file as SVG")
    plot.add_argument("--input", required=True, help="CSV or JSON trajectory")
    plot.add_argument("--output", default=None, help="SVG path (default: input with .svg)")
    return parser


def _run_spec(args):
    initial = {
        "x0": args.x0, "eta0": args.eta0, "q0": args.q0, "p0": args.p0,
        "mass": args.mass, "rapidity": args.rapidity, "w": args.w, "s": args.s,
    }
    if args.dt is not None and not args.dt > 0:
        raise InvalidParameterError(f"dt must be positive, got {args.dt}")
    return RunSpec(
        model=args.model, epsilon=args.epsilon, t_end=args.t_end, dt=args.dt, method=args.method,
        seed=args.seed, output_dir=args.out, output_format=args.format, picture=args.picture, initial=initial,
    )


def _setup_run(spec, logger):
    """
    Model, start state, natural horizon, table kind and notes for a RunSpec.

    Returns:
        tuple: (model, engine model, start vector, natural t_end or None, kind, notes, steps)
    """
    eps = spec.epsilon
    init = spec.initial
    notes = {}

    if spec.model == "plane" and spec.picture == "qp":
        model = PlaneModel(PlaneParams(eps))
        c0 = PlaneCotangentPoint(init["q0"], init["p0"])
        energy = model.qp_hamiltonian(c0)
        period = 2.0 * np.pi / (abs(eps) * 2.0 * energy) if eps != 0 and energy > 0 else None
        if period is not None:
            notes["period_sign"] = model.qp_period_sign(c0)
        return model, plane_qp_poisson_model(model), c0.to_array(), period, "plane-qp", notes, DEFAULT_STEPS_PER_RUN

    if spec.model == "plane":
        model = PlaneModel(PlaneParams(eps))
        p0 = PlanePhasePoint(init["x0"], init["eta0"])
        model.projections(p0)
        period = None
        steps = DEFAULT_STEPS_PER_RUN
        if eps != 0:
            circle = model.circle_params(p0)
            if isinstance(circle, CircleParams):
                period = circle.period
                steps = circle.steps_per_period
                notes.update(center=[circle.center.real, circle.center.imag], radius=circle.radius, period=circle.period)
        return model, plane_poisson_model(model), p0.to_array(), period, "plane", notes, steps

    if spec.model == "minkowski":
        model = MinkowskiModel(MinkParams(eps, init["mass"]))
        m, a = init["mass"], init["rapidity"]
        x0 = init["x0"]
        p0 = MinkPhasePoint(x0.real, x0.imag, m * np.exp(-a), m * np.exp(a))
        model.right_projection(p0)
        if eps == 0:
            logger.warning("Classical limit (epsilon = 0): straight world line, hyperbola check skipped")
            notes["hyperbola"] = "skipped: classical limit"
            period = None
        else:
            period = MINKOWSKI_E_FOLDS / (abs(eps) * m * m)
            notes["hyperbola_centre"] = list(model.conserved_offsets(p0))
        return model, minkowski_poisson_model(model, p0), p0.to_array(), period, "minkowski", notes, DEFAULT_STEPS_PER_RUN

    if eps == 0:
        raise InvalidParameterError("The sphere model needs a non-zero epsilon")
    model = SphereModel(SphereParams(eps))
    b = DualSphereElement(init["s"], init["w"])
    point = SpherePhasePoint(SU2Element.identity(), b)
    if not model.constraint_check(b):
        logger.warning(f"Momentum is off the constraint s = 0 (s = {b.s}); circle law not guaranteed")
    return model, sphere_poisson_model(model), sphere_state(point), model.circle_period(b), "sphere", notes, DEFAULT_STEPS_PER_RUN


def _sphere_circle_report(model, spec, df):
    b = DualSphereElement(spec.initial["s"], spec.initial["w"])
    report = {"analytic": model.circle_geometry(b).to_dict()}
    if len(df) >= 8:
        points = df[["n1", "n2", "n3"]].to_numpy()
        report["measured"] = classify_projected_circle(points, df["t"].to_numpy()).to_dict()
    return report


def cmd_simulate(spec, processor, logger):
    """
    Run one simulation and write trajectory files (plus reports).

    Args:
        spec (RunSpec): the run
        processor (TrajectoryProcessor): exporter
        logger (logging.Logger): CLI logger

    Returns:
        int: exit status
    """
    model, engine_model, start, natural_t_end, kind, notes, steps = _setup_run(spec, logger)
    t_end = spec.t_end
    if t_end is None:
        t_end = natural_t_end if natural_t_end is not None else FALLBACK_T_END
        logger.info(f"Resolved --t-end auto to {t_end:.17g}")
    dt = spec.dt if spec.dt is not None else (t_end / steps if t_end > 0 else 1e-3)
    config = IntegratorConfig(dt=dt, t_end=t_end)

    os.makedirs(spec.output_dir, exist_ok=True)
    methods = ["exact", "rk4"] if spec.method == "both" else [spec.method]
    status = EXIT_OK
    written = True

    for method in methods:
        trajectory = integrate(engine_model, start, config, Method(method))
        if kind == "plane-qp" and method == "exact":
            df = processor.process_curve(trajectory.times, model.qp_curve(PlaneCotangentPoint.from_array(start), trajectory.times))
        else:
            df = processor.process_trajectory(kind, trajectory)
        path = os.path.join(spec.output_dir, f"{kind}_{method}.{spec.output_format}")
        written = processor.save(df, path, spec.output_format) and written
        if trajectory.status is IntegrationStatus.DOMAIN_EXIT:
            logger.warning(f"{method} run stopped at the phase-space boundary; partial output in {path}")
            status = EXIT_DOMAIN
        if kind == "sphere" and method == methods[0]:
            circle_path = os.path.join(spec.output_dir, "sphere_circle.json")
            written = processor.save_report(_sphere_circle_report(model, spec, df), circle_path) and written

    if spec.method == "both":
        comparison = compare_exact(engine_model, start, config, Method.RK4)
        report = {"model": kind, "epsilon": spec.epsilon, "t_end": t_end, "dt": dt}
        report.update(comparison.to_dict())
        report["notes"] = notes
        logger.info(f"Max deviation from the exact flow: {comparison.max_deviation:.3e}")
        written = processor.save_report(report, os.path.join(spec.output_dir, f"{kind}_comparison.json")) and written

    if not written:
        return EXIT_FAILURE
    return status


def cmd_check(args, processor, logger):
    report = run_suite(args.suite, args.samples, args.seed, args.tol)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"check_{args.suite}.json")
    if not processor.save_report(report.to_dict(), path):
        return EXIT_FAILURE
    if not report.passed:
        logger.error(f"Suite {args.suite} failed: max residual {report.max_residual:.3e} > {report.tolerance:g}")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_plot(args, processor, logger):
    kind, df = processor.load_trajectory(args.input)
    output = args.output or os.path.splitext(args.input)[0] + ".svg"
    TrajectoryPlotter().plot(kind, df, output)
    return EXIT_OK


def main(argv=None):
    """
    Entry point of the command-line interface.

    Args:
        argv (list): arguments without the program name (sys.argv[1:] when None)

    Returns:
        int: 0 success, 1 failure, 2 usage or input error, 3 domain exit
    """
    settings = load_settings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(args.log_level)
    logger = logging.getLogger(__name__)
    processor = TrajectoryProcessor()

    try:
        if args.command == "simulate":
            return cmd_simulate(_run_spec(args), processor, logger)
        if args.command == "check":
            return cmd_check(args, processor, logger)
        return cmd_plot(args, processor, logger)
    except (PoissonMotionError, ValueError) as e:
        logger.error(f"Error in {args.command}: {str(e)}")
        logger.error(f"Error type: {type(e).__name__}")
        return EXIT_USAGE if isinstance(e, ValueError) else EXIT_FAILURE
    except Exception as e:
        logger.error(f"Error in main function: {str(e)}")
        logger.error(f"Error type: {type(e).__name__}")
        logger.error(f"Stack trace: {traceback.format_exc()}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
