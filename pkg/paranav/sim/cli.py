"""Command line interface of the paranav simulator.

Subcommands:

    simulate    Run a scenario and optionally write its trace and summary.
    classify    Run the Paranalyzer on one annotation.
    pwm         Show the servo command signal for an angle.
    motor-step  Compare the integrated motor speed with the analytic response.
    validate    Check a scenario file.

Exit codes: ``0`` success (or completed), ``1`` runtime failure, ``2`` validation
failure, ``3`` collided and ``4`` timeout.
"""
import argparse
import json
import sys

from gymnasium import logger

from paranav.common.exceptions import (
    ConfigValidationError,
    DomainError,
    ParanavError,
    UnsupportedConfigurationError,
)
from paranav.common.utils import colorize
from paranav.core.motor import DriveInput, MotorState, simulate, step_response_analytic
from paranav.core.paralogic import AnalysisThresholds, Evidence, classify
from paranav.core.pwm import (
    PwmConfig,
    ServoCalibration,
    angle_to_pulse,
    measure_pulse_width,
    positive_duty,
    pulse_samples,
    render_waveform,
    samples_per_period,
    waveform_rows,
)
from paranav.sim.config import load_scenario, scenario_from_dict
from paranav.sim.runner import run_scenario
from paranav.sim.trace import outcome_to_dict, write_summary, write_trace_csv
from paranav.version import __version__

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_VALIDATION = 2


def _report_violations(error):
    print(colorize(str(error), "red"), file=sys.stderr)
    return EXIT_VALIDATION


def _report_runtime_error(error):
    print(colorize(f"Run failed: {error}", "red"), file=sys.stderr)
    return EXIT_RUNTIME


def _simulate(args):
    cfg = load_scenario(args.scenario)
    try:
        trace, outcome = run_scenario(cfg)
    except ParanavError as e:
        return _report_runtime_error(e)
    if args.trace:
        write_trace_csv(trace, args.trace)
    if args.summary:
        write_summary(outcome, args.summary)
    print(json.dumps(outcome_to_dict(outcome), indent=2))
    return outcome.result.exit_code


def _classify(args):
    thresholds = (
        AnalysisThresholds()
        if args.thresholds is None
        else AnalysisThresholds.from_sequence(args.thresholds)
    )
    evidence = (
        Evidence.from_percent(args.mu, args.lambda_)
        if args.percent
        else Evidence(args.mu, args.lambda_)
    )
    analysis = classify(evidence, thresholds)
    print(f"gce: {analysis.gce:.9g}")
    print(f"gin: {analysis.gin:.9g}")
    print(f"state: {analysis.state.code} {analysis.state.label}")
    print(f"description: {analysis.state.description}")
    return EXIT_OK


def _pwm(args):
    cfg = PwmConfig(period=args.period, sample_rate=args.sample_rate)
    calibration = ServoCalibration.from_name(args.calibration)
    pulse = angle_to_pulse(args.angle, calibration)
    waveform = render_waveform(pulse, cfg, n_periods=args.periods)
    print(f"pulse_width_ms: {pulse:.9g}")
    print(f"positive_duty: {positive_duty(pulse, cfg):.9g}")
    print(f"samples_per_period: {samples_per_period(cfg)}")
    print(f"high_samples: {pulse_samples(pulse, cfg)}")
    if pulse_samples(pulse, cfg) > 0:
        print(f"measured_pulse_ms: {measure_pulse_width(waveform, cfg):.9g}")
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as f:
            f.write("sample_index,level\n")
            f.writelines(
                f"{index},{level}\n" for index, level in waveform_rows(waveform)
            )
        logger.debug(f"Wrote {len(waveform.samples)} samples to '{args.dump}'.")
    return EXIT_OK


def _load_motor(path):
    if path is None:
        return scenario_from_dict({}).motor
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigValidationError(
            f"Could not read motor parameters '{path}': {e}."
        ) from e
    if isinstance(data, dict) and "motor" in data:
        data = data["motor"]
    return scenario_from_dict({"motor": data}).motor


def _motor_step(args):
    params = _load_motor(args.params)
    if not args.t >= 0:
        raise DomainError(f"The simulated time must be >= 0, got {args.t}.")
    if not args.dt > 0:
        raise DomainError(f"The step size must be > 0, got {args.dt}.")
    n_steps = int(round(args.t / args.dt))
    u = DriveInput(args.voltage)
    try:
        state = simulate(MotorState(), params, u, args.dt, n_steps)
    except ParanavError as e:
        return _report_runtime_error(e)
    print(f"t: {n_steps * args.dt:.9g}")
    print(f"omega_integrated: {state.omega:.9g}")
    try:
        analytic = step_response_analytic(params, args.voltage, n_steps * args.dt)
    except UnsupportedConfigurationError as e:
        print(f"omega_analytic: unavailable ({e})")
        return EXIT_OK
    print(f"omega_analytic: {analytic:.9g}")
    print(f"abs_error: {abs(state.omega - analytic):.3e}")
    return EXIT_OK


def _validate(args):
    load_scenario(args.scenario)
    print(colorize(f"Scenario '{args.scenario}' is valid.", "green"))
    return EXIT_OK


def build_parser():
    """argparse.ArgumentParser: The ``paranav`` command line parser."""
    parser = argparse.ArgumentParser(
        prog="paranav",
        description="Paraconsistent corridor robot simulator.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "--verbose", "-v", action="store_true", help="Enable debug logging"
    )
    verbosity.add_argument(
        "--quiet", "-q", action="store_true", help="Only log errors"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    simulate_parser = subparsers.add_parser("simulate", help="Run a scenario")
    simulate_parser.add_argument("scenario", help="Scenario JSON file")
    simulate_parser.add_argument("--trace", help="Write the trace CSV to this path")
    simulate_parser.add_argument(
        "--summary", help="Write the outcome JSON to this path"
    )
    simulate_parser.set_defaults(handler=_simulate)

    classify_parser = subparsers.add_parser(
        "classify", help="Classify an annotation with the Paranalyzer"
    )
    classify_parser.add_argument("--mu", type=float, required=True)
    classify_parser.add_argument(
        "--lambda", dest="lambda_", type=float, required=True
    )
    classify_parser.add_argument(
        "--thresholds", help="Control values 'vcve,vcfa,vcic,vcpa'"
    )
    classify_parser.add_argument(
        "--percent", action="store_true", help="Evidence degrees are given in percent"
    )
    classify_parser.set_defaults(handler=_classify)

    pwm_parser = subparsers.add_parser("pwm", help="Servo command signal of an angle")
    pwm_parser.add_argument("--angle", type=float, required=True)
    pwm_parser.add_argument(
        "--calibration", choices=("datasheet", "measured"), default="datasheet"
    )
    pwm_parser.add_argument("--period", type=float, default=PwmConfig.period)
    pwm_parser.add_argument("--sample-rate", type=float, default=PwmConfig.sample_rate)
    pwm_parser.add_argument("--periods", type=int, default=1)
    pwm_parser.add_argument("--dump", help="Write 'sample_index,level' rows as CSV")
    pwm_parser.set_defaults(handler=_pwm)

    motor_parser = subparsers.add_parser(
        "motor-step", help="Integrated versus analytic motor step response"
    )
    motor_parser.add_argument("--params", help="Motor parameters JSON file")
    motor_parser.add_argument("--voltage", type=float, required=True)
    motor_parser.add_argument("--t", type=float, required=True)
    motor_parser.add_argument("--dt", type=float, default=1e-5)
    motor_parser.set_defaults(handler=_motor_step)

    validate_parser = subparsers.add_parser("validate", help="Check a scenario")
    validate_parser.add_argument("scenario", help="Scenario JSON file")
    validate_parser.set_defaults(handler=_validate)
    return parser


def main(argv=None):
    """Run the command line interface.

    Args:
        argv (list, optional): Arguments without the program name. Defaults to
            ``sys.argv[1:]``.

    Returns:
        int: The exit code.
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        logger.set_level(logger.DEBUG)
    elif args.quiet:
        logger.set_level(logger.ERROR)
    try:
        return args.handler(args)
    except ConfigValidationError as e:
        return _report_violations(e)
    except DomainError as e:
        print(colorize(f"Invalid input: {e}", "red"), file=sys.stderr)
        return EXIT_VALIDATION
    except ParanavError as e:
        return _report_runtime_error(e)


if __name__ == "__main__":
    sys.exit(main())
