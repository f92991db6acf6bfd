"""
Rank-One Perturbations of Beta-Ensembles - Command-line entry point
Samples J + i l E11 for Gaussian and Laguerre beta-ensembles, evaluates the
joint density of its eigenvalues and runs the verification suites
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from cli.commands import cmd_density, cmd_roundtrip, cmd_sample, cmd_verify
from cli.config import build_run_config, load_config_file
from cli.settings import LOG_LEVELS, get_settings
from errors import ParameterError, RMTError, SpectrumParseError, UnsupportedEnsembleError

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_IO = 4
EXIT_NUMERICAL = 5

FLAG_NAMES = (
    "kind", "beta", "n", "m", "coupling", "sigma", "shape", "scale",
    "samples", "seed", "format", "out", "suite", "input", "threads", "method",
)


def build_parser() -> argparse.ArgumentParser:
    """Parser with the four subcommands sharing one set of flags."""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("ensemble")
    group.add_argument("--kind", choices=["gaussian", "laguerre"], help="Ensemble family")
    group.add_argument("--beta", type=float, help="Dyson index, beta > 0")
    group.add_argument("--n", type=int, help="Matrix order")
    group.add_argument("--m", type=int, help="Laguerre parameter m >= 0")
    group = common.add_argument_group("coupling")
    group.add_argument("--coupling", choices=["gamma_type", "chi_half", "custom_gamma"], help="Law of l")
    group.add_argument("--sigma", type=float, help="Scale of the gamma_type law")
    group.add_argument("--shape", type=float, help="Shape of the custom_gamma law")
    group.add_argument("--scale", type=float, help="Scale of the custom_gamma law")
    group = common.add_argument_group("run")
    group.add_argument("--samples", type=int, help="Number of draws (per suite for verify)")
    group.add_argument("--seed", type=int, help="Root seed (default RMT_DEFAULT_SEED)")
    group.add_argument("--format", choices=["csv", "json"], help="Sample output format")
    group.add_argument("--out", help="Output path (default stdout)")
    group.add_argument("--suite", help="Comma-separated suites for verify, or 'all'")
    group.add_argument("--method", choices=["ratio", "importance"], help="Normalization estimator")
    group.add_argument("--input", help="Spectrum file for density (default stdin)")
    group.add_argument("--config", help="JSON config file; flags win on conflict")
    group.add_argument("--threads", type=int, help="Worker cap (default RMT_THREADS)")
    group.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper, help="Logging level")

    parser = argparse.ArgumentParser(
        prog="rmt-perturb",
        description="Rank-one non-Hermitian perturbations of Gaussian and Laguerre beta-ensembles",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("sample", parents=[common], help="Draw perturbed spectra")
    sub.add_parser("density", parents=[common], help="Evaluate the joint eigenvalue density")
    sub.add_parser("verify", parents=[common], help="Run verification suites")
    sub.add_parser("roundtrip", parents=[common], help="Forward/inverse and two-route residuals")
    return parser


COMMANDS: Dict[str, Callable[..., int]] = {
    "sample": cmd_sample,
    "density": cmd_density,
    "verify": cmd_verify,
    "roundtrip": cmd_roundtrip,
}


def run(args: argparse.Namespace) -> int:
    """Build the run configuration and dispatch; errors map to exit codes."""
    try:
        file_data = load_config_file(args.config) if args.config else None
        flags = {name: getattr(args, name, None) for name in FLAG_NAMES}
        config = build_run_config(args.subcommand, flags, get_settings(), file_data)
        logger.info(f"Starting {args.subcommand} for {config.ensemble.label}")
        code = COMMANDS[args.subcommand](config)
        logger.info(f"Finished {args.subcommand} with exit code {code}")
        return code
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE
    except (ParameterError, SpectrumParseError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE
    except UnsupportedEnsembleError as e:
        logger.error(f"Unsupported: {e}")
        return EXIT_UNSUPPORTED
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except RMTError as e:
        logger.error(f"Numerical failure ({type(e).__name__}): {e}")
        return EXIT_NUMERICAL


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = get_settings()
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    # Configure logging
    logging.basicConfig(
        level=getattr(logging, args.log_level or settings.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
