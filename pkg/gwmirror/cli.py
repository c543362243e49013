"""
Command-line front end: ``python -m gwmirror <command> [flags]``.

Exit codes: 0 on success, 1 when a verification finds a mismatch or the weight
retries run out, 2 on invalid input.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from . import config
from .commands import execute, render, report_ok
from .exceptions import ContractViolationError, GWMirrorError, SingularWeightError
from .schemas import Command, OutputFormat, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2


def _degree_list(raw: str) -> List[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwmirror",
        description="Exact Gromov-Witten computations for projective hypersurfaces and their mirror series.",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--order", type=int, help="truncation order in q (default 6 for quintic, 8 otherwise)")
    parser.add_argument("--ambient", type=int, help="n for the ambient P^n")
    parser.add_argument("--degree", "--degrees", dest="degrees", type=_degree_list, default=[],
                        help="bundle degree(s) l_i, comma-separated")
    parser.add_argument("--model", choices=["line", "conic"], help="embedding model for verify-embedding")
    parser.add_argument("--format", dest="output_format", default=OutputFormat.TEXT.value,
                        choices=[f.value for f in OutputFormat])
    parser.add_argument("--seed", type=int, help="seed for torus weights (default GW_MIRROR_SEED or 20030)")
    parser.add_argument("--curve-degree", type=int, default=1, help="curve degree d for localize")
    parser.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS, help="weight vectors per localization")
    return parser


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        trunc_order=args.order if args.order is not None else config.default_order(args.command),
        ambient_dim=args.ambient,
        bundle_degrees=args.degrees,
        output_format=args.output_format,
        seed=args.seed if args.seed is not None else config.default_seed(),
        model=args.model,
        curve_degree=args.curve_degree,
        trials=args.trials,
    )


def run(run_config: RunConfig) -> int:
    """Print the report for one command and return the exit code."""
    try:
        report = execute(run_config)
    except (ContractViolationError, SingularWeightError) as e:
        logger.error(f"internal consistency check failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (GWMirrorError, ValidationError, ValueError) as e:
        logger.warning(f"rejected {run_config.command.value}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    print(render(report, run_config.output_format))
    return EXIT_OK if report_ok(report) else EXIT_MISMATCH


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=config.log_level(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        run_config = parse_config(argv)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    return run(run_config)
