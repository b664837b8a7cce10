"""Batch runner: one subcommand per pipeline, exit code 0 pass / 1 check failure / 2 usage."""

import argparse
import logging
import sys
from typing import Sequence

from pydantic import ValidationError

from nclebesgue.core.base import BaseSubgraph
from nclebesgue.core.errors import NCMeasureError
from nclebesgue.features import (
    DecomposeSubgraph,
    DiagnosticsSubgraph,
    DilationExampleSubgraph,
    MomentsSubgraph,
    OracleSubgraph,
)
from nclebesgue.services.ncmeasure import MeasureSpecError
from nclebesgue.types.run_config import RunConfig
from nclebesgue.utils.logging_utils import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SUBGRAPHS: dict[str, type[BaseSubgraph]] = {
    "moments": MomentsSubgraph,
    "positivity": DiagnosticsSubgraph,
    "diagnose": DiagnosticsSubgraph,
    "herglotz": DiagnosticsSubgraph,
    "decompose": DecomposeSubgraph,
    "oracle": OracleSubgraph,
    "example8": DilationExampleSubgraph,
}

COMMAND_HELP = {
    "moments": "write the moment table of a measure spec as CSV",
    "positivity": "test the Gram matrix at --level for positive semidefiniteness",
    "diagnose": "positivity plus GNS row-isometry diagnostics",
    "herglotz": "Herglotz, Cayley and Cauchy transforms at --point",
    "decompose": "Lebesgue decomposition against NC Lebesgue measure",
    "oracle": "compare the decomposition with the exact one-variable split",
    "example8": "point mass at (1, 0): end-to-end dilation checks",
}


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", help="measure spec JSON file")
    parser.add_argument("--level", type=int, help="Gram level N")
    parser.add_argument("--depth", type=int, help="moment depth (default: enough for the level)")
    parser.add_argument("--out-depth", dest="out_depth", type=int, help="report moments to N_out")
    parser.add_argument("--threshold", type=float, help="pencil threshold in (0, 1)")
    parser.add_argument("--tol", type=float, help="positivity tolerance")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--degree", type=int, help="series truncation degree M")
    parser.add_argument("--point", type=complex, nargs="+", help="scalar point z_1 ... z_d")
    parser.add_argument("--schedule", type=int, nargs="+", help="oracle levels")
    parser.add_argument("--samples", type=int, help="randomized sweep size")
    parser.add_argument("--plot", action="store_true", default=None, help="also write PNG plots")


def _parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="nclebesgue", description=__doc__)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, help_text in COMMAND_HELP.items():
        _add_common_arguments(subparsers.add_parser(command, help=help_text))
    return parser.parse_args(argv)


def build_config(args: argparse.Namespace) -> RunConfig:
    """Unset flags fall back to the RunConfig defaults."""
    values = {key: value for key, value in vars(args).items() if value is not None}
    return RunConfig(**values)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as e:
        return EXIT_PASSED if e.code == 0 else EXIT_USAGE

    try:
        config = build_config(args)
        result = SUBGRAPHS[config.command]().run({"config": config})
    except (ValidationError, MeasureSpecError, ValueError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except NCMeasureError as e:
        logger.error(f"{args.command}: {type(e).__name__}: {e}")
        return EXIT_FAILED

    status = "PASSED" if result["passed"] else "FAILED"
    print(f"{config.command}: {status} report={result['report_path']}")
    return EXIT_PASSED if result["passed"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
