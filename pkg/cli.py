#!/usr/bin/env python3
"""
Command line entry point.

    python cli.py family A 3 | python cli.py tutte
    python cli.py coboundary arrangement.txt --method finite-field --primes 5,7,11
    python cli.py verify --grid

Exit status: 0 ok, 1 usage, 2 parse error, 3 verification mismatch,
4 theorem-violation diagnostic.
"""
import argparse
import logging
import sys
from typing import List, Optional

from config import ENGINE_CONFIG
from debug_utils import debug_error
from errors import InconsistencyError, ParseError, TheoremViolation, TutteError

from commands import compute, generate, verify
from commands.shared import EXIT_PARSE, EXIT_USAGE, EXIT_VIOLATION

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_options(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    parser.add_argument('--json', action='store_true', default=argparse.SUPPRESS if suppress else False,
                        help="machine-readable output")
    parser.add_argument('--log-level', choices=LOG_LEVELS, type=str.upper,
                        default=argparse.SUPPRESS if suppress else ENGINE_CONFIG['log_level'],
                        help="logging level (stderr)")


def create_parser() -> argparse.ArgumentParser:
    parser = CommandParser(prog='cli.py',
                           description="Tutte, coboundary and related polynomials of hyperplane arrangements over Z[zeta_m].")
    _global_options(parser)

    # repeated on every subcommand; SUPPRESS keeps the top-level value when absent
    common = CommandParser(add_help=False)
    _global_options(common, suppress=True)

    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    compute.register(subparsers, common)
    verify.register(subparsers, common)
    generate.register(subparsers, common)
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        return args.handler(args)
    except ParseError as e:
        debug_error(e, args.command)
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (TheoremViolation, InconsistencyError) as e:
        debug_error(e, args.command)
        print(f"theorem violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (TutteError, ValueError) as e:
        debug_error(e, args.command)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
