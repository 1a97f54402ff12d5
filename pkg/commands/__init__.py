# commands/__init__.py
import logging
from typing import Callable, Dict

from kacdirac.reports import dump_report, write_report
from kacdirac.utils import SetupError, VerificationError

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def add_common_arguments(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="Path to a setup YAML file")
    source.add_argument("--catalog", help="Name of a built-in setup")
    parser.add_argument("--cutoff", default=None, help="Depth cutoff d, a rational such as 2 or 3/2")
    parser.add_argument("--length-bound", type=int, default=None, help="Length bound L for Coxeter enumeration")
    parser.add_argument("--output", default=None, help="Report path (default: stdout)")


def setup_name(args) -> str:
    return args.config or args.catalog


def emit(data: Dict, args) -> None:
    if args.output:
        write_report(data, args.output)
    else:
        print(dump_report(data), end="")


def guarded(handler: Callable) -> Callable:
    """Maps a handler's outcome to the exit code: 0 pass, 1 failed verification, 2 bad input."""
    def run(args) -> int:
        try:
            return EXIT_PASS if handler(args) else EXIT_FAIL
        except SetupError as e:
            logger.error(f"Input error in {setup_name(args)}: {e}")
            return EXIT_INPUT
        except VerificationError as e:
            logger.error(f"Verification failed for {setup_name(args)}: {e}")
            return EXIT_FAIL
    return run
