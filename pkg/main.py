import argparse
import importlib
import logging
import os
import sys

from dotenv import load_dotenv

load_dotenv()
logging.basicConfig(level=os.getenv("KACDIRAC_LOG_LEVEL", "DEBUG").upper(),
                    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

COMMANDS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "commands")


def load_commands(subparsers):
    for filename in sorted(os.listdir(COMMANDS_DIR)):
        if filename.endswith(".py") and filename != "__init__.py":
            module = importlib.import_module(f"commands.{filename[:-3]}")
            module.setup(subparsers)
            logger.debug(f"Loaded command: {filename[:-3]}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kacdirac",
                                     description="Twisted affine root data, Clifford modules and Dirac kernels")
    subparsers = parser.add_subparsers(dest="command")
    load_commands(subparsers)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_help()
        return 2
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
