# commands/decompose.py
import logging

from commands import add_common_arguments, emit, guarded, setup_name
from kacdirac.dirac import check_hypotheses, kernel_decomposition, level_one_decomposition, so_pair_decomposition
from kacdirac.reports import multiplet_dict, orthogonal_dict
from kacdirac.setups import build_from_config, load_config
from kacdirac.utils import HypothesisError

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


class DecomposeCommand:
    """Multiplet decomposition of the Dirac kernel, or of F^T(V) for an orthogonal setup."""

    def __init__(self, args):
        self.args = args

    def run(self) -> bool:
        config = load_config(setup_name(self.args), self.args.cutoff, self.args.length_bound)
        data = {"name": config.name}
        ok = True
        if config.orthogonal is not None:
            orthogonal = so_pair_decomposition(config.orthogonal, config.cutoff)
            data["orthogonal"] = orthogonal_dict(orthogonal)
            ok = orthogonal.holds
            if not config.orthogonal.toral:
                emit(data, self.args)
                return ok
        setup = build_from_config(config)
        violations = check_hypotheses(setup)
        if violations:
            raise HypothesisError("; ".join(violations))
        if config.level_one:
            report = level_one_decomposition(setup, config.level_one)
        else:
            report = kernel_decomposition(setup)
        data["kernel"] = multiplet_dict(report)
        ok = ok and report.verified()
        logger.info(f"{config.name}: {len(report.entries)} entries, power {report.power}, "
                    f"{'verified' if report.verified() else 'NOT verified'}")
        emit(data, self.args)
        return ok


def setup(subparsers):
    parser = subparsers.add_parser("decompose", help="Dirac kernel multiplets")
    add_common_arguments(parser)
    parser.set_defaults(handler=guarded(lambda args: DecomposeCommand(args).run()))
