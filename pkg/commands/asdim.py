# commands/asdim.py
import logging

from commands import add_common_arguments, emit, guarded, setup_name
from kacdirac.asdim import (
    asymptotic_dimension, center_chi, center_lattice, central_charge, clifford_asdim, finite_representatives,
    orthogonal_asdim,
)
from kacdirac.charworks import dominant_weights_of_level
from kacdirac.dirac import kernel_decomposition, so_pair_decomposition
from kacdirac.reports import clifford_dict
from kacdirac.setups import build_from_config, load_config
from kacdirac.utils import format_rational, parse_rational

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


class AsdimCommand:
    """Asymptotic dimensions of the multiplet, the center lattice index and the central charge."""

    def __init__(self, args):
        self.args = args

    def run(self) -> bool:
        config = load_config(setup_name(self.args), self.args.cutoff, self.args.length_bound)
        if config.orthogonal is not None and not config.orthogonal.toral:
            report = so_pair_decomposition(config.orthogonal, config.cutoff)
            emit({"name": config.name, "formula": report.formula, "asdim": orthogonal_asdim(report),
                  "clifford": clifford_dict(clifford_asdim(report.spec))}, self.args)
            return True
        setup = build_from_config(config)
        report = kernel_decomposition(setup)
        kappa = setup.level + setup.g_datum.level
        lattice = center_lattice(setup, kappa)
        reps = finite_representatives(setup, report, lattice)
        level = setup.level if self.args.level is None else parse_rational(self.args.level, "level")
        charge = central_charge(setup, level)
        data = {
            "name": config.name,
            "representatives": [{"word": list(e.word), "length": e.length,
                                 "asdim": asymptotic_dimension(setup.a, e.weight)} for e in reps],
            "center_lattice": {"rank": len(lattice.basis), "index": format_rational(lattice.index),
                               "spans_center": lattice.spans_center, "chi": center_chi(setup.a)},
            "clifford": clifford_dict(clifford_asdim(setup.spec)),
            "central_charge": {"level": format_rational(charge.level), "value": format_rational(charge.value),
                               "g": format_rational(charge.g_anomaly), "a": format_rational(charge.a_anomaly),
                               "half_p": format_rational(charge.half_p), "vanishes": charge.vanishes,
                               "balanced": charge.balanced, "dominates": charge.dominates},
        }
        if self.args.list_level is not None:
            k = parse_rational(self.args.list_level, "list-level")
            data["dominant_weights"] = [w.as_dict(("K",)) for w in dominant_weights_of_level(setup.g_datum, k)]
        emit(data, self.args)
        return True


def setup(subparsers):
    parser = subparsers.add_parser("asdim", help="Asymptotic dimensions and central charge")
    add_common_arguments(parser)
    parser.add_argument("--level", default=None, help="Level k for the central charge (default: level of Lambda)")
    parser.add_argument("--list-level", default=None, help="Also list the dominant integral weights of this level")
    parser.set_defaults(handler=guarded(lambda args: AsdimCommand(args).run()))
