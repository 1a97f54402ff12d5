# commands/clifford.py
import logging

from commands import add_common_arguments, emit, guarded, setup_name
from kacdirac.charworks import restrict_and_compare
from kacdirac.dirac import so_realization
from kacdirac.fock import graded_character, product_character, standalone_spec, zero_weight_check
from kacdirac.reports import character_dict, verdict_dict
from kacdirac.setups import build_from_config, load_config
from kacdirac.utils import format_rational

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


class CliffordCommand:
    """Character of the twisted Clifford module, by monomials and by the product formula."""

    def __init__(self, args):
        self.args = args

    def run(self) -> bool:
        config = load_config(setup_name(self.args), self.args.cutoff, self.args.length_bound)
        cutoff = config.cutoff
        setup = None
        if config.orthogonal is not None and not config.algebra:
            rs, _, table = so_realization(config.orthogonal)
            spec = standalone_spec(rs, table, [1], cutoff)
        else:
            setup = build_from_config(config)
            spec = setup.spec
        total, even, odd = graded_character(spec, cutoff)
        discrepancies = restrict_and_compare(total, product_character(spec, cutoff), cutoff)
        data = {
            "name": config.name,
            "dimension": spec.dimension,
            "zero_modes": spec.zero_mode_dimension,
            "power": spec.power,
            "top": spec.top.as_dict(setup.a.level_labels() if setup else ("K",)),
            "slices": {format_rational(d): total.slice_dimension(d) for d in total.depths()},
            "even_slices": {format_rational(d): even.slice_dimension(d) for d in even.depths()},
            "checks": [verdict_dict("monomials-vs-product", not discrepancies, discrepancies)],
            "character": character_dict(total),
        }
        ok = not discrepancies
        if setup is not None:
            weights_ok = zero_weight_check(spec, setup.a, cutoff)
            data["checks"].append(verdict_dict("weights-in-restriction-image", weights_ok))
            ok = ok and weights_ok
        emit(data, self.args)
        return ok


def setup(subparsers):
    parser = subparsers.add_parser("clifford", help="Twisted Clifford module character")
    add_common_arguments(parser)
    parser.set_defaults(handler=guarded(lambda args: CliffordCommand(args).run()))
