# commands/root_data.py
import logging

from commands import add_common_arguments, emit, guarded, setup_name
from kacdirac.dirac import so_realization
from kacdirac.reports import root_data_dict
from kacdirac.rootcore import oracle_agrees
from kacdirac.setups import load_config
from kacdirac.twistaff import twisted_simple_roots
from kacdirac.utils import format_rational

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


class RootDataCommand:
    """Simple roots, marks, Cartan matrix, rho-hat and multiplicities of L-hat(g, sigma)."""

    def __init__(self, args):
        self.args = args

    def run(self) -> bool:
        config = load_config(setup_name(self.args), self.args.cutoff, self.args.length_bound)
        if config.is_orthogonal_only:
            rs, sigma, _ = so_realization(config.orthogonal)
        else:
            rs = config.root_system()
            sigma = config.sigma.build(rs)
        datum = twisted_simple_roots(rs, sigma)
        pairings = [datum.coroot_pairing(datum.rho_hat, a) for a in datum.simple_roots]
        normalized = all(p == 1 for p in pairings)
        if not normalized:
            logger.error(f"rho-hat pairings {[format_rational(p) for p in pairings]} are not all 1")
        data = {
            "name": config.name,
            "sigma": {"permutation": list(sigma.eta.permutation), "shift": [format_rational(x) for x in sigma.shift]},
            **root_data_dict(datum),
            "normalized": normalized,
            "oracle_agrees": oracle_agrees(rs, sigma.eta, sigma.shift),
        }
        emit(data, self.args)
        return normalized and data["oracle_agrees"] is not False


def setup(subparsers):
    parser = subparsers.add_parser("root-data", help="Root data of the twisted affinization")
    add_common_arguments(parser)
    parser.set_defaults(handler=guarded(lambda args: RootDataCommand(args).run()))
