# commands/verify.py
import logging
from typing import Dict, List

from commands import add_common_arguments, emit, guarded, setup_name
from kacdirac.asdim import (
    center_lattice, central_charge, clifford_asdim, multiplet_asdim_sum, orthogonal_asdim, signed_asdim_sum,
)
from kacdirac.charworks import restrict_and_compare
from kacdirac.coxeter import brute_force_minimal_check, folded_property_suite
from kacdirac.dirac import (
    DiracSetup, MultipletReport, compare_with_kernel, inversion_identity, kernel_decomposition,
    level_one_decomposition, signed_character_identity, so_pair_decomposition, theorem_character_identity,
)
from kacdirac.fock import graded_character, product_character
from kacdirac.reports import multiplet_dict, parse_multiplet, read_report, verdict_dict
from kacdirac.rootcore import oracle_agrees
from kacdirac.setups import SetupConfig, build_from_config, load_config
from kacdirac.utils import TOLERANCE

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

BRUTE_FORCE_LENGTH = 6


class VerifyCommand:
    """Runs every identity that applies to a setup and reports pass/fail with the first discrepancy."""

    def __init__(self, args):
        self.args = args
        self.checks: List[Dict] = []

    def record(self, name: str, holds: bool, discrepancies=None, **details):
        self.checks.append(verdict_dict(name, holds, discrepancies, **details))
        if not holds:
            logger.warning(f"Identity {name} failed")

    def skip(self, name: str, reason: str):
        self.checks.append({"identity": name, "skipped": reason})

    def run(self) -> bool:
        config = load_config(setup_name(self.args), self.args.cutoff, self.args.length_bound)
        if config.orthogonal is not None:
            self.verify_orthogonal(config)
            if not config.orthogonal.toral:
                return self.finish(config)
        setup = build_from_config(config)
        report = level_one_decomposition(setup, config.level_one) if config.level_one else kernel_decomposition(setup)
        self.verify_root_data(setup)
        self.verify_clifford(setup)
        self.verify_coxeter(setup, config)
        self.verify_kernel(setup, report)
        self.verify_asdim(setup, report)
        if self.args.golden:
            self.compare_golden(setup, report)
        return self.finish(config)

    def finish(self, config: SetupConfig) -> bool:
        ok = all(c.get("holds", True) for c in self.checks)
        emit({"name": config.name, "cutoff": str(config.cutoff), "passed": ok, "checks": self.checks}, self.args)
        return ok

    def verify_root_data(self, setup: DiracSetup):
        datum = setup.g_datum
        self.record("rho-hat-normalization", all(datum.coroot_pairing(datum.rho_hat, a) == 1
                                                  for a in datum.simple_roots))
        agrees = oracle_agrees(setup.rs, setup.sigma.eta, setup.sigma.shift)
        if agrees is None:
            self.skip("matrix-oracle", "g has no classical matrix realization")
        else:
            self.record("matrix-oracle", agrees)

    def verify_clifford(self, setup: DiracSetup):
        total, _, _ = graded_character(setup.spec, setup.cutoff)
        discrepancies = restrict_and_compare(total, product_character(setup.spec, setup.cutoff), setup.cutoff)
        self.record("clifford-monomials-vs-product", not discrepancies, discrepancies)

    def verify_coxeter(self, setup: DiracSetup, config: SetupConfig):
        suite = folded_property_suite(setup.system, config.height_bound)
        self.record("folded-group-properties", all(suite.values()), **suite)
        bound = min(setup.length_bound, BRUTE_FORCE_LENGTH)
        self.record("minimal-coset-brute-force", brute_force_minimal_check(setup.system, setup.a_simple, bound),
                    length=bound)

    def verify_kernel(self, setup: DiracSetup, report: MultipletReport):
        self.record("dirac-square", all(e.dirac_square == 0 for e in report.entries), entries=len(report.entries))
        self.record("dominance", all(e.dominant for e in report.entries))
        inversions = [inversion_identity(setup, e) for e in report.entries]
        self.record("inversion-sets", all(all(v.values()) for v in inversions))
        if not report.complete:
            self.skip("character-identity", "length bound reached before the cutoff")
        elif any(setup.labels):
            signed = signed_character_identity(setup, report)
            self.record("signed-character-identity", signed["holds"], signed["discrepancies"], form=signed["form"])
        else:
            discrepancies = theorem_character_identity(setup, report)
            self.record("kernel-character-identity", not discrepancies, discrepancies)
            signed = signed_character_identity(setup, report)
            self.record("signed-character-identity", signed["holds"], signed["discrepancies"], form=signed["form"])
        if "closed_form_agrees" in report.extras:
            self.record("level-one-closed-form", report.extras["closed_form_agrees"], case=report.extras["case"])
        if "inversions_outside_a" in report.extras:
            self.record("level-one-inversions", report.extras["inversions_outside_a"], case=report.extras["case"])

    def verify_asdim(self, setup: DiracSetup, report: MultipletReport):
        kappa = setup.level + setup.g_datum.level
        equal_rank = setup.spec.zero_mode_dimension == 0
        if equal_rank and setup.a.center_fixed_basis and center_lattice(setup, kappa).spans_center:
            signed = signed_asdim_sum(setup, report)
            self.record("signed-asdim-sum", signed["holds"], value=signed["sum"])
        else:
            self.skip("signed-asdim-sum", "needs equal rank and a center spanned by M_0")
        if setup.mu.order == 2 and not any(setup.labels) and len(setup.a.center_fixed_basis) <= 1:
            result = multiplet_asdim_sum(setup, report)
            self.record("multiplet-asdim-sum", result["holds"], lhs=result["lhs"], rhs=result["rhs"],
                        chi=result["chi"], center_dimension=result["center_dimension"])
            self.record("clifford-asdim", result["fock_consistent"], asdim=result["fock_asdim"])
        else:
            self.skip("multiplet-asdim-sum", "needs an involution mu and Lambda = 0")
        if setup.spec.dimension == 0:
            self.skip("central-charge", "p is zero")
            return
        at_zero = central_charge(setup, 0)
        at_one = central_charge(setup, 1)
        self.record("central-charge", at_zero.vanishes == at_zero.symmetric and at_one.value > 0,
                    at_zero=str(at_zero.value), at_one=str(at_one.value), symmetric=at_zero.symmetric)

    def verify_orthogonal(self, config: SetupConfig):
        t = config.orthogonal
        report = so_pair_decomposition(t, config.cutoff)
        self.record("orthogonal-decomposition", report.holds, report.discrepancies, formula=report.formula)
        expected = clifford_asdim(report.spec)["asdim"]
        value = orthogonal_asdim(report)
        self.record("orthogonal-asdim", abs(value - expected) < TOLERANCE, asdim=value, clifford_asdim=expected)
        if t.toral:
            self.record("orthogonal-vs-kernel", compare_with_kernel(t, config.cutoff, config.length_bound))

    def compare_golden(self, setup: DiracSetup, report: MultipletReport):
        golden = parse_multiplet(read_report(self.args.golden)["kernel"], setup.rs.rank)
        current = parse_multiplet(multiplet_dict(report), setup.rs.rank)
        mismatch = None
        for i, (g, c) in enumerate(zip(golden.entries, current.entries)):
            if g.weight != c.weight:
                mismatch = {"entry": i, "golden": str(g.weight), "computed": str(c.weight)}
                break
        if mismatch is None and len(golden.entries) != len(current.entries):
            mismatch = {"entry": min(len(golden.entries), len(current.entries)), "golden_entries": len(golden.entries),
                        "computed_entries": len(current.entries)}
        if mismatch is None and golden.power != current.power:
            mismatch = {"power": {"golden": golden.power, "computed": current.power}}
        self.record("golden-report", mismatch is None, **({"mismatch": mismatch} if mismatch else {}))


def setup(subparsers):
    parser = subparsers.add_parser("verify", help="Check every applicable identity")
    add_common_arguments(parser)
    parser.add_argument("--golden", default=None, help="Reference decompose report to compare against")
    parser.set_defaults(handler=guarded(lambda args: VerifyCommand(args).run()))
