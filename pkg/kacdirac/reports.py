# kacdirac/reports.py
import logging
import os
from typing import Dict, List, Optional, Sequence

import yaml

from kacdirac.charworks import Discrepancy, GradedCharacter
from kacdirac.dirac import MultipletEntry, MultipletReport, OrthogonalReport
from kacdirac.rootcore import GradedTable
from kacdirac.twistaff import AffineRootDatum
from kacdirac.utils import REPORT_PATH, SetupError, format_rational, parse_rational
from kacdirac.weights import Weight

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


# --- Emission ---
def _rationals(values: Sequence) -> List[str]:
    return [format_rational(x) for x in values]


def table_dict(table: GradedTable) -> List[Dict]:
    rows = []
    for cls in sorted(table):
        for weight in sorted(table[cls]):
            rows.append({"class": format_rational(cls), "weight": _rationals(weight),
                         "multiplicity": table[cls][weight]})
    return rows


def root_data_dict(datum: AffineRootDatum) -> Dict:
    return {
        "algebra": datum.rs.labels(),
        "marks": _rationals(datum.marks),
        "simple_roots": [a.as_dict(()) for a in datum.simple_roots],
        "cartan_matrix": [_rationals(row) for row in datum.cartan],
        "null_vectors": [list(v) for v in datum.null_vectors],
        "dual_coxeter": format_rational(datum.level),
        "rho_hat": datum.rho_hat.as_dict(("K",)),
        "rho_hat_pairings": _rationals(datum.coroot_pairing(datum.rho_hat, a) for a in datum.simple_roots),
        "multiplicities": table_dict(datum.table),
    }


def entry_dict(entry: MultipletEntry, level_labels: Sequence[str]) -> Dict:
    return {
        "weight": entry.weight.as_dict(level_labels),
        "word": list(entry.word),
        "lift_word": list(entry.lift_word),
        "length": entry.length,
        "dirac_square": format_rational(entry.dirac_square),
        "dominant": entry.dominant,
    }


def multiplet_dict(report: MultipletReport) -> Dict:
    data = {
        "name": report.name,
        "power": report.power,
        "multiplicity": report.multiplicity,
        "complete": report.complete,
        "length_bound": report.length_bound,
        "level_labels": list(report.level_labels),
        "entries": [entry_dict(e, report.level_labels) for e in report.entries],
    }
    if report.extras:
        data["extras"] = {k: v for k, v in sorted(report.extras.items())}
    return data


def orthogonal_dict(report: OrthogonalReport) -> Dict:
    t = report.orthogonal_class
    return {
        "dim": t.dim,
        "det": t.det,
        "angles": _rationals(t.angles),
        "case": t.case,
        "formula": report.formula,
        "power": report.power,
        "nodes": list(report.nodes),
        "entries": [w.as_dict(("K",)) for w in report.entries],
        "marks": _rationals(report.datum.marks),
        "holds": report.holds,
        "discrepancies": [d.as_dict() for d in report.discrepancies[:1]],
    }


def clifford_dict(row: Dict) -> Dict:
    return {**row, "exponent": format_rational(row["exponent"])}


def character_dict(ch: GradedCharacter) -> Dict:
    return ch.as_dict()


def verdict_dict(name: str, holds: bool, discrepancies: Optional[List[Discrepancy]] = None, **details) -> Dict:
    """One identity: pass/fail plus the first discrepancy."""
    data = {"identity": name, "holds": bool(holds)}
    if discrepancies:
        data["first_discrepancy"] = discrepancies[0].as_dict()
        data["discrepancy_count"] = len(discrepancies)
    data.update({k: v for k, v in sorted(details.items())})
    return data


# --- Files ---
def dump_report(data: Dict) -> str:
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None, allow_unicode=True)


def write_report(data: Dict, path: Optional[str] = None, name: str = "report") -> str:
    if path is None:
        os.makedirs(REPORT_PATH, exist_ok=True)
        path = os.path.join(REPORT_PATH, f"{name}.yaml")
    else:
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dump_report(data))
    logger.info(f"Report written to {path}")
    return path


def read_report(path: str) -> Dict:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f.read())
    except (OSError, yaml.YAMLError) as e:
        raise SetupError(f"Cannot read report {path}: {e}") from e
    if not isinstance(data, dict):
        raise SetupError(f"Report {path} is not a mapping")
    return data


# --- Parsing back ---
def parse_multiplet(data: Dict, rank: int) -> MultipletReport:
    labels = data.get("level_labels", [])
    entries = []
    for e in data.get("entries", []):
        entries.append(MultipletEntry(Weight.from_dict(e["weight"], rank, labels), tuple(e["word"]),
                                      tuple(e["lift_word"]), int(e["length"]),
                                      parse_rational(e["dirac_square"], "dirac_square"), bool(e["dominant"])))
    return MultipletReport(data["name"], entries, int(data["power"]), bool(data["complete"]),
                           int(data["length_bound"]), list(labels), dict(data.get("extras", {})))


def parse_character(data: Dict) -> GradedCharacter:
    ch = GradedCharacter(tuple(parse_rational(x, "levels") for x in data["levels"]),
                         parse_rational(data["top_delta"], "top_delta"), parse_rational(data["cutoff"], "cutoff"))
    for term in data.get("terms", []):
        ch.add_term(parse_rational(term["depth"], "depth"),
                    tuple(parse_rational(x, "finite") for x in term["finite"]), int(term["coefficient"]))
    return ch
