# tests/test_reports.py
from fractions import Fraction

import pytest
import yaml

from kacdirac.charworks import Discrepancy, GradedCharacter
from kacdirac.dirac import OrthogonalClass, so_pair_decomposition
from kacdirac.reports import (
    character_dict, multiplet_dict, orthogonal_dict, parse_character, parse_multiplet, read_report, root_data_dict,
    verdict_dict, write_report,
)
from kacdirac.utils import SetupError


def test_multiplet_survives_yaml(sl3_gl2):
    setup, report = sl3_gl2
    text = yaml.safe_dump(multiplet_dict(report))
    parsed = parse_multiplet(yaml.safe_load(text), setup.rs.rank)
    assert parsed.weights() == report.weights()
    assert parsed.power == report.power
    assert [e.word for e in parsed.entries] == [e.word for e in report.entries]


def test_rationals_are_strings(sl2_gl1):
    setup, report = sl2_gl1
    data = root_data_dict(setup.g_datum)
    assert data["marks"] == ["1", "0"]
    assert data["rho_hat_pairings"] == ["1", "1"]
    entry = multiplet_dict(report)["entries"][0]
    assert all(isinstance(v, str) for v in entry["weight"].values())
    assert entry["dirac_square"] == "0"


def test_character_dict():
    ch = GradedCharacter((Fraction(1),), Fraction(-1, 2), 2, {(Fraction(1, 2), (Fraction(1, 3),)): 5})
    data = character_dict(ch)
    assert data["terms"] == [{"depth": "1/2", "finite": ["1/3"], "coefficient": 5}]
    assert parse_character(data).terms() == ch.terms()


def test_verdict_keeps_first_discrepancy():
    first = Discrepancy(Fraction(1), (Fraction(0),), 3, 2)
    data = verdict_dict("identity", False, [first, Discrepancy(Fraction(2), (Fraction(0),), 1, 0)], form="x")
    assert data["first_discrepancy"] == {"depth": "1", "finite": ["0"], "lhs": 3, "rhs": 2}
    assert data["discrepancy_count"] == 2
    assert data["form"] == "x"
    assert "first_discrepancy" not in verdict_dict("identity", True)


def test_orthogonal_dict():
    data = orthogonal_dict(so_pair_decomposition(OrthogonalClass(5, -1, (Fraction(1, 2), Fraction(1, 2)))))
    assert data["case"] == "odd-det-1"
    assert data["holds"]
    assert len(data["entries"]) == 2


def test_write_and_read(tmp_path):
    path = write_report({"name": "x", "values": ["1/2"]}, str(tmp_path / "out" / "x.yaml"))
    assert read_report(path) == {"name": "x", "values": ["1/2"]}


def test_read_errors(tmp_path):
    with pytest.raises(SetupError):
        read_report(str(tmp_path / "missing.yaml"))
    bad = tmp_path / "list.yaml"
    bad.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(SetupError, match="not a mapping"):
        read_report(str(bad))
