# tests/test_asdim.py
from fractions import Fraction
from math import sqrt

import pytest

from kacdirac.asdim import (
    affine_asdim, asdim_report, center_lattice, central_charge, clifford_asdim, conformal_anomaly,
    finite_representatives, multiplet_asdim_sum, orthogonal_asdim, signed_asdim_sum,
)
from kacdirac.charworks import dominant_weights_of_level
from kacdirac.dirac import OrthogonalClass, build_setup, so_pair_decomposition
from kacdirac.rootcore import DiagramAut, build_root_system
from kacdirac.twistaff import TwistedAutomorphism, fundamental_solve, twisted_simple_roots
from kacdirac.utils import HypothesisError, SetupError


@pytest.fixture(scope="module")
def affine_a1(a1):
    return twisted_simple_roots(a1, TwistedAutomorphism.identity(1))


def test_level_one_a1(affine_a1):
    assert affine_asdim(affine_a1, fundamental_solve(affine_a1, [1, 0])) == pytest.approx(1 / sqrt(2))
    assert affine_asdim(affine_a1, fundamental_solve(affine_a1, [0, 1])) == pytest.approx(1 / sqrt(2))


@pytest.mark.parametrize("level", [1, 2, 3])
def test_squares_sum_to_one(affine_a1, level):
    values = [affine_asdim(affine_a1, w) for w in dominant_weights_of_level(affine_a1, level)]
    assert sum(v * v for v in values) == pytest.approx(1.0)


def test_not_dominant(affine_a1):
    with pytest.raises(SetupError):
        affine_asdim(affine_a1, fundamental_solve(affine_a1, [1, 0]) - affine_a1.simple_roots[1])


def test_conformal_anomaly(affine_a1):
    assert conformal_anomaly(affine_a1, 1) == 1
    b2 = twisted_simple_roots(build_root_system(["B2"]), TwistedAutomorphism.identity(2))
    assert conformal_anomaly(b2, 1) == Fraction(10, 4)


def test_cartan_pair_lattice(sl2_gl1):
    setup, report = sl2_gl1
    lattice = center_lattice(setup, setup.g_datum.level)
    assert lattice.spans_center
    assert lattice.index == 4
    assert len(finite_representatives(setup, report, lattice)) == 2


def test_multiplet_asdim_sum_sl2_gl1(sl2_gl1):
    result = multiplet_asdim_sum(*sl2_gl1)
    assert result["index"] == 4
    assert result["rhs"] == pytest.approx(2.0)
    assert result["lhs"] == pytest.approx(2.0)
    assert result["holds"] and result["fock_consistent"]


def test_multiplet_asdim_sum_sl3_gl2(sl3_gl2):
    result = multiplet_asdim_sum(*sl3_gl2)
    assert result["index"] == 18
    assert result["rhs"] == pytest.approx(3 * sqrt(2))
    assert result["holds"]


@pytest.mark.parametrize("fixture", ["sl2_gl1", "sl3_gl2"])
def test_signed_sum_vanishes(fixture, request):
    result = signed_asdim_sum(*request.getfixturevalue(fixture))
    assert result["sum"] == pytest.approx(0.0, abs=1e-9)
    assert result["holds"]


def test_signed_sum_needs_equal_rank(diag_sl2):
    with pytest.raises(HypothesisError):
        signed_asdim_sum(diag_sl2, None)


@pytest.mark.parametrize("dim, det, angles, row, value", [
    (6, 1, ["0", "0", "0"], "even-even", 1.0),
    (8, -1, ["0", "0", "0"], "odd-odd", sqrt(2)),
    (5, -1, ["1/2", "1/2"], "even-odd", 1.0),
    (5, 1, ["0", "0"], "odd-even", sqrt(2)),
])
def test_clifford_rows(dim, det, angles, row, value):
    report = so_pair_decomposition(OrthogonalClass(dim, det, tuple(Fraction(a) for a in angles)))
    result = clifford_asdim(report.spec)
    assert result["row"] == row
    assert result["asdim"] == pytest.approx(value)


def test_clifford_asdim_of_setups(sl2_gl1, diag_sl2):
    cartan = clifford_asdim(sl2_gl1[0].spec)
    assert cartan["row"] == "even-even"
    assert cartan["exponent"] == 0
    diagonal = clifford_asdim(diag_sl2.spec)
    assert diagonal["row"] == "odd-even"
    assert diagonal["exponent"] == Fraction(1, 2)
    assert diagonal["asdim"] == pytest.approx(sqrt(2))


@pytest.mark.parametrize("dim, det, angles, value", [
    (5, 1, ["0", "0"], sqrt(2)),
    (6, 1, ["0", "0", "0"], 1.0),
    (7, 1, ["0", "0", "0"], sqrt(2)),
    (5, -1, ["1/2", "1/2"], 1.0),
    (6, 1, ["1/4", "1/4", "1/2"], 1.0),
    (7, -1, ["0", "0", "0"], 1.0),
    (8, 1, ["0", "0", "0", "0"], 1.0),
    (8, -1, ["0", "0", "0"], sqrt(2)),
])
def test_orthogonal_asdim(dim, det, angles, value):
    report = so_pair_decomposition(OrthogonalClass(dim, det, tuple(Fraction(a) for a in angles)))
    assert orthogonal_asdim(report) == pytest.approx(value)
    assert clifford_asdim(report.spec)["asdim"] == pytest.approx(value)


def test_central_charge_of_cartan_pair(sl2_gl1):
    setup, _ = sl2_gl1
    at_zero = central_charge(setup)
    assert at_zero.value == 0 and at_zero.vanishes
    assert central_charge(setup, 1).value == 1
    assert central_charge(setup, 1).dominates


def test_central_charge_of_diagonal(diag_sl2):
    assert central_charge(diag_sl2, 0).value == 0
    assert central_charge(diag_sl2, 1).value == Fraction(3, 2)
    assert central_charge(diag_sl2, 0).balanced


def test_central_charge_needs_a_symmetric_pair(a2):
    mu = TwistedAutomorphism(DiagramAut((0, 1)), (Fraction(1, 3), Fraction(1, 3)))
    setup = build_setup("sl3-torus", a2, TwistedAutomorphism.identity(2), mu)
    result = central_charge(setup, 0)
    assert not result.symmetric
    assert result.value == 1
    assert not result.vanishes
    with pytest.raises(SetupError):
        central_charge(setup, -1)


def test_asdim_report_for_abelian_a(sl2_gl1):
    setup, report = sl2_gl1
    result = asdim_report(setup, report.entries[0].weight)
    assert result.per_ideal == []
    assert result.asdim == 1.0
    assert result.anomaly == 1
    assert result.lattice.index == 4
    assert result.chi == 0
