# tests/test_dirac.py
from fractions import Fraction
from types import SimpleNamespace

import pytest

from kacdirac.dirac import (
    OrthogonalClass, build_setup, check_hypotheses, compare_with_kernel, dirac_square_check, fixed_cartan_vanishing,
    inversion_identity, kernel_decomposition, level_one_case, level_one_decomposition, rho_prime,
    signed_character_identity, so_pair_decomposition, so_pair_setup, theorem_character_identity,
)
from kacdirac.rootcore import DiagramAut, build_root_system
from kacdirac.setups import load_setup
from kacdirac.twistaff import TwistedAutomorphism
from kacdirac.utils import SetupError, UnsupportedSetup

HALF = Fraction(1, 2)


def cartan_setup(rs, labels):
    mu = TwistedAutomorphism(DiagramAut((0,)), (HALF,))
    return build_setup("sl2-gl1-lambda", rs, TwistedAutomorphism.identity(1), mu, labels)


@pytest.mark.parametrize("fixture", ["sl2_gl1", "sl3_gl2"])
def test_kernel_entries_are_dirac_zero(fixture, request):
    setup, report = request.getfixturevalue(fixture)
    assert check_hypotheses(setup) == []
    assert report.entries
    assert report.verified()
    assert report.power == 0 and report.multiplicity == 1
    assert all(dirac_square_check(setup, e.weight) == 0 for e in report.entries)
    assert report.entries[0].length == 0


@pytest.mark.parametrize("fixture", ["sl2_gl1", "sl3_gl2"])
def test_full_character_identity(fixture, request):
    setup, report = request.getfixturevalue(fixture)
    assert report.complete
    assert theorem_character_identity(setup, report) == []


@pytest.mark.parametrize("fixture", ["sl2_gl1", "sl3_gl2"])
def test_signed_identity_equal_rank(fixture, request):
    setup, report = request.getfixturevalue(fixture)
    result = signed_character_identity(setup, report)
    assert result["form"] == "equal-rank"
    assert result["holds"], result["discrepancies"][:1]


def test_inversion_sets_of_the_multiplet(sl2_gl1):
    setup, report = sl2_gl1
    for entry in report.entries:
        checks = inversion_identity(setup, entry)
        assert checks["sum"] and checks["length"]


def test_signed_identity_with_nonzero_lambda(a1):
    setup = cartan_setup(a1, [0, 1])
    report = kernel_decomposition(setup)
    assert report.verified()
    assert signed_character_identity(setup, report)["holds"]
    with pytest.raises(UnsupportedSetup):
        theorem_character_identity(setup, report)


def test_diagonal_spin_kernel_is_rho(diag_sl2):
    report = level_one_decomposition(diag_sl2, "spin")
    assert report.power == 1
    assert report.extras["case"] == "non-simple"
    assert report.extras["single_rho_entry"]
    assert report.extras["closed_form_agrees"]


def test_diagonal_identity_vanishes_off_equal_rank(diag_sl2):
    report = kernel_decomposition(diag_sl2)
    result = signed_character_identity(diag_sl2, report)
    assert result["form"] == "vanishing"
    assert result["holds"]


def test_basic_plus_vector_closed_form():
    setup = load_setup("sl3-outer-vector")
    report = level_one_decomposition(setup, "basic+vector")
    assert report.extras["case"] == "A-even-outer"
    assert report.extras["closed_form_agrees"]
    assert report.verified()


def test_level_one_guards(sl2_gl1, diag_sl2):
    setup, _ = sl2_gl1
    with pytest.raises(SetupError, match="kind"):
        level_one_decomposition(setup, "adjoint")
    with pytest.raises(SetupError, match="sigma = mu"):
        level_one_decomposition(diag_sl2, "basic+vector")


def test_inner_spin_closed_form(sl2_gl1):
    setup, _ = sl2_gl1
    report = level_one_decomposition(setup, "spin")
    assert report.extras["case"] == "inner"
    assert report.extras["closed_form_agrees"]
    assert report.entries[0].weight.finite == setup.rs.rho


def test_even_rank_outer_spin_inverts_odd_doubled_short_roots():
    setup = load_setup("sl3-so3")
    start = rho_prime(setup)
    assert start.finite == (1, 1) and start.levels == (3,)
    report = level_one_decomposition(setup, "spin")
    assert report.extras["case"] == "A-even-outer"
    assert report.extras["rho_prime_agrees"]
    assert report.extras["inversions_outside_a"]
    assert report.extras["closed_form_agrees"]
    assert len(report.entries) > 1


def test_outer_spin_of_sl4_over_sp4():
    setup = load_setup("sl4-sp4")
    report = level_one_decomposition(setup, "spin")
    assert report.extras["case"] == "outer"
    assert report.extras["rho_prime_agrees"]
    assert report.extras["closed_form_agrees"]
    assert len(report.entries) == 1
    assert report.power == 1


@pytest.mark.parametrize("types, permutation, shift", [
    (["A1", "A1"], (1, 0), (HALF, HALF)),
    (["A1", "A2"], (0, 1, 2), (HALF, 0, 0)),
])
def test_level_one_case_rejects_other_pairs(types, permutation, shift):
    setup = SimpleNamespace(rs=build_root_system(types), mu=TwistedAutomorphism(DiagramAut(permutation), shift))
    with pytest.raises(UnsupportedSetup):
        level_one_case(setup)


def test_level_one_case_needs_an_involution(a2):
    mu = TwistedAutomorphism(DiagramAut((0, 1)), (Fraction(1, 3), Fraction(1, 3)))
    with pytest.raises(SetupError, match="involution"):
        level_one_case(SimpleNamespace(rs=a2, mu=mu))


def test_fixed_cartan_vanishing_is_informational(sl2_gl1, a1):
    setup, report = sl2_gl1
    assert not fixed_cartan_vanishing(setup)
    assert report.extras["fixed_cartan_vanishing"] is False
    assert report.verified()
    inner = TwistedAutomorphism(DiagramAut((0,)), (HALF,))
    assert fixed_cartan_vanishing(build_setup("sl2-gl1-twisted", a1, inner, inner))


@pytest.mark.parametrize("dim, det, angles, drop", [
    (5, -1, ["1/2", "1/2"], HALF),
    (6, 1, ["1/4", "1/4", "1/2"], Fraction(1, 4)),
    (6, 1, ["0", "0", "0"], 0),
])
def test_parity_partner_sits_on_a_twin_node(dim, det, angles, drop):
    report = so_pair_decomposition(OrthogonalClass(dim, det, tuple(Fraction(a) for a in angles)))
    top, partner = report.entries
    assert top.delta - partner.delta == drop
    assert report.nodes[0] != report.nodes[1]


@pytest.mark.parametrize("dim, det, angles, power", [
    (5, 1, ["0", "0"], 1),
    (5, -1, ["1/2", "1/2"], 0),
    (6, 1, ["0", "0", "0"], 0),
    (6, 1, ["1/4", "1/4", "1/2"], 0),
    (7, 1, ["0", "0", "0"], 1),
    (7, -1, ["0", "0", "0"], 0),
    (8, 1, ["0", "0", "0", "0"], 0),
    (8, -1, ["0", "0", "0"], 1),
])
def test_orthogonal_decomposition(dim, det, angles, power):
    report = so_pair_decomposition(OrthogonalClass(dim, det, tuple(Fraction(a) for a in angles)))
    assert report.power == power
    assert len(report.entries) == (1 if power else 2)
    assert report.holds, report.discrepancies[:1]


@pytest.mark.parametrize("dim", [5, 6])
def test_orthogonal_decomposition_matches_the_kernel(dim):
    t = OrthogonalClass(dim, 1, tuple(Fraction(0) for _ in range(dim // 2)))
    assert compare_with_kernel(t)


def test_orthogonal_class_validation():
    with pytest.raises(UnsupportedSetup):
        OrthogonalClass(4, 1, (Fraction(0), Fraction(0)))
    with pytest.raises(SetupError, match="rotation phases"):
        OrthogonalClass(6, 1, (Fraction(0),))
    with pytest.raises(SetupError, match="det"):
        OrthogonalClass(5, 2, (Fraction(0), Fraction(0)))
    assert OrthogonalClass(8, -1, (Fraction(0),) * 3).case == "even-det-1"


def test_non_toral_class_has_no_pair():
    with pytest.raises(UnsupportedSetup):
        so_pair_setup(OrthogonalClass(8, -1, (Fraction(0),) * 3))
