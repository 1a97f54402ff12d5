# tests/test_fock.py
from fractions import Fraction

import pytest

from kacdirac.charworks import restrict_and_compare
from kacdirac.dirac import OrthogonalClass, so_realization
from kacdirac.fock import (
    SpinorMonomial, enumerate_monomials, graded_character, monomial_weight, product_character, standalone_spec,
    zero_weight_check,
)
from kacdirac.setups import load_setup
from kacdirac.utils import VerificationError


def test_cartan_pair_slices(sl2_gl1):
    setup, _ = sl2_gl1
    spec = setup.spec
    assert spec.dimension == 2
    assert spec.zero_mode_dimension == 0 and spec.power == 0
    total, even, odd = graded_character(spec, 2)
    assert [total.slice_dimension(d) for d in range(3)] == [2, 4, 6]
    assert total.coefficient(0, spec.top.finite) == 1
    assert even.slice_dimension(0) == 1 and odd.slice_dimension(0) == 1


def test_monomials_are_increasing():
    with pytest.raises(ValueError):
        SpinorMonomial((2, 1))
    assert SpinorMonomial((0, 3)).parity == 0


@pytest.mark.parametrize("name", ["sl2-gl1", "sl3-gl2", "sl3-so3", "diag-sl2", "sl3-outer-vector"])
def test_monomials_match_product_formula(name):
    setup = load_setup(name, cutoff="3")
    total, _, _ = graded_character(setup.spec, 3)
    assert restrict_and_compare(total, product_character(setup.spec, 3), 3) == []


def test_zero_modes_double_the_top(diag_sl2):
    spec = diag_sl2.spec
    assert spec.zero_mode_dimension == 1
    assert spec.power == 1
    total, _, _ = graded_character(spec, 1)
    assert total.coefficient(0, spec.top.finite) == 2


def test_so4_over_so3_spec(diag_sl2):
    spec = diag_sl2.spec
    half = Fraction(1, 2)
    assert spec.dimension == 3
    assert set(spec.table) == {0}
    weights = sorted((w, m) for ws in spec.table.values() for w, m in ws.items())
    assert weights == [((-half, -half), 1), ((0, 0), 1), ((half, half), 1)]
    assert spec.zero_mode_dimension == 1
    total, _, _ = graded_character(spec, 0)
    assert total.slice_dimension(0) == 4
    fermionic = [m for m in enumerate_monomials(spec, 0)
                 if all(spec.generators[p].species == "xi" for p in m.positions)]
    assert len(fermionic) == 2
    assert [spec.generators[p].finite for m in fermionic for p in m.positions] == [(-half, -half)]


def test_weights_lie_in_the_restriction_image(diag_sl2, sl2_gl1):
    assert zero_weight_check(diag_sl2.spec, diag_sl2.a, 2)
    setup, _ = sl2_gl1
    assert zero_weight_check(setup.spec, setup.a, 2)


@pytest.mark.parametrize("dim, det, angles", [
    (5, 1, ["0", "0"]),
    (5, -1, ["1/2", "1/2"]),
    (6, 1, ["1/4", "1/4", "1/2"]),
    (7, -1, ["0", "0", "0"]),
    (8, -1, ["0", "0", "0"]),
])
def test_orthogonal_clifford_modules(dim, det, angles):
    t = OrthogonalClass(dim, det, tuple(Fraction(a) for a in angles))
    rs, _, table = so_realization(t)
    assert sum(sum(ws.values()) for ws in table.values()) == dim
    spec = standalone_spec(rs, table, [1], 3)
    total, _, _ = graded_character(spec, 3)
    assert restrict_and_compare(total, product_character(spec, 3), 3) == []


def test_enumeration_respects_cutoff(sl2_gl1):
    setup, _ = sl2_gl1
    spec = setup.spec
    assert len(enumerate_monomials(spec, 0)) == 2
    assert all(sum(spec.generators[p].depth for p in m.positions) <= 1 for m in enumerate_monomials(spec, 1))
    with pytest.raises(VerificationError):
        graded_character(spec, spec.cutoff + 1)


def test_monomial_weights(sl2_gl1):
    setup, _ = sl2_gl1
    spec = setup.spec
    assert monomial_weight(SpinorMonomial(), spec) == spec.top
    lowered = monomial_weight(SpinorMonomial((0,)), spec)
    assert lowered.finite == (Fraction(-1, 2),)
    assert lowered.delta == spec.top.delta
    assert lowered.levels == spec.top.levels
