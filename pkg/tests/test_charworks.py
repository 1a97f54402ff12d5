# tests/test_charworks.py
from fractions import Fraction

import pytest

from kacdirac.charworks import (
    GradedCharacter, KostantCounter, dominant_weights_of_level, freudenthal_character, heisenberg_character,
    restrict_and_compare, weyl_kac_character,
)
from kacdirac.rootcore import DiagramAut
from kacdirac.twistaff import TwistedAutomorphism, fundamental_solve, twisted_simple_roots
from kacdirac.utils import SetupError
from kacdirac.weights import Weight


@pytest.fixture(scope="module")
def affine_a1(a1):
    return twisted_simple_roots(a1, TwistedAutomorphism.identity(1))


@pytest.fixture(scope="module")
def twisted_a2(a2):
    return twisted_simple_roots(a2, TwistedAutomorphism(DiagramAut((1, 0)), (0, 0)))


def slices(ch, depth):
    return [ch.slice_dimension(d) for d in range(depth + 1)]


def test_basic_module_of_a1(affine_a1):
    basic = fundamental_solve(affine_a1, [1, 0])
    ch = freudenthal_character(affine_a1, basic, 3)
    assert slices(ch, 3) == [1, 3, 4, 7]
    assert ch.coefficient(2, (0,)) == 2
    assert ch.coefficient(1, (1,)) == 1


def test_spin_module_of_a1(affine_a1):
    ch = freudenthal_character(affine_a1, fundamental_solve(affine_a1, [0, 1]), 2)
    assert slices(ch, 2) == [2, 2, 6]


@pytest.mark.parametrize("labels", [[1, 0], [0, 1], [2, 0], [1, 1]])
def test_freudenthal_matches_weyl_kac_a1(affine_a1, labels):
    weight = fundamental_solve(affine_a1, labels)
    assert restrict_and_compare(freudenthal_character(affine_a1, weight, 2),
                                weyl_kac_character(affine_a1, weight, 2)) == []


@pytest.mark.parametrize("labels", [[1, 0], [0, 1], [2, 0]])
def test_freudenthal_matches_weyl_kac_twisted(twisted_a2, labels):
    weight = fundamental_solve(twisted_a2, labels)
    assert restrict_and_compare(freudenthal_character(twisted_a2, weight, 2),
                                weyl_kac_character(twisted_a2, weight, 2)) == []


def test_trivial_module(affine_a1):
    ch = freudenthal_character(affine_a1, fundamental_solve(affine_a1, [0, 0]), 3)
    assert ch.terms() == [(0, (0,), 1)]


def test_not_dominant(affine_a1):
    with pytest.raises(SetupError, match="not dominant"):
        freudenthal_character(affine_a1, Weight((Fraction(-1, 2),), (Fraction(1),), 0), 1)


def test_heisenberg_partitions():
    ch = heisenberg_character(Weight((0,), (1,), 0), {Fraction(0): 1}, 5)
    assert slices(ch, 5) == [1, 1, 2, 3, 5, 7]
    half = heisenberg_character(Weight((0,), (1,), 0), {Fraction(1, 2): 1}, 2)
    assert [half.slice_dimension(Fraction(k, 2)) for k in range(5)] == [1, 1, 1, 2, 2]


def test_kostant_counts(affine_a1):
    counter = KostantCounter(affine_a1, Fraction(2))
    # delta itself or alpha_0 + alpha_1
    assert counter.count((1, 1)) == 2
    assert counter.count((0, 0)) == 1


def test_dominant_weights_of_level(affine_a1, twisted_a2):
    assert len(dominant_weights_of_level(affine_a1, 1)) == 2
    assert len(dominant_weights_of_level(affine_a1, 2)) == 3
    assert all(affine_a1.is_dominant_integral(w) for w in dominant_weights_of_level(affine_a1, 2))
    assert len(dominant_weights_of_level(twisted_a2, 1)) == 1


def test_character_arithmetic():
    x = GradedCharacter((Fraction(1),), 0, 2, {(Fraction(0), (Fraction(0),)): 1})
    y = GradedCharacter((Fraction(1),), 0, 2, {(Fraction(1), (Fraction(1),)): 2})
    total = x + y
    assert total.terms() == [(0, (0,), 1), (1, (1,), 2)]
    assert (total - y).terms() == x.terms()
    assert (x * y).levels == (2,)
    assert len(restrict_and_compare(total, x)) == 1
    with pytest.raises(SetupError):
        restrict_and_compare(x, GradedCharacter((Fraction(2),), 0, 2))
    with pytest.raises(SetupError):
        restrict_and_compare(x, x, 3)


def test_rebase_keeps_weights():
    x = GradedCharacter((Fraction(1),), Fraction(-1), 2, {(Fraction(1), (Fraction(0),)): 4})
    shifted = x.rebase(0)
    assert shifted.coefficient(2, (0,)) == 4
    with pytest.raises(SetupError):
        x.rebase(-2)
