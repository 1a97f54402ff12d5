# tests/test_weights.py
from fractions import Fraction

import pytest

from kacdirac.weights import Weight


def test_roots_add_to_any_level():
    w = Weight((Fraction(1, 2),), (Fraction(1), Fraction(2)), 0)
    shifted = w + Weight.root((1,), -1)
    assert shifted.levels == (1, 2)
    assert shifted.finite == (Fraction(3, 2),)
    assert shifted.delta == -1


def test_level_needs_one_slot():
    assert Weight((0,), (3,)).level == 3
    assert Weight.root((0,)).level == 0
    with pytest.raises(ValueError):
        Weight((0,), (1, 1)).level


def test_dict_form():
    w = Weight((Fraction(1, 3), 0), (Fraction(5, 2),), Fraction(-1, 2))
    data = w.as_dict(("K0",))
    assert data == {"a1": "1/3", "a2": "0", "K0": "5/2", "delta": "-1/2"}
    assert Weight.from_dict(data, 2, ["K0"]) == w
    assert str(w) == "(1/3, 0) K=5/2 delta=-1/2"
