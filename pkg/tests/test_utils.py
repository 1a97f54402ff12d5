# tests/test_utils.py
from fractions import Fraction

import pytest

from kacdirac.utils import (
    Cache, Projector, SetupError, SpanCoordinates, format_rational, frac_mod1, gram_determinant,
    lattice_basis, lattice_intersection, nullspace, orbit_average, parse_cutoff, parse_rational, parse_vector,
)


@pytest.mark.parametrize("value, expected", [
    ("3/4", Fraction(3, 4)),
    (" -1/2 ", Fraction(-1, 2)),
    (2, Fraction(2)),
    (Fraction(5, 3), Fraction(5, 3)),
])
def test_parse_rational(value, expected):
    assert parse_rational(value) == expected


@pytest.mark.parametrize("value", ["1/0", "half", 0.5, True, None])
def test_parse_rational_rejects(value):
    with pytest.raises(SetupError):
        parse_rational(value, "shift")


def test_parse_error_names_the_field():
    with pytest.raises(SetupError, match=r"sigma.shift\[1\]"):
        parse_vector(["0", "x/2"], "sigma.shift")


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


def test_frac_mod1():
    assert frac_mod1(Fraction(-1, 3)) == Fraction(2, 3)
    assert frac_mod1(Fraction(7, 4)) == Fraction(3, 4)


def test_parse_cutoff():
    assert parse_cutoff("3/2") == Fraction(3, 2)
    with pytest.raises(SetupError):
        parse_cutoff("-1")


def test_nullspace_dot_product():
    basis = nullspace([(Fraction(1), Fraction(1), Fraction(0))], 3)
    assert len(basis) == 2
    for b in basis:
        assert b[0] + b[1] == 0


def test_span_coordinates():
    coords = SpanCoordinates([(Fraction(1), Fraction(1))], 2)
    assert coords((Fraction(3), Fraction(3))) == (Fraction(3),)
    assert coords((Fraction(1), Fraction(0))) is None
    with pytest.raises(SetupError):
        SpanCoordinates([(1, 0), (2, 0)], 2)


def test_projector_uses_the_gram_matrix():
    gram = [[Fraction(2), Fraction(-1)], [Fraction(-1), Fraction(2)]]
    projector = Projector([(Fraction(1), Fraction(0))], gram)
    image = projector((Fraction(0), Fraction(1)))
    assert image == (Fraction(-1, 2), Fraction(0))


def test_orbit_average():
    assert orbit_average((Fraction(1), Fraction(0)), [(1, 0)]) == (Fraction(1, 2), Fraction(1, 2))


def test_lattice_basis_and_intersection():
    basis = lattice_basis([(Fraction(2), Fraction(0)), (Fraction(0), Fraction(2)), (Fraction(2), Fraction(2))])
    assert len(basis) == 2
    line = lattice_intersection([(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))],
                                [(Fraction(1), Fraction(2))], 2)
    assert line in ([(Fraction(1), Fraction(2))], [(Fraction(-1), Fraction(-2))])


def test_lattice_basis_drops_dependent_generators():
    assert lattice_basis([(Fraction(-1),), (Fraction(1),)]) == [(Fraction(1),)]
    assert lattice_basis([(Fraction(4),), (Fraction(6),)]) == [(Fraction(2),)]
    halves = lattice_basis([(Fraction(1, 2), Fraction(1, 2)), (Fraction(1), Fraction(1))])
    assert halves in ([(Fraction(1, 2), Fraction(1, 2))], [(Fraction(-1, 2), Fraction(-1, 2))])


def test_lattice_intersection_with_the_whole_space():
    whole = lattice_intersection([(Fraction(-1),), (Fraction(1),)], [(Fraction(1),)], 1)
    assert whole == [(Fraction(1),)]


def test_gram_determinant():
    gram = [[Fraction(2), Fraction(-1)], [Fraction(-1), Fraction(2)]]
    assert gram_determinant([(Fraction(1), Fraction(2))], gram) == 6
    assert gram_determinant([], gram) == 1


def test_catalog_lookup_errors(tmp_path):
    with pytest.raises(SetupError, match="Unknown setup"):
        Cache.load_setup("no-such-setup")
    bad = tmp_path / "bad.yaml"
    bad.write_text("- just\n- a list\n")
    with pytest.raises(SetupError, match="not a mapping"):
        Cache.load_setup(str(bad))


def test_catalog_entries_are_copies():
    first = Cache.load_setup("sl2-untwisted")
    first["name"] = "changed"
    assert Cache.load_setup("sl2-untwisted")["name"] == "sl2-untwisted"
