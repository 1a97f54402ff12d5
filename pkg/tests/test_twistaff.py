# tests/test_twistaff.py
from fractions import Fraction

import pytest

from config.available_setups import AVAILABLE_SETUPS
from kacdirac.dirac import so_realization
from kacdirac.rootcore import DiagramAut, build_root_system
from kacdirac.setups import load_config
from kacdirac.twistaff import (
    TwistedAutomorphism, alcove_reduce, commutation_defect, eta_simple_roots, fundamental_solve, normalize_sigma_mu,
    reductive_datum, root_multiplicity, transport_root, twisted_simple_roots,
)
from kacdirac.utils import HypothesisError, SetupError
from kacdirac.weights import Weight

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def untwisted(rs):
    return TwistedAutomorphism.identity(rs.rank)


def test_untwisted_a1(a1):
    datum = twisted_simple_roots(a1, untwisted(a1))
    assert datum.marks == [1, 0]
    assert datum.cartan == [[2, -2], [-2, 2]]
    assert datum.level == 2
    assert datum.null_vectors == [[1, 1]]


def test_outer_a2_is_a2_twisted(a2):
    datum = twisted_simple_roots(a2, TwistedAutomorphism(DiagramAut((1, 0)), (0, 0)))
    assert datum.marks == [HALF, 0]
    assert datum.cartan == [[2, -4], [-1, 2]]
    assert datum.null_vectors == [[1, 2]]
    assert datum.level == 3


def test_inner_shift_a2(a2):
    datum = twisted_simple_roots(a2, TwistedAutomorphism(DiagramAut((0, 1)), (THIRD, THIRD)))
    assert sorted(datum.marks) == [THIRD, THIRD, THIRD]
    assert sorted(sorted(row) for row in datum.cartan) == [[-1, -1, 2]] * 3


def test_triality_d4():
    rs = build_root_system(["D4"])
    datum = twisted_simple_roots(rs, TwistedAutomorphism(DiagramAut((2, 1, 3, 0)), (0,) * 4))
    assert datum.rank == 3
    assert datum.marks == [THIRD, 0, 0]
    assert datum.level == 6


def test_shift_outside_the_box_is_walked_into_the_alcove(a1):
    datum = twisted_simple_roots(a1, TwistedAutomorphism(DiagramAut((0,)), (Fraction(3, 2),)))
    assert sorted(datum.marks) == [HALF, HALF]
    assert all(datum.coroot_pairing(datum.rho_hat, a) == 1 for a in datum.simple_roots)


def _catalog_sigmas():
    for name in sorted(AVAILABLE_SETUPS):
        config = load_config(name)
        if config.is_orthogonal_only:
            rs, sigma, _ = so_realization(config.orthogonal)
        else:
            rs = config.root_system()
            sigma = config.sigma.build(rs)
        yield name, rs, sigma


def test_rho_hat_normalization_on_catalog():
    seen = 0
    for name, rs, sigma in _catalog_sigmas():
        datum = twisted_simple_roots(rs, sigma)
        assert all(datum.coroot_pairing(datum.rho_hat, a) == 1 for a in datum.simple_roots), name
        seen += 1
    assert seen >= 8


def test_root_multiplicities(a1, a2):
    datum = twisted_simple_roots(a1, untwisted(a1))
    alpha = (Fraction(1),)
    assert root_multiplicity(datum, Weight.root((0,), 1)) == 1
    assert root_multiplicity(datum, Weight.root(alpha, 1)) == 1
    assert root_multiplicity(datum, Weight.root((2,), 0)) == 0
    twisted = twisted_simple_roots(a2, TwistedAutomorphism(DiagramAut((1, 0)), (0, 0)))
    assert twisted.imaginary_multiplicity(HALF) == 1
    assert twisted.imaginary_multiplicity(Fraction(1)) == 1


def test_positive_roots_to_degree_one(a1):
    datum = twisted_simple_roots(a1, untwisted(a1))
    roots = datum.positive_roots(Fraction(1))
    assert [(r.finite, r.delta) for r, _ in roots] == [((1,), 0), ((-1,), 1), ((0,), 1), ((1,), 1)]


def test_fundamental_weights_of_a1(a1):
    datum = twisted_simple_roots(a1, untwisted(a1))
    basic = fundamental_solve(datum, [1, 0])
    assert basic.finite == (0,) and basic.level == 1
    spin = fundamental_solve(datum, [0, 1])
    assert spin.finite == (HALF,) and spin.level == 1
    with pytest.raises(SetupError):
        fundamental_solve(datum, [1])


def test_commutation_defect(a2):
    flip = TwistedAutomorphism(DiagramAut((1, 0)), (0, 0))
    assert commutation_defect(flip, TwistedAutomorphism(DiagramAut((0, 1)), (THIRD, THIRD))) is None
    inner = TwistedAutomorphism(DiagramAut((0, 1)), (HALF, 0))
    assert "phase defect" in commutation_defect(inner, flip)
    with pytest.raises(HypothesisError):
        normalize_sigma_mu(a2, inner, flip)


def test_shift_must_be_fixed_by_the_diagram_part():
    with pytest.raises(SetupError):
        TwistedAutomorphism(DiagramAut((1, 0)), (HALF, 0))


def test_normalize_reduces_the_shift(a1):
    sigma, _ = normalize_sigma_mu(a1, TwistedAutomorphism(DiagramAut((0,)), (Fraction(3, 2),)), untwisted(a1))
    assert sigma.shift == (HALF,)


def test_reductive_datum_of_cartan(a1):
    mu = TwistedAutomorphism(DiagramAut((0,)), (HALF,))
    a = reductive_datum(a1, untwisted(a1), mu)
    assert a.ideals == []
    assert len(a.center_basis) == 1
    assert a.dimension == 1
    assert sum(sum(ws.values()) for ws in a.p_table.values()) == 2
    assert a.level_labels() == ["K0"]


def test_reductive_datum_of_diagonal():
    rs = build_root_system(["A1", "A1"])
    a = reductive_datum(rs, untwisted(rs), TwistedAutomorphism(DiagramAut((1, 0)), (0, 0)))
    assert len(a.ideals) == 1
    assert a.center_basis == []
    assert a.ideals[0].level == 1
    assert a.dimension == 3
    assert a.phi_star(Weight((0, 0), (Fraction(2),))).levels == (2,)


@pytest.mark.parametrize("shift", [(HALF,), (Fraction(3, 2),)])
def test_transport_inverts_multiplicity_lookup(a1, shift):
    datum = twisted_simple_roots(a1, TwistedAutomorphism(DiagramAut((0,)), shift))
    for cls, weights in datum.eta_table.items():
        for w, m in weights.items():
            if any(w):
                assert root_multiplicity(datum, transport_root(datum, Weight.root(w, cls + 1))) == m


def test_alcove_walk(a1):
    datum = eta_simple_roots(a1, DiagramAut((0,)))
    w, reduced = alcove_reduce(datum, (Fraction(3, 2),))
    assert reduced == (HALF,)
    assert not w.is_identity()
    w, reduced = alcove_reduce(datum, (Fraction(1, 4),))
    assert reduced == (Fraction(1, 4),) and w.is_identity()
