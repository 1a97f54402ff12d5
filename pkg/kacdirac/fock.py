# kacdirac/fock.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from kacdirac.charworks import GradedCharacter
from kacdirac.rootcore import FiniteRootSystem, GradedTable, table_dimension
from kacdirac.twistaff import AffineRootDatum, ReductiveDatum, rho_sigma
from kacdirac.utils import VerificationError, Vector, is_zero, zero_vector
from kacdirac.weights import Weight

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

SPECIES_ORDER = {"v": 0, "xi": 1}


@dataclass(frozen=True)
class Generator:
    """Creation operator of the Clifford module: mode -depth, of weight -depth*delta - root."""
    depth: Fraction
    species: str
    finite: Vector
    index: int

    def sort_key(self):
        return (self.depth, SPECIES_ORDER[self.species], self.finite, self.index)


@dataclass
class CliffordModuleSpec:
    """Graded space V (usually p), its top weight rho-hat minus rho-hat of a, and the creation operators."""
    rs: FiniteRootSystem
    table: GradedTable
    top: Weight
    zero_mode_dimension: int
    generators: List[Generator] = field(default_factory=list)
    cutoff: Fraction = Fraction(0)

    @property
    def power(self) -> int:
        """Exponent of the zero-mode factor 2^power."""
        return (self.zero_mode_dimension + 1) // 2

    @property
    def isotropic_half(self) -> int:
        return self.zero_mode_dimension // 2

    @property
    def dimension(self) -> int:
        return table_dimension(self.table)

    def positive_roots(self, cutoff: Fraction) -> List[Tuple[Weight, int]]:
        roots = []
        for cls, weights in self.table.items():
            for weight, mult in weights.items():
                degree = Fraction(cls)
                while degree <= cutoff:
                    if degree > 0 or (not is_zero(weight) and self.rs.is_positive(weight)):
                        roots.append((Weight.root(weight, degree), mult))
                    degree += 1
        return sorted(roots, key=lambda item: (item[0].delta, item[0].finite))


@dataclass(frozen=True)
class SpinorMonomial:
    """Strictly increasing tuple of positions in the generator list."""
    positions: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError(f"Monomial positions {self.positions} are not strictly increasing")

    @property
    def parity(self) -> int:
        return len(self.positions) % 2


def _generators(rs: FiniteRootSystem, table: GradedTable, cutoff: Fraction, zero_modes: int) -> List[Generator]:
    gens = []
    for i in range((zero_modes + 1) // 2):
        gens.append(Generator(Fraction(0), "v", zero_vector(rs.rank), i))
    for cls, weights in table.items():
        for weight, mult in weights.items():
            degree = Fraction(cls)
            while degree <= cutoff:
                positive = degree > 0 or (not is_zero(weight) and rs.is_positive(weight))
                if positive:
                    species = "v" if is_zero(weight) else "xi"
                    negated = tuple(-x for x in weight)
                    for i in range(mult):
                        gens.append(Generator(degree, species, negated, i))
                degree += 1
    return sorted(gens, key=Generator.sort_key)


def intrinsic_top(rs: FiniteRootSystem, table: GradedTable, levels: Sequence[Fraction]) -> Weight:
    """Half sum of positive fixed weights plus (1 - 2j)/2 times the weights of each class j in (0, 1/2)."""
    return Weight(rho_sigma(rs, table), tuple(levels), Fraction(0))


def build_spec(g_datum: AffineRootDatum, a: ReductiveDatum, cutoff) -> CliffordModuleSpec:
    """Clifford module of p, the orthocomplement of a, with top weight phi_a*(rho-hat) - rho-hat of a."""
    cutoff = Fraction(cutoff)
    rs = g_datum.rs
    restricted = Weight(_mu_average(g_datum.rho_hat.finite, a.mu.eta.permutation), g_datum.rho_hat.levels, 0)
    top = a.phi_star(restricted) - a.rho_hat
    levels = [g_datum.level - ideal.level for ideal in a.ideals] + ([g_datum.level] if a.center_basis else [])
    expected = intrinsic_top(rs, a.p_table, levels)
    if top != expected:
        raise VerificationError(f"Top weight {top} differs from the half-sum formula {expected}")
    zero_modes = a.p_table.get(Fraction(0), {}).get(zero_vector(rs.rank), 0)
    spec = CliffordModuleSpec(rs, a.p_table, top, zero_modes, _generators(rs, a.p_table, cutoff, zero_modes), cutoff)
    logger.info(f"Clifford module of p: dim p = {spec.dimension}, zero modes {zero_modes}, top {top}")
    return spec


def standalone_spec(rs: FiniteRootSystem, table: GradedTable, levels: Sequence[Fraction], cutoff) -> CliffordModuleSpec:
    """Clifford module of a graded orthogonal space given directly by its table."""
    cutoff = Fraction(cutoff)
    zero_modes = table.get(Fraction(0), {}).get(zero_vector(rs.rank), 0)
    top = intrinsic_top(rs, table, levels)
    return CliffordModuleSpec(rs, table, top, zero_modes, _generators(rs, table, cutoff, zero_modes), cutoff)


def _mu_average(v: Sequence[Fraction], perm: Sequence[int]) -> Vector:
    orbit, current = [tuple(v)], tuple(v)
    while True:
        image = [Fraction(0)] * len(current)
        for i, j in enumerate(perm):
            image[j] = current[i]
        current = tuple(image)
        if current == orbit[0]:
            break
        orbit.append(current)
    return tuple(sum((w[i] for w in orbit), Fraction(0)) / len(orbit) for i in range(len(v)))


def monomial_weight(m: SpinorMonomial, spec: CliffordModuleSpec) -> Weight:
    weight = spec.top
    for p in m.positions:
        g = spec.generators[p]
        weight = weight + Weight.root(g.finite, -g.depth)
    return weight


def enumerate_monomials(spec: CliffordModuleSpec, cutoff) -> List[SpinorMonomial]:
    """All monomials of total depth at most cutoff."""
    cutoff = Fraction(cutoff)
    gens = spec.generators
    found: List[SpinorMonomial] = []

    def extend(start: int, positions: Tuple[int, ...], depth: Fraction):
        found.append(SpinorMonomial(positions))
        for p in range(start, len(gens)):
            d = depth + gens[p].depth
            if d > cutoff:
                # generators are sorted by depth
                break
            extend(p + 1, positions + (p,), d)

    extend(0, (), Fraction(0))
    return found


def graded_character(spec: CliffordModuleSpec, cutoff) -> Tuple[GradedCharacter, GradedCharacter, GradedCharacter]:
    """(total, even, odd) characters counted monomial by monomial."""
    cutoff = Fraction(cutoff)
    if cutoff > spec.cutoff:
        raise VerificationError(f"Spec built to depth {spec.cutoff}, asked for {cutoff}")
    top = spec.top
    parts = [GradedCharacter.zero(top.levels, top.delta, cutoff) for _ in range(2)]
    for m in enumerate_monomials(spec, cutoff):
        w = monomial_weight(m, spec)
        parts[m.parity].add_term(top.delta - w.delta, w.finite, 1)
    total = parts[0] + parts[1]
    logger.debug(f"Clifford character to depth {cutoff}: slices {[total.slice_dimension(d) for d in total.depths()]}")
    return total, parts[0], parts[1]


def product_character(spec: CliffordModuleSpec, cutoff) -> GradedCharacter:
    """Expansion of e^top * prod (1 + e^{-alpha})^{mult alpha} over positive roots of V, times 2^power."""
    cutoff = Fraction(cutoff)
    result = GradedCharacter.monomial(spec.top, cutoff)
    for alpha, mult in spec.positive_roots(cutoff):
        factor = GradedCharacter((), 0, cutoff, {(Fraction(0), zero_vector(spec.rs.rank)): 1})
        factor.add_term(alpha.delta, tuple(-x for x in alpha.finite), 1)
        for _ in range(mult):
            result = result * factor
    return result.scale(2 ** spec.power)


def zero_weight_check(spec: CliffordModuleSpec, a: ReductiveDatum, cutoff) -> bool:
    """Every monomial weight plus rho-hat of a lies in the image of phi_a*."""
    for m in enumerate_monomials(spec, cutoff):
        shifted = monomial_weight(m, spec) + a.rho_hat
        if len(set(shifted.levels)) > 1:
            return False
        if _mu_average(shifted.finite, a.mu.eta.permutation) != shifted.finite:
            return False
    return True

