# kacdirac/asdim.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np

from kacdirac.charworks import dominant_weights_of_level
from kacdirac.coxeter import translation_lattice
from kacdirac.dirac import DiracSetup, MultipletEntry, MultipletReport, OrthogonalReport
from kacdirac.fock import CliffordModuleSpec
from kacdirac.rootcore import HALF, table_dimension
from kacdirac.twistaff import AffineRootDatum, ReductiveDatum, eta_simple_roots
from kacdirac.utils import (
    HypothesisError, Projector, SetupError, SpanCoordinates, TOLERANCE, UnsupportedSetup, Vector,
    frac_mod1, gram_determinant, is_zero, lattice_intersection, vec_sub,
)
from kacdirac.weights import Weight

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

# --- Constants ---
REFLECTION_LIMIT = 10000


# --- Wall geometry ---
def _direction(rs, w: Vector) -> Tuple[Vector, Fraction]:
    """Primitive direction of a nonzero weight (positive against rho) and the multiple c with w = c f."""
    i = next(j for j, x in enumerate(w) if x != 0)
    f = tuple(x / abs(w[i]) for x in w)
    if not rs.is_positive(f):
        f = tuple(-x for x in f)
    return f, w[i] / f[i]


def _rational_lcm(values: List[Fraction]) -> Fraction:
    num, den = 1, 0
    for v in values:
        num = num * v.numerator // gcd(num, v.numerator)
        den = gcd(den, v.denominator)
    return Fraction(num, den)


def wall_data(datum: AffineRootDatum) -> List[Tuple[Vector, Fraction, List[Fraction]]]:
    """Per root direction f: the period P and the wall positions t in [0, P) of (x, f)/kappa."""
    cached = datum.extras.get("walls")
    if cached is not None:
        return cached
    multiples: Dict[Vector, List[Tuple[Fraction, Fraction]]] = {}
    for cls, weights in datum.table.items():
        for w in weights:
            if is_zero(w):
                continue
            f, c = _direction(datum.rs, w)
            multiples.setdefault(f, []).append((c, Fraction(cls)))
    walls = []
    for f in sorted(multiples):
        period = _rational_lcm([1 / abs(c) for c, _ in multiples[f]])
        positions = set()
        for c, cls in multiples[f]:
            step = 1 / abs(c)
            for n in range(int(period / step)):
                t = (-cls / c + n * step) % period
                positions.add(t)
        walls.append((f, period, sorted(positions)))
    datum.extras["walls"] = walls
    return walls


def sine_product(datum: AffineRootDatum, shifted: Weight) -> float:
    """Product of sin(pi (t - t0) / P) over all wall families; shifted is lambda + rho-hat."""
    kappa = shifted.slot_level(datum.slot)
    if kappa <= 0:
        raise SetupError(f"Level of {shifted} must be positive")
    factors = []
    for f, period, positions in wall_data(datum):
        t = datum.pair(Weight.root(shifted.finite), Weight.root(f)) / kappa
        for t0 in positions:
            factors.append(np.sin(np.pi * float((t - t0) / period)))
    return float(abs(np.prod(factors))) if factors else 1.0


def _normalization(datum: AffineRootDatum, level: Fraction) -> float:
    norms = datum.extras.setdefault("asdim_norm", {})
    if level not in norms:
        total = 0.0
        for w in dominant_weights_of_level(datum, level):
            total += sine_product(datum, w + datum.rho_hat) ** 2
        norms[level] = float(np.sqrt(total))
        logger.debug(f"asdim normalization at level {level}: {norms[level]}")
    return norms[level]


def affine_asdim(datum: AffineRootDatum, weight: Weight) -> float:
    """Asymptotic dimension of an integrable module, normalized so the squares over its level sum to 1."""
    if not datum.is_dominant_integral(weight):
        raise SetupError(f"{weight} is not dominant integral")
    level = weight.slot_level(datum.slot)
    return sine_product(datum, weight + datum.rho_hat) / _normalization(datum, level)


# --- Reductive a ---
def ideal_weights(a: ReductiveDatum, xi: Weight) -> List[Weight]:
    gram = a.rs.gram
    return [ideal.weight(Projector(ideal.span, gram)(xi.finite), xi.levels[s], xi.delta)
            for s, ideal in enumerate(a.ideals)]


def _dominant_sign(datum: AffineRootDatum, weight: Weight) -> Tuple[int, Optional[Weight]]:
    """Sign and dominant representative of weight under the dotted Weyl action; None on a wall."""
    x = weight + datum.rho_hat
    sign = 1
    for _ in range(REFLECTION_LIMIT):
        pairings = [datum.coroot_pairing(x, alpha) for alpha in datum.simple_roots]
        if any(p == 0 for p in pairings):
            return 0, None
        negative = [i for i, p in enumerate(pairings) if p < 0]
        if not negative:
            return sign, x - datum.rho_hat
        x = datum.reflect(x, datum.simple_roots[negative[0]])
        sign = -sign
    raise UnsupportedSetup(f"Dotted reduction of {weight} did not terminate")


def asymptotic_dimension(a: ReductiveDatum, xi: Weight, signed: bool = False) -> float:
    """Product of the ideal asymptotic dimensions; 1 for abelian a. signed applies the dotted-action sign."""
    value = 1.0
    for ideal, w in zip(a.ideals, ideal_weights(a, xi)):
        sign, dominant = _dominant_sign(ideal, w)
        if dominant is None:
            return 0.0
        if sign < 0 and not signed:
            raise SetupError(f"{xi} is not dominant for a")
        value *= sign * affine_asdim(ideal, dominant)
    return value


def conformal_anomaly(datum: AffineRootDatum, level) -> Fraction:
    """k dim / (k + g) for one ideal."""
    level = Fraction(level)
    if level + datum.level == 0:
        raise SetupError("k + g vanishes")
    return level * datum.dimension / (level + datum.level)


# --- Lattices ---
@dataclass
class CenterLattice:
    basis: List[Vector]
    center_dimension: int
    kappa: Fraction
    index: Fraction
    spans_center: bool


def center_lattice(setup: DiracSetup, kappa: Fraction) -> CenterLattice:
    """M_0 = M intersected with the center of the fixed points of a, and |P_0 / kappa M_0|."""
    a = setup.a
    datum_eta = eta_simple_roots(setup.rs, setup.sigma.eta)
    generators = translation_lattice(datum_eta)
    basis = lattice_intersection(generators, a.center_fixed_basis, setup.rs.rank) if a.center_fixed_basis else []
    r = len(basis)
    index = kappa ** r * gram_determinant(basis, setup.rs.gram) if r else Fraction(1)
    return CenterLattice(basis, len(a.center_fixed_basis), kappa, index, r == len(a.center_fixed_basis))


def finite_representatives(setup: DiracSetup, report: MultipletReport,
                           lattice: Optional[CenterLattice] = None) -> List[MultipletEntry]:
    """One minimal-length entry per orbit of the center translations t_alpha, alpha in M_0."""
    kappa = setup.level + setup.g_datum.level
    lattice = lattice or center_lattice(setup, kappa)
    projector = Projector(setup.a.center_fixed_basis, setup.rs.gram) if setup.a.center_fixed_basis else None
    coords = SpanCoordinates(lattice.basis, setup.rs.rank) if lattice.basis else None
    kept: Dict = {}
    for e in report.entries:
        finite = e.weight.finite
        if projector is None:
            key = (finite, ())
        else:
            center = projector(finite)
            c = coords(center) if coords else None
            if c is None:
                raise HypothesisError("Center part of a multiplet weight is not in the span of M_0")
            key = (vec_sub(finite, center), tuple(frac_mod1(x / kappa) for x in c))
        if key not in kept or e.length < kept[key].length:
            kept[key] = e
    found = sorted(kept.values(), key=lambda e: (e.length, e.word))
    logger.info(f"{len(found)} finite representative(s) out of {len(report.entries)} multiplet entries")
    return found


# --- Reports ---
@dataclass
class AsdimReport:
    per_ideal: List[float]
    asdim: float
    anomaly: Fraction
    lattice: Optional[CenterLattice] = None
    chi: int = 0
    extras: Dict = field(default_factory=dict)


def asdim_report(setup: DiracSetup, xi: Weight) -> AsdimReport:
    a = setup.a
    per_ideal = [affine_asdim(ideal, w) for ideal, w in zip(a.ideals, ideal_weights(a, xi))]
    anomaly = sum((conformal_anomaly(ideal, xi.levels[s]) for s, ideal in enumerate(a.ideals)), Fraction(0))
    anomaly += len(a.center_basis)
    kappa = setup.level + setup.g_datum.level
    return AsdimReport(per_ideal, float(np.prod(per_ideal)) if per_ideal else 1.0, anomaly,
                       center_lattice(setup, kappa), center_chi(a))


def center_chi(a: ReductiveDatum) -> int:
    """0 when sigma is the identity on the center of a, else 1."""
    return 0 if set(a.center_table) <= {Fraction(0)} else 1


def signed_asdim_sum(setup: DiracSetup, report: MultipletReport) -> Dict:
    """Signed sum of asymptotic dimensions over the finite representatives; vanishes for equal rank."""
    if setup.spec.zero_mode_dimension:
        raise HypothesisError("Signed asdim sum needs an equal-rank a")
    kappa = setup.level + setup.g_datum.level
    lattice = center_lattice(setup, kappa)
    if not lattice.spans_center:
        raise HypothesisError("M_0 does not span the center of a")
    reps = finite_representatives(setup, report, lattice)
    total = sum((-1) ** e.length * asymptotic_dimension(setup.a, e.weight, signed=True) for e in reps)
    logger.info(f"Signed asdim sum for {setup.name}: {total}")
    return {"sum": total, "representatives": len(reps), "holds": abs(total) < TOLERANCE}


def multiplet_asdim_sum(setup: DiracSetup, report: MultipletReport) -> Dict:
    """Sum of asymptotic dimensions over the finite representatives against sqrt(|P_0/gM_0| / 2^(L - chi))."""
    if setup.mu.order != 2:
        raise SetupError("Multiplet asdim sum needs a the fixed points of an involution")
    if any(setup.labels):
        raise SetupError("Multiplet asdim sum is for Lambda = 0")
    center = len(setup.a.center_fixed_basis)
    if center > 1:
        raise UnsupportedSetup(f"Center of dimension {center} is not supported")
    lattice = center_lattice(setup, setup.g_datum.level)
    reps = finite_representatives(setup, report, lattice)
    lhs = sum(asymptotic_dimension(setup.a, e.weight) for e in reps)
    chi = center_chi(setup.a)
    rhs = float(np.sqrt(float(lattice.index) / 2 ** (setup.spec.zero_mode_dimension - chi)))
    fock = clifford_asdim(setup.spec)
    recovered = 2 ** (setup.spec.power - chi / 2) * float(lattice.index) ** -0.5 * lhs
    logger.info(f"Multiplet asdim sum for {setup.name}: {lhs} against {rhs}")
    return {"lhs": lhs, "rhs": rhs, "chi": chi, "center_dimension": center, "index": lattice.index,
            "representatives": len(reps), "holds": abs(lhs - rhs) < TOLERANCE,
            "fock_asdim": fock["asdim"], "fock_recovered": recovered,
            "fock_consistent": abs(recovered - fock["asdim"]) < TOLERANCE}


# --- Clifford modules ---
def _half_dimension(spec: CliffordModuleSpec) -> int:
    return table_dimension({HALF: spec.table.get(HALF, {})})


def clifford_asdim(spec: CliffordModuleSpec) -> Dict:
    """asdim of the Clifford module from its creation modes, with its row of the orthogonal classification.

    A mode sequence a, a + 1, ... of one fermion scales the character by 2^(1/2 - a) in the limit; the
    zero-mode Clifford module adds 2^power.
    """
    exponent = Fraction(spec.power)
    for cls, weights in spec.table.items():
        for weight, mult in weights.items():
            if cls > 0:
                start = cls
            elif is_zero(weight) or not spec.rs.is_positive(weight):
                start = Fraction(1)
            else:
                start = Fraction(0)
            exponent += mult * (HALF - start)
    zero_modes, half = spec.zero_mode_dimension, _half_dimension(spec)
    row = {(0, 0): "even-even", (1, 1): "odd-odd", (0, 1): "even-odd", (1, 0): "odd-even"}[
        (zero_modes % 2, half % 2)]
    return {"row": row, "zero_modes": zero_modes, "half_dimension": half, "exponent": exponent,
            "asdim": float(np.exp2(float(exponent)))}


def orthogonal_asdim(report: OrthogonalReport) -> float:
    """asdim of F^T(V) from its decomposition over L-hat(so(V), Ad T)."""
    total = sum(affine_asdim(report.datum, w) for w in report.entries)
    return 2 ** report.power * total


# --- Central charge ---
@dataclass
class CentralCharge:
    level: Fraction
    g_anomaly: Fraction
    a_anomaly: Fraction
    half_p: Fraction
    symmetric: bool

    @property
    def value(self) -> Fraction:
        return self.g_anomaly - self.a_anomaly + self.half_p

    @property
    def vanishes(self) -> bool:
        """Dirac operator is zero on the whole module: forces k = 0 and a symmetric pair."""
        return self.level == 0 and self.value == 0

    @property
    def dominates(self) -> bool:
        return self.g_anomaly >= self.a_anomaly

    @property
    def balanced(self) -> bool:
        return self.level == 0 and self.a_anomaly == self.half_p


def central_charge(setup: DiracSetup, level=None) -> CentralCharge:
    """C = k dim g/(k+g) - sum_S (1 - g_S/(k+g)) dim a_S + dim p / 2, the center counted with g_S = 0."""
    k = setup.level if level is None else Fraction(level)
    if k < 0:
        raise SetupError(f"Level {k} is negative")
    g = setup.g_datum
    kappa = k + g.level
    g_anomaly = k * g.dimension / kappa
    a_anomaly = sum(((1 - ideal.level / kappa) * ideal.dimension for ideal in setup.a.ideals), Fraction(0))
    a_anomaly += len(setup.a.center_basis)
    half_p = Fraction(table_dimension(setup.a.p_table), 2)
    result = CentralCharge(k, g_anomaly, a_anomaly, half_p, setup.mu.order == 2)
    if k > 0 and not result.dominates:
        logger.warning(f"C(g) < C(a) at level {k} for {setup.name}")
    logger.info(f"Central charge of {setup.name} at level {k}: {result.value}")
    return result
