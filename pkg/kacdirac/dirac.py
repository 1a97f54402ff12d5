# kacdirac/dirac.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from kacdirac.charworks import (
    Discrepancy, GradedCharacter, freudenthal_character, heisenberg_character, restrict_and_compare,
    weyl_kac_character,
)
from kacdirac.coxeter import (
    CoxeterElement, RestrictedSystem, element_from_word, enumerate_folded, folded_element, folded_inversion_set,
    inversion_set, is_minimal_representative, restricted_simple_roots,
)
from kacdirac.fock import CliffordModuleSpec, build_spec, graded_character, standalone_spec
from kacdirac.rootcore import (
    HALF, DiagramAut, FiniteRootSystem, GradedTable, MatrixRealization, build_root_system, _cycles,
)
from kacdirac.twistaff import (
    AffineRootDatum, ReductiveDatum, TwistedAutomorphism, commutation_defect, fundamental_solve,
    normalize_sigma_mu, reductive_datum, twisted_simple_roots, _solve,
)
from kacdirac.utils import (
    HypothesisError, LENGTH_BOUND, Projector, SetupError, UnsupportedSetup, VerificationError, Vector,
    fixed_basis, frac_mod1, is_zero, to_sympy, vec_add, vec_scale, vec_sub, zero_vector,
)
from kacdirac.weights import Weight

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

# --- Constants ---
MIN_SO_DIMENSION = 5
LEVEL_ONE_KINDS = ("basic+vector", "spin")


# --- Setups ---
@dataclass
class DiracSetup:
    name: str
    rs: FiniteRootSystem
    sigma: TwistedAutomorphism
    mu: TwistedAutomorphism
    g_datum: AffineRootDatum
    a: ReductiveDatum
    highest_weight: Weight
    labels: Tuple[Fraction, ...]
    system: RestrictedSystem
    spec: CliffordModuleSpec
    cutoff: Fraction
    length_bound: int = LENGTH_BOUND

    @property
    def level(self) -> Fraction:
        return self.highest_weight.level

    @property
    def a_simple(self) -> List[Weight]:
        return [Weight.root(alpha.finite, alpha.delta) for alpha in self.a.simple_roots]

    def mu_average(self, v: Sequence[Fraction]) -> Vector:
        return self.system.restrict(Weight.root(v)).finite

    def shifted_highest_weight(self) -> Weight:
        return self.highest_weight + self.g_datum.rho_hat


def build_setup(name: str, rs: FiniteRootSystem, sigma: TwistedAutomorphism, mu: TwistedAutomorphism,
                labels: Optional[Sequence[Fraction]] = None, cutoff=2, length_bound: int = LENGTH_BOUND) -> DiracSetup:
    sigma.eta.validate(rs)
    mu.eta.validate(rs)
    normalized, _ = normalize_sigma_mu(rs, sigma, mu)
    g_datum = twisted_simple_roots(rs, normalized)
    a = reductive_datum(rs, normalized, mu)
    labels = tuple(Fraction(x) for x in (labels if labels is not None else [0] * g_datum.rank))
    highest = fundamental_solve(g_datum, labels)
    if not g_datum.is_dominant_integral(highest):
        raise SetupError(f"Highest weight labels {[str(x) for x in labels]} are not dominant integral")
    system = restricted_simple_roots(g_datum, mu.eta.permutation)
    spec = build_spec(g_datum, a, cutoff)
    logger.info(f"Setup {name}: g = {rs.labels()}, {len(a.ideals)} ideal(s) of a, L = {spec.zero_mode_dimension}")
    return DiracSetup(name, rs, normalized, mu, g_datum, a, highest, labels, system, spec, Fraction(cutoff),
                      length_bound)


def check_hypotheses(setup: DiracSetup) -> List[str]:
    """Violated standing assumptions, empty when the kernel theorem applies."""
    violations = []
    defect = commutation_defect(setup.sigma, setup.mu)
    if defect:
        violations.append(defect)
    span = setup.a.fixed_span
    gram = [[setup.rs.pair(u, v) for v in span] for u in span]
    if span and to_sympy(gram).det() == 0:
        violations.append("invariant form is degenerate on the Cartan part of a")
    zero = zero_vector(setup.rs.rank)
    if setup.a.a_table.get(Fraction(0), {}).get(zero, 0) != len(span):
        violations.append("fixed Cartan of mu is not a Cartan subalgebra of the fixed points of sigma on a")
    shifted = setup.shifted_highest_weight().finite
    if setup.mu_average(shifted) != shifted:
        violations.append("Lambda + rho-hat does not vanish on the intersection of the fixed Cartan with p")
    if setup.g_datum.rho_hat.finite != setup.mu_average(setup.g_datum.rho_hat.finite):
        violations.append("rho-hat of g is not fixed by mu")
    return violations


def fixed_cartan_vanishing(setup: DiracSetup) -> bool:
    """Lambda + rho-hat vanishes on the whole mu-fixed Cartan, not only on its part in p."""
    return is_zero(setup.mu_average(setup.shifted_highest_weight().finite))


def require_hypotheses(setup: DiracSetup):
    violations = check_hypotheses(setup)
    if violations:
        raise HypothesisError("; ".join(violations))


# --- Multiplets ---
@dataclass
class MultipletEntry:
    weight: Weight
    word: Tuple[int, ...]
    lift_word: Tuple[int, ...]
    length: int
    dirac_square: Fraction
    dominant: bool

    @property
    def drop(self) -> Fraction:
        return -self.weight.delta


@dataclass
class MultipletReport:
    name: str
    entries: List[MultipletEntry]
    power: int
    complete: bool
    length_bound: int
    level_labels: List[str] = field(default_factory=list)
    extras: Dict = field(default_factory=dict)

    @property
    def multiplicity(self) -> int:
        return 2 ** self.power

    def weights(self) -> List[Weight]:
        return [e.weight for e in self.entries]

    def verified(self) -> bool:
        return all(e.dirac_square == 0 and e.dominant for e in self.entries)


def dirac_square_check(setup: DiracSetup, xi: Weight) -> Fraction:
    """|Lambda + rho-hat|^2 minus the norm of the preimage of xi + rho-hat of a."""
    preimage = setup.a.phi_star_inverse(xi + setup.a.rho_hat)
    return setup.g_datum.norm(setup.shifted_highest_weight()) - setup.g_datum.norm(preimage)


def _frontier_complete(elements: List[CoxeterElement], start: Weight, length_bound: int, cutoff: Fraction) -> bool:
    frontier = [e for e in elements if e.length == length_bound]
    return all(start.delta - e.element.act(start).delta > cutoff for e in frontier)


def kernel_decomposition(setup: DiracSetup, length_bound: Optional[int] = None,
                         cutoff: Optional[Fraction] = None) -> MultipletReport:
    """Highest weights phi_a*(w(Lambda + rho-hat)) - rho-hat of a over minimal coset representatives w."""
    require_hypotheses(setup)
    length_bound = setup.length_bound if length_bound is None else length_bound
    cutoff = setup.cutoff if cutoff is None else Fraction(cutoff)
    start = setup.shifted_highest_weight()
    start = start.with_finite(setup.mu_average(start.finite))
    elements = enumerate_folded(setup.system, length_bound)
    entries = []
    for e in elements:
        if not is_minimal_representative(setup.system, e.element, setup.a_simple):
            continue
        xi = setup.a.phi_star(e.element.act(start)) - setup.a.rho_hat
        entries.append(MultipletEntry(xi, e.word, e.lift_word, e.length, dirac_square_check(setup, xi),
                                      setup.a.is_dominant_integral(xi)))
    entries.sort(key=lambda x: (x.drop, x.length, x.weight.finite))
    keys = [(x.weight.finite, x.weight.levels, x.weight.delta) for x in entries]
    if len(set(keys)) != len(keys):
        raise VerificationError("Two coset representatives give the same highest weight")
    rank_gap = len(setup.g_datum.span) - setup.a.rank_fixed
    if rank_gap != setup.spec.zero_mode_dimension:
        raise VerificationError(f"Rank difference {rank_gap} differs from the zero-mode dimension "
                                f"{setup.spec.zero_mode_dimension}")
    complete = _frontier_complete(elements, start, length_bound, cutoff)
    if not complete:
        logger.warning(f"Length bound {length_bound} may miss multiplet members above depth {cutoff}")
    report = MultipletReport(setup.name, entries, setup.spec.power, complete, length_bound, setup.a.level_labels())
    report.extras["fixed_cartan_vanishing"] = fixed_cartan_vanishing(setup)
    logger.info(f"Kernel of {setup.name}: {len(entries)} multiplet member(s) with multiplicity {report.multiplicity}")
    return report


def inversion_identity(setup: DiracSetup, entry: MultipletEntry) -> Dict[str, bool]:
    """N(w) sums to rho-hat - w(rho-hat) on the lift, and its mu-fixed roots have weight spaces in p."""
    datum = setup.g_datum
    roots = inversion_set(datum, entry.lift_word)
    total = Weight.root(zero_vector(setup.rs.rank))
    for r in roots:
        total = total + r
    w = element_from_word(datum, entry.lift_word)
    expected = datum.rho_hat - w.act(datum.rho_hat)
    inside_p = True
    for r in roots:
        if setup.mu_average(r.finite) != r.finite:
            continue
        cls = frac_mod1(r.delta)
        if is_zero(r.finite):
            continue
        if setup.a.a_table.get(cls, {}).get(r.finite, 0):
            inside_p = False
    return {"sum": (total.finite, total.delta) == (expected.finite, expected.delta),
            "length": len(roots) == len(entry.lift_word), "inside_p": inside_p}


# --- Characters over a ---
def _projections(a: ReductiveDatum):
    gram = a.rs.gram
    return [Projector(ideal.span, gram) for ideal in a.ideals], Projector(a.center_fixed_basis, gram)


def module_character(a: ReductiveDatum, xi: Weight, cutoff, engine: str = "freudenthal") -> GradedCharacter:
    """Character of the irreducible L-hat(a, sigma)-module of highest weight xi: ideal factors times the center."""
    cutoff = Fraction(cutoff)
    ideal_projectors, center_projector = _projections(a)
    slots = a.slots
    factors, pieces = [], []
    for s, (ideal, proj) in enumerate(zip(a.ideals, ideal_projectors)):
        finite = proj(xi.finite)
        pieces.append(finite)
        levels = [Fraction(0)] * slots
        levels[s] = xi.levels[s]
        w = Weight(finite, tuple(levels), 0)
        engine_fn = weyl_kac_character if engine == "weyl-kac" else freudenthal_character
        factors.append(engine_fn(ideal, w, cutoff))
    if a.center_basis:
        finite = center_projector(xi.finite)
        pieces.append(finite)
        levels = [Fraction(0)] * slots
        levels[-1] = xi.levels[-1]
        factors.append(heisenberg_character(Weight(finite, tuple(levels), 0), a.center_table, cutoff))
    total = zero_vector(a.rs.rank)
    for p in pieces:
        total = vec_add(total, p)
    if total != tuple(xi.finite):
        raise VerificationError(f"{xi} does not split over the ideals and center of a")
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return GradedCharacter(xi.levels, xi.delta, cutoff, dict(result.coefficients))


def multiplet_character(setup: DiracSetup, report: MultipletReport, cutoff, signed: bool = False) -> GradedCharacter:
    cutoff = Fraction(cutoff)
    top = setup.spec.top.delta + setup.highest_weight.delta
    result = GradedCharacter.zero(report.entries[0].weight.levels, top, cutoff)
    for e in report.entries:
        if top - e.weight.delta > cutoff:
            continue
        ch = module_character(setup.a, e.weight, cutoff)
        sign = (-1) ** e.length if signed else 1
        result = result + ch.scale(sign)
    return result


def theorem_character_identity(setup: DiracSetup, report: MultipletReport, cutoff=None) -> List[Discrepancy]:
    """ch F(p) against 2^power times the multiplet characters; Lambda must be 0 so that the kernel is everything."""
    cutoff = setup.cutoff if cutoff is None else Fraction(cutoff)
    if any(setup.labels):
        raise UnsupportedSetup("The full character identity needs Lambda = 0; use the signed identity instead")
    total, _, _ = graded_character(setup.spec, cutoff)
    rhs = multiplet_character(setup, report, cutoff).scale(report.multiplicity)
    return restrict_and_compare(total, rhs, cutoff)


def restricted_character(setup: DiracSetup, cutoff) -> GradedCharacter:
    """ch L(Lambda) seen through phi_a*: finite parts averaged over mu, one level per slot of a."""
    ch = freudenthal_character(setup.g_datum, setup.highest_weight, cutoff)
    levels = tuple(setup.level for _ in range(setup.a.slots))
    return ch.map_weights(setup.mu_average, levels)


def signed_character_identity(setup: DiracSetup, report: MultipletReport, cutoff=None,
                              flip_sign: bool = False) -> Dict:
    """ch L(Lambda) (ch F+ - ch F-) against the signed multiplet sum; when L > 0 the left side must vanish."""
    cutoff = setup.cutoff if cutoff is None else Fraction(cutoff)
    _, plus, minus = graded_character(setup.spec, cutoff)
    difference = plus - minus
    if flip_sign:
        difference = -difference
    lhs = restricted_character(setup, cutoff) * difference
    if setup.spec.zero_mode_dimension > 0:
        form = "vanishing"
        rhs = GradedCharacter.zero(lhs.levels, lhs.top_delta, lhs.cutoff)
    else:
        form = "equal-rank"
        rhs = multiplet_character(setup, report, cutoff, signed=True)
    discrepancies = restrict_and_compare(lhs, rhs, cutoff)
    return {"form": form, "discrepancies": discrepancies, "holds": not discrepancies}


# --- Orthogonal pairs ---
@dataclass(frozen=True)
class OrthogonalClass:
    """T in O(V) by dim V, det T and the rotation phases of its isotropic planes."""
    dim: int
    det: int
    angles: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.dim < MIN_SO_DIMENSION:
            raise UnsupportedSetup(f"dim V = {self.dim} is below {MIN_SO_DIMENSION}")
        if self.det not in (1, -1):
            raise SetupError(f"det T must be 1 or -1, got {self.det}")
        planes = self.dim // 2 - (1 if self.dim % 2 == 0 and self.det == -1 else 0)
        if len(self.angles) != planes:
            raise SetupError(f"Expected {planes} rotation phases for dim V = {self.dim}, det {self.det}")
        object.__setattr__(self, "angles", tuple(Fraction(a) for a in self.angles))

    @property
    def odd(self) -> bool:
        return self.dim % 2 == 1

    @property
    def toral(self) -> bool:
        return self.odd or self.det == 1

    @property
    def case(self) -> str:
        return {(False, 1): "even-det1", (True, 1): "odd-det1", (True, -1): "odd-det-1",
                (False, -1): "even-det-1"}[(self.odd, self.det)]


def _shift_from_phases(series: str, phases: Sequence[Fraction]) -> Vector:
    n = len(phases)
    x = [phases[i] - phases[i + 1] for i in range(n - 1)]
    x.append(phases[n - 1] if series == "B" else phases[n - 2] + phases[n - 1])
    return tuple(Fraction(v) for v in x)


def _flip(n: int) -> DiagramAut:
    perm = list(range(n))
    perm[n - 2], perm[n - 1] = n - 1, n - 2
    return DiagramAut(tuple(perm))


def so_realization(t: OrthogonalClass) -> Tuple[FiniteRootSystem, TwistedAutomorphism, GradedTable]:
    """so(V) with Ad T, and the graded weights of V under T."""
    n = t.dim // 2
    series = "B" if t.odd else "D"
    rs = build_root_system([[series, n]])
    if t.odd:
        phases = list(t.angles)
        ad_phases = [c + Fraction(1, 2) for c in phases] if t.det == -1 else phases
        sigma = TwistedAutomorphism(DiagramAut.identity(n), _shift_from_phases("B", ad_phases))
        realization = MatrixRealization("B", n, tuple(phases), False)
        center_phase = Fraction(1, 2) if t.det == -1 else Fraction(0)
    elif t.det == 1:
        phases = list(t.angles)
        sigma = TwistedAutomorphism(DiagramAut.identity(n), _shift_from_phases("D", phases))
        realization = MatrixRealization("D", n, tuple(phases), False)
        center_phase = None
    else:
        phases = list(t.angles) + [Fraction(0)]
        sigma = TwistedAutomorphism(_flip(n), _shift_from_phases("D", phases))
        realization = MatrixRealization("D", n, tuple(phases), True)
        center_phase = None
    return rs, sigma, defining_table(realization, center_phase)


def defining_table(m: MatrixRealization, center_phase: Optional[Fraction] = None) -> GradedTable:
    """Graded weights of the defining representation; an outer flip swaps e_n and e_-n."""
    basis = m.vector_basis()
    mapping, phase, weights = {}, {}, {}
    for label, eps, c in basis:
        mapping[label] = label
        phase[label] = center_phase if label == 0 and center_phase is not None else c
        weights[label] = m.to_root_coordinates(eps)
    if m.outer:
        mapping[m.rank], mapping[-m.rank] = -m.rank, m.rank
    table: Dict[Fraction, Dict[Vector, int]] = {}
    for cycle, total in _cycles(mapping, phase):
        k = len(cycle)
        weight = tuple(sum((weights[l][i] for l in cycle), Fraction(0)) / k for i in range(m.rank))
        for s in range(k):
            cls = frac_mod1((total + s) / k)
            table.setdefault(cls, {})
            table[cls][weight] = table[cls].get(weight, 0) + 1
    return table


def so_pair_setup(t: OrthogonalClass, cutoff=2, length_bound: int = LENGTH_BOUND) -> DiracSetup:
    """so(V + C) with sigma = Ad(T + 1) and mu = Ad(-I_V + 1); only toral classes have such a pair."""
    if not t.toral:
        raise UnsupportedSetup("Even dim V with det T = -1 has no toral realization inside so(V + C)")
    if t.odd:
        n = t.dim // 2 + 1
        rs = build_root_system([["D", n]])
        phases = list(t.angles) + [Fraction(0)]
        eta = _flip(n) if t.det == -1 else DiagramAut.identity(n)
        shift = list(_shift_from_phases("D", phases))
        if t.det == -1:
            shift[n - 1] = shift[n - 2]
        sigma = TwistedAutomorphism(eta, tuple(shift))
        mu_shift = tuple([Fraction(0)] * (n - 2) + [Fraction(1, 2), Fraction(1, 2)])
        mu = TwistedAutomorphism(_flip(n), mu_shift)
    else:
        n = t.dim // 2
        rs = build_root_system([["B", n]])
        sigma = TwistedAutomorphism(DiagramAut.identity(n), _shift_from_phases("B", t.angles))
        mu = TwistedAutomorphism(DiagramAut.identity(n), tuple([Fraction(0)] * (n - 1) + [Fraction(1, 2)]))
    return build_setup(f"so{t.dim + 1}-so{t.dim}", rs, sigma, mu, None, cutoff, length_bound)


def _twins(datum: AffineRootDatum, i: int) -> List[int]:
    c = datum.cartan
    found = []
    for j in range(datum.rank):
        if j == i or c[i][j] != 0 or datum.norm(datum.simple_roots[i]) != datum.norm(datum.simple_roots[j]):
            continue
        if all(c[i][k] == c[j][k] and c[k][i] == c[k][j] for k in range(datum.rank) if k not in (i, j)):
            found.append(j)
    return found


def _fundamental_node(datum: AffineRootDatum, weight: Weight) -> Optional[int]:
    labels = datum.labels(weight)
    ones = [i for i, x in enumerate(labels) if x == 1]
    if len(ones) == 1 and all(x == 0 for i, x in enumerate(labels) if i != ones[0]):
        return ones[0]
    return None


@dataclass
class OrthogonalReport:
    orthogonal_class: OrthogonalClass
    datum: AffineRootDatum
    spec: CliffordModuleSpec
    entries: List[Weight]
    nodes: List[int]
    power: int
    formula: str
    discrepancies: List[Discrepancy]

    @property
    def holds(self) -> bool:
        return not self.discrepancies


def so_pair_decomposition(t: OrthogonalClass, cutoff=2) -> OrthogonalReport:
    """F^T(V) over L-hat(so(V), Ad T): V(top) plus the parity partner V(Lambda_j - s_i delta), or 2 V(top)."""
    cutoff = Fraction(cutoff)
    rs, sigma, table = so_realization(t)
    datum = twisted_simple_roots(rs, sigma)
    spec = standalone_spec(rs, table, [Fraction(1)], cutoff)
    top = spec.top
    node = _fundamental_node(datum, top)
    if node is None:
        raise VerificationError(f"Top weight {top} of F^T(V) is not a fundamental weight")
    formula = {"even-det1": "Lambda_l + (Lambda_l-1 - s_l delta)", "odd-det1": "2 Lambda_l-1",
               "odd-det-1": "Lambda_0 + (Lambda_1 - s_0 delta)", "even-det-1": "2 Lambda_0"}[t.case]
    entries, nodes = [top], [node]
    if spec.power == 0:
        _, _, odd = graded_character(spec, cutoff)
        shallow = min(odd.depths()) if odd.depths() else None
        candidates = [] if shallow is None else [
            Weight(f, top.levels, top.delta - d) for d, f, c in odd.terms()
            if d == shallow and datum.is_dominant_integral(Weight(f, top.levels, top.delta - d))
        ]
        # drop dominant weights lying below another candidate of the same depth
        candidates = [c for c in candidates if not any(
            o != c and all(x >= y for x, y in zip(o.finite, c.finite)) for o in candidates)]
        if len(candidates) != 1:
            raise VerificationError(f"Odd part of F^T(V) has {len(candidates)} dominant top weights")
        partner = candidates[0]
        j = _fundamental_node(datum, partner)
        if j is None or j not in _twins(datum, node):
            raise VerificationError(f"Odd top {partner} is not Lambda_j - s delta for a twin node j")
        if not 0 <= top.delta - partner.delta < 1:
            raise VerificationError(f"Odd top {partner} sits {top.delta - partner.delta} below the even top")
        entries.append(partner)
        nodes.append(j)
    total, _, _ = graded_character(spec, cutoff)
    rhs = GradedCharacter.zero(top.levels, top.delta, cutoff)
    for w in entries:
        rhs = rhs + freudenthal_character(datum, w, cutoff)
    discrepancies = restrict_and_compare(total, rhs.scale(2 ** spec.power), cutoff)
    logger.info(f"F^T(V) for dim {t.dim}, det {t.det}: {formula} at nodes {nodes}, "
                f"{'holds' if not discrepancies else f'{len(discrepancies)} discrepancies'}")
    return OrthogonalReport(t, datum, spec, entries, nodes, spec.power, formula, discrepancies)


def orthogonal_signature(datum, weights: Sequence[Weight], slot: int = 0) -> List[Tuple]:
    """Coordinate-free description of highest weights: delta, level and sorted (mark, label) pairs."""
    result = []
    for w in weights:
        pairs = sorted((str(m), str(l)) for m, l in zip(datum.marks, datum.labels(w)))
        result.append((w.delta, w.slot_level(slot), tuple(pairs)))
    return sorted(result)


def compare_with_kernel(t: OrthogonalClass, cutoff=2, length_bound: int = LENGTH_BOUND) -> bool:
    """The intrinsic F^T(V) decomposition agrees with the kernel computed inside so(V + C)."""
    report = so_pair_decomposition(t, cutoff)
    setup = so_pair_setup(t, cutoff, length_bound)
    kernel = kernel_decomposition(setup, length_bound, cutoff)
    if len(setup.a.ideals) != 1:
        raise VerificationError("so(V) inside so(V + C) should be a single ideal")
    ideal = setup.a.ideals[0]
    kernel_weights = [e.weight for e in kernel.entries if -e.weight.delta <= cutoff]
    return (orthogonal_signature(report.datum, report.entries) == orthogonal_signature(ideal, kernel_weights)
            and report.power == kernel.power)


# --- Level one symmetric pairs ---
def level_one_case(setup: DiracSetup) -> str:
    """Family of the symmetric pair (g, g^mu); pairs outside the four families are rejected."""
    rs, eta = setup.rs, setup.mu.eta
    if setup.mu.order != 2:
        raise SetupError("Level-one decompositions need an involution mu")
    if len(rs.components) > 1:
        first, second = rs.components[0], rs.components[-1]
        flip = len(rs.components) == 2 and (first.series, first.rank) == (second.series, second.rank) and all(
            eta.permutation[rs.offsets[0] + i] == rs.offsets[1] + i for i in range(first.rank))
        if not flip or any(v.denominator != 1 for v in setup.mu.shift):
            raise UnsupportedSetup(f"{rs.labels()} with mu {list(eta.permutation)} is not s + s with the flip")
        return "non-simple"
    if eta.is_identity():
        return "inner"
    t = rs.components[0]
    if t.series == "A" and t.rank % 2 == 0:
        return "A-even-outer"
    if t.series in "ADE":
        return "outer"
    raise UnsupportedSetup(f"No level-one family for {rs.labels()} with mu {list(eta.permutation)}")


def _level_gaps(setup: DiracSetup) -> Tuple[Fraction, ...]:
    g = setup.g_datum.level
    gaps = [g - ideal.level for ideal in setup.a.ideals]
    if setup.a.center_basis:
        gaps.append(g)
    return tuple(gaps)


def _inversion_sum(setup: DiracSetup, entry: MultipletEntry) -> Weight:
    total = Weight.root(zero_vector(setup.rs.rank))
    for r in inversion_set(setup.g_datum, entry.lift_word):
        total = total + r
    return Weight.root(setup.mu_average(total.finite), total.delta)


def _positive_half_sum(setup: DiracSetup, weights: Dict[Vector, int]) -> Vector:
    total = zero_vector(setup.rs.rank)
    for w, m in weights.items():
        if not is_zero(w) and setup.rs.is_positive(w):
            total = vec_add(total, vec_scale(Fraction(m, 2), w))
    return total


def rho_prime(setup: DiracSetup) -> Weight:
    """a_0 nu(rho'): the mu-fixed weight pairing to a_0 with every restricted simple root, a_0 = |alpha|^2 / 2."""
    datum, system = setup.g_datum, setup.system
    norms = {datum.norm(alpha) for alpha in datum.simple_roots}
    if len(norms) != 1:
        raise UnsupportedSetup(f"{setup.rs.labels()} is not simply laced")
    a0 = norms.pop() / 2
    basis = fixed_basis([setup.mu.eta.permutation], setup.rs.rank)
    rows = [[setup.rs.pair(b, beta.finite) for b in basis] + [beta.delta] for beta in system.simple]
    solution = _solve(rows, [a0] * len(rows))
    if solution is None:
        raise VerificationError(f"No mu-fixed weight pairs to {a0} with every restricted simple root")
    finite = zero_vector(setup.rs.rank)
    for c, b in zip(solution, basis):
        finite = vec_add(finite, vec_scale(c, b))
    return Weight(finite, (solution[-1],), Fraction(0))


def _outer_inversion_test(setup: DiracSetup, case: str):
    restricted = {setup.mu_average(r) for r in setup.rs.roots}
    a_table, p_table = setup.a.a_table, setup.a.p_table

    def in_odd_short(root: Weight) -> bool:
        # (2m + 1) delta + 2 beta with beta short
        odd = root.delta.denominator == 1 and root.delta % 2 == 1
        return odd and root.finite in restricted and vec_scale(HALF, root.finite) in restricted

    def in_p(root: Weight) -> bool:
        cls = frac_mod1(root.delta)
        return (not is_zero(root.finite) and root.finite in p_table.get(cls, {})
                and root.finite not in a_table.get(cls, {}))

    return in_odd_short if case == "A-even-outer" else in_p


def level_one_decomposition(setup: DiracSetup, kind: str, length_bound: Optional[int] = None) -> MultipletReport:
    """Kernel for the basic+vector (sigma = mu) or spin (sigma = identity) level-one families.

    Each entry is checked against the closed form of the pair's family: the level gaps plus the inversion sum
    for basic+vector and for inner spin, rho-hat of a for the diagonal pair, and phi*(w(a_0 nu(rho'))) - rho-hat
    of a for outer spin, whose representatives must invert only roots outside a.
    """
    if kind not in LEVEL_ONE_KINDS:
        raise SetupError(f"kind must be one of {LEVEL_ONE_KINDS}, got {kind}")
    case = level_one_case(setup)
    if kind == "basic+vector" and (setup.sigma.eta != setup.mu.eta or setup.sigma.shift !=
                                   tuple(frac_mod1(v) for v in setup.mu.shift)):
        raise SetupError("basic+vector needs sigma = mu")
    if kind == "spin" and not setup.sigma.is_identity():
        raise SetupError("spin needs sigma = identity")
    if any(setup.labels):
        raise SetupError("Level-one decompositions are for Lambda = 0")
    report = kernel_decomposition(setup, length_bound)
    a = setup.a
    report.extras.update({"case": case, "kind": kind})
    if kind == "basic+vector":
        base = Weight(zero_vector(setup.rs.rank), _level_gaps(setup), Fraction(0))
        closed = [base - _inversion_sum(setup, e) for e in report.entries]
    elif case == "inner":
        rho_k = _positive_half_sum(setup, a.a_table.get(Fraction(0), {}))
        base = Weight(vec_sub(setup.rs.rho, rho_k), _level_gaps(setup), Fraction(0))
        closed = [base - _inversion_sum(setup, e) for e in report.entries]
    elif case == "non-simple":
        closed = [a.rho_hat]
        report.extras["single_rho_entry"] = report.weights() == closed
    else:
        start = rho_prime(setup)
        rho = setup.g_datum.rho_hat
        report.extras["rho_prime_agrees"] = start == rho.with_finite(setup.mu_average(rho.finite))
        allowed = _outer_inversion_test(setup, case)
        closed, inside = [], True
        for e in report.entries:
            element = folded_element(setup.system, e.word)
            closed.append(a.phi_star(element.act(start)) - a.rho_hat)
            inside = inside and all(allowed(r) for r in folded_inversion_set(setup.system, e.word))
        report.extras["inversions_outside_a"] = inside
    agrees = closed == report.weights()
    report.extras["closed_form_agrees"] = agrees
    if not agrees:
        raise VerificationError(f"The {case} closed form disagrees with the kernel for {setup.name}")
    logger.info(f"Level-one {kind} kernel of {setup.name} ({case}): {len(report.entries)} member(s)")
    return report
