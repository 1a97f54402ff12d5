# kacdirac/twistaff.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.functions.combinatorial.numbers import mobius, totient
from sympy.ntheory import divisors

from kacdirac.coxeter import AffWeylElt
from kacdirac.rootcore import (
    DiagramAut, FiniteRootSystem, FoldedDatum, GradedTable, fixed_point_data, grading_table, joint_grading_table,
    table_dimension,
)
from kacdirac.utils import (
    HypothesisError, Matrix, SetupError, SpanCoordinates, UnsupportedSetup, VerificationError, Vector, fixed_basis,
    frac_mod1, independent_subset, is_positive_semidefinite, is_zero, lcm_list, mat_inverse, mat_mul, mat_vec,
    nullspace, orbit_average, pair, to_sympy, vec_add, vec_scale, vec_sum, zero_vector,
)
from kacdirac.weights import Weight

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

# --- Constants ---
ALCOVE_STEP_LIMIT = 10000
HALF = Fraction(1, 2)


# --- Types ---
@dataclass(frozen=True)
class TwistedAutomorphism:
    """sigma = eta * exp(2 pi i ad h), stored through x_i = alpha_i(h)."""
    eta: DiagramAut
    shift: Vector

    def __post_init__(self):
        object.__setattr__(self, "shift", tuple(Fraction(v) for v in self.shift))
        if self.eta.apply(self.shift) != self.shift:
            raise SetupError(f"Shift {[str(v) for v in self.shift]} is not fixed by the diagram part")

    @staticmethod
    def identity(rank: int) -> "TwistedAutomorphism":
        return TwistedAutomorphism(DiagramAut.identity(rank), zero_vector(rank))

    @property
    def order(self) -> int:
        return lcm_list([self.eta.order] + [v.denominator for v in self.shift])

    def is_identity(self) -> bool:
        return self.eta.is_identity() and all(v.denominator == 1 for v in self.shift)

    def is_inner(self) -> bool:
        return self.eta.is_identity()


@dataclass
class AffineRootDatum:
    """Simple roots, marks, Cartan matrix, rho-hat and root multiplicities of one twisted affinization.

    Finite parts are vectors in the simple-root coordinates of the ambient g; `slot` selects which central
    element of a multi-level weight this datum reads.
    """
    rs: FiniteRootSystem
    table: GradedTable
    simple_roots: List[Weight]
    cartan: Matrix
    components: List[List[int]]
    null_vectors: List[List[int]]
    rho_hat: Weight
    level: Fraction
    span: List[Vector]
    slot: int = 0
    sigma: Optional[TwistedAutomorphism] = None
    folded: Optional[FoldedDatum] = None
    eta_table: Optional[GradedTable] = None
    w_prime: Optional[Matrix] = None
    reduced_shift: Optional[Vector] = None
    alcove_element: Optional[AffWeylElt] = None
    extras: Dict = field(default_factory=dict)

    @property
    def marks(self) -> List[Fraction]:
        return [a.delta for a in self.simple_roots]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dimension(self) -> int:
        return table_dimension(self.table)

    def null_root(self, c: int = 0) -> Weight:
        total = Weight.root(zero_vector(self.rs.rank))
        for i, a in zip(self.components[c], self.null_vectors[c]):
            total = total + self.simple_roots[i].scale(a)
        return total

    def pair(self, x: Weight, y: Weight) -> Fraction:
        return (pair(self.rs.gram, x.finite, y.finite) + x.slot_level(self.slot) * y.delta
                + y.slot_level(self.slot) * x.delta)

    def norm(self, x: Weight) -> Fraction:
        return self.pair(x, x)

    def coroot_pairing(self, x: Weight, alpha: Weight) -> Fraction:
        return 2 * self.pair(x, alpha) / self.pair(alpha, alpha)

    def reflect(self, x: Weight, alpha: Weight) -> Weight:
        return x - alpha.scale(self.coroot_pairing(x, alpha))

    def is_positive(self, root: Weight) -> bool:
        return self.pair(root, self.rho_hat) > 0

    def weight(self, finite: Sequence[Fraction], level, delta=0) -> Weight:
        levels = [Fraction(0)] * (self.slot + 1)
        levels[self.slot] = Fraction(level)
        return Weight(tuple(finite), tuple(levels), Fraction(delta))

    def labels(self, x: Weight) -> List[Fraction]:
        return [self.coroot_pairing(x, a) for a in self.simple_roots]

    def is_dominant_integral(self, x: Weight) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.labels(x))

    def imaginary_multiplicity(self, degree: Fraction) -> int:
        if degree == 0:
            return 0
        return self.table.get(frac_mod1(degree), {}).get(zero_vector(self.rs.rank), 0)

    def positive_roots(self, max_degree: Fraction) -> List[Tuple[Weight, int]]:
        """Positive roots with delta coefficient at most max_degree, with multiplicities."""
        roots = []
        for cls in sorted(self.table):
            for weight, mult in sorted(self.table[cls].items()):
                degree = Fraction(cls)
                while degree <= max_degree:
                    if is_zero(weight):
                        if degree > 0:
                            roots.append((Weight.root(weight, degree), mult))
                    elif degree > 0 or self.rs.is_positive(weight):
                        roots.append((Weight.root(weight, degree), mult))
                    degree += 1
        return sorted(roots, key=lambda item: (item[0].delta, item[0].finite))


# --- Utility Functions ---
def rho_sigma(rs: FiniteRootSystem, table: GradedTable) -> Vector:
    """Finite part of rho-hat: rho of the fixed part plus (1 - 2j) weighted half sums of the classes j < 1/2."""
    total = zero_vector(rs.rank)
    for cls, weights in table.items():
        if cls >= HALF:
            continue
        for weight, mult in weights.items():
            if is_zero(weight):
                continue
            if cls == 0:
                if rs.is_positive(weight):
                    total = vec_add(total, vec_scale(Fraction(mult, 2), weight))
            else:
                total = vec_add(total, vec_scale((1 - 2 * cls) * Fraction(mult, 2), weight))
    return total


def _components(cartan: Matrix) -> List[List[int]]:
    n = len(cartan)
    seen, comps = set(), []
    for start in range(n):
        if start in seen:
            continue
        comp, frontier = {start}, [start]
        while frontier:
            i = frontier.pop()
            for j in range(n):
                if j not in comp and (cartan[i][j] != 0 or cartan[j][i] != 0):
                    comp.add(j)
                    frontier.append(j)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def _null_vector(rs: FiniteRootSystem, roots: Sequence[Weight]) -> List[int]:
    rows = [[roots[i].finite[k] for i in range(len(roots))] for k in range(rs.rank)]
    kernel = nullspace(rows, len(roots))
    if len(kernel) != 1:
        raise VerificationError(f"Component of {len(roots)} simple roots has a {len(kernel)}-dimensional null space")
    v = kernel[0]
    if v[0] < 0:
        v = tuple(-x for x in v)
    scale = lcm_list([x.denominator for x in v])
    ints = [int(x * scale) for x in v]
    g = 0
    for x in ints:
        g = sympy.igcd(g, x)
    ints = [x // g for x in ints]
    if any(x <= 0 for x in ints):
        raise VerificationError(f"Null vector {ints} is not positive: Cartan matrix is not affine")
    return ints


def complete_datum(rs: FiniteRootSystem, table: GradedTable, simple: List[Weight], span: List[Vector],
                   slot: int = 0, check_levels: bool = True) -> AffineRootDatum:
    """Cartan matrix, components, null vectors, Casimir level and rho-hat for a list of simple roots."""
    gram = [[pair(rs.gram, a.finite, b.finite) for b in simple] for a in simple]
    for i, row in enumerate(gram):
        if row[i] <= 0:
            raise VerificationError(f"Simple root {simple[i]} is not real")
    cartan = [[2 * gram[i][j] / gram[j][j] for j in range(len(simple))] for i in range(len(simple))]
    comps = _components(cartan)
    nulls, levels = [], []
    for comp in comps:
        sub = [[gram[i][j] for j in comp] for i in comp]
        if not is_positive_semidefinite(sub) or to_sympy(sub).rank() != len(comp) - 1:
            raise VerificationError(f"Component {comp} does not have an affine Cartan matrix")
        roots = [simple[i] for i in comp]
        a = _null_vector(rs, roots)
        s = sum((ai * r.delta for ai, r in zip(a, roots)), Fraction(0))
        level = sum((ai * gram[i][i] / 2 for ai, i in zip(a, comp)), Fraction(0)) / s
        nulls.append(a)
        levels.append(level)
    if check_levels and len(set(levels)) > 1:
        raise UnsupportedSetup(f"Components have different Casimir levels {[str(x) for x in levels]}")
    level = levels[0]
    levels_tuple = [Fraction(0)] * (slot + 1)
    levels_tuple[slot] = level
    rho_hat = Weight(rho_sigma(rs, table), tuple(levels_tuple), Fraction(0))
    datum = AffineRootDatum(rs, table, list(simple), cartan, comps, nulls, rho_hat, level, span, slot)
    for alpha in simple:
        if datum.coroot_pairing(rho_hat, alpha) != 1:
            raise VerificationError(f"rho-hat pairs to {datum.coroot_pairing(rho_hat, alpha)} with {alpha}")
    return datum


def datum_from_table(rs: FiniteRootSystem, table: GradedTable, span: List[Vector], slot: int = 0,
                     check_levels: bool = True) -> AffineRootDatum:
    """Affine datum read off a graded table: simple roots are the indecomposable positive real roots."""
    candidates = []
    for cls, weights in table.items():
        for weight, mult in weights.items():
            for degree in (Fraction(cls), Fraction(cls) + 1):
                if degree > 1:
                    continue
                if is_zero(weight):
                    if degree > 0 and mult > 0:
                        candidates.append(Weight.root(weight, degree))
                elif degree > 0 or rs.is_positive(weight):
                    candidates.append(Weight.root(weight, degree))
    keys = {(c.finite, c.delta) for c in candidates}
    simple = []
    for beta in candidates:
        if is_zero(beta.finite):
            continue
        decomposable = any(
            (tuple(b - a for a, b in zip(alpha.finite, beta.finite)), beta.delta - alpha.delta) in keys
            for alpha in candidates if (alpha.finite, alpha.delta) != (beta.finite, beta.delta)
        )
        if not decomposable:
            simple.append(beta)
    simple.sort(key=lambda r: (r.delta, [-x for x in r.finite]))
    logger.debug(f"Indecomposable roots from table: {len(simple)} of {len(candidates)} candidates")
    return complete_datum(rs, table, simple, span, slot, check_levels)


def eta_simple_roots(rs: FiniteRootSystem, eta: DiagramAut) -> AffineRootDatum:
    """Datum of the eta-twisted affinization: delta/r - theta together with the folded simple roots."""
    folded = fixed_point_data(rs, eta)
    table = grading_table(rs, eta, zero_vector(rs.rank))
    simple = []
    for nodes, theta, r in zip(folded.component_orbits, folded.thetas, folded.orders):
        simple.append(Weight.root(tuple(-x for x in theta), Fraction(1, r)))
        for alpha in folded.simple_roots:
            if any(alpha[i] != 0 for i in nodes):
                simple.append(Weight.root(alpha, 0))
    span = fixed_basis([eta.permutation], rs.rank)
    datum = complete_datum(rs, table, simple, span)
    datum.folded = folded
    datum.eta_table = table
    datum.sigma = TwistedAutomorphism(eta, zero_vector(rs.rank))
    datum.reduced_shift = zero_vector(rs.rank)
    datum.w_prime = [[Fraction(int(i == j)) for j in range(rs.rank)] for i in range(rs.rank)]
    datum.alcove_element = AffWeylElt.identity(rs.gram)
    logger.info(f"eta-datum for {rs.labels()} by {list(eta.permutation)}: marks {[str(m) for m in datum.marks]}")
    return datum


def shift_to_weight(rs: FiniteRootSystem, x: Sequence[Fraction]) -> Vector:
    """Finite weight v with (v, alpha_i) = x_i."""
    return mat_vec(mat_inverse(rs.gram), x)


def alcove_reduce(datum_eta: AffineRootDatum, x: Sequence[Fraction]) -> Tuple[AffWeylElt, Vector]:
    """Walks Lambda_0 + nu(h) into the fundamental alcove by reflecting in the lowest-index negative wall."""
    rs = datum_eta.rs
    point = Weight(shift_to_weight(rs, x), (Fraction(1),), Fraction(0))
    w = AffWeylElt.identity(rs.gram)
    for step in range(ALCOVE_STEP_LIMIT):
        walls = [datum_eta.pair(point, beta) for beta in datum_eta.simple_roots]
        negative = [i for i, v in enumerate(walls) if v < 0]
        if not negative:
            reduced = mat_vec(rs.gram, point.finite)
            logger.debug(f"Alcove walk finished after {step} reflections")
            return w, reduced
        beta = datum_eta.simple_roots[negative[0]]
        s = AffWeylElt.reflection(rs.gram, beta)
        point = s.act(point)
        w = s.compose(w)
    raise VerificationError(f"Alcove walk exceeded {ALCOVE_STEP_LIMIT} steps")


def _twisted_roots(datum_eta: AffineRootDatum, w_prime: Matrix, reduced: Vector) -> List[Weight]:
    folded = datum_eta.folded
    simple = []
    for nodes, theta, r in zip(folded.component_orbits, folded.thetas, folded.orders):
        s0 = Fraction(1, r) - sum((t * v for t, v in zip(theta, reduced)), Fraction(0))
        simple.append(Weight.root(tuple(-c for c in mat_vec(w_prime, theta)), s0))
        for alpha in folded.simple_roots:
            if any(alpha[i] != 0 for i in nodes):
                si = sum((a * v for a, v in zip(alpha, reduced)), Fraction(0))
                simple.append(Weight.root(mat_vec(w_prime, alpha), si))
    return simple


def twisted_simple_roots(rs: FiniteRootSystem, sigma: TwistedAutomorphism) -> AffineRootDatum:
    """Simple roots of the sigma-twisted affinization through the alcove reduction of its shift."""
    datum_eta = eta_simple_roots(rs, sigma.eta)
    w, reduced = alcove_reduce(datum_eta, sigma.shift)
    w_prime = mat_inverse([list(row) for row in w.matrix])
    for _ in range(ALCOVE_STEP_LIMIT):
        simple = _twisted_roots(datum_eta, w_prime, reduced)
        wrong = [a for a in simple if a.delta == 0 and not rs.is_positive(a.finite)]
        if not wrong:
            break
        reflection = AffWeylElt.reflection(rs.gram, Weight.root(wrong[0].finite, 0))
        w_prime = mat_mul([list(row) for row in reflection.matrix], w_prime)
    else:
        raise VerificationError("Zero-mark adjustment did not terminate")
    table = grading_table(rs, sigma.eta, sigma.shift)
    datum = complete_datum(rs, table, simple, datum_eta.span)
    datum.sigma = sigma
    datum.folded = datum_eta.folded
    datum.eta_table = datum_eta.table
    datum.w_prime = w_prime
    datum.reduced_shift = reduced
    datum.alcove_element = w
    generic = datum_from_table(rs, table, datum_eta.span)
    if sorted((a.delta, a.finite) for a in generic.simple_roots) != sorted((a.delta, a.finite) for a in simple):
        raise VerificationError("Alcove simple roots disagree with the indecomposable roots of the graded table")
    logger.info(f"Twisted datum for {rs.labels()}: marks {[str(m) for m in datum.marks]}, level {datum.level}")
    return datum


def rho_hat(datum: AffineRootDatum) -> Weight:
    return datum.rho_hat


def transport_root(datum: AffineRootDatum, root: Weight) -> Weight:
    """Image of a root j*delta + alpha of the eta-twisted datum: (j + alpha(h'))delta + w'(alpha)."""
    shift = sum((a * v for a, v in zip(root.finite, datum.reduced_shift)), Fraction(0))
    return Weight.root(mat_vec(datum.w_prime, root.finite), root.delta + shift)


def root_multiplicity(datum: AffineRootDatum, root: Weight) -> int:
    """Multiplicity read from the eta-twisted table through the inverse transport map; 0 for non-roots."""
    if datum.eta_table is None or datum.w_prime is None:
        if is_zero(root.finite):
            return datum.imaginary_multiplicity(root.delta)
        cls = frac_mod1(root.delta)
        return datum.table.get(cls, {}).get(root.finite, 0)
    alpha = mat_vec(mat_inverse(datum.w_prime), root.finite)
    j = root.delta - sum((a * v for a, v in zip(alpha, datum.reduced_shift)), Fraction(0))
    if is_zero(alpha) and j == 0:
        return 0
    return datum.eta_table.get(frac_mod1(j), {}).get(alpha, 0)


def commutation_defect(sigma: TwistedAutomorphism, mu: TwistedAutomorphism) -> Optional[str]:
    """None when sigma and mu commute, otherwise the violated condition."""
    if not sigma.eta.commutes_with(mu.eta):
        return "diagram parts of sigma and mu do not commute"
    xs, xm = sigma.shift, mu.shift
    ps, pm = sigma.eta.permutation, mu.eta.permutation
    for i in range(len(xs)):
        value = xs[pm[i]] + xm[i] - xm[ps[i]] - xs[i]
        if value.denominator != 1:
            return f"sigma and mu do not commute: phase defect {value} on simple root {i + 1}"
    return None


def normalize_sigma_mu(rs: FiniteRootSystem, sigma: TwistedAutomorphism,
                       mu: TwistedAutomorphism) -> Tuple[TwistedAutomorphism, AffWeylElt]:
    """Reduces the shift of sigma to the box [0, 1) and checks it is fixed by mu."""
    defect = commutation_defect(sigma, mu)
    if defect:
        raise HypothesisError(defect)
    reduced = tuple(frac_mod1(v) for v in sigma.shift)
    if mu.eta.apply(reduced) != reduced:
        raise HypothesisError(f"Normalized shift {[str(v) for v in reduced]} is not fixed by mu")
    normalized = TwistedAutomorphism(sigma.eta, reduced)
    datum_eta = eta_simple_roots(rs, sigma.eta)
    w, _ = alcove_reduce(datum_eta, reduced)
    if not w.commutes_with_permutation(mu.eta.permutation):
        raise HypothesisError("Alcove reduction element does not commute with mu")
    logger.debug(f"Normalized sigma shift to {[str(v) for v in reduced]}")
    return normalized, w


# --- Reductive subalgebra a = g^mu ---
def eigen_counts(basis: Sequence[Vector], perm: Sequence[int], order: int) -> Dict[Fraction, int]:
    """Eigenvalue classes of a coordinate permutation restricted to the subspace spanned by basis."""
    if not basis:
        return {}
    n = len(perm)
    coords = SpanCoordinates(basis, n)

    def fixed_dim(d: int) -> int:
        cols = []
        for b in basis:
            image = tuple(b)
            for _ in range(d):
                image = _permute(image, perm)
            c = coords(image)
            if c is None:
                raise VerificationError("Subspace is not stable under the automorphism")
            cols.append(c)
        shifted = [[cols[j][i] - (1 if i == j else 0) for j in range(len(basis))] for i in range(len(basis))]
        return len(basis) - to_sympy(shifted).rank()

    counts: Dict[Fraction, int] = {}
    exact = {}
    for e in divisors(order):
        exact[e] = sum(mobius(e // d) * fixed_dim(d) for d in divisors(e))
        if exact[e] % totient(e):
            raise VerificationError(f"Eigenvalues of order {e} are not equidistributed")
        for j in range(e):
            if gcd(j, e) == 1:
                counts[Fraction(j, e)] = int(exact[e] // totient(e))
    return {c: m for c, m in counts.items() if m}


def _permute(v: Sequence[Fraction], perm: Sequence[int]) -> Vector:
    image = [Fraction(0)] * len(v)
    for i, j in enumerate(perm):
        image[j] = Fraction(v[i])
    return tuple(image)


@dataclass
class ReductiveDatum:
    """L-hat(a, sigma) for a = g^mu: one affine datum per sigma-orbit of simple ideals plus an abelian center.

    Ideal S reads level slot S; a nonzero center reads one more slot after them.
    """
    rs: FiniteRootSystem
    sigma: TwistedAutomorphism
    mu: TwistedAutomorphism
    ideals: List[AffineRootDatum]
    center_basis: List[Vector]
    center_fixed_basis: List[Vector]
    center_table: Dict[Fraction, int]
    a_table: GradedTable
    p_table: GradedTable
    rho_hat: Weight
    fixed_span: List[Vector]

    @property
    def slots(self) -> int:
        return len(self.ideals) + (1 if self.center_basis else 0)

    @property
    def simple_roots(self) -> List[Weight]:
        return [a for ideal in self.ideals for a in ideal.simple_roots]

    @property
    def rank_fixed(self) -> int:
        return len(self.fixed_span)

    @property
    def dimension(self) -> int:
        return table_dimension(self.a_table)

    def phi_star(self, x: Weight) -> Weight:
        return Weight(x.finite, tuple(x.level for _ in range(self.slots)), x.delta)

    def phi_star_inverse(self, x: Weight) -> Weight:
        if len(set(x.levels)) > 1:
            raise SetupError(f"{x} is not in the image of the restriction map: levels differ")
        return Weight(x.finite, (x.levels[0],) if x.levels else (), x.delta)

    def labels(self, x: Weight) -> List[List[Fraction]]:
        return [ideal.labels(x) for ideal in self.ideals]

    def is_dominant_integral(self, x: Weight) -> bool:
        return all(ideal.is_dominant_integral(x) for ideal in self.ideals)

    def level_labels(self) -> List[str]:
        return [f"K{i + 1}" for i in range(len(self.ideals))] + (["K0"] if self.center_basis else [])


def _ideal_components(rs: FiniteRootSystem, roots: List[Vector]) -> List[List[Vector]]:
    comps, seen = [], set()
    for start in roots:
        if start in seen:
            continue
        comp, frontier = [start], [start]
        seen.add(start)
        while frontier:
            r = frontier.pop()
            for s in roots:
                if s not in seen and rs.pair(r, s) != 0:
                    seen.add(s)
                    comp.append(s)
                    frontier.append(s)
        comps.append(comp)
    return comps


def reductive_datum(rs: FiniteRootSystem, sigma: TwistedAutomorphism, mu: TwistedAutomorphism) -> ReductiveDatum:
    """Splits a = g^mu into sigma-orbits of simple ideals and a center and builds their twisted affinizations."""
    joint = joint_grading_table(rs, (sigma.eta, sigma.shift), (mu.eta, mu.shift))
    a_table: Dict[Fraction, Dict[Vector, int]] = {}
    p_table: Dict[Fraction, Dict[Vector, int]] = {}
    for (a, b), weights in joint.items():
        target = a_table if b == 0 else p_table
        slot = target.setdefault(a, {})
        for w, m in weights.items():
            slot[w] = slot.get(w, 0) + m
    perms = [sigma.eta.permutation, mu.eta.permutation]
    fixed_span = fixed_basis(perms, rs.rank)
    mu_roots = [w for w in grading_table(rs, mu.eta, mu.shift).get(Fraction(0), {}) if not is_zero(w)]
    simple_ideals = _ideal_components(rs, mu_roots)
    # glue simple ideals permuted by sigma
    owner = {r: i for i, comp in enumerate(simple_ideals) for r in comp}
    groups, seen = [], set()
    for i in range(len(simple_ideals)):
        if i in seen:
            continue
        members, frontier = {i}, [i]
        while frontier:
            j = frontier.pop()
            target = owner.get(_permute(simple_ideals[j][0], sigma.eta.permutation))
            if target is None:
                raise VerificationError("sigma does not preserve the roots of a")
            if target not in members:
                members.add(target)
                frontier.append(target)
        seen |= members
        groups.append([r for j in sorted(members) for r in simple_ideals[j]])
    key_owner = {}
    for s, group in enumerate(groups):
        for r in group:
            key_owner[orbit_average(r, perms)] = s
    tables: List[Dict[Fraction, Dict[Vector, int]]] = [{} for _ in groups]
    for cls, weights in a_table.items():
        for w, m in weights.items():
            if is_zero(w):
                continue
            if w not in key_owner:
                raise VerificationError(f"Weight {w} of a belongs to no ideal")
            tables[key_owner[w]].setdefault(cls, {})[w] = m
    mu_fixed = fixed_basis([mu.eta.permutation], rs.rank)
    zero = zero_vector(rs.rank)
    ideal_cartans = []
    for s, group in enumerate(groups):
        keep = independent_subset(group, rs.rank)
        cartan = [group[i] for i in keep]
        ideal_cartans.extend(cartan)
        for cls, m in eigen_counts(cartan, sigma.eta.permutation, sigma.eta.order).items():
            tables[s].setdefault(cls, {})[zero] = m
    center = _orthogonal_in(rs, mu_fixed, ideal_cartans)
    center_table = eigen_counts(center, sigma.eta.permutation, sigma.eta.order)
    for cls, weights in a_table.items():
        split = sum(t.get(cls, {}).get(zero, 0) for t in tables) + center_table.get(cls, 0)
        if split != weights.get(zero, 0):
            raise VerificationError(f"Imaginary multiplicities of a at class {cls} do not add up")
    ideals = []
    for s, (group, table) in enumerate(zip(groups, tables)):
        span = lattice_free_basis([orbit_average(r, perms) for r in group], rs.rank)
        ideals.append(datum_from_table(rs, table, span, slot=s))
    center_fixed = _orthogonal_in(rs, fixed_span, ideal_cartans)
    finite = zero_vector(rs.rank)
    for ideal in ideals:
        finite = vec_add(finite, ideal.rho_hat.finite)
    rho = Weight(finite, tuple(i.level for i in ideals) + ((Fraction(0),) if center else ()), Fraction(0))
    logger.info(f"a = g^mu: {len(ideals)} ideal orbit(s) with levels {[str(i.level) for i in ideals]}, "
                f"center of dimension {len(center)}")
    return ReductiveDatum(rs, sigma, mu, ideals, center, center_fixed, center_table, a_table, p_table, rho, fixed_span)


def lattice_free_basis(vectors: Sequence[Vector], n: int) -> List[Vector]:
    return [vectors[i] for i in independent_subset(list(vectors), n)]


def _orthogonal_in(rs: FiniteRootSystem, basis: Sequence[Vector], against: Sequence[Vector]) -> List[Vector]:
    """Basis of the vectors of span(basis) orthogonal to every vector of against."""
    if not basis:
        return []
    if not against:
        return list(basis)
    rows = [[pair(rs.gram, v, b) for b in basis] for v in against]
    solutions = nullspace(rows, len(basis))
    return [vec_sum([vec_scale(c, b) for c, b in zip(sol, basis)], rs.rank) for sol in solutions]


def fundamental_solve(datum: AffineRootDatum, labels: Sequence[Fraction], delta=0) -> Weight:
    """Weight in the datum's span with the given coroot labels on the simple roots."""
    if len(labels) != datum.rank:
        raise SetupError(f"Expected {datum.rank} labels, got {len(labels)}")
    m = len(datum.span)
    rows, rhs = [], []
    for alpha, label in zip(datum.simple_roots, labels):
        norm = datum.norm(alpha)
        rows.append([2 * pair(datum.rs.gram, b, alpha.finite) / norm for b in datum.span] + [2 * alpha.delta / norm])
        rhs.append(Fraction(label))
    solution = _solve(rows, rhs)
    if solution is None:
        raise SetupError(f"Labels {[str(x) for x in labels]} do not define a weight of a single level")
    finite = vec_sum([vec_scale(c, b) for c, b in zip(solution[:m], datum.span)], datum.rs.rank)
    return datum.weight(finite, solution[m], delta)


def _solve(rows: Matrix, rhs: Sequence[Fraction]) -> Optional[Vector]:
    a = to_sympy(rows)
    b = to_sympy([[x] for x in rhs])
    try:
        sol, params = a.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return tuple(Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in sol)
