# kacdirac/coxeter.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from kacdirac.utils import (
    HypothesisError, Matrix, SetupError, SpanCoordinates, UnsupportedSetup, VerificationError, Vector,
    identity, is_positive_definite, is_zero, mat_inverse, mat_mul, mat_vec, pair, permutation_matrix, rank, vec_add,
    vec_scale, zero_vector,
)
from kacdirac.weights import Weight

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

# --- Constants ---
RED_STEP_LIMIT = 1000


# --- Affine Weyl group elements ---
def _freeze(m: Matrix) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


@dataclass(frozen=True)
class AffWeylElt:
    """x -> t_translation(matrix . x) on level-k weights; roots are level 0."""
    matrix: Tuple[Tuple[Fraction, ...], ...]
    translation: Vector
    gram: Tuple[Tuple[Fraction, ...], ...] = field(compare=False, repr=False)

    @staticmethod
    def identity(gram: Matrix) -> "AffWeylElt":
        n = len(gram)
        return AffWeylElt(_freeze(identity(n)), zero_vector(n), _freeze(gram))

    @staticmethod
    def reflection(gram: Matrix, root: Weight) -> "AffWeylElt":
        f = root.finite
        norm = pair(gram, f, f)
        if norm == 0:
            raise SetupError(f"Cannot reflect in the imaginary root {root}")
        gf = mat_vec(gram, f)
        n = len(gram)
        m = [[Fraction(int(i == k)) - 2 * f[i] * gf[k] / norm for k in range(n)] for i in range(n)]
        return AffWeylElt(_freeze(m), vec_scale(-2 * root.delta / norm, f), _freeze(gram))

    @staticmethod
    def translation_by(gram: Matrix, alpha: Sequence[Fraction]) -> "AffWeylElt":
        return AffWeylElt(_freeze(identity(len(gram))), tuple(Fraction(a) for a in alpha), _freeze(gram))

    @property
    def key(self):
        return (self.matrix, self.translation)

    def act(self, x: Weight) -> Weight:
        y = mat_vec(self.matrix, x.finite)
        if not x.levels:
            return Weight(y, x.levels, x.delta - pair(self.gram, y, self.translation))
        if len(x.levels) > 1:
            raise SetupError("Affine Weyl elements act on single-level weights only")
        k = x.levels[0]
        lam = self.translation
        delta = x.delta - pair(self.gram, y, lam) - k * pair(self.gram, lam, lam) / 2
        return Weight(vec_add(y, vec_scale(k, lam)), x.levels, delta)

    def compose(self, other: "AffWeylElt") -> "AffWeylElt":
        """self after other."""
        a = [list(r) for r in self.matrix]
        b = [list(r) for r in other.matrix]
        return AffWeylElt(_freeze(mat_mul(a, b)), vec_add(self.translation, mat_vec(a, other.translation)), self.gram)

    def inverse(self) -> "AffWeylElt":
        # orthogonal w.r.t. the Gram form: A^{-1} = G^{-1} A^T G
        a = [list(r) for r in self.matrix]
        g = [list(r) for r in self.gram]
        n = len(a)
        at = [[a[j][i] for j in range(n)] for i in range(n)]
        inv = mat_mul(mat_mul(mat_inverse(g), at), g)
        return AffWeylElt(_freeze(inv), tuple(-x for x in mat_vec(inv, self.translation)), self.gram)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return self.matrix == _freeze(identity(n)) and is_zero(self.translation)

    def commutes_with_permutation(self, perm: Sequence[int]) -> bool:
        p = permutation_matrix(perm)
        a = [list(r) for r in self.matrix]
        return mat_mul(p, a) == mat_mul(a, p) and mat_vec(p, self.translation) == self.translation


def translation(gram: Matrix, alpha: Sequence[Fraction], lattice: Optional[Sequence[Vector]] = None) -> AffWeylElt:
    """t_alpha; alpha must lie in the rational span of the lattice when one is given."""
    if lattice is not None and not SpanCoordinates(lattice, len(gram)).contains(alpha):
        raise SetupError(f"Translation {[str(a) for a in alpha]} is outside the span of the translation lattice")
    return AffWeylElt.translation_by(gram, alpha)


def act(w: AffWeylElt, x: Weight) -> Weight:
    return w.act(x)


# --- Enumeration ---
@dataclass(frozen=True)
class CoxeterElement:
    element: AffWeylElt
    word: Tuple[int, ...]
    lift_word: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)


def inversion_set(datum, word: Sequence[int]) -> List[Weight]:
    """N(w) for w = s_{i1} ... s_{ik}, built root by root; valid for non-reduced words too."""
    u = AffWeylElt.identity(datum.rs.gram)
    found: List[Weight] = []
    for i in word:
        alpha = datum.simple_roots[i]
        root = u.act(alpha)
        if datum.is_positive(root):
            found.append(root)
        else:
            found.remove(-root)
        u = u.compose(AffWeylElt.reflection(datum.rs.gram, alpha))
    return found


def element_from_word(datum, word: Sequence[int]) -> AffWeylElt:
    u = AffWeylElt.identity(datum.rs.gram)
    for i in word:
        u = u.compose(AffWeylElt.reflection(datum.rs.gram, datum.simple_roots[i]))
    return u


def enumerate_by_length(gram: Matrix, generators: Sequence[AffWeylElt], lift_words: Sequence[Tuple[int, ...]],
                        grows: Callable[[AffWeylElt, int], bool], max_length: int) -> List[CoxeterElement]:
    """Breadth-first enumeration: w s_J has length l(w) + 1 exactly when grows(w, J)."""
    start = CoxeterElement(AffWeylElt.identity(gram), (), ())
    elements, seen, frontier = [start], {start.element.key}, [start]
    for length in range(max_length):
        layer = []
        for item in frontier:
            for j, gen in enumerate(generators):
                if not grows(item.element, j):
                    continue
                w = item.element.compose(gen)
                if w.key in seen:
                    continue
                seen.add(w.key)
                layer.append(CoxeterElement(w, item.word + (j,), item.lift_word + lift_words[j]))
        logger.debug(f"Length {length + 1}: {len(layer)} elements")
        if not layer:
            break
        elements.extend(layer)
        frontier = layer
    return elements


def enumerate_weyl(datum, max_length: int) -> List[CoxeterElement]:
    gens = [AffWeylElt.reflection(datum.rs.gram, a) for a in datum.simple_roots]
    return enumerate_by_length(
        datum.rs.gram, gens, [(i,) for i in range(len(gens))],
        lambda w, i: datum.is_positive(w.act(datum.simple_roots[i])), max_length,
    )


# --- Folded group ---
@dataclass
class RestrictedSystem:
    """Orbit averages alpha_J of the mu-orbits J of simple roots and the lifts (w_0)_J of their reflections."""
    datum: object
    mu_permutation: Tuple[int, ...]
    orbits: List[List[int]]
    alphas: List[Weight]
    finite_type: List[bool]
    isotropic: List[bool]
    simple: List[Weight] = field(default_factory=list)
    lifts: List[AffWeylElt] = field(default_factory=list)
    lift_words: List[Tuple[int, ...]] = field(default_factory=list)
    gram: Matrix = field(default_factory=list)

    def __post_init__(self):
        self._coords = SpanCoordinates([_flat(a) for a in self.simple], len(self.datum.rs.gram) + 1) \
            if self.simple else None

    def pair(self, x: Weight, y: Weight) -> Fraction:
        return self.datum.pair(x, y)

    def reflect(self, x: Weight, j: int) -> Weight:
        return self.datum.reflect(x, self.simple[j])

    def coordinates(self, beta: Weight) -> Optional[Vector]:
        if self._coords is None:
            return None
        return self._coords(_flat(beta))

    def height(self, beta: Weight) -> Fraction:
        coords = self.coordinates(beta)
        if coords is None:
            raise SetupError(f"{beta} is not in the span of the restricted simple roots")
        return sum(coords, Fraction(0))

    def is_positive(self, beta: Weight) -> bool:
        return self.datum.is_positive(beta)

    def restrict(self, x: Weight) -> Weight:
        return x.with_finite(_average(x.finite, self.mu_permutation))


def _flat(x: Weight) -> Vector:
    return tuple(x.finite) + (x.delta,)


def _average(v: Sequence[Fraction], perm: Sequence[int]) -> Vector:
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


def _permute(v: Sequence[Fraction], perm: Sequence[int]) -> Vector:
    image = [Fraction(0)] * len(v)
    for i, j in enumerate(perm):
        image[j] = Fraction(v[i])
    return tuple(image)


def _longest_lift(datum, nodes: Sequence[int]) -> Tuple[AffWeylElt, Tuple[int, ...]]:
    u = AffWeylElt.identity(datum.rs.gram)
    word: List[int] = []
    while True:
        grow = [i for i in nodes if datum.is_positive(u.act(datum.simple_roots[i]))]
        if not grow:
            return u, tuple(word)
        i = grow[0]
        u = u.compose(AffWeylElt.reflection(datum.rs.gram, datum.simple_roots[i]))
        word.append(i)


def restricted_simple_roots(datum, mu_permutation: Sequence[int]) -> RestrictedSystem:
    """Folds the simple roots of an affine datum along mu, which acts on finite parts by a coordinate permutation."""
    mu_permutation = tuple(mu_permutation)
    images = {}
    keys = [(a.finite, a.delta) for a in datum.simple_roots]
    for i, a in enumerate(datum.simple_roots):
        image = (_permute(a.finite, mu_permutation), a.delta)
        if image not in keys:
            raise HypothesisError(f"mu does not permute the simple roots: image of root {i} is not simple")
        images[i] = keys.index(image)
    comp_of = {i: c for c, comp in enumerate(datum.components) for i in comp}
    comp_orbit, frontier = {0}, [0]
    while frontier:
        c = frontier.pop()
        for i in datum.components[c]:
            target = comp_of[images[i]]
            if target not in comp_orbit:
                comp_orbit.add(target)
                frontier.append(target)
    if len(comp_orbit) != len(datum.components):
        raise HypothesisError("mu acts on the affine components with more than one orbit")
    seen, orbits = set(), []
    for i in range(len(keys)):
        if i in seen:
            continue
        orbit, j = [], i
        while j not in orbit:
            orbit.append(j)
            j = images[j]
        seen |= set(orbit)
        orbits.append(sorted(orbit))
    alphas, finite, isotropic = [], [], []
    for orbit in orbits:
        total = Weight.root(zero_vector(datum.rs.rank))
        for i in orbit:
            total = total + datum.simple_roots[i]
        alphas.append(total.scale(Fraction(1, len(orbit))))
        sub = [[datum.pair(datum.simple_roots[i], datum.simple_roots[j]) for j in orbit] for i in orbit]
        finite.append(is_positive_definite(sub))
        isotropic.append(datum.norm(alphas[-1]) == 0)
    simple, lifts, words = [], [], []
    for orbit, alpha, ok in zip(orbits, alphas, finite):
        if not ok:
            continue
        lift, word = _longest_lift(datum, orbit)
        simple.append(alpha)
        lifts.append(lift)
        words.append(word)
    system = RestrictedSystem(datum, mu_permutation, orbits, alphas, finite, isotropic, simple, lifts, words,
                              [[datum.pair(a, b) for b in simple] for a in simple])
    if rank([_flat(a) for a in simple], datum.rs.rank + 1) != len(simple):
        raise VerificationError("Restricted simple roots are linearly dependent")
    logger.info(f"Restricted system: {len(simple)} simple roots from {len(orbits)} mu-orbits")
    return system


def restriction_matches_reflection(system: RestrictedSystem, j: int) -> bool:
    """The lift (w_0)_J acts on the mu-fixed part of h-hat exactly as the reflection in alpha_J."""
    datum = system.datum
    n = datum.rs.rank
    samples = [Weight(system.restrict(Weight.root(tuple(Fraction(int(i == k)) for k in range(n)))).finite, (0,), 0)
               for i in range(n)]
    samples += [Weight(zero_vector(n), (1,), 0), Weight(zero_vector(n), (0,), 1)]
    lift = system.lifts[j]
    for x in samples:
        if lift.act(x) != system.reflect(x, j):
            return False
    return True


def folded_element(system: RestrictedSystem, word: Sequence[int]) -> AffWeylElt:
    u = AffWeylElt.identity(system.datum.rs.gram)
    for j in word:
        u = u.compose(system.lifts[j])
    return u


def folded_inversion_set(system: RestrictedSystem, word: Sequence[int]) -> List[Weight]:
    """N(w) inside Sigma for w = s_{J1} ... s_{Jk} in the restricted simple reflections."""
    u = AffWeylElt.identity(system.datum.rs.gram)
    found: List[Weight] = []
    for j in word:
        root = u.act(system.simple[j])
        if system.is_positive(root):
            found.append(root)
        else:
            found.remove(-root)
        u = u.compose(system.lifts[j])
    return found


def enumerate_folded(system: RestrictedSystem, max_length: int) -> List[CoxeterElement]:
    return enumerate_by_length(
        system.datum.rs.gram, system.lifts, system.lift_words,
        lambda w, j: system.is_positive(w.act(system.simple[j])), max_length,
    )


def sigma_roots(system: RestrictedSystem, height_bound: int) -> List[Weight]:
    """Positive elements of Sigma = W_comm . P up to P-height height_bound."""
    found = {(a.finite, a.delta): a for a in system.simple}
    frontier = list(system.simple)
    while frontier:
        layer = []
        for beta in frontier:
            for j in range(len(system.simple)):
                image = system.reflect(beta, j)
                key = (image.finite, image.delta)
                if key in found or not system.is_positive(image) or system.height(image) > height_bound:
                    continue
                found[key] = image
                layer.append(image)
        frontier = layer
    return sorted(found.values(), key=lambda b: (system.height(b), b.delta, b.finite))


def folded_property_suite(system: RestrictedSystem, height_bound: int) -> Dict[str, bool]:
    """Reflection closure, nonisotropy, independence, sign-coherent integral coordinates, reducedness."""
    roots = sigma_roots(system, height_bound)
    keys = {(b.finite, b.delta) for b in roots}
    closure = True
    for beta in roots:
        for j in range(len(system.simple)):
            image = system.reflect(beta, j)
            if (image.finite, image.delta) == (tuple(-x for x in system.simple[j].finite), -system.simple[j].delta):
                continue
            if system.height(image) <= height_bound and (image.finite, image.delta) not in keys:
                closure = False
    coherent = True
    for beta in roots:
        coords = system.coordinates(beta)
        if coords is None or any(c.denominator != 1 or c < 0 for c in coords):
            coherent = False
    reduced = True
    for beta in roots:
        for other in roots:
            if other is beta:
                continue
            ratio = _ratio(other, beta)
            if ratio is not None and ratio not in (1, -1):
                reduced = False
    return {
        "reflection_closure": closure,
        "nonisotropic": all(system.datum.norm(b) != 0 for b in roots),
        "independent": rank([_flat(a) for a in system.simple], system.datum.rs.rank + 1) == len(system.simple),
        "sign_coherent": coherent,
        "reduced": reduced,
        "restriction": all(restriction_matches_reflection(system, j) for j in range(len(system.simple))),
    }


def _ratio(x: Weight, y: Weight) -> Optional[Fraction]:
    """c with x = c*y, or None."""
    fx, fy = _flat(x), _flat(y)
    c = None
    for a, b in zip(fx, fy):
        if b == 0:
            if a != 0:
                return None
            continue
        if c is None:
            c = a / b
        elif a != c * b:
            return None
    return c


def red(system: RestrictedSystem, beta: Weight) -> Optional[Weight]:
    """The Sigma root positively proportional to beta, or None when beta is isotropic."""
    if system.datum.norm(beta) == 0:
        return None
    sign = 1 if system.is_positive(beta) else -1
    current = beta.scale(sign)
    path: List[int] = []
    for _ in range(RED_STEP_LIMIT):
        for alpha in system.simple:
            c = _ratio(current, alpha)
            if c is not None and c > 0:
                result = alpha
                for j in reversed(path):
                    result = system.reflect(result, j)
                return result.scale(sign)
        walls = [j for j, alpha in enumerate(system.simple) if system.pair(current, alpha) > 0]
        if not walls:
            raise UnsupportedSetup(f"{beta} reduces to a root orthogonal to every wall; no Sigma representative")
        current = system.reflect(current, walls[0])
        path.append(walls[0])
        if not system.is_positive(current):
            raise VerificationError(f"Height reduction of {beta} left the positive cone")
    raise VerificationError(f"Height reduction of {beta} did not terminate")


def is_minimal_representative(system: RestrictedSystem, w: AffWeylElt, a_simple: Sequence[Weight]) -> bool:
    """w^{-1} maps every positive real root of a into the positive part of Sigma."""
    rho = system.datum.rho_hat
    image = w.act(rho)
    return all(system.pair(alpha, image) > 0 for alpha in a_simple)


def minimal_coset_reps(system: RestrictedSystem, a_simple: Sequence[Weight], max_length: int) -> List[CoxeterElement]:
    reps = [e for e in enumerate_folded(system, max_length)
            if is_minimal_representative(system, e.element, a_simple)]
    logger.info(f"{len(reps)} minimal coset representatives up to length {max_length}")
    return reps


def dominant_key(system: RestrictedSystem, a_simple: Sequence[Weight], x: Weight) -> Weight:
    """Representative of the W_a-orbit of x in the closed a-dominant chamber."""
    for _ in range(RED_STEP_LIMIT):
        walls = [a for a in a_simple if system.pair(x, a) < 0]
        if not walls:
            return x
        x = system.datum.reflect(x, walls[0])
    raise VerificationError("Dominant reduction did not terminate")


def brute_force_minimal_check(system: RestrictedSystem, a_simple: Sequence[Weight], max_length: int) -> bool:
    """Within each coset W_a w of enumerated elements, the minimal-length one is unique and is the one kept."""
    elements = enumerate_folded(system, max_length)
    rho = system.datum.rho_hat
    cosets: Dict = {}
    for e in elements:
        key = dominant_key(system, a_simple, e.element.act(rho))
        cosets.setdefault((key.finite, key.levels, key.delta), []).append(e)
    for members in cosets.values():
        shortest = min(m.length for m in members)
        minimal = [m for m in members if m.length == shortest]
        kept = [m for m in members if is_minimal_representative(system, m.element, a_simple)]
        if len(minimal) != 1 or len(kept) != 1 or kept[0] is not minimal[0]:
            return False
    return True


# --- Translation lattice ---
def translation_lattice(datum_eta) -> List[Vector]:
    """Generators of M: (1/r) times the W_eta-orbit of the coroot of theta, per component orbit."""
    folded = datum_eta.folded
    gram = datum_eta.rs.gram
    generators = []
    finite_simple = [a for a in datum_eta.simple_roots if a.delta == 0]
    for theta, r in zip(folded.thetas, folded.orders):
        coroot = vec_scale(Fraction(2) / pair(gram, theta, theta) / r, theta)
        orbit, frontier = {coroot}, [coroot]
        while frontier:
            v = frontier.pop()
            for alpha in finite_simple:
                image = datum_eta.reflect(Weight.root(v), alpha).finite
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        generators.extend(sorted(orbit))
    return generators
