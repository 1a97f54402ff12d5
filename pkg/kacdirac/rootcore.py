# kacdirac/rootcore.py
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from kacdirac.utils import (
    Cache, Matrix, SetupError, Vector, frac_mod1, is_zero, pair, unit_vector,
    vec_add, vec_scale, vec_sub, zero_vector,
)

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

# --- Constants ---
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
HALF = Fraction(1, 2)

GradedTable = Dict[Fraction, Dict[Vector, int]]
JointTable = Dict[Tuple[Fraction, Fraction], Dict[Vector, int]]


# --- Types ---
@dataclass(frozen=True)
class SimpleLieType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in "ABCDEFG" or len(self.series) != 1:
            raise SetupError(f"Unknown Cartan series '{self.series}'")
        if self.series in FIXED_RANKS:
            if self.rank not in FIXED_RANKS[self.series]:
                raise SetupError(f"Illegal rank {self.rank} for series {self.series}")
        elif self.rank < MIN_RANK[self.series]:
            raise SetupError(f"Illegal rank {self.rank} for series {self.series}: need >= {MIN_RANK[self.series]}")

    @staticmethod
    def parse(text) -> "SimpleLieType":
        if isinstance(text, (list, tuple)) and len(text) == 2:
            return SimpleLieType(str(text[0]).upper(), int(text[1]))
        match = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(text))
        if not match:
            raise SetupError(f"Cannot read Cartan type '{text}'")
        return SimpleLieType(match.group(1).upper(), int(match.group(2)))

    def __str__(self):
        return f"{self.series}{self.rank}"

    def edges(self) -> List[Tuple[int, int]]:
        n = self.rank
        if self.series in "ABCFG":
            return [(i, i + 1) for i in range(n - 1)]
        if self.series == "D":
            return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]

    def squared_lengths(self) -> List[Fraction]:
        n = self.rank
        if self.series == "B":
            return [Fraction(2)] * (n - 1) + [Fraction(1)]
        if self.series == "C":
            return [Fraction(1)] * (n - 1) + [Fraction(2)]
        if self.series == "F":
            return [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
        if self.series == "G":
            return [Fraction(2, 3), Fraction(2)]
        return [Fraction(2)] * n

    def dimension(self) -> int:
        n = self.rank
        return {"A": n * (n + 2), "B": n * (2 * n + 1), "C": n * (2 * n + 1), "D": n * (2 * n - 1),
                "E": {6: 78, 7: 133, 8: 248}.get(n, 0), "F": 52, "G": 14}[self.series]


def type_gram(t: SimpleLieType) -> Matrix:
    lengths = t.squared_lengths()
    n = t.rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in t.edges():
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) / 2
    return gram


def cartan_from_gram(gram: Matrix) -> Matrix:
    """Cartan integers 2(a_i, a_j)/(a_j, a_j)."""
    n = len(gram)
    return [[2 * gram[i][j] / gram[j][j] for j in range(n)] for i in range(n)]


@dataclass
class FiniteRootSystem:
    components: List[SimpleLieType]
    gram: Matrix
    cartan: Matrix
    offsets: List[int]
    positive_roots: List[Vector]
    highest_roots: List[Vector]
    rho: Vector
    dual_coxeter: List[Fraction]

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def roots(self) -> List[Vector]:
        return self.positive_roots + [tuple(-x for x in r) for r in self.positive_roots]

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    def simple_root(self, i: int) -> Vector:
        return unit_vector(self.rank, i)

    def component_of(self, node: int) -> int:
        for c, offset in enumerate(self.offsets):
            if offset <= node < offset + self.components[c].rank:
                return c
        raise SetupError(f"Node {node} outside the diagram")

    def component_nodes(self, c: int) -> List[int]:
        return list(range(self.offsets[c], self.offsets[c] + self.components[c].rank))

    def root_component(self, root: Sequence[Fraction]) -> int:
        for i, x in enumerate(root):
            if x != 0:
                return self.component_of(i)
        raise SetupError("Zero vector has no component")

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return pair(self.gram, u, v)

    def is_positive(self, weight: Sequence[Fraction]) -> bool:
        """Sign of the pairing with rho; weights orthogonal to rho go by their last nonzero coordinate."""
        value = self.pair(weight, self.rho)
        if value != 0:
            return value > 0
        for x in reversed(weight):
            if x != 0:
                return x > 0
        return False

    def coroot_pairing(self, weight: Sequence[Fraction], root: Sequence[Fraction]) -> Fraction:
        return 2 * self.pair(weight, root) / self.pair(root, root)

    def reflect(self, weight: Sequence[Fraction], root: Sequence[Fraction]) -> Vector:
        return vec_sub(weight, vec_scale(self.coroot_pairing(weight, root), root))

    def labels(self) -> str:
        return "+".join(str(t) for t in self.components)


def _positive_roots(gram: Matrix) -> List[Vector]:
    """Closure of the simple roots under root strings, generated by height."""
    n = len(gram)
    simple = [unit_vector(n, i) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(n):
                alpha = simple[i]
                p = 0
                down = vec_sub(beta, alpha)
                while down in found:
                    p += 1
                    down = vec_sub(down, alpha)
                q = p - 2 * pair(gram, beta, alpha) / gram[i][i]
                up = vec_add(beta, alpha)
                if q > 0 and up not in found:
                    found.add(up)
                    next_layer.append(up)
        layer = next_layer
    return sorted(found, key=lambda r: (sum(r), tuple(-x for x in r)))


def build_root_system(types: Sequence) -> FiniteRootSystem:
    """Root system of a semisimple algebra given as a list of simple types, block-diagonal form."""
    parsed = [t if isinstance(t, SimpleLieType) else SimpleLieType.parse(t) for t in types]
    if not parsed:
        raise SetupError("At least one simple component is required")
    key = tuple(str(t) for t in parsed)
    if key in Cache.root_systems:
        return Cache.root_systems[key]
    n = sum(t.rank for t in parsed)
    gram = [[Fraction(0)] * n for _ in range(n)]
    offsets, offset = [], 0
    for t in parsed:
        block = type_gram(t)
        for i in range(t.rank):
            for j in range(t.rank):
                gram[offset + i][offset + j] = block[i][j]
        offsets.append(offset)
        offset += t.rank
    positive = _positive_roots(gram)
    rho = vec_scale(HALF, tuple(sum((r[i] for r in positive), Fraction(0)) for i in range(n)))
    highest, dual = [], []
    for c, t in enumerate(parsed):
        nodes = set(range(offsets[c], offsets[c] + t.rank))
        comp_roots = [r for r in positive if all(r[i] == 0 for i in range(n) if i not in nodes)]
        theta = max(comp_roots, key=lambda r: sum(r))
        comp_rho = vec_scale(HALF, tuple(sum((r[i] for r in comp_roots), Fraction(0)) for i in range(n)))
        highest.append(theta)
        dual.append(pair(gram, theta, vec_add(theta, vec_scale(2, comp_rho))) / 2)
    rs = FiniteRootSystem(parsed, gram, cartan_from_gram(gram), offsets, positive, highest, rho, dual)
    Cache.root_systems[key] = rs
    logger.debug(f"Built root system {rs.labels()} with {len(positive)} positive roots")
    return rs


# --- Diagram automorphisms ---
@dataclass(frozen=True)
class DiagramAut:
    permutation: Tuple[int, ...]
    order: int = field(default=0)

    def __post_init__(self):
        perm = tuple(int(i) for i in self.permutation)
        if sorted(perm) != list(range(len(perm))):
            raise SetupError(f"Node permutation {list(perm)} is not a permutation")
        object.__setattr__(self, "permutation", perm)
        order, current = 1, perm
        while current != tuple(range(len(perm))):
            current = tuple(perm[i] for i in current)
            order += 1
        object.__setattr__(self, "order", order)

    @staticmethod
    def identity(n: int) -> "DiagramAut":
        return DiagramAut(tuple(range(n)))

    def validate(self, rs: FiniteRootSystem) -> "DiagramAut":
        if len(self.permutation) != rs.rank:
            raise SetupError(f"Node permutation has length {len(self.permutation)}, rank is {rs.rank}")
        p = self.permutation
        for i in range(rs.rank):
            for j in range(rs.rank):
                if rs.cartan[p[i]][p[j]] != rs.cartan[i][j]:
                    raise SetupError(f"Node permutation {list(p)} does not preserve the Cartan matrix")
        return self

    def is_identity(self) -> bool:
        return self.order == 1

    def apply(self, v: Sequence[Fraction]) -> Vector:
        image = [Fraction(0)] * len(v)
        for i, j in enumerate(self.permutation):
            image[j] = v[i]
        return tuple(image)

    def power(self, k: int) -> Tuple[int, ...]:
        current = tuple(range(len(self.permutation)))
        for _ in range(k % self.order):
            current = tuple(self.permutation[i] for i in current)
        return current

    def compose(self, other: "DiagramAut") -> "DiagramAut":
        """self after other."""
        return DiagramAut(tuple(self.permutation[other.permutation[i]] for i in range(len(self.permutation))))

    def commutes_with(self, other: "DiagramAut") -> bool:
        return self.compose(other).permutation == other.compose(self).permutation

    def orbits(self) -> List[List[int]]:
        seen, orbits = set(), []
        for i in range(len(self.permutation)):
            if i in seen:
                continue
            orbit, j = [], i
            while j not in orbit:
                orbit.append(j)
                j = self.permutation[j]
            seen.update(orbit)
            orbits.append(sorted(orbit))
        return orbits


def _apply_perm(perm: Sequence[int], v: Sequence[Fraction]) -> Vector:
    image = [Fraction(0)] * len(v)
    for i, j in enumerate(perm):
        image[j] = v[i]
    return tuple(image)


def _compose(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(p)))


def root_sign(rs: FiniteRootSystem, perm: Sequence[int], root: Sequence[Fraction]) -> int:
    """Scalar by which a diagram automorphism fixing `root` acts on its root vector."""
    c = rs.root_component(root)
    t = rs.components[c]
    nodes = rs.component_nodes(c)
    if t.series == "A" and t.rank % 2 == 0 and any(perm[i] != i for i in nodes):
        return -1
    return 1


def _average(vectors: Sequence[Vector]) -> Vector:
    n = len(vectors[0])
    return tuple(sum((v[i] for v in vectors), Fraction(0)) / len(vectors) for i in range(n))


def _value(root: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(root, x)), Fraction(0))


def _check_shift(rs: FiniteRootSystem, aut: DiagramAut, x: Sequence[Fraction], perms: Sequence[Sequence[int]]):
    if len(x) != rs.rank:
        raise SetupError(f"Shift vector has length {len(x)}, rank is {rs.rank}")
    for p in perms:
        if _apply_perm(p, x) != tuple(x):
            raise SetupError(f"Shift vector {[str(v) for v in x]} is not invariant under {list(p)}")


def grading_table(rs: FiniteRootSystem, aut: DiagramAut, x: Sequence[Fraction]) -> GradedTable:
    """Eigenvalue classes and fixed-Cartan weights of eta * exp(2 pi i ad h), with x_i = alpha_i(h)."""
    aut.validate(rs)
    _check_shift(rs, aut, x, [aut.permutation])
    table: GradedTable = defaultdict(lambda: defaultdict(int))
    seen = set()
    for beta in rs.roots:
        if beta in seen:
            continue
        orbit = [beta]
        image = aut.apply(beta)
        while image != beta:
            orbit.append(image)
            image = aut.apply(image)
        seen.update(orbit)
        k = len(orbit)
        chi = k * _value(beta, x)
        if root_sign(rs, aut.power(k), beta) < 0:
            chi += HALF
        weight = _average(orbit)
        for m in range(k):
            table[frac_mod1((chi + m) / k)][weight] += 1
    for orbit in aut.orbits():
        k = len(orbit)
        for m in range(k):
            table[frac_mod1(Fraction(m, k))][zero_vector(rs.rank)] += 1
    return {c: dict(ws) for c, ws in table.items()}


def joint_grading_table(rs: FiniteRootSystem, first: Tuple[DiagramAut, Vector],
                        second: Tuple[DiagramAut, Vector]) -> JointTable:
    """Joint eigenvalue classes of two commuting automorphisms eta_k * exp(2 pi i ad h_k)."""
    eta1, x1 = first
    eta2, x2 = second
    eta1.validate(rs)
    eta2.validate(rs)
    if not eta1.commutes_with(eta2):
        raise SetupError("Diagram parts of the two automorphisms do not commute")
    _check_shift(rs, eta1, x1, [eta1.permutation, eta2.permutation])
    _check_shift(rs, eta2, x2, [eta1.permutation, eta2.permutation])
    table: JointTable = defaultdict(lambda: defaultdict(int))

    def add_block(orbit1: List[Vector], chi1: Fraction, chi2: Fraction, b2: int, k2: int,
                  weight: Vector):
        k1 = len(orbit1)
        for m in range(k1):
            a = (chi1 + m) / k1
            for n in range(k2):
                b = (chi2 - b2 * a + n) / k2
                table[(frac_mod1(a), frac_mod1(b))][weight] += 1

    def split(start: Vector, is_root: bool, node: Optional[int] = None):
        orbit1 = [start]
        image = eta1.apply(start)
        while image != start:
            orbit1.append(image)
            image = eta1.apply(image)
        k1 = len(orbit1)
        k2, image, b_prime = 1, eta2.apply(start), 0
        while image not in orbit1:
            image = eta2.apply(image)
            k2 += 1
        b_prime = orbit1.index(image)
        b2 = (-b_prime) % k1
        full = []
        current = list(orbit1)
        for _ in range(k2):
            full.extend(current)
            current = [eta2.apply(v) for v in current]
        if is_root:
            chi1 = k1 * _value(start, x1) + (HALF if root_sign(rs, eta1.power(k1), start) < 0 else 0)
            g = _compose(eta1.power(b2), eta2.power(k2))
            chi2 = _value(start, [b2 * a + k2 * b for a, b in zip(x1, x2)]) + \
                (HALF if root_sign(rs, g, start) < 0 else 0)
            weight = _average(full)
        else:
            chi1, chi2, weight = Fraction(0), Fraction(0), zero_vector(rs.rank)
        add_block(orbit1, Fraction(chi1), Fraction(chi2), b2, k2, weight)
        return full

    seen = set()
    for beta in rs.roots:
        if beta not in seen:
            seen.update(split(beta, True))
    seen_nodes = set()
    for i in range(rs.rank):
        e = unit_vector(rs.rank, i)
        if e not in seen_nodes:
            seen_nodes.update(split(e, False))
    return {c: dict(ws) for c, ws in table.items()}


def table_dimension(table: Dict) -> int:
    return sum(sum(ws.values()) for ws in table.values())


# --- Fixed points of a diagram automorphism ---
@dataclass
class FoldedDatum:
    eta: DiagramAut
    simple_roots: List[Vector]
    roots: List[Vector]
    thetas: List[Vector]
    orders: List[int]
    component_orbits: List[List[int]]
    node_orbits: List[List[int]]

    @property
    def theta(self) -> Vector:
        return self.thetas[0]

    @property
    def order(self) -> int:
        return self.orders[0]


def component_orbits(rs: FiniteRootSystem, eta: DiagramAut) -> List[List[int]]:
    """Node sets of the eta-orbits of simple components, in order of their first node."""
    orbits, seen = [], set()
    for c in range(len(rs.components)):
        if c in seen:
            continue
        members, frontier = {c}, [c]
        while frontier:
            d = frontier.pop()
            image = rs.component_of(eta.permutation[rs.offsets[d]])
            if image not in members:
                members.add(image)
                frontier.append(image)
        seen |= members
        orbits.append(sorted(i for d in members for i in rs.component_nodes(d)))
    return orbits


def restricted_order(eta: DiagramAut, nodes: Sequence[int]) -> int:
    order, current = 1, {i: eta.permutation[i] for i in nodes}
    while any(current[i] != i for i in nodes):
        current = {i: eta.permutation[current[i]] for i in nodes}
        order += 1
    return order


def fixed_point_data(rs: FiniteRootSystem, eta: DiagramAut) -> FoldedDatum:
    """Simple roots and roots of the eta-fixed subalgebra, and the highest weight of its first eigenspace.

    For semisimple g there is one highest weight and one order per eta-orbit of simple components.
    """
    eta.validate(rs)
    table = grading_table(rs, eta, zero_vector(rs.rank))
    roots = sorted((w for w in table.get(Fraction(0), {}) if not is_zero(w)), key=lambda w: -rs.pair(w, rs.rho))
    positive = [w for w in roots if rs.is_positive(w)]
    positive_set = set(positive)
    indecomposable = [b for b in positive
                      if not any(vec_sub(b, a) in positive_set for a in positive if a != b)]
    orbits = eta.orbits()
    simple = [_average([unit_vector(rs.rank, i) for i in orbit]) for orbit in orbits]
    if sorted(simple) != sorted(indecomposable):
        raise SetupError("Folded simple roots do not match the indecomposable fixed roots")
    thetas, orders = [], []
    comp_orbits = component_orbits(rs, eta)
    for nodes in comp_orbits:
        r = restricted_order(eta, nodes)
        target = frac_mod1(Fraction(r - 1, r))
        outside = [i for i in range(rs.rank) if i not in nodes]
        candidates = [w for w in table.get(target, {})
                      if not is_zero(w) and all(w[i] == 0 for i in outside)]
        thetas.append(max(candidates, key=lambda w: rs.pair(w, rs.rho)))
        orders.append(r)
    logger.debug(f"Folded {rs.labels()} by {list(eta.permutation)}: {len(simple)} simple roots, "
                 f"orders {orders}")
    return FoldedDatum(eta, simple, roots, thetas, orders, comp_orbits, orbits)


# --- Matrix realizations ---
@dataclass(frozen=True)
class MatrixRealization:
    """Classical algebra with an automorphism given by diagonal phases and an optional outer flip.

    Phases are exponents c_a in Q: the basis vector e_a of the defining space is scaled by exp(2 pi i c_a)
    and e_{-a} by its inverse. For type A the phases are those of the n diagonal entries.
    """
    series: str
    rank: int
    phases: Tuple[Fraction, ...]
    outer: bool = False

    @staticmethod
    def from_automorphism(t: SimpleLieType, aut: DiagramAut, x: Sequence[Fraction]) -> "MatrixRealization":
        if t.series not in "ABCD":
            raise SetupError(f"No matrix realization for type {t}")
        if t.series == "D" and aut.order > 2:
            raise SetupError("Triality has no classical matrix realization")
        x = [Fraction(v) for v in x]
        n = t.rank
        if t.series == "A":
            c = [Fraction(0)]
            for i in range(n):
                c.append(c[-1] - x[i])
            mean = sum(c, Fraction(0)) / len(c)
            phases = tuple(v - mean for v in c)
        else:
            c = [Fraction(0)] * n
            if t.series == "B":
                c[n - 1] = x[n - 1]
            elif t.series == "C":
                c[n - 1] = x[n - 1] / 2
            else:
                c[n - 1] = (x[n - 1] - x[n - 2]) / 2
                c[n - 2] = (x[n - 2] + x[n - 1]) / 2
            start = n - 2 if t.series != "D" else n - 3
            for i in range(start, -1, -1):
                c[i] = c[i + 1] + x[i]
            phases = tuple(c)
        return MatrixRealization(t.series, n, phases, not aut.is_identity())

    def vector_basis(self) -> List[Tuple[int, Vector, Fraction]]:
        """(label, epsilon weight, phase) for the defining representation."""
        n = self.rank
        basis = []
        size = n + 1 if self.series == "A" else n
        for a in range(size):
            eps = tuple(Fraction(int(b == a)) for b in range(size))
            basis.append((a + 1, eps, self.phases[a]))
        if self.series == "A":
            return basis
        if self.series == "B":
            basis.append((0, zero_vector(n), Fraction(0)))
        for a in range(n - 1, -1, -1):
            eps = tuple(Fraction(-int(b == a)) for b in range(n))
            basis.append((-(a + 1), eps, -self.phases[a]))
        return basis

    def to_root_coordinates(self, eps: Sequence[Fraction]) -> Vector:
        n = self.rank
        partial, sums = Fraction(0), []
        for a in range(len(eps)):
            partial += eps[a]
            sums.append(partial)
        if self.series in "AB":
            return tuple(sums[:n])
        if self.series == "C":
            return tuple(sums[:n - 1]) + (sums[n - 1] / 2,)
        return tuple(sums[:n - 2]) + ((sums[n - 2] - eps[n - 1]) / 2, (sums[n - 2] + eps[n - 1]) / 2)


def _cycles(mapping: Dict, phase: Dict) -> List[Tuple[List, Fraction]]:
    seen, cycles = set(), []
    for start in mapping:
        if start in seen:
            continue
        cycle, total, current = [], Fraction(0), start
        while current not in cycle:
            cycle.append(current)
            total += phase[current]
            current = mapping[current]
        seen.update(cycle)
        cycles.append((cycle, total))
    return cycles


def eigengrade(m: MatrixRealization) -> GradedTable:
    """Eigenvalue classes and weights computed from the explicit classical realization."""
    if m.series not in "ABCD":
        raise SetupError(f"Non-classical tag {m.series}")
    basis = m.vector_basis()
    index = {label: pos for pos, (label, _, _) in enumerate(basis)}
    weights, mapping, phase = {}, {}, {}
    if m.series == "A":
        size = m.rank + 1
        j = [(-1) ** (k + 1) for k in range(size + 1)]
        for a in range(1, size + 1):
            for b in range(1, size + 1):
                key = (a, b)
                weights[key] = vec_sub(basis[a - 1][1], basis[b - 1][1])
                if m.outer:
                    ap, bp = size + 1 - a, size + 1 - b
                    mapping[key] = (bp, ap)
                    sign = -Fraction(j[bp], j[ap])
                    phase[key] = m.phases[a - 1] - m.phases[b - 1] + (HALF if sign < 0 else 0)
                else:
                    mapping[key] = key
                    phase[key] = m.phases[a - 1] - m.phases[b - 1]
        trace_class = HALF if m.outer else Fraction(0)
    else:
        flip = {}
        for label, _, _ in basis:
            flip[label] = label
        if m.outer:
            if m.series != "D":
                raise SetupError(f"Type {m.series} has no outer diagram automorphism")
            flip[m.rank], flip[-m.rank] = -m.rank, m.rank
        symmetric = m.series == "C"
        for p in range(len(basis)):
            for q in range(p if symmetric else p + 1, len(basis)):
                lp, ep, cp = basis[p]
                lq, eq, cq = basis[q]
                key = (lp, lq)
                weights[key] = vec_add(ep, eq)
                ip, iq = index[flip[lp]], index[flip[lq]]
                extra = Fraction(0)
                if ip > iq:
                    ip, iq = iq, ip
                    if not symmetric:
                        extra = HALF
                mapping[key] = (basis[ip][0], basis[iq][0])
                phase[key] = cp + cq + extra
        trace_class = None
    table: GradedTable = defaultdict(lambda: defaultdict(int))
    for cycle, total in _cycles(mapping, phase):
        k = len(cycle)
        weight = _average([m.to_root_coordinates(weights[key]) for key in cycle])
        for s in range(k):
            table[frac_mod1((total + s) / k)][weight] += 1
    if trace_class is not None:
        zero = zero_vector(m.rank)
        table[trace_class][zero] -= 1
        if table[trace_class][zero] == 0:
            del table[trace_class][zero]
    return {c: dict(ws) for c, ws in table.items() if ws}


def _clean(table: GradedTable) -> GradedTable:
    return {Fraction(c): {w: m for w, m in ws.items() if m} for c, ws in table.items() if any(ws.values())}


def oracle_agrees(rs: FiniteRootSystem, aut: DiagramAut, x: Sequence[Fraction]) -> Optional[bool]:
    """Combinatorial table against the classical matrix realization; None when g has no such realization."""
    if len(rs.components) != 1:
        return None
    t = rs.components[0]
    if t.series not in "ABCD" or (t.series == "D" and aut.order > 2):
        return None
    oracle = eigengrade(MatrixRealization.from_automorphism(t, aut, x))
    combinatorial = grading_table(rs, aut, x)
    agrees = _clean(oracle) == _clean(combinatorial)
    if not agrees:
        logger.warning(f"Matrix oracle disagrees with the graded table of {rs.labels()} at shift {list(map(str, x))}")
    return agrees
