# kacdirac/utils.py
import copy
import logging
import math
import os
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
import yaml
from dotenv import load_dotenv
from sympy.core.intfunc import igcdex
from sympy.matrices.normalforms import hermite_normal_form

from config.available_setups import AVAILABLE_SETUPS
from config.default_bounds import DEFAULT_CUTOFF, DEFAULT_HEIGHT_BOUND, DEFAULT_LENGTH_BOUND

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

load_dotenv()

# --- Constants ---
REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CATALOG_PATH = os.getenv("KACDIRAC_CATALOG_PATH", os.path.join(REPO_ROOT, "catalog"))
REPORT_PATH = os.getenv("KACDIRAC_REPORT_PATH", "reports")
CUTOFF = os.getenv("KACDIRAC_CUTOFF", DEFAULT_CUTOFF)
LENGTH_BOUND = int(os.getenv("KACDIRAC_LENGTH_BOUND", DEFAULT_LENGTH_BOUND))
HEIGHT_BOUND = int(os.getenv("KACDIRAC_HEIGHT_BOUND", DEFAULT_HEIGHT_BOUND))
TOLERANCE = float(os.getenv("KACDIRAC_TOLERANCE", 1e-9))

Vector = Tuple[Fraction, ...]
Matrix = List[List[Fraction]]


# --- Errors ---
class SetupError(ValueError):
    """Malformed input: bad Cartan type, non-commuting automorphisms, unknown setup."""


class HypothesisError(SetupError):
    """A structural hypothesis of the kernel theorem fails for the given setup."""


class UnsupportedSetup(SetupError):
    """The setup is well formed but outside what the pipeline computes."""


class VerificationError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


# --- Cache ---
class Cache:
    setups = {}
    root_systems = {}

    @staticmethod
    def load_setup(name: str) -> Dict:
        """Loads a catalog entry by short name or by path to a YAML file."""
        if name not in Cache.setups:
            path = name
            if name in AVAILABLE_SETUPS:
                path = os.path.join(CATALOG_PATH, AVAILABLE_SETUPS[name])
            if not os.path.exists(path):
                raise SetupError(f"Unknown setup '{name}'; choose from {sorted(AVAILABLE_SETUPS)} or pass a YAML path")
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    setup_data = yaml.safe_load(f.read())
            except yaml.YAMLError as e:
                logger.error(f"{path} is not valid YAML: {e}")
                raise SetupError(f"{path} is not valid YAML") from e
            if not isinstance(setup_data, dict):
                raise SetupError(f"{path} is empty or not a mapping")
            setup_data.setdefault("name", name)
            Cache.setups[name] = setup_data
            logger.debug(f"Loaded setup {name} from {path}")
        return copy.deepcopy(Cache.setups[name])

    @staticmethod
    def clear():
        Cache.setups.clear()
        Cache.root_systems.clear()


# --- Utility Functions ---
def parse_rational(value, field: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SetupError(f"{field}: expected an exact rational, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise SetupError(f"{field}: cannot read '{value}' as a rational") from e
    raise SetupError(f"{field}: expected an exact rational, got {value!r}")


def parse_vector(values, field: str = "vector") -> Vector:
    if not isinstance(values, (list, tuple)):
        raise SetupError(f"{field}: expected a list, got {values!r}")
    return tuple(parse_rational(v, f"{field}[{i}]") for i, v in enumerate(values))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def frac_mod1(q: Fraction) -> Fraction:
    return Fraction(q) % 1


def lcm_list(values: Sequence[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def zero_vector(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def vec_sum(vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    total = zero_vector(n)
    for v in vectors:
        total = vec_add(total, v)
    return total


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def pair(gram: Matrix, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((u[i] * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]),
               Fraction(0))


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(cols)]
            for i in range(len(a))]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix sending coordinate i to coordinate perm[i]."""
    n = len(perm)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j in enumerate(perm):
        m[j][i] = Fraction(1)
    return m


def to_sympy(m) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


def from_sympy(m: sympy.Matrix) -> Matrix:
    return [[parse_rational(sympy.nsimplify(m[i, j])) for j in range(m.cols)] for i in range(m.rows)]


def columns_matrix(vectors: Sequence[Sequence[Fraction]], n: int) -> sympy.Matrix:
    if not vectors:
        return sympy.zeros(n, 0)
    return to_sympy(transpose([list(v) for v in vectors]))


def mat_inverse(m: Matrix) -> Matrix:
    sm = to_sympy(m)
    if sm.det() == 0:
        raise SetupError("Matrix is singular")
    return from_sympy(sm.inv())


def rank(vectors: Sequence[Sequence[Fraction]], n: int) -> int:
    return columns_matrix(vectors, n).rank() if vectors else 0


def independent_subset(vectors: Sequence[Sequence[Fraction]], n: int) -> List[int]:
    """Indices of a maximal linearly independent subset, first-come order."""
    if not vectors:
        return []
    _, pivots = columns_matrix(vectors, n).rref()
    return list(pivots)


def nullspace(rows: Sequence[Sequence[Fraction]], n: int) -> List[Vector]:
    """Basis of {v : (row, v) = 0 for every row} under the plain dot product."""
    if not rows:
        return [unit_vector(n, i) for i in range(n)]
    basis = to_sympy([list(r) for r in rows]).nullspace()
    return [tuple(parse_rational(sympy.nsimplify(b[i])) for i in range(n)) for b in basis]


def is_positive_definite(m: Matrix) -> bool:
    return to_sympy(m).is_positive_definite if m else True


def is_positive_semidefinite(m: Matrix) -> bool:
    return to_sympy(m).is_positive_semidefinite if m else True


class SpanCoordinates:
    """Coordinates of vectors in a fixed (possibly non-spanning) basis."""

    def __init__(self, basis: Sequence[Sequence[Fraction]], n: int):
        self.basis = [tuple(b) for b in basis]
        self.n = n
        keep = independent_subset(self.basis, n)
        if len(keep) != len(self.basis):
            raise SetupError("Basis vectors are linearly dependent")
        self._matrix = columns_matrix(self.basis, n)
        self._pinv = (self._matrix.T * self._matrix).inv() * self._matrix.T if self.basis else None

    def __call__(self, v: Sequence[Fraction]) -> Optional[Vector]:
        if not self.basis:
            return () if is_zero(v) else None
        coeffs = self._pinv * to_sympy([[x] for x in v])
        coords = tuple(parse_rational(sympy.nsimplify(c)) for c in coeffs)
        if tuple(sum((c * b[i] for c, b in zip(coords, self.basis)), Fraction(0)) for i in range(self.n)) != tuple(v):
            return None
        return coords

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self(v) is not None


class Projector:
    """Orthogonal projection onto span(basis) with respect to a Gram matrix."""

    def __init__(self, basis: Sequence[Sequence[Fraction]], gram: Matrix):
        self.n = len(gram)
        self.basis = [tuple(b) for b in basis]
        if self.basis:
            b = columns_matrix(self.basis, self.n)
            g = to_sympy(gram)
            self._op = from_sympy(b * (b.T * g * b).inv() * b.T * g)
        else:
            self._op = [[Fraction(0)] * self.n for _ in range(self.n)]

    def __call__(self, v: Sequence[Fraction]) -> Vector:
        return mat_vec(self._op, v)


def orbit_average(v: Sequence[Fraction], perms: Sequence[Sequence[int]]) -> Vector:
    """Average of v over the group generated by coordinate permutations."""
    seen = {tuple(v)}
    frontier = [tuple(v)]
    while frontier:
        w = frontier.pop()
        for p in perms:
            image = [Fraction(0)] * len(w)
            for i, j in enumerate(p):
                image[j] = w[i]
            image = tuple(image)
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    n = len(v)
    return tuple(sum((w[i] for w in seen), Fraction(0)) / len(seen) for i in range(n))


def permutation_orbits(perms: Sequence[Sequence[int]], n: int) -> List[List[int]]:
    orbits, seen = [], set()
    for start in range(n):
        if start in seen:
            continue
        orbit, frontier = {start}, [start]
        while frontier:
            i = frontier.pop()
            for p in perms:
                if p[i] not in orbit:
                    orbit.add(p[i])
                    frontier.append(p[i])
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def fixed_basis(perms: Sequence[Sequence[int]], n: int) -> List[Vector]:
    """Basis of the coordinates fixed by every permutation: orbit indicators."""
    return [tuple(Fraction(int(i in orbit)) for i in range(n)) for orbit in permutation_orbits(perms, n)]


def integer_row_basis(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of the integer row lattice: the columns of the Hermite normal form of the transpose."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    hnf = hermite_normal_form(sympy.Matrix(rows).T)
    return [[int(x) for x in hnf.col(j)] for j in range(hnf.cols)]


def integer_left_kernel(m: Sequence[Sequence[int]]) -> List[List[int]]:
    """Integer basis of {y in Z^k : y^T m = 0} for a k x c integer matrix."""
    k = len(m)
    if k == 0:
        return []
    c = len(m[0])
    aug = [list(m[i]) + [int(i == j) for j in range(k)] for i in range(k)]
    pivot_row = 0
    for col in range(c):
        for i in range(pivot_row + 1, k):
            a, b = aug[pivot_row][col], aug[i][col]
            if b == 0:
                continue
            x, y, g = (int(v) for v in igcdex(a, b))
            top = [x * p + y * q for p, q in zip(aug[pivot_row], aug[i])]
            bottom = [(a // g) * q - (b // g) * p for p, q in zip(aug[pivot_row], aug[i])]
            aug[pivot_row], aug[i] = top, bottom
        if aug[pivot_row][col] != 0:
            pivot_row += 1
        if pivot_row == k:
            break
    return [row[c:] for row in aug[pivot_row:]]


def lattice_basis(generators: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """Z-basis of the lattice spanned by rational generators."""
    gens = [tuple(Fraction(x) for x in g) for g in generators if not is_zero(g)]
    if not gens:
        return []
    scale = lcm_list([x.denominator for g in gens for x in g])
    rows = integer_row_basis([[int(x * scale) for x in g] for g in gens])
    return [tuple(Fraction(x, scale) for x in r) for r in rows]


def lattice_intersection(basis: Sequence[Sequence[Fraction]], subspace: Sequence[Sequence[Fraction]],
                         n: int) -> List[Vector]:
    """Z-basis of the lattice span(basis) intersected with the rational span of subspace."""
    if not basis:
        return []
    annihilator = nullspace(subspace, n) if subspace else [unit_vector(n, i) for i in range(n)]
    if not annihilator:
        return lattice_basis(basis)
    products = [[sum((b[i] * a[i] for i in range(n)), Fraction(0)) for a in annihilator] for b in basis]
    scale = lcm_list([x.denominator for row in products for x in row])
    kernel = integer_left_kernel([[int(x * scale) for x in row] for row in products])
    combos = [vec_sum([vec_scale(c, b) for c, b in zip(row, basis)], n) for row in kernel]
    return lattice_basis(combos)


def gram_determinant(basis: Sequence[Sequence[Fraction]], gram: Matrix) -> Fraction:
    if not basis:
        return Fraction(1)
    m = [[pair(gram, u, v) for v in basis] for u in basis]
    return parse_rational(sympy.nsimplify(to_sympy(m).det()))


def parse_cutoff(value) -> Fraction:
    cutoff = parse_rational(value, "cutoff")
    if cutoff < 0:
        raise SetupError(f"cutoff must be non-negative, got {format_rational(cutoff)}")
    return cutoff
