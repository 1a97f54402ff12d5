# kacdirac/charworks.py
import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from kacdirac.twistaff import fundamental_solve
from kacdirac.utils import SetupError, SpanCoordinates, VerificationError, Vector, format_rational, is_zero, vec_add
from kacdirac.weights import Weight

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

Term = Tuple[Fraction, Vector]


@dataclass
class GradedCharacter:
    """Truncated formal character: the coefficient of each weight, keyed by (depth below top, finite part).

    Finite parts are absolute; depth is top.delta minus the delta coefficient of the weight.
    """
    levels: Tuple[Fraction, ...]
    top_delta: Fraction
    cutoff: Fraction
    coefficients: Dict[Term, int] = field(default_factory=dict)

    def __post_init__(self):
        self.levels = tuple(Fraction(x) for x in self.levels)
        self.top_delta = Fraction(self.top_delta)
        self.cutoff = Fraction(self.cutoff)
        self.coefficients = {k: v for k, v in self.coefficients.items() if v != 0 and k[0] <= self.cutoff}

    @staticmethod
    def monomial(weight: Weight, cutoff, coefficient: int = 1) -> "GradedCharacter":
        return GradedCharacter(weight.levels, weight.delta, cutoff, {(Fraction(0), weight.finite): coefficient})

    @staticmethod
    def zero(levels, top_delta, cutoff) -> "GradedCharacter":
        return GradedCharacter(levels, top_delta, cutoff, {})

    def add_term(self, depth: Fraction, finite: Vector, coefficient: int):
        if depth > self.cutoff or coefficient == 0:
            return
        key = (Fraction(depth), tuple(finite))
        value = self.coefficients.get(key, 0) + coefficient
        if value:
            self.coefficients[key] = value
        else:
            self.coefficients.pop(key, None)

    def rebase(self, top_delta: Fraction) -> "GradedCharacter":
        """Same character measured from a higher top."""
        shift = Fraction(top_delta) - self.top_delta
        if shift < 0:
            raise SetupError("Cannot rebase a character onto a lower top")
        return GradedCharacter(self.levels, top_delta, self.cutoff + shift,
                               {(d + shift, f): c for (d, f), c in self.coefficients.items()})

    def with_cutoff(self, cutoff) -> "GradedCharacter":
        if Fraction(cutoff) > self.cutoff:
            raise SetupError(f"Character known to depth {self.cutoff} only")
        return GradedCharacter(self.levels, self.top_delta, cutoff, dict(self.coefficients))

    def _aligned(self, other: "GradedCharacter") -> Tuple["GradedCharacter", "GradedCharacter"]:
        if self.levels != other.levels:
            raise SetupError(f"Characters at different levels {self.levels} and {other.levels}")
        top = max(self.top_delta, other.top_delta)
        a, b = self.rebase(top), other.rebase(top)
        cutoff = min(a.cutoff, b.cutoff)
        return a.with_cutoff(cutoff), b.with_cutoff(cutoff)

    def __add__(self, other: "GradedCharacter") -> "GradedCharacter":
        a, b = self._aligned(other)
        result = GradedCharacter(a.levels, a.top_delta, min(a.cutoff, b.cutoff), dict(a.coefficients))
        for (d, f), c in b.coefficients.items():
            result.add_term(d, f, c)
        return result

    def __neg__(self) -> "GradedCharacter":
        return self.scale(-1)

    def __sub__(self, other: "GradedCharacter") -> "GradedCharacter":
        return self + (-other)

    def scale(self, c: int) -> "GradedCharacter":
        return GradedCharacter(self.levels, self.top_delta, self.cutoff,
                               {k: c * v for k, v in self.coefficients.items()})

    def __mul__(self, other: "GradedCharacter") -> "GradedCharacter":
        size = max(len(self.levels), len(other.levels))
        pad = lambda t: tuple(t) + (Fraction(0),) * (size - len(t))
        levels = tuple(a + b for a, b in zip(pad(self.levels), pad(other.levels)))
        result = GradedCharacter(levels, self.top_delta + other.top_delta, min(self.cutoff, other.cutoff))
        for (d1, f1), c1 in self.coefficients.items():
            for (d2, f2), c2 in other.coefficients.items():
                result.add_term(d1 + d2, vec_add(f1, f2), c1 * c2)
        return result

    def map_weights(self, finite_map: Callable[[Vector], Vector], levels: Sequence[Fraction]) -> "GradedCharacter":
        result = GradedCharacter(levels, self.top_delta, self.cutoff)
        for (d, f), c in self.coefficients.items():
            result.add_term(d, finite_map(f), c)
        return result

    def depths(self) -> List[Fraction]:
        return sorted({d for d, _ in self.coefficients})

    def slice_dimension(self, depth) -> int:
        return sum(c for (d, _), c in self.coefficients.items() if d == Fraction(depth))

    def coefficient(self, depth, finite: Vector) -> int:
        return self.coefficients.get((Fraction(depth), tuple(finite)), 0)

    def terms(self) -> List[Tuple[Fraction, Vector, int]]:
        return sorted((d, f, c) for (d, f), c in self.coefficients.items())

    def is_zero(self) -> bool:
        return not self.coefficients

    def as_dict(self) -> Dict:
        return {
            "levels": [format_rational(x) for x in self.levels],
            "top_delta": format_rational(self.top_delta),
            "cutoff": format_rational(self.cutoff),
            "terms": [{"depth": format_rational(d), "finite": [format_rational(x) for x in f], "coefficient": c}
                      for d, f, c in self.terms()],
        }


@dataclass
class Discrepancy:
    depth: Fraction
    finite: Vector
    lhs: int
    rhs: int

    def as_dict(self) -> Dict:
        return {"depth": format_rational(self.depth), "finite": [format_rational(x) for x in self.finite],
                "lhs": self.lhs, "rhs": self.rhs}


def restrict_and_compare(lhs: GradedCharacter, rhs: GradedCharacter, cutoff=None) -> List[Discrepancy]:
    """Every (depth, finite part) whose coefficients differ up to the cutoff; empty when the identity holds."""
    if lhs.levels != rhs.levels:
        raise SetupError(f"Cannot compare characters at levels {lhs.levels} and {rhs.levels}")
    top = max(lhs.top_delta, rhs.top_delta)
    a, b = lhs.rebase(top), rhs.rebase(top)
    known = min(a.cutoff, b.cutoff)
    cutoff = known if cutoff is None else Fraction(cutoff)
    if cutoff > known:
        raise SetupError(f"Characters are known to depth {format_rational(known)}, asked for {format_rational(cutoff)}")
    keys = {k for k in a.coefficients if k[0] <= cutoff} | {k for k in b.coefficients if k[0] <= cutoff}
    report = [Discrepancy(d, f, a.coefficients.get((d, f), 0), b.coefficients.get((d, f), 0))
              for d, f in sorted(keys) if a.coefficients.get((d, f), 0) != b.coefficients.get((d, f), 0)]
    if report:
        logger.debug(f"{len(report)} discrepancies, first at depth {report[0].depth}")
    return report


# --- Irreducible characters ---
def _check_highest_weight(datum, weight: Weight):
    if not datum.is_dominant_integral(weight):
        raise SetupError(f"{weight} is not dominant integral: labels {[str(x) for x in datum.labels(weight)]}")


def _weight_candidates(datum, weight: Weight, cutoff: Fraction) -> List[Weight]:
    """Weights below the highest weight within the depth cutoff and the norm bound, highest first."""
    bound = datum.norm(weight)
    rho = datum.rho_hat
    start = weight
    heap = [(Fraction(0), 0, start)]
    seen = {(start.finite, start.delta)}
    ordered, counter = [], 1
    while heap:
        _, _, mu = heapq.heappop(heap)
        ordered.append(mu)
        for alpha in datum.simple_roots:
            nu = mu - alpha
            key = (nu.finite, nu.delta)
            if key in seen or weight.delta - nu.delta > cutoff or datum.norm(nu) > bound:
                continue
            seen.add(key)
            heapq.heappush(heap, (datum.pair(weight - nu, rho), counter, nu))
            counter += 1
    return ordered


def freudenthal_character(datum, weight: Weight, cutoff) -> GradedCharacter:
    """Multiplicities from the Freudenthal recursion over positive real and imaginary roots."""
    cutoff = Fraction(cutoff)
    _check_highest_weight(datum, weight)
    result = GradedCharacter.monomial(weight, cutoff)
    if weight.slot_level(datum.slot) == 0:
        return result
    roots = datum.positive_roots(cutoff)
    rho = datum.rho_hat
    top_norm = datum.norm(weight + rho)
    mult: Dict[Tuple[Vector, Fraction], int] = {(weight.finite, weight.delta): 1}
    for mu in _weight_candidates(datum, weight, cutoff)[1:]:
        total = Fraction(0)
        for alpha, m_alpha in roots:
            k = 1
            while True:
                nu = mu + alpha.scale(k)
                if weight.delta - nu.delta < 0 or datum.pair(weight - nu, rho) < 0:
                    break
                m_nu = mult.get((nu.finite, nu.delta), 0)
                if m_nu:
                    total += m_alpha * m_nu * datum.pair(nu, alpha)
                k += 1
        denominator = top_norm - datum.norm(mu + rho)
        if denominator == 0:
            if total != 0:
                raise VerificationError(f"Freudenthal recursion is singular at {mu}")
            continue
        value = 2 * total / denominator
        if value.denominator != 1 or value < 0:
            raise VerificationError(f"Non-integral multiplicity {value} at {mu}")
        if value:
            mult[(mu.finite, mu.delta)] = int(value)
            result.add_term(weight.delta - mu.delta, mu.finite, int(value))
    logger.debug(f"Freudenthal: {len(result.coefficients)} weights of {weight} to depth {cutoff}")
    return result


class KostantCounter:
    """Kostant partition function with root multiplicities, on integer coordinates in the simple roots."""

    def __init__(self, datum, cutoff: Fraction):
        self.datum = datum
        self.coords = SpanCoordinates([_flat(a) for a in datum.simple_roots], datum.rs.rank + 1)
        self.parts: List[Tuple[Tuple[int, ...], int]] = []
        for alpha, m in datum.positive_roots(cutoff):
            c = self.coords(_flat(alpha))
            if c is None or any(x.denominator != 1 or x < 0 for x in c):
                raise VerificationError(f"Positive root {alpha} is not a non-negative integral combination")
            self.parts.append((tuple(int(x) for x in c), m))
        self._memo: Dict = {}

    def integer_coordinates(self, nu: Weight) -> Optional[Tuple[int, ...]]:
        c = self.coords(_flat(nu))
        if c is None or any(x.denominator != 1 or x < 0 for x in c):
            return None
        return tuple(int(x) for x in c)

    def count(self, target: Tuple[int, ...], start: int = 0) -> int:
        if not any(target):
            return 1
        key = (target, start)
        if key in self._memo:
            return self._memo[key]
        total = 0
        for index in range(start, len(self.parts)):
            part, m = self.parts[index]
            if any(p > t for p, t in zip(part, target)):
                continue
            # choose n >= 1 copies of this root spread over its m colours
            n, remaining = 1, tuple(t - p for t, p in zip(target, part))
            while all(r >= 0 for r in remaining):
                total += comb(n + m - 1, n) * self.count(remaining, index + 1)
                n += 1
                remaining = tuple(r - p for r, p in zip(remaining, part))
        self._memo[key] = total
        return total


def _flat(x: Weight) -> Vector:
    return tuple(x.finite) + (x.delta,)


def weyl_orbit_points(datum, point: Weight, cutoff: Fraction) -> List[Tuple[Weight, int]]:
    """Points w(point) with sign (-1)^l(w) whose delta drop is at most cutoff; point regular dominant."""
    found = {(point.finite, point.delta): (point, 1)}
    frontier = [(point, 1)]
    while frontier:
        layer = []
        for z, sign in frontier:
            for alpha in datum.simple_roots:
                c = datum.coroot_pairing(z, alpha)
                if c <= 0:
                    continue
                image = z - alpha.scale(c)
                key = (image.finite, image.delta)
                if point.delta - image.delta > cutoff or key in found:
                    continue
                found[key] = (image, -sign)
                layer.append((image, -sign))
        frontier = layer
    return list(found.values())


def weyl_kac_character(datum, weight: Weight, cutoff) -> GradedCharacter:
    """Alternating sum over the affine Weyl group divided by the denominator, expanded with Kostant's function."""
    cutoff = Fraction(cutoff)
    _check_highest_weight(datum, weight)
    if weight.slot_level(datum.slot) == 0:
        return GradedCharacter.monomial(weight, cutoff)
    rho = datum.rho_hat
    points = weyl_orbit_points(datum, weight + rho, cutoff)
    counter = KostantCounter(datum, cutoff)
    result = GradedCharacter.zero(weight.levels, weight.delta, cutoff)
    for mu in _weight_candidates(datum, weight, cutoff):
        total = 0
        for y, sign in points:
            target = counter.integer_coordinates(y - rho - mu)
            if target is not None:
                total += sign * counter.count(target)
        result.add_term(weight.delta - mu.delta, mu.finite, total)
    logger.debug(f"Weyl-Kac: {len(points)} Weyl points, {len(result.coefficients)} weights to depth {cutoff}")
    return result


def heisenberg_character(weight: Weight, classes: Dict[Fraction, int], cutoff) -> GradedCharacter:
    """e^weight / prod_{j > 0} (1 - q^j)^{N(j mod 1)} for a twisted Heisenberg algebra with mode counts N."""
    cutoff = Fraction(cutoff)
    series: Dict[Fraction, int] = {Fraction(0): 1}
    for cls, count in sorted(classes.items()):
        degree = Fraction(cls) if cls != 0 else Fraction(1)
        while degree <= cutoff:
            for _ in range(count):
                series = _geometric(series, degree, cutoff)
            degree += 1
    result = GradedCharacter.zero(weight.levels, weight.delta, cutoff)
    for d, c in series.items():
        result.add_term(d, weight.finite, c)
    return result


def _geometric(series: Dict[Fraction, int], degree: Fraction, cutoff: Fraction) -> Dict[Fraction, int]:
    result: Dict[Fraction, int] = defaultdict(int)
    for d, c in series.items():
        step = d
        while step <= cutoff:
            result[step] += c
            step += degree
    return dict(result)


def dominant_weights_of_level(datum, level, delta=0) -> List[Weight]:
    """All dominant integral weights of the given level with delta coefficient `delta`."""
    level = Fraction(level)
    comarks = _comarks(datum)
    found = []

    def extend(prefix: List[int], remaining: Fraction):
        i = len(prefix)
        if i == len(comarks):
            if remaining == 0:
                found.append(fundamental_solve(datum, prefix, delta))
            return
        n = 0
        while n * comarks[i] <= remaining:
            extend(prefix + [n], remaining - n * comarks[i])
            n += 1

    extend([], level)
    return found


def _comarks(datum) -> List[Fraction]:
    """Level of each fundamental weight: a_i |alpha_i|^2 / 2 over the delta coefficient of the null root."""
    if len(datum.components) != 1:
        raise SetupError("Fundamental weights need a single affine component")
    a = datum.null_vectors[0]
    s = sum((ai * datum.simple_roots[i].delta for ai, i in zip(a, datum.components[0])), Fraction(0))
    return [ai * datum.norm(datum.simple_roots[i]) / 2 / s for ai, i in zip(a, datum.components[0])]
