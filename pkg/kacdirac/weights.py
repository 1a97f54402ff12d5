# kacdirac/weights.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from kacdirac.utils import Vector, format_rational, is_zero, parse_rational, vec_add, vec_scale

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


def _pad(levels: Tuple[Fraction, ...], size: int) -> Tuple[Fraction, ...]:
    return tuple(levels) + tuple(Fraction(0) for _ in range(size - len(levels)))


@dataclass(frozen=True)
class Weight:
    """Element of an extended Cartan dual: finite part, one level per central element, and a delta coefficient.

    Roots carry an empty level tuple, which acts as zero against any number of central elements.
    """
    finite: Vector
    levels: Tuple[Fraction, ...] = field(default=())
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(Fraction(x) for x in self.finite))
        object.__setattr__(self, "levels", tuple(Fraction(x) for x in self.levels))
        object.__setattr__(self, "delta", Fraction(self.delta))

    @staticmethod
    def root(finite: Sequence[Fraction], delta=0) -> "Weight":
        return Weight(tuple(finite), (), Fraction(delta))

    @property
    def level(self) -> Fraction:
        if len(self.levels) > 1:
            raise ValueError("Weight carries several levels; pick a slot")
        return self.levels[0] if self.levels else Fraction(0)

    def slot_level(self, slot: int) -> Fraction:
        return self.levels[slot] if self.levels else Fraction(0)

    def __add__(self, other: "Weight") -> "Weight":
        size = max(len(self.levels), len(other.levels))
        levels = tuple(a + b for a, b in zip(_pad(self.levels, size), _pad(other.levels, size)))
        return Weight(vec_add(self.finite, other.finite), levels, self.delta + other.delta)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.finite), tuple(-x for x in self.levels), -self.delta)

    def scale(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(vec_scale(c, self.finite), tuple(c * x for x in self.levels), c * self.delta)

    def shift_delta(self, amount) -> "Weight":
        return Weight(self.finite, self.levels, self.delta + Fraction(amount))

    def with_finite(self, finite: Sequence[Fraction]) -> "Weight":
        return Weight(tuple(finite), self.levels, self.delta)

    def with_levels(self, levels: Sequence[Fraction]) -> "Weight":
        return Weight(self.finite, tuple(levels), self.delta)

    def is_zero(self) -> bool:
        return is_zero(self.finite) and all(x == 0 for x in self.levels) and self.delta == 0

    def sort_key(self):
        return (self.delta, self.levels, self.finite)

    def as_dict(self, level_labels: Sequence[str] = ("K",)) -> Dict[str, str]:
        data = {f"a{i + 1}": format_rational(x) for i, x in enumerate(self.finite)}
        labels = list(level_labels) if len(level_labels) == len(self.levels) else \
            [f"K{i + 1}" for i in range(len(self.levels))]
        for label, x in zip(labels, self.levels):
            data[label] = format_rational(x)
        data["delta"] = format_rational(self.delta)
        return data

    @staticmethod
    def from_dict(data: Dict[str, str], rank: int, level_labels: Optional[Sequence[str]] = None) -> "Weight":
        finite = tuple(parse_rational(data.get(f"a{i + 1}", "0"), f"a{i + 1}") for i in range(rank))
        level_keys = list(level_labels) if level_labels else sorted(k for k in data if k.startswith("K"))
        levels = tuple(parse_rational(data[k], k) for k in level_keys)
        return Weight(finite, levels, parse_rational(data.get("delta", "0"), "delta"))

    def __str__(self):
        parts = [f"({', '.join(format_rational(x) for x in self.finite)})"]
        if self.levels:
            parts.append("K=" + "/".join(format_rational(x) for x in self.levels))
        parts.append(f"delta={format_rational(self.delta)}")
        return " ".join(parts)
