# kacdirac/setups.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from kacdirac.dirac import LEVEL_ONE_KINDS, DiracSetup, OrthogonalClass, build_setup, so_pair_setup
from kacdirac.rootcore import DiagramAut, FiniteRootSystem, build_root_system
from kacdirac.twistaff import TwistedAutomorphism
from kacdirac.utils import (
    CUTOFF, Cache, HEIGHT_BOUND, LENGTH_BOUND, SetupError, Vector, parse_cutoff, parse_vector,
    zero_vector,
)

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

SUBALGEBRA_KINDS = ("fixed-points-of-mu", "root-subsystem")


@dataclass
class AutomorphismConfig:
    permutation: List[int]
    shift: Vector

    @staticmethod
    def from_dict(data: Optional[Dict], rank: int, field_name: str) -> "AutomorphismConfig":
        if data is None:
            return AutomorphismConfig(list(range(rank)), zero_vector(rank))
        if not isinstance(data, dict):
            raise SetupError(f"{field_name}: expected a mapping with 'permutation' and 'shift'")
        permutation = data.get("permutation", list(range(rank)))
        if not isinstance(permutation, list) or not all(isinstance(i, int) for i in permutation):
            raise SetupError(f"{field_name}.permutation: expected a list of node indices")
        shift = parse_vector(data.get("shift", ["0"] * rank), f"{field_name}.shift")
        if len(shift) != rank:
            raise SetupError(f"{field_name}.shift: expected {rank} entries, got {len(shift)}")
        return AutomorphismConfig(permutation, shift)

    def build(self, rs: FiniteRootSystem) -> TwistedAutomorphism:
        return TwistedAutomorphism(DiagramAut(tuple(self.permutation)).validate(rs), self.shift)


@dataclass
class SetupConfig:
    """A parsed setup file: g, sigma, the subalgebra a, Lambda and the truncation bounds."""
    name: str
    algebra: List[str] = field(default_factory=list)
    sigma: Optional[AutomorphismConfig] = None
    mu: Optional[AutomorphismConfig] = None
    subalgebra: str = "fixed-points-of-mu"
    subsystem: List[int] = field(default_factory=list)
    labels: Optional[List[Fraction]] = None
    cutoff: Fraction = Fraction(CUTOFF)
    length_bound: int = LENGTH_BOUND
    height_bound: int = HEIGHT_BOUND
    orthogonal: Optional[OrthogonalClass] = None
    level_one: Optional[str] = None
    description: str = ""

    @staticmethod
    def from_dict(data: Dict) -> "SetupConfig":
        name = str(data.get("name", "setup"))
        cutoff = parse_cutoff(data.get("cutoff", CUTOFF))
        length_bound = _positive_int(data.get("length_bound", LENGTH_BOUND), "length_bound")
        height_bound = _positive_int(data.get("height_bound", HEIGHT_BOUND), "height_bound")
        level_one = data.get("level_one")
        if level_one is not None and level_one not in LEVEL_ONE_KINDS:
            raise SetupError(f"level_one: expected one of {LEVEL_ONE_KINDS}, got '{level_one}'")
        orthogonal = None
        if "orthogonal" in data:
            o = data["orthogonal"]
            if not isinstance(o, dict):
                raise SetupError("orthogonal: expected a mapping with 'dim', 'det' and 'angles'")
            orthogonal = OrthogonalClass(_positive_int(o.get("dim"), "orthogonal.dim"), int(o.get("det", 1)),
                                         parse_vector(o.get("angles", []), "orthogonal.angles"))
        config = SetupConfig(name, cutoff=cutoff, length_bound=length_bound, height_bound=height_bound,
                             orthogonal=orthogonal, level_one=level_one,
                             description=str(data.get("description", "")).strip())
        if orthogonal is not None and "algebra" not in data:
            return config
        algebra = data.get("algebra")
        if not isinstance(algebra, list) or not algebra:
            raise SetupError("algebra: expected a non-empty list of simple types such as ['A2']")
        config.algebra = [str(t) if not isinstance(t, list) else f"{t[0]}{t[1]}" for t in algebra]
        rank = config.root_system().rank
        config.sigma = AutomorphismConfig.from_dict(data.get("sigma"), rank, "sigma")
        config.mu = AutomorphismConfig.from_dict(data.get("mu"), rank, "mu")
        config.subalgebra = data.get("subalgebra", "fixed-points-of-mu")
        if config.subalgebra not in SUBALGEBRA_KINDS:
            raise SetupError(f"subalgebra: expected one of {SUBALGEBRA_KINDS}, got '{config.subalgebra}'")
        if config.subalgebra == "root-subsystem":
            nodes = data.get("subsystem")
            if not isinstance(nodes, list) or not all(isinstance(i, int) for i in nodes):
                raise SetupError("subsystem: expected a list of extended-diagram node indices")
            config.subsystem = nodes
            if data.get("mu") is not None:
                raise SetupError("mu: give either mu or a root subsystem, not both")
        if "labels" in data and data["labels"] is not None:
            config.labels = list(parse_vector(data["labels"], "labels"))
        return config

    @property
    def is_orthogonal_only(self) -> bool:
        return not self.algebra

    def root_system(self) -> FiniteRootSystem:
        return build_root_system(self.algebra)


def _positive_int(value, field_name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise SetupError(f"{field_name}: expected a non-negative integer, got {value!r}")
    return value


def kac_shift(rs: FiniteRootSystem, nodes: Sequence[int]) -> Vector:
    """Shift x with Kac coordinates 0 on the chosen extended-diagram nodes and 1 elsewhere; node 0 is affine."""
    if len(rs.components) != 1:
        raise SetupError("Root-subsystem subalgebras need a simple g")
    n = rs.rank
    if any(i < 0 or i > n for i in nodes):
        raise SetupError(f"subsystem: nodes must lie in 0..{n}, got {list(nodes)}")
    if len(set(nodes)) == n + 1:
        raise SetupError("subsystem: the full extended diagram is not a proper subsystem")
    marks = [Fraction(1)] + list(rs.highest_roots[0])
    s = [Fraction(0) if i in nodes else Fraction(1) for i in range(n + 1)]
    m = sum((a * si for a, si in zip(marks, s)), Fraction(0))
    return tuple(s[i + 1] / m for i in range(n))


def build_from_config(config: SetupConfig, cutoff: Optional[Fraction] = None,
                      length_bound: Optional[int] = None) -> DiracSetup:
    cutoff = config.cutoff if cutoff is None else cutoff
    length_bound = config.length_bound if length_bound is None else length_bound
    if config.is_orthogonal_only:
        return so_pair_setup(config.orthogonal, cutoff, length_bound)
    rs = config.root_system()
    sigma = config.sigma.build(rs)
    if config.subalgebra == "root-subsystem":
        mu = TwistedAutomorphism(DiagramAut.identity(rs.rank), kac_shift(rs, config.subsystem))
        logger.debug(f"Root subsystem {config.subsystem} realized by the inner shift {[str(x) for x in mu.shift]}")
    else:
        mu = config.mu.build(rs)
    return build_setup(config.name, rs, sigma, mu, config.labels, cutoff, length_bound)


def load_config(name: str, cutoff=None, length_bound: Optional[int] = None) -> SetupConfig:
    """Catalog name or YAML path, with command-line overrides applied."""
    config = SetupConfig.from_dict(Cache.load_setup(name))
    if cutoff is not None:
        config.cutoff = parse_cutoff(cutoff)
    if length_bound is not None:
        config.length_bound = _positive_int(length_bound, "length_bound")
    return config


def load_setup(name: str, cutoff=None, length_bound: Optional[int] = None) -> DiracSetup:
    return build_from_config(load_config(name, cutoff, length_bound))

