# tests/test_setups.py
from fractions import Fraction

import pytest

from config.available_setups import AVAILABLE_SETUPS
from kacdirac.rootcore import build_root_system
from kacdirac.setups import SetupConfig, kac_shift, load_config, load_setup
from kacdirac.utils import SetupError, UnsupportedSetup


@pytest.mark.parametrize("name", sorted(AVAILABLE_SETUPS))
def test_catalog_entries_parse(name):
    config = load_config(name)
    assert config.name == name
    assert config.cutoff >= 0
    assert config.is_orthogonal_only or config.algebra


@pytest.mark.parametrize("data, field", [
    ({"algebra": []}, "algebra"),
    ({"algebra": ["A2"], "level_one": "adjoint"}, "level_one"),
    ({"algebra": ["A2"], "subalgebra": "levi"}, "subalgebra"),
    ({"algebra": ["A2"], "subalgebra": "root-subsystem", "subsystem": [1], "mu": {"permutation": [1, 0]}}, "mu"),
    ({"algebra": ["A2"], "subalgebra": "root-subsystem", "subsystem": "1"}, "subsystem"),
    ({"algebra": ["A2"], "sigma": {"shift": ["1/2"]}}, "sigma.shift"),
    ({"algebra": ["A2"], "sigma": {"permutation": ["a", "b"]}}, "sigma.permutation"),
    ({"algebra": ["A2"], "mu": [1, 0]}, "mu"),
    ({"algebra": ["A2"], "length_bound": -1}, "length_bound"),
    ({"algebra": ["A2"], "height_bound": True}, "height_bound"),
    ({"algebra": ["A2"], "cutoff": "-1"}, "cutoff"),
    ({"algebra": ["A2"], "labels": ["1", "x"]}, "labels"),
    ({"orthogonal": [5, 1]}, "orthogonal"),
])
def test_bad_configs_name_the_field(data, field):
    with pytest.raises(SetupError, match=field):
        SetupConfig.from_dict(data)


def test_orthogonal_config():
    config = SetupConfig.from_dict({"name": "t", "orthogonal": {"dim": 6, "det": 1, "angles": ["1/4", "1/4", "1/2"]}})
    assert config.is_orthogonal_only
    assert config.orthogonal.angles == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    with pytest.raises(UnsupportedSetup):
        SetupConfig.from_dict({"orthogonal": {"dim": 3, "det": 1, "angles": ["0"]}})


def test_kac_shift(a1, a2):
    assert kac_shift(a1, []) == (Fraction(1, 2),)
    assert kac_shift(a2, [1]) == (Fraction(0), Fraction(1, 2))
    assert kac_shift(a2, []) == (Fraction(1, 3), Fraction(1, 3))
    with pytest.raises(SetupError):
        kac_shift(a2, [0, 1, 2])
    with pytest.raises(SetupError):
        kac_shift(a2, [5])
    with pytest.raises(SetupError):
        kac_shift(build_root_system(["A1", "A1"]), [0])


def test_overrides():
    config = load_config("sl3-outer", cutoff="1/2", length_bound=3)
    assert config.cutoff == Fraction(1, 2)
    assert config.length_bound == 3


def test_load_from_path(tmp_path):
    path = tmp_path / "torus.yaml"
    path.write_text("algebra: [A2]\nsubalgebra: root-subsystem\nsubsystem: []\ncutoff: '1'\n", encoding="utf-8")
    setup = load_setup(str(path), length_bound=4)
    assert setup.name == str(path)
    assert len(setup.a.center_basis) == 2
    assert setup.cutoff == 1
    assert setup.length_bound == 4


def test_orthogonal_pair_setup():
    setup = load_setup("so6-so5")
    assert len(setup.a.ideals) == 1
    assert setup.spec.zero_mode_dimension == 1


def test_unknown_setup():
    with pytest.raises(SetupError, match="Unknown setup"):
        load_config("sl7-nowhere")
