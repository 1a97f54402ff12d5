# tests/conftest.py
import pytest

from kacdirac.dirac import kernel_decomposition
from kacdirac.rootcore import build_root_system
from kacdirac.setups import load_setup
from kacdirac.utils import Cache


@pytest.fixture(autouse=True)
def fresh_setup_cache():
    Cache.setups.clear()
    yield


@pytest.fixture(scope="module")
def a1():
    return build_root_system(["A1"])


@pytest.fixture(scope="module")
def a2():
    return build_root_system(["A2"])


@pytest.fixture(scope="module")
def sl2_gl1():
    setup = load_setup("sl2-gl1")
    return setup, kernel_decomposition(setup)


@pytest.fixture(scope="module")
def sl3_gl2():
    setup = load_setup("sl3-gl2")
    return setup, kernel_decomposition(setup)


@pytest.fixture(scope="module")
def diag_sl2():
    return load_setup("diag-sl2")
