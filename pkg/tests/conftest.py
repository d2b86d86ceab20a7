import pytest

from nodalcover.arith import tower_construct
from nodalcover.pipeline import Realization, X40Context, load_scenario
from nodalcover.poly import PolyRing


@pytest.fixture(scope="session")
def qq():
    return tower_construct([])


@pytest.fixture(scope="session")
def qr():
    return tower_construct([("r", "r^2 + 15")])


@pytest.fixture(scope="session")
def y48_tower():
    return tower_construct([
        ("r", "r^2 + 15"),
        ("m", "m^2 - 95/42*m + 2855/2646"),
        ("n", "n^2 + 443889677/206391214080000*r - 46942774543/619173642240000"),
    ])


@pytest.fixture(scope="session")
def x40_data():
    return load_scenario("x40")


@pytest.fixture(scope="session")
def y48_data():
    return load_scenario("y48")


@pytest.fixture(scope="session")
def x40_ctx(x40_data):
    return X40Context(Realization.exact(x40_data))


@pytest.fixture(scope="session")
def ring_xy(qq):
    return PolyRing(qq, ("x", "y"))


@pytest.fixture(scope="session")
def ring_xyz(qq):
    return PolyRing(qq, ("x", "y", "z"))
