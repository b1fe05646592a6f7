"""tests/conftest.py - Shared fixtures: quiet logger, small grids, the powers system."""
import pytest

from grid_space.grid_space_core.grid import Grid
from grid_space.grid_space_core.regions import Disc
from map_expr.map_expr_core.interval import IntervalBox2
from semigroup.semigroup_core.generator_system import GeneratorSystem
from utils.logger import logger

UNIT = IntervalBox2(-1.125, 1.125, -1.125, 1.125)


@pytest.fixture(autouse=True)
def quiet_logger():
    was = logger.quiet
    logger.quiet = True
    yield
    logger.quiet = was
    logger.detach_file()


@pytest.fixture
def disc_grid():
    """Returns a factory: depth -> grid over the unit disc."""
    return lambda depth: Grid(UNIT, depth, Disc())


@pytest.fixture
def square_grid():
    return lambda depth: Grid(IntervalBox2(-1.0, 1.0, -1.0, 1.0), depth)


@pytest.fixture
def powers():
    return GeneratorSystem.from_sources(["z^2", "z^3"], abelian_claimed=True)
