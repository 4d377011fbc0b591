import functools

import pytest

from exharm.correlation import exact_densities
from exharm.mchf import scf, table_basis
from exharm.model import derive_params
from exharm.radial import relative_ground


@functools.lru_cache(maxsize=None)
def solved(m, omega):
    """Relative solution, tabulated-basis SCF, and exact densities for one grid point."""
    p = derive_params(m, omega)
    sol = relative_ground(p)
    res = scf(p, *table_basis(m, omega))
    return p, sol, res


@functools.lru_cache(maxsize=None)
def densities(m, omega):
    p, sol, _ = solved(m, omega)
    return exact_densities(sol, p)


@pytest.fixture
def point():
    return solved


@pytest.fixture
def point_densities():
    return densities
