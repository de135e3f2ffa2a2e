import importlib.resources

import numpy as np
import pytest

import slepkit


def boundary_path():
    return str(importlib.resources.files("slepkit") / "data" / "colorado_plateaus.xy")


@pytest.fixture(scope="session")
def plateau_region():
    return slepkit.read_region(boundary_path())


@pytest.fixture(scope="session")
def unit_disk():
    return slepkit.Region.disk((0.0, 0.0), 1.0)


@pytest.fixture(scope="session")
def disk42_nystrom(unit_disk):
    """Nystrom basis on the unit disk at Shannon number 42, shared read-only."""
    return slepkit.solve_region_disk(unit_disk, 2.0 * np.sqrt(42.0), n_quad=32, count=90)


@pytest.fixture(scope="session")
def disk42_analytic():
    """Analytic mixed-order basis at Shannon number 42, shared read-only."""
    return slepkit.assemble_disk_basis(2.0 * np.sqrt(42.0), 1.0, 40)
