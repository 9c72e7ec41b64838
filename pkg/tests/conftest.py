import numpy as np
import pytest

from wienerhopf import PhysicalParams, solve_catalogue

SOMMERFELD = PhysicalParams(theta0=np.pi / 5)
SENIOR = PhysicalParams(theta0=5 * np.pi / 6, S=1 / np.sin(np.pi / 5))
HURD = PhysicalParams(theta0=np.pi / 3, theta1=np.pi / 4, theta2=np.pi / 5)


@pytest.fixture(scope="session")
def solved():
    """Memoized catalogue solves keyed by ``(name, n)`` at the figure parameters."""
    params = {"sommerfeld": SOMMERFELD, "senior-matrix": SENIOR, "senior-scalar": SENIOR, "hurd": HURD}
    cache = {}

    def get(name, n=129, rmap="4to1"):
        key = (name, n, rmap)
        if key not in cache:
            cache[key] = solve_catalogue(name, params[name], n, rmap)
        return cache[key]

    return get
