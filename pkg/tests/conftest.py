import numpy as np
import pytest

from eigenid.core import build
from eigenid.eigensolve import jacobi_eigendecomposition
from eigenid.identity import IdentityConfig, shutdown_engines


@pytest.fixture
def hand_matrix():
    """[[2,1],[1,2]]: eigenvalues 1 and 3, eigenvectors (1,-1)/sqrt2 and (1,1)/sqrt2."""
    return build([[2.0, 1.0], [1.0, 2.0]])


@pytest.fixture
def diag123():
    return build(np.diag([1.0, 2.0, 3.0]))


@pytest.fixture
def identity5():
    return build(np.eye(5))


@pytest.fixture
def serial_cfg():
    return IdentityConfig(workers=1, batch_size=64)


@pytest.fixture
def parallel_cfg():
    return IdentityConfig(workers=4, batch_size=8)


@pytest.fixture
def oracle_squared():
    """Squared Jacobi eigenvectors, entry [j][i] = |v_{i,j}|^2."""
    def squared(A):
        return jacobi_eigendecomposition(A).squared_magnitudes()
    return squared


@pytest.fixture(scope="session", autouse=True)
def _close_engine_pools():
    yield
    shutdown_engines()
