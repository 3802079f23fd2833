import logging
import math
from typing import Optional

import numpy as np

from eigenid.core.matrix import SymmetricMatrix
from eigenid.eigensolve import kernels
from eigenid.eigensolve.types import EigenDecomposition, Spectrum
from eigenid.exceptions import ConfigError, ConvergenceFailure

logger = logging.getLogger(__name__)

MAX_SWEEPS = 100
DEFAULT_RELATIVE_TOL = 1e-12


def jacobi_eigendecomposition(A: SymmetricMatrix, tol: Optional[float] = None) -> EigenDecomposition:
    """
    Cyclic Jacobi eigendecomposition, the verification oracle.

    A different algorithm family from the Householder/QL path, so a bug in one
    cannot hide behind the same bug in the other.

    :param A: matrix to decompose.
    :param tol: stop once the off-diagonal Frobenius norm is <= tol
                (default 1e-12 * ||A||_F). Rotations run on A scaled by a
                power of two, and tol is scaled with it.
    :return: ascending spectrum and matching orthonormal eigenvectors (columns).
    """
    a, exponent = A.to_unit_scale()
    if tol is None:
        unit_tol = DEFAULT_RELATIVE_TOL * float(np.linalg.norm(a))
    elif not math.isfinite(tol) or tol <= 0.0:
        raise ConfigError(f"Jacobi tolerance must be positive and finite, got {tol}")
    else:
        unit_tol = float(np.ldexp(tol, -exponent))

    v = np.eye(A.n)
    sweeps = kernels.jacobi_cyclic(a, v, unit_tol, MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceFailure(f"Jacobi did not converge within {MAX_SWEEPS} sweeps (n={A.n})", iterations=MAX_SWEEPS)
    logger.debug(f"Jacobi converged in {sweeps} sweeps (n={A.n})")

    values = np.ldexp(np.diag(a), exponent)
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(
        spectrum=Spectrum(values=values[order]),
        vectors=np.ascontiguousarray(v[:, order]),
        sweeps=sweeps,
    )
