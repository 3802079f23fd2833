from typing import Optional, Tuple

import numpy as np

from eigenid.core.matrix import SymmetricMatrix, minor
from eigenid.eigensolve.solver import eigenvalues
from eigenid.eigensolve.types import Spectrum


def interlacing_violation(full: Spectrum, minor_spectrum: Spectrum) -> float:
    """
    Largest amount by which lambda_k(A) <= lambda_k(M) <= lambda_{k+1}(A) fails.
    Zero when the minor's spectrum interlaces the full one.
    """
    lam = full.values
    mu = minor_spectrum.values
    below = lam[:-1] - mu
    above = mu - lam[1:]
    return float(max(0.0, np.max(below, initial=0.0), np.max(above, initial=0.0)))


def interlacing_violations(A: SymmetricMatrix, backend: Optional[str] = None,
                           full: Optional[Spectrum] = None) -> Tuple[float, int]:
    """Worst interlacing violation over every principal minor, and the minor index j it occurs at."""
    if A.n < 2:
        return 0.0, -1
    full = full or eigenvalues(A, backend)
    worst, worst_j = 0.0, -1
    for j in range(A.n):
        violation = interlacing_violation(full, eigenvalues(minor(A, j), backend))
        if violation > worst:
            worst, worst_j = violation, j
    return worst, worst_j
