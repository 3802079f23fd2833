from eigenid.eigensolve.types import EigenDecomposition, Spectrum, TridiagonalForm
from eigenid.eigensolve.solver import (
    DEFAULT_BACKEND,
    EigenvalueBackend,
    available_backends,
    eigenvalues,
    full_eigendecomposition,
    get_backend,
    register_backend,
    tridiagonalize,
)
from eigenid.eigensolve.jacobi import jacobi_eigendecomposition
from eigenid.eigensolve.interlacing import interlacing_violation, interlacing_violations

__all__ = [
    "EigenDecomposition",
    "Spectrum",
    "TridiagonalForm",
    "DEFAULT_BACKEND",
    "EigenvalueBackend",
    "available_backends",
    "eigenvalues",
    "full_eigendecomposition",
    "get_backend",
    "register_backend",
    "tridiagonalize",
    "jacobi_eigendecomposition",
    "interlacing_violation",
    "interlacing_violations",
]
