import logging
from typing import Callable, Dict, List, Optional

import numpy as np

from eigenid.core.matrix import SymmetricMatrix
from eigenid.eigensolve import kernels
from eigenid.eigensolve.types import EigenDecomposition, Spectrum, TridiagonalForm
from eigenid.exceptions import ConfigError, ConvergenceFailure

logger = logging.getLogger(__name__)

QL_ITERATIONS_PER_EIGENVALUE = 30

# Any callable mapping a matrix to its eigenvalues (any order) can be plugged in.
EigenvalueBackend = Callable[[SymmetricMatrix], np.ndarray]

DEFAULT_BACKEND = "householder-ql"


def _reduce(A: SymmetricMatrix):
    """Householder reduction of A scaled to unit magnitude; d and e come back in that scale."""
    n = A.n
    a, exponent = A.to_unit_scale()
    d = np.empty(n)
    e = np.zeros(n)
    h = np.zeros(max(n - 2, 1))
    kernels.householder_tridiagonal(a, d, e, h)
    return a, d, e, h, exponent


def tridiagonalize(A: SymmetricMatrix, accumulate: bool = False) -> TridiagonalForm:
    """
    Householder reduction to symmetric tridiagonal form.

    Matrices with n <= 2 are already tridiagonal and come back unchanged.
    With ``accumulate`` the orthogonal basis Q (T = Q^T A Q) is returned too.
    """
    a, d, e, h, exponent = _reduce(A)
    basis = kernels.accumulate_basis(a, h) if accumulate else None
    return TridiagonalForm(diag=np.ldexp(d, exponent), offdiag=np.ldexp(e[:A.n - 1], exponent), basis=basis)


def _run_ql(d: np.ndarray, e: np.ndarray, zt: np.ndarray, want_vectors: bool) -> int:
    n = d.shape[0]
    max_iter = QL_ITERATIONS_PER_EIGENVALUE * n
    iterations = kernels.ql_implicit(d, e, zt, want_vectors, max_iter)
    if iterations < 0:
        raise ConvergenceFailure(
            f"implicit QL did not isolate all eigenvalues within {max_iter} iterations (n={n})",
            iterations=max_iter,
        )
    logger.debug(f"QL converged in {iterations} iterations (n={n})")
    return iterations


def householder_ql_eigenvalues(A: SymmetricMatrix) -> np.ndarray:
    """Eigenvalues only: Householder reduction then implicit-shift QL, no vectors."""
    if A.n == 1:
        return A.entries[0].copy()
    _, d, e, _, exponent = _reduce(A)
    e[A.n - 1] = 0.0
    _run_ql(d, e, np.empty((0, 0)), False)
    return np.ldexp(d, exponent)


def lapack_eigenvalues(A: SymmetricMatrix) -> np.ndarray:
    return np.linalg.eigvalsh(A.entries)


_BACKENDS: Dict[str, EigenvalueBackend] = {
    DEFAULT_BACKEND: householder_ql_eigenvalues,
    "lapack": lapack_eigenvalues,
}


def register_backend(name: str, backend: EigenvalueBackend) -> None:
    if name in _BACKENDS:
        logger.warning(f"Replacing eigenvalue backend {name}")
    _BACKENDS[name] = backend


def get_backend(name: str) -> EigenvalueBackend:
    backend = _BACKENDS.get(name)
    if backend is None:
        raise ConfigError(f"Unknown eigenvalue backend {name!r}; available: {', '.join(sorted(_BACKENDS))}")
    return backend


def available_backends() -> List[str]:
    return sorted(_BACKENDS)


def eigenvalues(A: SymmetricMatrix, backend: Optional[str] = None) -> Spectrum:
    """Spectrum of A, sorted ascending."""
    solve = get_backend(backend or DEFAULT_BACKEND)
    return Spectrum.from_unsorted(solve(A))


def full_eigendecomposition(A: SymmetricMatrix) -> EigenDecomposition:
    """
    Complete eigendecomposition: Householder reduction with the basis kept,
    then implicit-shift QL rotating the basis along. This is the
    full-decomposition reference the benchmark times against.
    """
    n = A.n
    if n == 1:
        return EigenDecomposition(spectrum=Spectrum(values=A.entries[0].copy()), vectors=np.ones((1, 1)))
    a, d, e, h, exponent = _reduce(A)
    e[n - 1] = 0.0
    zt = np.ascontiguousarray(kernels.accumulate_basis(a, h).T)
    iterations = _run_ql(d, e, zt, True)
    order = np.argsort(d, kind="stable")
    vectors = np.ascontiguousarray(zt[order].T)
    values = np.ldexp(d[order], exponent)
    return EigenDecomposition(spectrum=Spectrum(values=values), vectors=vectors, sweeps=iterations)
