import logging
from typing import Optional, Sequence

import numpy as np

from eigenid.config import settings
from eigenid.core.matrix import SymmetricMatrix
from eigenid.eigensolve.solver import eigenvalues
from eigenid.eigensolve.types import Spectrum
from eigenid.exceptions import DimensionMismatch, IndexOutOfRange, SignRecoveryFailure
from eigenid.identity.engine import get_engine
from eigenid.identity.factors import check_indices, check_nondegenerate
from eigenid.identity.models import IdentityConfig

logger = logging.getLogger(__name__)

SIGN_TOL = 1e-10
RESIDUAL_TOL = 1e-6


def _anchored_signs(shifted: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    """
    Signs from the eigenvector equation with the largest component fixed positive.

    Removing row and column p from A - lambda I leaves M_p - lambda I, which is
    nonsingular exactly when v_p != 0, so the largest component is the best
    conditioned anchor.
    """
    n = moduli.shape[0]
    p = int(np.argmax(moduli))
    rest = np.array([k for k in range(n) if k != p], dtype=np.intp)
    signs = np.ones(n)
    if rest.size == 0:
        return signs
    block = shifted[np.ix_(rest, rest)]
    rhs = -shifted[rest, p] * moduli[p]
    try:
        solution = np.linalg.solve(block, rhs)
    except np.linalg.LinAlgError:
        solution = np.linalg.lstsq(block, rhs, rcond=None)[0]
    signs[rest] = np.where(solution < 0.0, -1.0, 1.0)
    return signs


def _refine_signs(shifted: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Flip single components while that lowers ||(A - lambda I) v||."""
    residual = shifted @ vector
    norm = float(np.linalg.norm(residual))
    order = np.argsort(-np.abs(vector), kind="stable")
    for _ in range(vector.shape[0]):
        flipped = False
        for j in order:
            if vector[j] == 0.0:
                continue
            candidate = residual - 2.0 * vector[j] * shifted[:, j]
            candidate_norm = float(np.linalg.norm(candidate))
            if candidate_norm < norm:
                vector[j] = -vector[j]
                residual, norm, flipped = candidate, candidate_norm, True
        if not flipped:
            break
    return vector


def recover_signs(A: SymmetricMatrix, i: int, magnitudes: Sequence[float], lambda_i: float,
                  spectrum: Optional[Spectrum] = None, degeneracy_tol: Optional[float] = None) -> np.ndarray:
    """
    Signed unit eigenvector from squared magnitudes.

    The first component with magnitude above SIGN_TOL is made positive. The
    result is checked against the eigenvector equation and rejected with
    SignRecoveryFailure when ||A v - lambda v|| > 1e-6 ||A||_F.
    """
    mags = np.clip(np.asarray(magnitudes, dtype=np.float64), 0.0, None)
    if mags.shape != (A.n,):
        raise DimensionMismatch(f"expected {A.n} magnitudes, got shape {mags.shape}")
    if A.n == 1:
        if i != 0:
            raise IndexOutOfRange(f"eigenvalue index i={i} outside [0, 1)")
        return np.ones(1)
    check_indices(A, i)
    if degeneracy_tol is None:
        degeneracy_tol = settings.EIGENID_DEGENERACY_TOL
    check_nondegenerate(spectrum or eigenvalues(A), i, degeneracy_tol)

    moduli = np.sqrt(mags)
    shifted = A.to_array() - lambda_i * np.eye(A.n)
    vector = _refine_signs(shifted, _anchored_signs(shifted, moduli) * moduli)

    significant = np.flatnonzero(mags > SIGN_TOL)
    if significant.size and vector[significant[0]] < 0.0:
        vector = -vector

    residual = float(np.linalg.norm(shifted @ vector))
    tolerance = RESIDUAL_TOL * A.frobenius_norm
    if residual > tolerance:
        raise SignRecoveryFailure(residual, tolerance)
    logger.debug(f"Recovered signs for eigenvector {i} (residual {residual:.3e})")
    return vector


def eigenvector(A: SymmetricMatrix, i: int, cfg: Optional[IdentityConfig] = None) -> np.ndarray:
    """Full signed eigenvector i: identity magnitudes followed by sign recovery."""
    engine = get_engine(cfg)
    check_indices(A, i)
    spectrum = engine.spectrum(A)
    results = engine.vector_magnitudes(A, i, cached_spectrum_a=spectrum)
    return recover_signs(A, i, [r.value for r in results], float(spectrum[i]),
                         spectrum=spectrum, degeneracy_tol=engine.cfg.degeneracy_tol)
