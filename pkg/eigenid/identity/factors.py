"""
The eigenvector-eigenvalue identity, in the orientation that matches a direct
eigendecomposition:

    |v_{i,j}|^2 = prod_k (lambda_i(A) - lambda_k(M_j)) / prod_{k != i} (lambda_i(A) - lambda_k(A))

i indexes eigenvalues of A in ascending order, j indexes components, and M_j
is A without row and column j.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from eigenid.config import settings
from eigenid.core.matrix import SymmetricMatrix, minor
from eigenid.eigensolve.solver import eigenvalues
from eigenid.eigensolve.types import Spectrum
from eigenid.exceptions import (
    ConfigError,
    DegenerateEigenvalue,
    IndexOutOfRange,
    InternalInconsistency,
    MatrixTooSmall,
    NonFiniteIntermediate,
)
from eigenid.identity.models import BatchPlan, FactorPairing, MagnitudeResult

logger = logging.getLogger(__name__)

# Relative distance below which lambda_i(A) counts as coinciding with a minor eigenvalue.
ZERO_COMPONENT_TOL = 1e-9


def check_indices(A: SymmetricMatrix, i: int, j: int = 0) -> None:
    if A.n < 2:
        raise MatrixTooSmall("the identity needs n >= 2")
    if not 0 <= i < A.n:
        raise IndexOutOfRange(f"eigenvalue index i={i} outside [0, {A.n})")
    if not 0 <= j < A.n:
        raise IndexOutOfRange(f"component index j={j} outside [0, {A.n})")


def check_nondegenerate(spectrum: Spectrum, i: int, degeneracy_tol: float) -> float:
    """
    Raise DegenerateEigenvalue when lambda_i sits within degeneracy_tol * range of a neighbour.

    :return: the smallest gap relative to the spectral range (the condition flag).
    """
    lam = spectrum.values
    spread = spectrum.spectral_range
    gaps = []
    if i > 0:
        gaps.append(lam[i] - lam[i - 1])
    if i < spectrum.n - 1:
        gaps.append(lam[i + 1] - lam[i])
    gap = float(min(gaps))
    tolerance = degeneracy_tol * spread
    if spread == 0.0 or gap <= tolerance:
        logger.info(f"Rejecting degenerate eigenvalue {i}: gap {gap:.3e}, tolerance {tolerance:.3e}")
        raise DegenerateEigenvalue(i, gap, tolerance)
    return gap / spread


def pair_factors(spectrum_a: Spectrum, spectrum_minor: Spectrum, i: int, j: int) -> FactorPairing:
    lam = spectrum_a.values
    if spectrum_minor.n != spectrum_a.n - 1:
        raise InternalInconsistency(
            f"minor spectrum has {spectrum_minor.n} values, expected {spectrum_a.n - 1}"
        )
    return FactorPairing.from_factors(
        lam[i] - spectrum_minor.values,
        np.delete(lam[i] - lam, i),
        i=i,
        j=j,
        spectral_range=spectrum_a.spectral_range,
    )


def prepare_batches(factors: FactorPairing, batch_size: int) -> BatchPlan:
    """Pair the k-th smallest numerator with the k-th smallest denominator, then cut into batches."""
    if batch_size < 1:
        raise ConfigError(f"batch_size must be >= 1, got {batch_size}")
    num, den = factors.paired()
    batches = [(num[start:start + batch_size], den[start:start + batch_size])
               for start in range(0, len(factors), batch_size)]
    return BatchPlan(batches=batches, batch_size=batch_size, n_batch=len(batches))


def range_shift(spectral_range: float) -> int:
    """Power of two bringing every factor into (-1, 1]; scaling by it is exact."""
    if spectral_range <= 0.0 or not math.isfinite(spectral_range):
        return 0
    return math.frexp(spectral_range)[1]


def reduce_batch(batch: Tuple[np.ndarray, np.ndarray], shift: int = 0) -> Tuple[np.float64, np.float64]:
    """Partial numerator and denominator products of one batch."""
    num, den = batch
    with np.errstate(over="ignore", under="ignore"):
        return np.prod(np.ldexp(num, -shift)), np.prod(np.ldexp(den, -shift))


def combine_partials(partials) -> np.float64:
    """Product of per-batch ratios, in batch-index order."""
    component = np.float64(1.0)
    with np.errstate(all="ignore"):
        for num_k, den_k in partials:
            component *= num_k / den_k
    return component


def log_domain_product(factors: FactorPairing) -> MagnitudeResult:
    """
    exp(sum ln|num| - sum ln|den|) with separate sign bookkeeping.

    A negative sign is only accepted when some numerator factor is zero to
    within rounding, i.e. the component itself is zero.
    """
    num, den = factors.numerator, factors.denominator
    abs_den = np.abs(den)
    if abs_den.size and float(np.min(abs_den)) == 0.0:
        raise DegenerateEigenvalue(factors.i, 0.0, 0.0)
    spread = factors.spectral_range
    condition = float(np.min(abs_den, initial=spread)) / spread if spread > 0 else 0.0

    abs_num = np.abs(num)
    negatives = int(np.count_nonzero(num < 0.0)) + int(np.count_nonzero(den < 0.0))
    if abs_num.size and float(np.min(abs_num)) == 0.0:
        return MagnitudeResult.from_raw(0.0, factors.i, factors.j, "log-domain", condition)

    with np.errstate(over="ignore", under="ignore"):
        magnitude = float(np.exp(np.sum(np.log(abs_num)) - np.sum(np.log(abs_den))))
    if negatives % 2 == 1:
        if float(np.min(abs_num)) > ZERO_COMPONENT_TOL * spread:
            raise InternalInconsistency(
                f"negative squared magnitude for (i={factors.i}, j={factors.j}): eigenvalue ordering is broken"
            )
        magnitude = -magnitude
    return MagnitudeResult.from_raw(magnitude, factors.i, factors.j, "log-domain", condition)


def component_magnitude_baseline(A: SymmetricMatrix, i: int, j: int,
                                 degeneracy_tol: Optional[float] = None, backend: Optional[str] = None) -> MagnitudeResult:
    """
    Straight evaluation: both spectra solved afresh, then two sequential products.

    Raises NonFiniteIntermediate when a running product leaves the float range,
    which happens for n in the low hundreds.
    """
    check_indices(A, i, j)
    spectrum_a = eigenvalues(A, backend)
    spectrum_m = eigenvalues(minor(A, j), backend)
    if degeneracy_tol is None:
        degeneracy_tol = settings.EIGENID_DEGENERACY_TOL
    condition = check_nondegenerate(spectrum_a, i, degeneracy_tol)

    lam = [float(x) for x in spectrum_a.values]
    mu = [float(x) for x in spectrum_m.values]
    n = A.n
    numerator = 1.0
    for k in range(n - 1):
        numerator = numerator * (lam[i] - mu[k])
    denominator = 1.0
    for k in range(n):
        if k != i:
            denominator = denominator * (lam[i] - lam[k])

    if not (math.isfinite(numerator) and math.isfinite(denominator)) or denominator == 0.0:
        raise NonFiniteIntermediate(
            f"sequential product left the float range for (i={i}, j={j}, n={n}): "
            f"numerator={numerator!r}, denominator={denominator!r}"
        )
    return MagnitudeResult.from_raw(numerator / denominator, i, j, "baseline", condition)
