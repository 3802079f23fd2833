import atexit
import concurrent.futures
import logging
import threading
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, TypeVar

import numpy as np

from eigenid.core.matrix import SymmetricMatrix, minor
from eigenid.eigensolve.solver import get_backend
from eigenid.eigensolve.types import Spectrum
from eigenid.exceptions import MatrixTooSmall
from eigenid.identity.factors import (
    check_indices,
    check_nondegenerate,
    combine_partials,
    log_domain_product,
    pair_factors,
    prepare_batches,
    range_shift,
    reduce_batch,
)
from eigenid.identity.models import FactorPairing, IdentityConfig, MagnitudeResult

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-8

T = TypeVar("T")
R = TypeVar("R")


class IdentityEngine:
    """
    Evaluates the identity for one configuration.

    The worker pool is created on first use and reused by every later call;
    results are combined in batch-index order, so they do not depend on the
    worker count.
    """

    def __init__(self, cfg: Optional[IdentityConfig] = None):
        self.cfg: IdentityConfig = cfg or IdentityConfig()
        self._solve = get_backend(self.cfg.backend)
        self._pool: Optional[concurrent.futures.ThreadPoolExecutor] = None
        self._pool_lock = threading.Lock()
        self._count_lock = threading.Lock()
        self.solve_count = 0

    # pool ----------------------------------------------------------------

    @property
    def parallel(self) -> bool:
        return self.cfg.workers > 1

    @property
    def method(self) -> str:
        if self.cfg.evaluation == "log-domain":
            return "log-domain"
        return "batched-parallel" if self.parallel else "batched"

    def _get_pool(self) -> concurrent.futures.ThreadPoolExecutor:
        with self._pool_lock:
            if self._pool is None:
                logger.debug(f"Starting identity worker pool with {self.cfg.workers} workers")
                self._pool = concurrent.futures.ThreadPoolExecutor(
                    max_workers=self.cfg.workers, thread_name_prefix="eigenid"
                )
            return self._pool

    def _map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Ordered map; runs inline when the engine has a single worker."""
        if not self.parallel:
            return [fn(item) for item in items]
        return list(self._get_pool().map(fn, items))

    def close(self) -> None:
        with self._pool_lock:
            if self._pool is not None:
                logger.debug("Shutting down identity worker pool")
                self._pool.shutdown(wait=True)
                self._pool = None

    def __enter__(self) -> "IdentityEngine":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # spectra ---------------------------------------------------------------

    def reset_solve_count(self) -> None:
        with self._count_lock:
            self.solve_count = 0

    def spectrum(self, A: SymmetricMatrix) -> Spectrum:
        """One eigenvalue solve, counted."""
        with self._count_lock:
            self.solve_count += 1
        return Spectrum.from_unsorted(self._solve(A))

    def _minor_spectrum(self, A: SymmetricMatrix, j: int) -> Spectrum:
        return self.spectrum(minor(A, j))

    # evaluation ------------------------------------------------------------

    def evaluate(self, factors: FactorPairing, condition: float, parallel_batches: bool = True) -> MagnitudeResult:
        """Reduce one factor pairing to |v_{i,j}|^2 with the configured evaluation."""
        if self.cfg.evaluation == "log-domain":
            return log_domain_product(factors)

        plan = prepare_batches(factors, self.cfg.batch_size)
        reducer = partial(reduce_batch, shift=range_shift(factors.spectral_range))
        if parallel_batches and self.parallel and plan.n_batch > 1:
            partials = self._map(reducer, plan.batches)
        else:
            partials = [reducer(batch) for batch in plan.batches]
        component = combine_partials(partials)

        if not np.isfinite(component):
            logger.warning(
                f"Non-finite batched product for (i={factors.i}, j={factors.j}); retrying in log domain"
            )
            result = log_domain_product(factors)
            return result.model_copy(update={"fallback": True})
        return MagnitudeResult.from_raw(component, factors.i, factors.j, self.method, condition)

    def component_magnitude(self, A: SymmetricMatrix, i: int, j: int,
                            cached_spectrum_a: Optional[Spectrum] = None,
                            cached_spectrum_minor: Optional[Spectrum] = None) -> MagnitudeResult:
        """
        |v_{i,j}|^2 for one component.

        Cached spectra, when given, must belong to A and to minor(A, j).
        """
        check_indices(A, i, j)
        spectrum_a = cached_spectrum_a
        spectrum_minor = cached_spectrum_minor
        if spectrum_a is None and spectrum_minor is None and self.parallel:
            pool = self._get_pool()
            future_a = pool.submit(self.spectrum, A)
            future_minor = pool.submit(self._minor_spectrum, A, j)
            spectrum_a, spectrum_minor = future_a.result(), future_minor.result()
        else:
            if spectrum_a is None:
                spectrum_a = self.spectrum(A)
            if spectrum_minor is None:
                spectrum_minor = self._minor_spectrum(A, j)

        condition = check_nondegenerate(spectrum_a, i, self.cfg.degeneracy_tol)
        return self.evaluate(pair_factors(spectrum_a, spectrum_minor, i, j), condition)

    def vector_magnitudes(self, A: SymmetricMatrix, i: int,
                          cached_spectrum_a: Optional[Spectrum] = None) -> List[MagnitudeResult]:
        """|v_{i,j}|^2 for every j: one solve for A, one per minor."""
        check_indices(A, i)
        spectrum_a = cached_spectrum_a or self.spectrum(A)
        condition = check_nondegenerate(spectrum_a, i, self.cfg.degeneracy_tol)

        def column(j: int) -> MagnitudeResult:
            factors = pair_factors(spectrum_a, self._minor_spectrum(A, j), i, j)
            return self.evaluate(factors, condition, parallel_batches=False)

        results = self._map(column, range(A.n))
        total = sum(r.value for r in results)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            logger.warning(f"Eigenvector {i} magnitudes sum to {total!r}, expected 1")
        return results

    def all_magnitudes(self, A: SymmetricMatrix) -> np.ndarray:
        """
        Matrix with entry [j][i] = |v_{i,j}|^2.

        Each minor is solved once and reused for every eigenvalue, so the cost
        is n + 1 eigenvalue solves.
        """
        if A.n < 2:
            raise MatrixTooSmall("the identity needs n >= 2")
        n = A.n
        spectrum_a = self.spectrum(A)
        conditions = [check_nondegenerate(spectrum_a, i, self.cfg.degeneracy_tol) for i in range(n)]

        def row(j: int) -> np.ndarray:
            spectrum_minor = self._minor_spectrum(A, j)
            return np.array([
                self.evaluate(pair_factors(spectrum_a, spectrum_minor, i, j), conditions[i],
                              parallel_batches=False).value
                for i in range(n)
            ])

        magnitudes = np.vstack(self._map(row, range(n)))
        worst = max(float(np.max(np.abs(magnitudes.sum(axis=0) - 1.0))),
                    float(np.max(np.abs(magnitudes.sum(axis=1) - 1.0))))
        if worst > NORMALIZATION_TOL:
            logger.warning(f"Squared-magnitude matrix deviates from doubly stochastic by {worst:.3e}")
        return magnitudes


_engines: Dict[IdentityConfig, IdentityEngine] = {}
_engines_lock = threading.Lock()


def get_engine(cfg: Optional[IdentityConfig] = None) -> IdentityEngine:
    """Shared engine per configuration, so module-level calls reuse one pool."""
    cfg = cfg or IdentityConfig()
    with _engines_lock:
        engine = _engines.get(cfg)
        if engine is None:
            engine = IdentityEngine(cfg)
            _engines[cfg] = engine
        return engine


def shutdown_engines() -> None:
    with _engines_lock:
        for engine in _engines.values():
            engine.close()
        _engines.clear()


atexit.register(shutdown_engines)


def component_magnitude(A: SymmetricMatrix, i: int, j: int, cfg: Optional[IdentityConfig] = None,
                        cached_spectrum_a: Optional[Spectrum] = None,
                        cached_spectrum_minor: Optional[Spectrum] = None) -> MagnitudeResult:
    return get_engine(cfg).component_magnitude(A, i, j, cached_spectrum_a, cached_spectrum_minor)


def vector_magnitudes(A: SymmetricMatrix, i: int, cfg: Optional[IdentityConfig] = None) -> List[MagnitudeResult]:
    return get_engine(cfg).vector_magnitudes(A, i)


def all_magnitudes(A: SymmetricMatrix, cfg: Optional[IdentityConfig] = None) -> np.ndarray:
    return get_engine(cfg).all_magnitudes(A)
