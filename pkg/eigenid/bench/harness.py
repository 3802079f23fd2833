import logging
import time
from typing import Callable, Dict, List, Optional

import numpy as np

from eigenid.bench.models import BenchConfig, BenchRecord, BenchReport, Task
from eigenid.bench.report import write_records
from eigenid.core.matrix import SymmetricMatrix
from eigenid.core.source import random_symmetric
from eigenid.eigensolve.jacobi import jacobi_eigendecomposition
from eigenid.eigensolve.solver import full_eigendecomposition
from eigenid.exceptions import InternalInconsistency, NonFiniteIntermediate, VariantDisagreement
from eigenid.identity.engine import IdentityEngine
from eigenid.identity.factors import component_magnitude_baseline
from eigenid.identity.models import IdentityConfig

logger = logging.getLogger(__name__)

# A variant run returns the task checksum.
Runner = Callable[[SymmetricMatrix], float]

ENGINE_VARIANTS = ("vectorized-batched", "batched-parallel", "log-domain")


def component_index(n: int) -> int:
    """Eigenvalue index the benchmark tasks target."""
    return n // 2


def vector_checksum(magnitudes) -> float:
    """Index-weighted sum of one eigenvector's squared magnitudes."""
    magnitudes = np.asarray(magnitudes, dtype=np.float64)
    weights = np.arange(1, magnitudes.shape[0] + 1, dtype=np.float64)
    return float(np.dot(weights, magnitudes))


def matrix_checksum(squared: np.ndarray) -> float:
    """Index-weighted sum over a [j][i] matrix of squared magnitudes, divided by n."""
    n = squared.shape[0]
    weights = np.arange(1, n + 1, dtype=np.float64)
    return float(weights @ squared @ weights) / n


def expected_solves(task: Task, n: int) -> int:
    return 2 if task == "single-component" else n + 1


# runners -------------------------------------------------------------------

def _baseline_runner(task: Task) -> Runner:
    def run(A: SymmetricMatrix) -> float:
        i = component_index(A.n)
        if task == "single-component":
            return component_magnitude_baseline(A, i, 0).value
        if task == "single-vector":
            return vector_checksum(np.array([component_magnitude_baseline(A, i, j).value for j in range(A.n)]))
        squared = np.array([[component_magnitude_baseline(A, k, j).value for k in range(A.n)]
                            for j in range(A.n)])
        return matrix_checksum(squared)
    return run


def _engine_runner(task: Task, engine: IdentityEngine) -> Runner:
    def run(A: SymmetricMatrix) -> float:
        i = component_index(A.n)
        if task == "single-component":
            return engine.component_magnitude(A, i, 0).value
        if task == "single-vector":
            return vector_checksum(np.array([r.value for r in engine.vector_magnitudes(A, i)]))
        return matrix_checksum(engine.all_magnitudes(A))
    return run


def _oracle_runner(task: Task, cfg: BenchConfig) -> Runner:
    decompose = jacobi_eigendecomposition if cfg.oracle_method == "jacobi" else full_eigendecomposition

    def run(A: SymmetricMatrix) -> float:
        # rows are components j, columns eigenvalues i
        squared = decompose(A).squared_magnitudes()
        i = component_index(A.n)
        if task == "single-component":
            return float(squared[0, i])
        if task == "single-vector":
            return vector_checksum(squared[:, i])
        return matrix_checksum(squared)
    return run


def _engine_config(variant: str, cfg: BenchConfig) -> IdentityConfig:
    if variant == "log-domain":
        return IdentityConfig.create(batch_size=cfg.batch_size, workers=1, evaluation="log-domain")
    workers = cfg.workers if variant == "batched-parallel" else 1
    return IdentityConfig.create(batch_size=cfg.batch_size, workers=workers)


# harness -------------------------------------------------------------------

def _timed(runner: Runner, A: SymmetricMatrix):
    start = time.perf_counter()
    checksum = runner(A)
    elapsed = time.perf_counter() - start
    # perf_counter can report 0 for the 2x2 case on coarse clocks
    return max(elapsed, 1e-9), checksum


def _check_agreement(report: BenchReport, n: int, task: str, records: List[BenchRecord], tol: float) -> None:
    if not records:
        return
    reference = next((r for r in records if r.variant == "oracle-full"), records[0])
    worst = max(abs(r.checksum - reference.checksum) for r in records)
    if worst > tol:
        message = (f"n={n} task={task}: checksums differ by {worst:.3e} "
                   f"(reference {reference.variant} = {reference.checksum!r})")
        logger.error(f"INVALID {message}")
        report.invalid.append(message)


def run_benchmark(cfg: BenchConfig) -> BenchReport:
    """
    Time every configured variant on one seeded matrix per size.

    Each (size, variant) gets one untimed warm-up run, then cfg.repetitions
    timed runs. Only the variant call sits inside the timer. Checksums of all
    variants for the same size must agree within cfg.agreement_tol; otherwise
    VariantDisagreement is raised with the full report attached.
    """
    report = BenchReport(distribution=cfg.distribution, seed=cfg.seed)
    engines: Dict[str, IdentityEngine] = {
        v: IdentityEngine(_engine_config(v, cfg)) for v in cfg.variants if v in ENGINE_VARIANTS
    }
    try:
        for n in cfg.sizes:
            A = random_symmetric(cfg.seed, n, cfg.distribution)
            size_records: List[BenchRecord] = []
            for variant in cfg.variants:
                size_records.extend(_run_variant(report, cfg, variant, A, engines.get(variant)))
            _check_agreement(report, n, cfg.task, size_records, cfg.agreement_tol)
            report.records.extend(size_records)
    finally:
        for engine in engines.values():
            engine.close()

    if cfg.output_path is not None:
        write_records(report, cfg.output_path)

    if report.invalid:
        raise VariantDisagreement("; ".join(report.invalid), report=report)
    return report


def _run_variant(report: BenchReport, cfg: BenchConfig, variant: str, A: SymmetricMatrix,
                 engine: Optional[IdentityEngine]) -> List[BenchRecord]:
    if engine is not None:
        runner = _engine_runner(cfg.task, engine)
    elif variant == "baseline":
        runner = _baseline_runner(cfg.task)
    else:
        runner = _oracle_runner(cfg.task, cfg)

    logger.info(f"Benchmarking {variant} on n={A.n} ({cfg.task}, {cfg.repetitions} runs)")
    records = []
    try:
        if cfg.warmup:
            runner(A)
        for run in range(cfg.repetitions):
            if engine is not None:
                engine.reset_solve_count()
            seconds, checksum = _timed(runner, A)
            if engine is not None and engine.solve_count != expected_solves(cfg.task, A.n):
                raise InternalInconsistency(
                    f"{variant} performed {engine.solve_count} eigenvalue solves for {cfg.task} at n={A.n}, "
                    f"expected {expected_solves(cfg.task, A.n)}"
                )
            if not np.isfinite(checksum):
                raise InternalInconsistency(f"{variant} produced a non-finite checksum at n={A.n}")
            records.append(BenchRecord(n=A.n, variant=variant, task=cfg.task, run=run,
                                       seconds=seconds, checksum=checksum))
    except NonFiniteIntermediate as e:
        if variant != "baseline":
            raise
        logger.warning(f"Skipping baseline at n={A.n}: {e.detail}")
        report.skipped.append(f"baseline n={A.n}: {e.detail}")
        return []
    return records
