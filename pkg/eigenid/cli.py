"""
Command-line entry point.

    eigenid component --csv A.csv -i 0 -j 0
    eigenid vector --random 30 --seed 4 -i 3 --signed
    eigenid full --mm A.mtx --out squared.csv
    eigenid verify --random 30 --seed 4
    eigenid bench --sizes 100 500 --repetitions 5 --plot plots/
    eigenid generate --random 50 --seed 0 --format matrix-market-symmetric --out A.mtx

Results go to standard output (or --out); diagnostics go to standard error.
"""
import argparse
import functools
import logging
import sys
from pathlib import Path
from typing import Callable, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ValidationError

from eigenid.bench import BenchConfig, emit_plot_data, reference_table, run_benchmark, speedup_table
from eigenid.bench.models import REFERENCE_VARIANT
from eigenid.config import settings
from eigenid.core import FileSource, RandomSource, SymmetricMatrix, generate, store
from eigenid.eigensolve import available_backends, interlacing_violations, jacobi_eigendecomposition
from eigenid.exceptions import (
    EXIT_COMPUTATION_ERROR,
    ConfigError,
    DegenerateEigenvalue,
    EigenIdError,
    OracleCapExceeded,
)
from eigenid.identity import IdentityConfig, all_magnitudes, component_magnitude, eigenvector, vector_magnitudes
from eigenid.logger_config import init_logger

logger = logging.getLogger(__name__)

VALUE_FORMAT = "{:.12g}"
CSV_VALUE_FORMAT = "{:.17g}"
VERIFY_TOL = 1e-8

VerifyStatus = Literal["OK", "DEGENERATE", "FAIL"]


class VerifySummary(BaseModel):
    n: int
    status: VerifyStatus
    max_deviation: Optional[float] = None
    max_row_sum_deviation: Optional[float] = None
    max_column_sum_deviation: Optional[float] = None
    interlacing_violation: float = 0.0
    interlacing_minor: int = -1
    detail: Optional[str] = None

    def render(self) -> str:
        lines = [f"n: {self.n}", f"status: {self.status}"]
        if self.max_deviation is not None:
            lines += [
                f"max abs deviation vs Jacobi: {self.max_deviation:.3e}",
                f"max row-sum deviation: {self.max_row_sum_deviation:.3e}",
                f"max column-sum deviation: {self.max_column_sum_deviation:.3e}",
            ]
        lines.append(f"max interlacing violation: {self.interlacing_violation:.3e}"
                     + (f" (minor {self.interlacing_minor})" if self.interlacing_minor >= 0 else ""))
        if self.detail:
            lines.append(f"detail: {self.detail}")
        return "\n".join(lines)


def verify(matrix: SymmetricMatrix, cfg: Optional[IdentityConfig] = None,
           oracle_cap: Optional[int] = None) -> VerifySummary:
    """
    Compare all_magnitudes against the squared Jacobi eigenvectors.

    A degenerate spectrum is an expected outcome, reported as DEGENERATE
    rather than raised.
    """
    cap = settings.EIGENID_ORACLE_CAP if oracle_cap is None else oracle_cap
    if matrix.n > cap:
        raise OracleCapExceeded(f"n={matrix.n} exceeds the oracle cap of {cap}")

    worst_interlacing, worst_minor = interlacing_violations(matrix, cfg.backend if cfg else None)
    try:
        squared = all_magnitudes(matrix, cfg)
    except DegenerateEigenvalue as e:
        logger.info(f"verify: {e}")
        return VerifySummary(n=matrix.n, status="DEGENERATE", interlacing_violation=worst_interlacing,
                             interlacing_minor=worst_minor, detail=e.detail)

    oracle = jacobi_eigendecomposition(matrix).squared_magnitudes()
    max_deviation = float(np.max(np.abs(squared - oracle)))
    summary = VerifySummary(
        n=matrix.n,
        status="OK" if max_deviation <= VERIFY_TOL else "FAIL",
        max_deviation=max_deviation,
        max_row_sum_deviation=float(np.max(np.abs(squared.sum(axis=1) - 1.0))),
        max_column_sum_deviation=float(np.max(np.abs(squared.sum(axis=0) - 1.0))),
        interlacing_violation=worst_interlacing,
        interlacing_minor=worst_minor,
    )
    if summary.status == "FAIL":
        summary.detail = f"deviation exceeds {VERIFY_TOL:g}"
    return summary


# error handling ------------------------------------------------------------

def handle_errors(command: Callable[[argparse.Namespace], int]) -> Callable[[argparse.Namespace], int]:
    """Map typed errors to their exit code with a one-line message on stderr."""
    @functools.wraps(command)
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return command(args)
        except EigenIdError as e:
            if e.chained_exception is not None:
                logger.debug("Chained exception", exc_info=e.chained_exception)
            print(str(e), file=sys.stderr)
            return e.exit_code
        except Exception as e:
            logger.exception(f"Unexpected error: {e}")
            print(f"{type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_COMPUTATION_ERROR
    return wrapper


# helpers -------------------------------------------------------------------

def _matrix(args: argparse.Namespace) -> SymmetricMatrix:
    try:
        if args.csv is not None:
            source = FileSource(path=args.csv, format="dense-csv")
        elif args.mm is not None:
            source = FileSource(path=args.mm, format="matrix-market-symmetric")
        else:
            source = RandomSource(n=args.random, seed=args.seed, distribution=args.distribution)
    except ValidationError as e:
        raise ConfigError(f"Invalid matrix source: {e}", chained_exception=e) from e
    return generate(source)


def _identity_config(args: argparse.Namespace) -> IdentityConfig:
    return IdentityConfig.create(
        batch_size=args.batch_size,
        workers=args.workers,
        backend=args.backend,
        degeneracy_tol=args.degeneracy_tol,
        evaluation="log-domain" if args.log_domain else None,
    )


def _emit(text_lines: List[str], csv_lines: List[str], out: Optional[Path]) -> None:
    if out is None:
        print("\n".join(text_lines))
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
    logger.info(f"Wrote {out}")


# commands ------------------------------------------------------------------

@handle_errors
def cmd_component(args: argparse.Namespace) -> int:
    result = component_magnitude(_matrix(args), args.i, args.j, _identity_config(args))
    if result.fallback:
        logger.info(f"component ({args.i}, {args.j}) fell back to the log domain")
    _emit([VALUE_FORMAT.format(result.value)],
          ["i,j,value", f"{args.i},{args.j},{CSV_VALUE_FORMAT.format(result.value)}"], args.out)
    return 0


@handle_errors
def cmd_vector(args: argparse.Namespace) -> int:
    A = _matrix(args)
    cfg = _identity_config(args)
    if args.signed:
        values = [float(v) for v in eigenvector(A, args.i, cfg)]
    else:
        values = [r.value for r in vector_magnitudes(A, args.i, cfg)]
    header = "j,component" if args.signed else "j,value"
    _emit([VALUE_FORMAT.format(v) for v in values],
          [header] + [f"{j},{CSV_VALUE_FORMAT.format(v)}" for j, v in enumerate(values)], args.out)
    return 0


@handle_errors
def cmd_full(args: argparse.Namespace) -> int:
    squared = all_magnitudes(_matrix(args), _identity_config(args))
    _emit([" ".join(VALUE_FORMAT.format(v) for v in row) for row in squared],
          [",".join(CSV_VALUE_FORMAT.format(v) for v in row) for row in squared], args.out)
    return 0


@handle_errors
def cmd_verify(args: argparse.Namespace) -> int:
    summary = verify(_matrix(args), _identity_config(args), args.oracle_cap)
    _emit([summary.render()], [summary.model_dump_json()], args.out)
    return EXIT_COMPUTATION_ERROR if summary.status == "FAIL" else 0


@handle_errors
def cmd_bench(args: argparse.Namespace) -> int:
    cfg = BenchConfig.create(
        sizes=args.sizes,
        repetitions=args.repetitions,
        variants=args.variants,
        task=args.task,
        seed=args.seed,
        distribution=args.distribution,
        batch_size=args.batch_size,
        workers=args.workers,
        oracle_method=args.oracle_method,
        warmup=not args.no_warmup,
        output_path=args.out,
    )
    report = run_benchmark(cfg)
    if REFERENCE_VARIANT in report.variants and len(report.variants) > 1:
        print(speedup_table(report))
    else:
        for (n, variant, task), mean in sorted(report.means().items()):
            print(f"{n} {variant} {task} {mean:.6f}")
    for note in report.skipped:
        print(f"skipped: {note}", file=sys.stderr)
    if args.reference_table:
        print()
        print(reference_table())
    if args.plot is not None:
        emit_plot_data(report, args.plot)
    return 0


@handle_errors
def cmd_generate(args: argparse.Namespace) -> int:
    if args.random is None and args.csv is None and args.mm is None:
        raise ConfigError("generate needs --random N (or --csv/--mm to convert a file)")
    store(_matrix(args), args.out, args.format)
    return 0


# parser --------------------------------------------------------------------

def _source_parser(required: bool = True) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("matrix source")
    exclusive = group.add_mutually_exclusive_group(required=required)
    exclusive.add_argument("--csv", type=Path, help="Dense CSV matrix file")
    exclusive.add_argument("--mm", type=Path, help="MatrixMarket symmetric coordinate file")
    exclusive.add_argument("--random", type=int, metavar="N", help="Seeded random N x N matrix")
    group.add_argument("--seed", type=int, default=0, help="Random seed (default 0)")
    group.add_argument("--distribution", choices=["gaussian", "uniform"], default="gaussian")
    return parser


def _engine_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("identity engine")
    group.add_argument("--batch-size", type=int, help=f"Factors per batch (default {settings.EIGENID_BATCH_SIZE})")
    group.add_argument("--workers", type=int, help="Worker threads (default EIGENID_WORKERS or CPU count)")
    group.add_argument("--log-domain", action="store_true", help="Evaluate products as sums of logarithms")
    group.add_argument("--backend", choices=available_backends(), help="Eigenvalue backend")
    group.add_argument("--degeneracy-tol", type=float, help="Relative gap below which eigenvalues count as repeated")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eigenid", description="Eigenvector components from eigenvalues")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    source, engine = _source_parser(), _engine_parser()
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", type=Path, help="Write results to this file instead of standard output")

    p = sub.add_parser("component", parents=[source, engine, output], help="One squared component |v_ij|^2")
    p.add_argument("-i", type=int, required=True, help="Eigenvalue index (ascending order)")
    p.add_argument("-j", type=int, required=True, help="Component index")
    p.set_defaults(func=cmd_component)

    p = sub.add_parser("vector", parents=[source, engine, output], help="All squared components of eigenvector i")
    p.add_argument("-i", type=int, required=True, help="Eigenvalue index (ascending order)")
    p.add_argument("--signed", action="store_true", help="Recover signs and print the unit eigenvector")
    p.set_defaults(func=cmd_vector)

    p = sub.add_parser("full", parents=[source, engine, output], help="Matrix of squared components, row j column i")
    p.set_defaults(func=cmd_full)

    p = sub.add_parser("verify", parents=[source, engine, output], help="Check against the Jacobi oracle")
    p.add_argument("--oracle-cap", type=int, help=f"Largest n to verify (default {settings.EIGENID_ORACLE_CAP})")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[output], help="Time the variants across matrix sizes")
    p.add_argument("--sizes", type=int, nargs="+", help="Matrix sizes")
    p.add_argument("--repetitions", type=int, help="Timed runs per variant and size (default 10)")
    p.add_argument("--variants", nargs="+",
                   choices=["baseline", "vectorized-batched", "batched-parallel", "log-domain", "oracle-full"])
    p.add_argument("--task", choices=["single-component", "single-vector", "all-vectors"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution", choices=["gaussian", "uniform"], default="gaussian")
    p.add_argument("--batch-size", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--oracle-method", choices=["householder-ql", "jacobi"])
    p.add_argument("--no-warmup", action="store_true", help="Skip the untimed warm-up run")
    p.add_argument("--plot", type=Path, help="Plot CSV file or directory")
    p.add_argument("--reference-table", action="store_true", help="Append the published reference timings")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("generate", parents=[_source_parser(required=False)], help="Write a seeded random matrix")
    p.add_argument("--format", choices=["dense-csv", "matrix-market-symmetric"], default="dense-csv")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def _console_level(verbose: int) -> str:
    if verbose >= 2:
        return "DEBUG"
    if verbose == 1:
        return "INFO"
    return settings.LOG_CONSOLE_LEVEL


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help
        return e.code if isinstance(e.code, int) else 2

    init_logger(console_level=_console_level(args.verbose), file_level=settings.LOG_FILE_LEVEL,
                log_file=settings.LOG_FILE)
    logger.debug(f"eigenid {args.command} {vars(args)}")
    return args.func(args)
