import csv
import io
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from eigenid.bench.models import REFERENCE_VARIANT, BenchRecord, BenchReport
from eigenid.exceptions import BenchIoError, MissingReference

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RECORD_HEADER = ["n", "variant", "task", "run", "seconds", "checksum"]
PLOT_HEADER = ["n", "variant", "mean_seconds", "stddev_seconds"]

# Published single-component timings, full NumPy decomposition against the identity:
# (n, full decomposition seconds, identity seconds). Documentation only.
PUBLISHED_SINGLE_COMPONENT = [
    (2, 0.000057, 0.000233),
    (502, 0.170962, 0.119722),
    (1002, 1.100800, 0.595935),
    (1502, 4.165680, 1.603579),
    (2002, 9.522480, 3.212001),
    (2502, 17.632952, 5.707374),
    (3002, 30.342656, 9.522745),
    (3502, 47.404600, 11.886900),
    (4002, 69.955400, 16.775200),
    (4502, 98.680800, 22.943500),
    (5002, 134.324200, 30.547200),
    (5502, 177.629000, 39.741700),
    (6002, 229.338600, 50.682400),
]


def _write_text(path: PathLike, text: str) -> Path:
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise BenchIoError(f"Could not write {path}: {e}", chained_exception=e) from e
    logger.info(f"Wrote {path}")
    return path


def format_records(records: List[BenchRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RECORD_HEADER)
    for r in records:
        writer.writerow([r.n, r.variant, r.task, r.run, f"{r.seconds:.6f}", f"{r.checksum:.17g}"])
    return buffer.getvalue()


def write_records(report: BenchReport, path: PathLike) -> Path:
    """Per-run bench CSV."""
    return _write_text(path, format_records(report.records))


def read_records(path: PathLike) -> List[BenchRecord]:
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise BenchIoError(f"Could not read {path}: {e}", chained_exception=e) from e
    return [
        BenchRecord(n=int(row["n"]), variant=row["variant"], task=row["task"], run=int(row["run"]),
                    seconds=float(row["seconds"]), checksum=float(row["checksum"]))
        for row in rows
    ]


def _optimized_variant(report: BenchReport, reference: str) -> Optional[str]:
    candidates = [v for v in report.variants if v != reference]
    if "batched-parallel" in candidates:
        return "batched-parallel"
    return candidates[0] if candidates else None


def speedup_table(report: BenchReport, reference: str = REFERENCE_VARIANT,
                  optimized: Optional[str] = None, task: Optional[str] = None) -> str:
    """
    Text table with one row per size: reference mean, optimized mean and
    their ratio, followed by the means of any other variants that ran.
    """
    if reference not in report.variants:
        raise MissingReference(f"report has no {reference} timings to compare against")
    optimized = optimized or _optimized_variant(report, reference)
    if optimized is None or optimized == reference:
        raise MissingReference("report holds a single variant; nothing to compare")
    task = task or report.tasks[0]

    means = report.means()
    others = [v for v in report.variants if v not in (reference, optimized)]
    header = ["Size", reference, optimized, "Speedup"] + others
    rows: List[List[str]] = []
    for n in report.sizes:
        ref = means.get((n, reference, task))
        opt = means.get((n, optimized, task))
        row = [str(n), _fmt_seconds(ref), _fmt_seconds(opt),
               f"{ref / opt:.2f}x" if ref is not None and opt is not None else "-"]
        row += [_fmt_seconds(means.get((n, v, task))) for v in others]
        rows.append(row)
    return _render(header, rows)


def reference_table() -> str:
    rows = [[str(n), f"{full:.6f}", f"{ident:.6f}", f"{full / ident:.2f}x"]
            for n, full, ident in PUBLISHED_SINGLE_COMPONENT]
    return _render(["Size", "full (published)", "identity (published)", "Speedup"], rows)


def _fmt_seconds(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.6f}"


def _render(header: List[str], rows: List[List[str]]) -> str:
    widths = [max(len(cell) for cell in column) for column in zip(header, *rows)]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(header, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    return "\n".join(lines)


def format_plot_data(report: BenchReport, task: str) -> str:
    """Rows grouped by variant, sizes ascending within a variant."""
    means, stddevs = report.means(), report.stddevs()
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(PLOT_HEADER)
    for variant in report.variants:
        for n in report.sizes:
            key = (n, variant, task)
            if key in means:
                writer.writerow([n, variant, repr(means[key]), repr(stddevs[key])])
    return buffer.getvalue()


def emit_plot_data(report: BenchReport, path: PathLike) -> List[Path]:
    """
    One plot CSV per task in the report.

    A report with a single task is written to ``path`` itself when it ends in
    .csv; otherwise ``path`` is a directory receiving ``plot_<task>.csv``.
    """
    if not report.records:
        raise BenchIoError("Cannot emit plot data for an empty report")
    path = Path(path)
    tasks = report.tasks
    if len(tasks) == 1 and path.suffix == ".csv":
        return [_write_text(path, format_plot_data(report, tasks[0]))]
    return [_write_text(path / f"plot_{task}.csv", format_plot_data(report, task)) for task in tasks]


def read_plot_data(path: PathLike) -> Dict[Tuple[int, str], Tuple[float, float]]:
    try:
        with open(path, newline="", encoding="utf-8") as f:
            return {(int(row["n"]), row["variant"]): (float(row["mean_seconds"]), float(row["stddev_seconds"]))
                    for row in csv.DictReader(f)}
    except OSError as e:
        raise BenchIoError(f"Could not read {path}: {e}", chained_exception=e) from e
