from eigenid.bench.models import BenchConfig, BenchRecord, BenchReport
from eigenid.bench.report import (
    emit_plot_data,
    read_plot_data,
    read_records,
    reference_table,
    speedup_table,
    write_records,
)
from eigenid.bench.harness import expected_solves, run_benchmark

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "BenchReport",
    "emit_plot_data",
    "read_plot_data",
    "read_records",
    "reference_table",
    "speedup_table",
    "write_records",
    "expected_solves",
    "run_benchmark",
]
