from typing import Any, Optional

import logging

logger = logging.getLogger(__name__)

EXIT_COMPUTATION_ERROR = 1
EXIT_USAGE_ERROR = 2


class EigenIdError(Exception):
    """Base for every typed error the library raises."""
    exit_code: int = EXIT_COMPUTATION_ERROR
    chained_exception: Optional[Exception]

    def __init__(self, detail: str, chained_exception: Optional[Exception] = None):
        super().__init__(detail)
        self.detail = detail
        self.chained_exception = chained_exception

    def __str__(self) -> str:
        return f"{type(self).__name__}: {self.detail}"


# core

class AsymmetricInput(EigenIdError):
    def __init__(self, max_deviation: float):
        super().__init__(f"matrix is not symmetric (max |a_rc - a_cr| = {max_deviation:.3e})")
        self.max_deviation = max_deviation


class NonFiniteEntry(EigenIdError):
    pass


class IndexOutOfRange(EigenIdError):
    exit_code = EXIT_USAGE_ERROR


class MatrixTooSmall(EigenIdError):
    pass


class MatrixFileNotFound(EigenIdError):
    pass


class ParseError(EigenIdError):
    pass


class DimensionMismatch(EigenIdError):
    pass


# eigensolve

class ConvergenceFailure(EigenIdError):
    def __init__(self, detail: str, iterations: int):
        super().__init__(detail)
        self.iterations = iterations


# identity

class DegenerateEigenvalue(EigenIdError):
    def __init__(self, i: int, gap: float, tolerance: float):
        super().__init__(
            f"eigenvalue {i} is degenerate: gap {gap:.3e} <= tolerance {tolerance:.3e}"
        )
        self.i = i
        self.gap = gap
        self.tolerance = tolerance


class NonFiniteIntermediate(EigenIdError):
    pass


class InternalInconsistency(EigenIdError):
    pass


class SignRecoveryFailure(EigenIdError):
    def __init__(self, residual: float, tolerance: float):
        super().__init__(f"sign recovery residual {residual:.3e} exceeds {tolerance:.3e}")
        self.residual = residual
        self.tolerance = tolerance


# bench / cli

class VariantDisagreement(EigenIdError):
    def __init__(self, detail: str, report: Any = None):
        super().__init__(detail)
        self.report = report


class ConfigError(EigenIdError):
    exit_code = EXIT_USAGE_ERROR


class MissingReference(EigenIdError):
    pass


class BenchIoError(EigenIdError):
    pass


class OracleCapExceeded(EigenIdError):
    exit_code = EXIT_USAGE_ERROR
