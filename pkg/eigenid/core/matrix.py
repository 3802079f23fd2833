import logging
import math
from typing import Literal, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from eigenid.exceptions import (
    AsymmetricInput,
    DimensionMismatch,
    IndexOutOfRange,
    MatrixTooSmall,
    NonFiniteEntry,
)

logger = logging.getLogger(__name__)

SymmetryPolicy = Literal["strict", "symmetrize"]
ArrayLike = Union[np.ndarray, Sequence[Sequence[float]]]


class SymmetricMatrix(BaseModel):
    """Dense real symmetric n x n matrix, row-major, immutable after construction."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_validator("entries")
    @classmethod
    def _check_entries(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 2 or value.shape[0] != value.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {value.shape}")
        if value.shape[0] < 1:
            raise MatrixTooSmall("matrix must be at least 1x1")
        if not np.all(np.isfinite(value)):
            raise NonFiniteEntry("matrix contains NaN or infinite entries")
        deviation = float(np.max(np.abs(value - value.T)))
        if deviation > 0.0:
            raise AsymmetricInput(deviation)
        return value

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def scale_exponent(self) -> int:
        """Binary exponent e of the largest |a_ij|, so that max|a_ij| * 2**-e lies in [0.5, 1)"""
        return math.frexp(float(np.max(np.abs(self.entries))))[1]

    @property
    def frobenius_norm(self) -> float:
        unit, exponent = self.to_unit_scale()
        return float(np.ldexp(np.linalg.norm(unit), exponent))

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries))

    def to_array(self) -> np.ndarray:
        """Writable copy of the entries"""
        return np.array(self.entries, dtype=np.float64, copy=True)

    def to_unit_scale(self) -> Tuple[np.ndarray, int]:
        """
        Writable copy divided by 2**scale_exponent, and that exponent.

        Power-of-two scaling is exact, so solvers can work on entries of order
        one and multiply eigenvalues back without rounding.
        """
        exponent = self.scale_exponent
        return np.ascontiguousarray(np.ldexp(self.entries, -exponent)), exponent

    def scaled(self, factor: float) -> "SymmetricMatrix":
        return build(self.entries * factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.array_equal(self.entries, other.entries))

    __hash__ = None

    def __repr__(self) -> str:
        return f"SymmetricMatrix(n={self.n})"


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def build(entries: ArrayLike, policy: SymmetryPolicy = "strict") -> SymmetricMatrix:
    """
    Build a SymmetricMatrix from a square array of reals.

    :param entries: n x n finite reals.
    :param policy: ``strict`` rejects any asymmetry, ``symmetrize`` replaces A with (A + A^T) / 2.
    :return: the validated matrix; the input is never aliased.
    """
    try:
        array = np.array(entries, dtype=np.float64, copy=True)
    except (TypeError, ValueError) as e:
        raise DimensionMismatch(f"entries are not a rectangular numeric array: {e}", chained_exception=e) from e
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise NonFiniteEntry("matrix contains NaN or infinite entries")
    if policy == "symmetrize":
        array = (array + array.T) / 2.0
    elif policy != "strict":
        raise ValueError(f"Unknown symmetry policy: {policy}")
    return SymmetricMatrix(entries=_freeze(array))


def minor(A: SymmetricMatrix, j: int) -> SymmetricMatrix:
    """Principal minor M_j: A with row j and column j removed."""
    n = A.n
    if n < 2:
        raise MatrixTooSmall("a 1x1 matrix has no minor")
    if not 0 <= j < n:
        raise IndexOutOfRange(f"component index j={j} outside [0, {n})")
    keep = np.concatenate((np.arange(j), np.arange(j + 1, n)))
    sub = np.ascontiguousarray(A.entries[np.ix_(keep, keep)])
    # Deleting a row and the matching column keeps exact symmetry.
    return SymmetricMatrix.model_construct(entries=_freeze(sub))
