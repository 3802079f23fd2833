from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from eigenid.exceptions import InternalInconsistency


class Spectrum(BaseModel):
    """Eigenvalues of a matrix or minor, always sorted ascending."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray

    @field_validator("values")
    @classmethod
    def _check_values(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 1:
            raise InternalInconsistency(f"spectrum must be one-dimensional, got shape {value.shape}")
        if not np.all(np.isfinite(value)):
            raise InternalInconsistency("spectrum contains non-finite eigenvalues")
        if value.size > 1 and np.any(np.diff(value) < 0.0):
            raise InternalInconsistency("spectrum is not sorted ascending")
        value.setflags(write=False)
        return value

    @classmethod
    def from_unsorted(cls, values: np.ndarray) -> "Spectrum":
        return cls(values=np.sort(np.asarray(values, dtype=np.float64)))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def spectral_range(self) -> float:
        return float(self.values[-1] - self.values[0])

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, k):
        return self.values[k]

    __hash__ = None


class TridiagonalForm(BaseModel):
    """Symmetric tridiagonal T = Q^T A Q; ``basis`` is Q when it was accumulated."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    diag: np.ndarray
    offdiag: np.ndarray
    basis: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    __hash__ = None


class EigenDecomposition(BaseModel):
    """Sorted spectrum plus orthonormal eigenvectors; column i belongs to values[i]."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    spectrum: Spectrum
    vectors: np.ndarray
    sweeps: int = 0

    def squared_magnitudes(self) -> np.ndarray:
        """Entry [j][i] = |v_{i,j}|^2."""
        return self.vectors ** 2

    __hash__ = None
