from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from eigenid.config import settings
from eigenid.exceptions import ConfigError, InternalInconsistency

Evaluation = Literal["paired-batched", "log-domain"]
Method = Literal["baseline", "batched", "batched-parallel", "log-domain"]


class IdentityConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    batch_size: int = Field(default_factory=lambda: settings.EIGENID_BATCH_SIZE, ge=1)
    workers: int = Field(default_factory=lambda: settings.default_workers, ge=1)
    degeneracy_tol: float = Field(default_factory=lambda: settings.EIGENID_DEGENERACY_TOL, ge=0.0)
    evaluation: Evaluation = "paired-batched"
    backend: str = Field(default_factory=lambda: settings.EIGENID_BACKEND)

    @classmethod
    def create(cls, **kwargs) -> "IdentityConfig":
        """Build from loose keyword values; None means 'use the default'."""
        try:
            return cls(**{k: v for k, v in kwargs.items() if v is not None})
        except ValidationError as e:
            raise ConfigError(f"Invalid identity configuration: {e}", chained_exception=e) from e


class FactorPairing(BaseModel):
    """
    Factors of the identity for one (i, j):
    numerator[k] = lambda_i(A) - lambda_k(M_j), denominator = lambda_i(A) - lambda_k(A) for k != i.
    The orders sort each list ascending; the k-th entries of the sorted lists are paired.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    numerator: np.ndarray
    denominator: np.ndarray
    numerator_order: np.ndarray
    denominator_order: np.ndarray
    i: int = 0
    j: int = 0
    spectral_range: float = 1.0

    @model_validator(mode="after")
    def _check_pairing(self) -> "FactorPairing":
        m = self.numerator.shape[0]
        if self.denominator.shape[0] != m:
            raise InternalInconsistency(
                f"factor lists differ in length: {m} numerator vs {self.denominator.shape[0]} denominator"
            )
        for order in (self.numerator_order, self.denominator_order):
            if order.shape[0] != m or not np.array_equal(np.sort(order), np.arange(m)):
                raise InternalInconsistency("factor pairing is not a bijection")
        return self

    @classmethod
    def from_factors(cls, numerator, denominator, i: int = 0, j: int = 0,
                     spectral_range: Optional[float] = None) -> "FactorPairing":
        num = np.asarray(numerator, dtype=np.float64)
        den = np.asarray(denominator, dtype=np.float64)
        if spectral_range is None:
            spectral_range = float(np.max(np.abs(den), initial=0.0)) or 1.0
        return cls(
            numerator=num,
            denominator=den,
            numerator_order=np.argsort(num, kind="stable"),
            denominator_order=np.argsort(den, kind="stable"),
            i=i,
            j=j,
            spectral_range=spectral_range,
        )

    def __len__(self) -> int:
        return self.numerator.shape[0]

    def paired(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.numerator[self.numerator_order], self.denominator[self.denominator_order]

    __hash__ = None


class BatchPlan(BaseModel):
    """Contiguous slices of the paired factors; the last batch may be short."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    batches: List[Tuple[np.ndarray, np.ndarray]]
    batch_size: int
    n_batch: int

    __hash__ = None


class MagnitudeResult(BaseModel):
    """|v_{i,j}|^2 clamped to [0, 1]; ``raw`` keeps the unclamped value."""
    model_config = ConfigDict(frozen=True)

    value: float
    raw: float
    i: int
    j: int
    method: Method
    condition: float
    fallback: bool = False

    @classmethod
    def from_raw(cls, raw: float, i: int, j: int, method: Method, condition: float,
                 fallback: bool = False) -> "MagnitudeResult":
        return cls(
            value=min(1.0, max(0.0, float(raw))),
            raw=float(raw),
            i=i,
            j=j,
            method=method,
            condition=condition,
            fallback=fallback,
        )
