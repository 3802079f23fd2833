from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from eigenid.config import settings
from eigenid.core.source import Distribution
from eigenid.exceptions import ConfigError

Variant = Literal["baseline", "vectorized-batched", "batched-parallel", "log-domain", "oracle-full"]
Task = Literal["single-component", "single-vector", "all-vectors"]
OracleMethod = Literal["householder-ql", "jacobi"]

REFERENCE_VARIANT = "oracle-full"
DEFAULT_SIZES = [2, 100, 250, 500, 1000, 2000]
DEFAULT_VARIANTS: List[Variant] = ["vectorized-batched", "batched-parallel", "log-domain", "oracle-full"]

GroupKey = Tuple[int, str, str]


class BenchConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    sizes: List[int] = Field(default_factory=lambda: list(DEFAULT_SIZES), min_length=1)
    repetitions: int = Field(default=10, ge=1)
    variants: List[Variant] = Field(default_factory=lambda: list(DEFAULT_VARIANTS), min_length=1)
    task: Task = "single-component"
    seed: int = Field(default=0, ge=0, lt=2**64)
    distribution: Distribution = "gaussian"
    batch_size: int = Field(default_factory=lambda: settings.EIGENID_BATCH_SIZE, ge=1)
    workers: int = Field(default_factory=lambda: settings.default_workers, ge=1)
    oracle_method: OracleMethod = "householder-ql"
    warmup: bool = True
    agreement_tol: float = Field(default=1e-8, gt=0.0)
    output_path: Optional[Path] = None

    @field_validator("sizes")
    @classmethod
    def _check_sizes(cls, value: List[int]) -> List[int]:
        if any(n < 2 for n in value):
            raise ValueError("every matrix size must be >= 2")
        return value

    @field_validator("variants")
    @classmethod
    def _dedupe_variants(cls, value: List[Variant]) -> List[Variant]:
        return list(dict.fromkeys(value))

    @classmethod
    def create(cls, **kwargs) -> "BenchConfig":
        try:
            return cls(**{k: v for k, v in kwargs.items() if v is not None})
        except ValidationError as e:
            raise ConfigError(f"Invalid benchmark configuration: {e}", chained_exception=e) from e


class BenchRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    variant: str
    task: str
    run: int
    seconds: float = Field(gt=0.0)
    checksum: float


class BenchReport(BaseModel):
    records: List[BenchRecord] = []
    distribution: str = "gaussian"
    seed: int = 0
    invalid: List[str] = []
    skipped: List[str] = []

    def _grouped(self) -> Dict[GroupKey, List[float]]:
        groups: Dict[GroupKey, List[float]] = defaultdict(list)
        for record in self.records:
            groups[(record.n, record.variant, record.task)].append(record.seconds)
        return groups

    def means(self) -> Dict[GroupKey, float]:
        return {key: float(np.mean(values)) for key, values in self._grouped().items()}

    def stddevs(self) -> Dict[GroupKey, float]:
        return {key: float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
                for key, values in self._grouped().items()}

    def speedups(self, reference: str = REFERENCE_VARIANT) -> Dict[GroupKey, float]:
        """Reference mean over variant mean, only where both ran."""
        means = self.means()
        out = {}
        for (n, variant, task), mean in means.items():
            ref = means.get((n, reference, task))
            if variant != reference and ref is not None:
                out[(n, variant, task)] = ref / mean
        return out

    @property
    def sizes(self) -> List[int]:
        return sorted({r.n for r in self.records})

    @property
    def variants(self) -> List[str]:
        return list(dict.fromkeys(r.variant for r in self.records))

    @property
    def tasks(self) -> List[str]:
        return list(dict.fromkeys(r.task for r in self.records))

    @property
    def valid(self) -> bool:
        return not self.invalid
