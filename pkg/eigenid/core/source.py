import logging
from pathlib import Path
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from eigenid.core.io import MatrixFormat, load
from eigenid.core.matrix import SymmetricMatrix, build

logger = logging.getLogger(__name__)

Distribution = Literal["gaussian", "uniform"]


class FileSource(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["file"] = "file"
    path: Path
    format: MatrixFormat = "dense-csv"


class RandomSource(BaseModel):
    """Seeded random matrix: an n x n draw, then (A + A^T) / 2."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["random"] = "random"
    seed: int = Field(ge=0, lt=2**64)
    distribution: Distribution = "gaussian"
    n: int = Field(ge=1)
    scale: float = 1.0


MatrixSource = Annotated[Union[FileSource, RandomSource], Field(discriminator="kind")]


def random_symmetric(seed: int, n: int, distribution: Distribution = "gaussian", scale: float = 1.0) -> SymmetricMatrix:
    rng = np.random.default_rng(seed)
    if distribution == "gaussian":
        draw = rng.standard_normal((n, n))
    else:
        draw = rng.uniform(-1.0, 1.0, size=(n, n))
    if scale != 1.0:
        draw = draw * scale
    return build(draw, policy="symmetrize")


def generate(source: Union[FileSource, RandomSource]) -> SymmetricMatrix:
    """Materialize a matrix from a file or from a seeded generator."""
    if isinstance(source, FileSource):
        return load(source.path, source.format)
    logger.debug(f"Generating {source.distribution} matrix n={source.n} seed={source.seed}")
    return random_symmetric(source.seed, source.n, source.distribution, source.scale)
