from eigenid.core.matrix import SymmetricMatrix, SymmetryPolicy, build, minor
from eigenid.core.io import MatrixFormat, load, store, parse_dense_csv, parse_matrix_market
from eigenid.core.source import FileSource, MatrixSource, RandomSource, generate, random_symmetric

__all__ = [
    "SymmetricMatrix",
    "SymmetryPolicy",
    "build",
    "minor",
    "MatrixFormat",
    "load",
    "store",
    "parse_dense_csv",
    "parse_matrix_market",
    "FileSource",
    "MatrixSource",
    "RandomSource",
    "generate",
    "random_symmetric",
]
