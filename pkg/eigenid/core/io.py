"""
Matrix file formats.

- dense-csv: one row per line, comma separated, no header.
- matrix-market-symmetric: ``%%MatrixMarket matrix coordinate real symmetric``,
  1-based indices, lower triangle stored.

Values are written with 17 significant digits so a float64 survives the round trip.
"""
import csv
import logging
from pathlib import Path
from typing import List, Literal, Union

import numpy as np

from eigenid.core.matrix import SymmetricMatrix, build
from eigenid.exceptions import DimensionMismatch, MatrixFileNotFound, ParseError

logger = logging.getLogger(__name__)

MatrixFormat = Literal["dense-csv", "matrix-market-symmetric"]
PathLike = Union[str, Path]

MM_HEADER = "%%MatrixMarket matrix coordinate real symmetric"
VALUE_FORMAT = "{:.17g}"


def _read_text(path: PathLike) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except FileNotFoundError as e:
        raise MatrixFileNotFound(f"Matrix file not found: {path}", chained_exception=e) from e


def _parse_float(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError as e:
        raise ParseError(f"{where}: not a number: {token!r}", chained_exception=e) from e


def parse_dense_csv(text: str, source: str = "<string>") -> SymmetricMatrix:
    rows: List[List[float]] = []
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        rows.append([_parse_float(cell.strip(), f"{source}:{lineno}") for cell in row])
    if not rows:
        raise ParseError(f"{source}: no matrix rows found")
    n = len(rows)
    for lineno, row in enumerate(rows, start=1):
        if len(row) != n:
            raise DimensionMismatch(f"{source}: row {lineno} has {len(row)} values, expected {n}")
    return build(rows)


def parse_matrix_market(text: str, source: str = "<string>") -> SymmetricMatrix:
    lines = text.splitlines()
    if not lines or lines[0].strip().lower() != MM_HEADER.lower():
        raise ParseError(f"{source}: expected header {MM_HEADER!r}")

    body = [(lineno, line.split()) for lineno, line in enumerate(lines[1:], start=2)
            if line.strip() and not line.lstrip().startswith("%")]
    if not body:
        raise ParseError(f"{source}: missing size line")

    size_lineno, size = body[0]
    if len(size) != 3:
        raise ParseError(f"{source}:{size_lineno}: size line must be 'rows cols nnz'")
    try:
        n_rows, n_cols, nnz = (int(tok) for tok in size)
    except ValueError as e:
        raise ParseError(f"{source}:{size_lineno}: bad size line", chained_exception=e) from e
    if n_rows != n_cols:
        raise DimensionMismatch(f"{source}: symmetric matrix must be square, got {n_rows}x{n_cols}")
    if len(body) - 1 != nnz:
        raise ParseError(f"{source}: header declares {nnz} entries, found {len(body) - 1}")

    entries = np.zeros((n_rows, n_rows), dtype=np.float64)
    for lineno, tokens in body[1:]:
        where = f"{source}:{lineno}"
        if len(tokens) != 3:
            raise ParseError(f"{where}: expected 'row col value'")
        try:
            r, c = int(tokens[0]) - 1, int(tokens[1]) - 1
        except ValueError as e:
            raise ParseError(f"{where}: bad index", chained_exception=e) from e
        if not (0 <= r < n_rows and 0 <= c < n_rows):
            raise ParseError(f"{where}: index ({r + 1}, {c + 1}) outside {n_rows}x{n_rows}")
        value = _parse_float(tokens[2], where)
        entries[r, c] = value
        entries[c, r] = value
    return build(entries)


def load(path: PathLike, format: MatrixFormat) -> SymmetricMatrix:
    text = _read_text(path)
    logger.debug(f"Parsing {format} matrix from {path}")
    if format == "dense-csv":
        return parse_dense_csv(text, str(path))
    if format == "matrix-market-symmetric":
        return parse_matrix_market(text, str(path))
    raise ParseError(f"Unknown matrix format: {format}")


def format_dense_csv(A: SymmetricMatrix) -> str:
    return "".join(",".join(VALUE_FORMAT.format(v) for v in row) + "\n" for row in A.entries)


def format_matrix_market(A: SymmetricMatrix) -> str:
    rows, cols = np.tril_indices(A.n)
    values = A.entries[rows, cols]
    stored = values != 0.0
    out = [MM_HEADER, f"{A.n} {A.n} {int(np.count_nonzero(stored))}"]
    for r, c, v in zip(rows[stored], cols[stored], values[stored]):
        out.append(f"{r + 1} {c + 1} {VALUE_FORMAT.format(v)}")
    return "\n".join(out) + "\n"


def store(A: SymmetricMatrix, path: PathLike, format: MatrixFormat) -> None:
    if format == "dense-csv":
        text = format_dense_csv(A)
    elif format == "matrix-market-symmetric":
        text = format_matrix_market(A)
    else:
        raise ParseError(f"Unknown matrix format: {format}")
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"Stored {A.n}x{A.n} matrix to {path} ({format})")
