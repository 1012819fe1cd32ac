"""Square matrices of exact rationals, stored as numpy object arrays."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import Scalar, format_rational, rational

QMatrix = np.ndarray


def qmatrix(rows: Sequence[Sequence[Scalar]]) -> QMatrix:
    """Build a matrix from nested rows of ints, rationals or ``"num/den"`` strings."""
    data = [[rational(v) for v in row] for row in rows]
    if not data or any(len(row) != len(data[0]) for row in data):
        raise ValueError(f"Ragged or empty matrix rows: {rows!r}")
    result = np.empty((len(data), len(data[0])), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            result[i, j] = v
    return result


def qzeros(d: int) -> QMatrix:
    return qmatrix([[0] * d for _ in range(d)])


def qeye(d: int) -> QMatrix:
    return qmatrix([[1 if i == j else 0 for j in range(d)] for i in range(d)])


def qscale(m: QMatrix, c: Scalar) -> QMatrix:
    c = rational(c)
    return qmatrix([[c * v for v in row] for row in m])


def is_zero_matrix(m: QMatrix) -> bool:
    return all(v == 0 for v in m.flat)


def matrices_equal(a: QMatrix, b: QMatrix) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def symmetric_part(m: QMatrix) -> QMatrix:
    return qscale(m + m.T, rational("1/2"))


def antisymmetric_part(m: QMatrix) -> QMatrix:
    return qscale(m - m.T, rational("1/2"))


def format_matrix(m: QMatrix) -> str:
    """Row-major ``[[a, b], [c, d]]`` with exact entries."""
    return "[" + ", ".join("[" + ", ".join(format_rational(v) for v in row) + "]" for row in m) + "]"


def matrix_rows(m: QMatrix) -> list:
    return [[rational(v) for v in row] for row in m]
