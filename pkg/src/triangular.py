"""Lower triangular matrices over a commutative base algebra, filtered by sub-diagonal band."""

from __future__ import annotations

from typing import Callable, Mapping

from .core import INFINITY, Degree, FilteredElement, Scalar, TruncationContext


class TriangularMatrix(FilteredElement):
    """
    An n×n lower triangular matrix with entries in a commutative base algebra.

    Entries are keyed by 0-based (row, column) with row ≥ column. The
    filtration degree is the lowest band i - j carrying a non-zero entry, so
    strictly lower matrices form A_1, which is nilpotent of order n; hence the
    truncation order is n - 1. The unipotent matrices are 1 + A_1.
    """

    n: int
    entries: dict
    # Zero of the base algebra; fixes its type and truncation parameters
    base_zero: FilteredElement
    ctx: TruncationContext

    def __init__(self, entries: Mapping[tuple, FilteredElement], n: int, base_zero: FilteredElement):
        if n < 2:
            raise ValueError(f"Triangular matrices need n ≥ 2, got {n}")
        self.n = n
        self.base_zero = base_zero
        self.ctx = TruncationContext(n - 1)
        self.entries = {}
        for (i, j), value in entries.items():
            if not (0 <= j <= i < n):
                raise ValueError(f"Entry ({i}, {j}) is not lower triangular in dimension {n}")
            base_zero.check_compatible(value)
            if not value.vanishes():
                self.entries[(i, j)] = value

    def _like(self, entries: Mapping[tuple, FilteredElement]) -> TriangularMatrix:
        return TriangularMatrix(entries, self.n, self.base_zero)

    def entry(self, i: int, j: int) -> FilteredElement:
        return self.entries.get((i, j), self.base_zero)

    def filtration_degree(self) -> Degree:
        if not self.entries:
            return INFINITY
        return min(i - j for i, j in self.entries)

    def unit(self) -> TriangularMatrix:
        one = self.base_zero.unit()
        return self._like({(i, i): one for i in range(self.n)})

    def zero(self) -> TriangularMatrix:
        return self._like({})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.values())

    def vanishes(self) -> bool:
        return not self.entries

    def compatible(self, other) -> bool:
        return (isinstance(other, TriangularMatrix) and other.n == self.n
                and self.base_zero.compatible(other.base_zero))

    def describe(self) -> str:
        return f"TriangularMatrix(n={self.n}, base={self.base_zero.describe()})"

    def scale(self, c: Scalar) -> TriangularMatrix:
        return self._like({k: v.scale(c) for k, v in self.entries.items()})

    def _add(self, other: TriangularMatrix) -> TriangularMatrix:
        result = dict(self.entries)
        for k, v in other.entries.items():
            result[k] = result[k] + v if k in result else v
        return self._like(result)

    def _mul(self, other: TriangularMatrix) -> TriangularMatrix:
        result: dict = {}
        for (i, j), a in self.entries.items():
            for k in range(j + 1):
                b = other.entries.get((j, k))
                if b is None:
                    continue
                product = a * b
                result[(i, k)] = result[(i, k)] + product if (i, k) in result else product
        return self._like(result)

    def degree_part(self, k: int) -> TriangularMatrix:
        return self._like({(i, j): v for (i, j), v in self.entries.items() if i - j == k})

    def map_entries(self, fn: Callable[[FilteredElement], FilteredElement]) -> TriangularMatrix:
        return self._like({k: fn(v) for k, v in self.entries.items()})

    def __eq__(self, other: object) -> bool:
        if not (isinstance(other, TriangularMatrix) and self.compatible(other)):
            return False
        return all(self.entry(*k) == other.entry(*k) for k in self.entries.keys() | other.entries.keys())

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TriangularMatrix(n={self.n}, {self})"

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return "{" + ", ".join(f"({i},{j}): {self.entries[(i, j)]}" for i, j in sorted(self.entries)) + "}"


def matrix_unit(i: int, j: int, n: int, base_zero: FilteredElement,
                value: FilteredElement = None) -> TriangularMatrix:
    """The matrix with ``value`` (default 1) at 0-based position (i, j)."""
    return TriangularMatrix({(i, j): base_zero.unit() if value is None else value}, n, base_zero)
