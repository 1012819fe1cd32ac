"""Matrix-valued power series in two parameters s and t, truncated in total degree."""

from __future__ import annotations

from typing import Mapping

from .core import Scalar, TruncationContext
from .qmatrix import QMatrix, format_matrix, is_zero_matrix, matrices_equal, qeye, qscale, qzeros
from .series import CoefficientSeries


class BivariateMatrixSeries(CoefficientSeries):
    """
    f = sum M_{i,j} s^i t^j over d×d rational matrices with i + j ≤ N.

    The filtration is by total degree, so A_1 = s·A + t·A. The bidegree of
    every coefficient is kept, which is what the s/t inclusion checks of the
    uniformization read.
    """

    dim: int

    def __init__(self, coeffs: Mapping[tuple, QMatrix], dim: int, ctx: TruncationContext):
        self.dim = dim
        self.ctx = ctx
        for (i, j), m in coeffs.items():
            if i < 0 or j < 0:
                raise ValueError(f"Negative bidegree ({i}, {j}) in a power series")
            if m.shape != (dim, dim):
                raise ValueError(f"Coefficient of s^{i} t^{j} has shape {m.shape}, expected {(dim, dim)}")
        self._store(coeffs)

    @staticmethod
    def key_degree(key: tuple) -> int:
        return key[0] + key[1]

    @staticmethod
    def key_sum(a: tuple, b: tuple) -> tuple:
        return a[0] + b[0], a[1] + b[1]

    def _like(self, coeffs: Mapping[tuple, QMatrix]) -> BivariateMatrixSeries:
        return BivariateMatrixSeries(coeffs, self.dim, self.ctx)

    def _zero_coefficient(self) -> QMatrix:
        return qzeros(self.dim)

    def _coefficient_vanishes(self, m: QMatrix) -> bool:
        return is_zero_matrix(m)

    def _coefficients_equal(self, a: QMatrix, b: QMatrix) -> bool:
        return matrices_equal(a, b)

    def _scale_coefficient(self, m: QMatrix, c: Scalar) -> QMatrix:
        return qscale(m, c)

    def _multiply_coefficients(self, a: QMatrix, b: QMatrix) -> QMatrix:
        return a @ b

    def unit(self) -> BivariateMatrixSeries:
        return self._like({(0, 0): qeye(self.dim)})

    def compatible(self, other) -> bool:
        return isinstance(other, BivariateMatrixSeries) and other.dim == self.dim and other.ctx == self.ctx

    def describe(self) -> str:
        return f"BivariateMatrixSeries(dim={self.dim}, order={self.ctx.order})"

    def coefficient(self, i: int, j: int) -> QMatrix:
        return self.coefficient_at((i, j))

    def s_free_part(self) -> BivariateMatrixSeries:
        """Coefficients of s^0, i.e. the restriction s = 0."""
        return self._like({(i, j): m for (i, j), m in self.coeffs.items() if i == 0})

    def t_free_part(self) -> BivariateMatrixSeries:
        """Coefficients of t^0, i.e. the restriction t = 0."""
        return self._like({(i, j): m for (i, j), m in self.coeffs.items() if j == 0})

    def __repr__(self) -> str:
        return f"BivariateMatrixSeries({self}, order={self.ctx.order})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, j in sorted(self.coeffs, key=lambda k: (k[0] + k[1], k)):
            power = "".join(p for p in (_power("s", i), _power("t", j)) if p)
            parts.append(format_matrix(self.coeffs[(i, j)]) + power)
        return " + ".join(parts)


def _power(name: str, k: int) -> str:
    if k == 0:
        return ""
    return f"*{name}" if k == 1 else f"*{name}^{k}"
