"""Matrix-valued polynomial functions of one variable, truncated above a fixed degree."""

from __future__ import annotations

from typing import Mapping, Sequence

from .core import Scalar, TruncationContext, rational
from .errors import DegreeOverflow
from .qmatrix import QMatrix, format_matrix, is_zero_matrix, matrices_equal, qeye, qmatrix, qscale, qzeros
from .series import CoefficientSeries


class MatrixPolyFunction(CoefficientSeries):
    """
    f(x) = sum_k M_k x^k with d×d rational matrices M_k and k ≤ q.

    Filtered by the x-adic order, so A_1 consists of the functions vanishing
    at 0. The same type serves as the one-parameter matrix series in t; only
    the printed variable name differs.
    """

    dim: int
    variable: str

    def __init__(self, coeffs: Mapping[int, QMatrix], dim: int, ctx: TruncationContext,
                 variable: str = "x"):
        self.dim = dim
        self.ctx = ctx
        self.variable = variable
        for k, m in coeffs.items():
            if k < 0:
                raise ValueError(f"Negative power {k} in a polynomial function")
            if m.shape != (dim, dim):
                raise ValueError(f"Coefficient of {variable}^{k} has shape {m.shape}, expected {(dim, dim)}")
        self._store(coeffs)

    @classmethod
    def constant(cls, m: QMatrix, ctx: TruncationContext, variable: str = "x") -> MatrixPolyFunction:
        return cls({0: m}, m.shape[0], ctx, variable)

    @classmethod
    def from_rows(cls, coeff_rows: Mapping[int, Sequence[Sequence[Scalar]]], ctx: TruncationContext,
                  variable: str = "x") -> MatrixPolyFunction:
        coeffs = {k: qmatrix(rows) for k, rows in coeff_rows.items()}
        dim = len(next(iter(coeff_rows.values())))
        return cls(coeffs, dim, ctx, variable)

    def _like(self, coeffs: Mapping[int, QMatrix]) -> MatrixPolyFunction:
        return MatrixPolyFunction(coeffs, self.dim, self.ctx, self.variable)

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

    def unit(self) -> MatrixPolyFunction:
        return self._like({0: qeye(self.dim)})

    def compatible(self, other) -> bool:
        return (isinstance(other, MatrixPolyFunction) and other.dim == self.dim
                and other.ctx == self.ctx and other.variable == self.variable)

    def describe(self) -> str:
        return f"MatrixPolyFunction(dim={self.dim}, order={self.ctx.order}, variable={self.variable})"

    def coefficient(self, k: int) -> QMatrix:
        return self.coefficient_at(k)

    def truncated_to(self, order: int) -> MatrixPolyFunction:
        """The same function in the algebra truncated above x^order."""
        return MatrixPolyFunction(self.coeffs, self.dim, TruncationContext(order), self.variable)

    def constant_part(self) -> MatrixPolyFunction:
        return self._like({0: self.coefficient(0)})

    def __repr__(self) -> str:
        return f"MatrixPolyFunction({self}, order={self.ctx.order})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            power = "" if k == 0 else (f"*{self.variable}" if k == 1 else f"*{self.variable}^{k}")
            parts.append(format_matrix(self.coeffs[k]) + power)
        return " + ".join(parts)


def riemann_integral(f: MatrixPolyFunction, truncate: bool = False) -> MatrixPolyFunction:
    """
    The antiderivative vanishing at 0, a Rota–Baxter map of weight zero.

    Parameters:
        f -- the integrand.
        truncate -- drop the x^{q+1} term instead of raising. Inside the
            truncated algebra this is exact, since x^{q+1}ℚ[x] is mapped
            into itself by the integral.

    Raises:
        DegreeOverflow -- f has a non-zero x^q coefficient and truncate is False.
    """
    order = f.ctx.order
    if not truncate and order in f.coeffs:
        raise DegreeOverflow(f"Integral of a degree-{order} term exceeds the truncation order {order}")
    return f._like({k + 1: qscale(m, rational(1) / (k + 1)) for k, m in f.coeffs.items() if k < order})


def evaluate_at_zero(f):
    """
    The substitution x ↦ 0.

    On M_d(ℚ[x]) this keeps the constant matrix; on series in t with such
    coefficients it acts coefficientwise, which is an idempotent algebra
    morphism preserving the t-filtration.
    """
    if isinstance(f, MatrixPolyFunction):
        return f.constant_part()
    return f.map_coefficients(evaluate_at_zero)
