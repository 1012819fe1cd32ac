"""Power series A[[t]] in a dummy parameter t over a coefficient algebra A."""

from __future__ import annotations

from typing import Mapping

from .core import FilteredElement, Scalar, TruncationContext
from .series import CoefficientSeries


class AdjoinedSeries(CoefficientSeries):
    """
    sum_{n ≤ N} a_n t^n with coefficients a_n in a fixed algebra A.

    Filtered by the power of t alone, so the series is complete even when A
    carries no filtration of its own. ``base_zero`` is the zero of A and pins
    its type and truncation parameters; a Rota–Baxter map on A lifts
    coefficientwise.
    """

    base_zero: FilteredElement

    def __init__(self, coeffs: Mapping[int, FilteredElement], base_zero: FilteredElement,
                 ctx: TruncationContext):
        self.base_zero = base_zero
        self.ctx = ctx
        for n, value in coeffs.items():
            if n < 0:
                raise ValueError(f"Negative power t^{n} in a power series")
            base_zero.check_compatible(value)
        self._store(coeffs)

    @classmethod
    def constant(cls, value: FilteredElement, ctx: TruncationContext) -> AdjoinedSeries:
        return cls({0: value}, value.zero(), ctx)

    @classmethod
    def linear(cls, value: FilteredElement, ctx: TruncationContext) -> AdjoinedSeries:
        """The series value·t."""
        return cls({1: value}, value.zero(), ctx)

    def _like(self, coeffs: Mapping[int, FilteredElement]) -> AdjoinedSeries:
        return AdjoinedSeries(coeffs, self.base_zero, self.ctx)

    def _zero_coefficient(self) -> FilteredElement:
        return self.base_zero

    def _coefficient_vanishes(self, value: FilteredElement) -> bool:
        return value.vanishes()

    def _coefficient_is_zero(self, value: FilteredElement) -> bool:
        return value.is_zero()

    def _coefficients_equal(self, a: FilteredElement, b: FilteredElement) -> bool:
        return a == b

    def _scale_coefficient(self, value: FilteredElement, c: Scalar) -> FilteredElement:
        return value.scale(c)

    def _multiply_coefficients(self, a: FilteredElement, b: FilteredElement) -> FilteredElement:
        return a * b

    def unit(self) -> AdjoinedSeries:
        return self._like({0: self.base_zero.unit()})

    def compatible(self, other) -> bool:
        return (isinstance(other, AdjoinedSeries) and other.ctx == self.ctx
                and self.base_zero.compatible(other.base_zero))

    def describe(self) -> str:
        return f"AdjoinedSeries(order={self.ctx.order}, base={self.base_zero.describe()})"

    def coefficient(self, n: int) -> FilteredElement:
        return self.coefficient_at(n)

    def __repr__(self) -> str:
        return f"AdjoinedSeries({self}, order={self.ctx.order})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n in sorted(self.coeffs):
            power = "" if n == 0 else ("*t" if n == 1 else f"*t^{n}")
            parts.append(f"({self.coeffs[n]}){power}")
        return " + ".join(parts)
