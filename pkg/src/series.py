"""Truncated power series stored as a map from exponents to coefficients."""

from __future__ import annotations

from abc import abstractmethod
from typing import Any, Callable, Hashable, Mapping

from .core import INFINITY, Degree, FilteredElement, Scalar, TruncationContext


class CoefficientSeries(FilteredElement):
    """
    sum c_k X^k over exponents k of total degree at most N.

    Subclasses pick the exponents (integers by default, pairs for two
    parameters) and the coefficient ring through the ``_coefficient_*``
    hooks; the ring operations, the filtration by total degree and equality
    live here. A coefficient that vanishes is not stored.
    """

    coeffs: dict
    ctx: TruncationContext

    def _store(self, coeffs: Mapping[Hashable, Any]) -> None:
        self.coeffs = {k: c for k, c in coeffs.items()
                       if self.key_degree(k) <= self.ctx.order and not self._coefficient_vanishes(c)}

    @abstractmethod
    def _like(self, coeffs: Mapping[Hashable, Any]) -> CoefficientSeries:
        raise NotImplementedError

    @abstractmethod
    def _zero_coefficient(self) -> Any:
        raise NotImplementedError

    @abstractmethod
    def _coefficient_vanishes(self, c: Any) -> bool:
        raise NotImplementedError

    def _coefficient_is_zero(self, c: Any) -> bool:
        return self._coefficient_vanishes(c)

    @abstractmethod
    def _coefficients_equal(self, a: Any, b: Any) -> bool:
        raise NotImplementedError

    @abstractmethod
    def _scale_coefficient(self, a: Any, c: Scalar) -> Any:
        raise NotImplementedError

    @abstractmethod
    def _multiply_coefficients(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    @staticmethod
    def key_degree(key: Hashable) -> int:
        return key

    @staticmethod
    def key_sum(a: Hashable, b: Hashable) -> Hashable:
        return a + b

    def filtration_degree(self) -> Degree:
        if not self.coeffs:
            return INFINITY
        return min(self.key_degree(k) for k in self.coeffs)

    def zero(self) -> CoefficientSeries:
        return self._like({})

    def is_zero(self) -> bool:
        return all(self._coefficient_is_zero(c) for c in self.coeffs.values())

    def vanishes(self) -> bool:
        return not self.coeffs

    def scale(self, c: Scalar) -> CoefficientSeries:
        return self._like({k: self._scale_coefficient(v, c) for k, v in self.coeffs.items()})

    def _add(self, other: CoefficientSeries) -> CoefficientSeries:
        result = dict(self.coeffs)
        for k, v in other.coeffs.items():
            result[k] = result[k] + v if k in result else v
        return self._like(result)

    def _mul(self, other: CoefficientSeries) -> CoefficientSeries:
        order = self.ctx.order
        result: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                key = self.key_sum(i, j)
                if self.key_degree(key) > order:
                    continue
                product = self._multiply_coefficients(a, b)
                result[key] = result[key] + product if key in result else product
        return self._like(result)

    def coefficient_at(self, key: Hashable) -> Any:
        return self.coeffs.get(key, self._zero_coefficient())

    def degree_part(self, k: int) -> CoefficientSeries:
        return self._like({key: v for key, v in self.coeffs.items() if self.key_degree(key) == k})

    def map_coefficients(self, fn: Callable[[Any], Any]) -> CoefficientSeries:
        return self._like({k: fn(v) for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not (isinstance(other, CoefficientSeries) and self.compatible(other)):
            return False
        return all(self._coefficients_equal(self.coefficient_at(k), other.coefficient_at(k))
                   for k in self.coeffs.keys() | other.coeffs.keys())

    __hash__ = None  # type: ignore[assignment]
