"""Exact rationals, the complete filtered algebra contract and the exp/log/BCH series."""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, TypeVar, Union

from sympy.polys.domains import QQ

from .errors import DegreeError, NonConvergence, ParseError, TruncationMismatch

logger = logging.getLogger(__name__)

# The exact rational type of sympy's ground domain (gmpy2 mpq when available).
Rational = QQ.dtype
Scalar = Union[int, Rational]
Degree = Union[int, float]

# Filtration degree of zero.
INFINITY: float = math.inf

E = TypeVar("E", bound="FilteredElement")


def is_scalar(value: Any) -> bool:
    """Whether the value is an exact scalar (int or rational, never bool)."""
    return isinstance(value, (int, Rational)) and not isinstance(value, bool)


def rational(value: Union[Scalar, str]) -> Rational:
    """Coerce an int, a rational or a ``"num/den"`` string to a reduced rational."""
    if isinstance(value, str):
        num, sep, den = value.strip().partition("/")
        try:
            return QQ(int(num), int(den) if sep else 1)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"Invalid rational: {value!r}") from exc
    if isinstance(value, bool):
        raise TypeError(f"Not an exact rational: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Rational):
        return value
    raise TypeError(f"Not an exact rational: {value!r}")


def format_rational(value: Scalar) -> str:
    """Render a rational as ``num/den``, or as an integer when den is 1."""
    q = rational(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def encode_rational(value: Scalar) -> str:
    """The JSON encoding of a rational, always ``"num/den"``."""
    q = rational(value)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class TruncationContext:
    """Components of filtration degree above ``order`` are dropped."""

    order: int

    def __post_init__(self):
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"Truncation order must be a positive integer, got {self.order!r}")


class FilteredElement(ABC):
    """
    An element of a complete filtered algebra A = A_0 ⊇ A_1 ⊇ A_2 ⊇ ...,
    stored modulo A_{N+1} where N is the order of its truncation context.

    Concrete algebras implement the ring operations, the unit and the
    filtration degree; everything else in the package only talks to this
    interface. Values are immutable.
    """

    ctx: TruncationContext

    @abstractmethod
    def filtration_degree(self) -> Degree:
        """Largest n with self in A_n; ``INFINITY`` for zero."""
        raise NotImplementedError

    @abstractmethod
    def unit(self: E) -> E:
        raise NotImplementedError

    @abstractmethod
    def zero(self: E) -> E:
        raise NotImplementedError

    @abstractmethod
    def is_zero(self) -> bool:
        """Zero modulo A_{N+1}."""
        raise NotImplementedError

    def vanishes(self) -> bool:
        """
        Zero including anything carried past the truncation order; containers
        only drop entries that vanish.
        """
        return self.is_zero()

    def series_order(self) -> int:
        """Highest filtration degree a power series in this element must reach."""
        return self.ctx.order

    @abstractmethod
    def compatible(self, other: Any) -> bool:
        """Same algebra and same truncation parameters."""
        raise NotImplementedError

    @abstractmethod
    def scale(self: E, c: Scalar) -> E:
        raise NotImplementedError

    @abstractmethod
    def _add(self: E, other: E) -> E:
        raise NotImplementedError

    @abstractmethod
    def _mul(self: E, other: E) -> E:
        raise NotImplementedError

    def degree_part(self: E, k: int) -> E:
        """The homogeneous component of degree k, for graded algebras."""
        raise NotImplementedError(f"{type(self).__name__} has no homogeneous components")

    def check_compatible(self, other: Any) -> None:
        if not self.compatible(other):
            raise TruncationMismatch(f"Cannot combine {self.describe()} with "
                                     f"{other.describe() if isinstance(other, FilteredElement) else other!r}")

    def describe(self) -> str:
        return f"{type(self).__name__}(order={self.ctx.order})"

    def __add__(self: E, other: E) -> E:
        self.check_compatible(other)
        return self._add(other)

    def __neg__(self: E) -> E:
        return self.scale(-1)

    def __sub__(self: E, other: E) -> E:
        self.check_compatible(other)
        return self._add(other.scale(-1))

    def __mul__(self: E, other: Union[E, Scalar]) -> E:
        if is_scalar(other):
            return self.scale(other)
        self.check_compatible(other)
        return self._mul(other)

    def __rmul__(self: E, other: Scalar) -> E:
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self: E, n: int) -> E:
        if n < 0:
            raise ValueError(f"Negative power {n} of a filtered element; use inverse()")
        result = self.unit()
        for _ in range(n):
            result = result._mul(self)
        return result


def bracket(x: E, y: E) -> E:
    """The commutator [x, y] = xy - yx."""
    return x * y - y * x


def require_a1(a: FilteredElement, what: str) -> None:
    degree = a.filtration_degree()
    if degree < 1:
        raise DegreeError(f"{what} needs an element of A_1, got filtration degree {degree}")


def _powers_needed(a: FilteredElement) -> int:
    # a^n lies in A_{n·d}, so powers past N/d vanish.
    degree = a.filtration_degree()
    if degree == INFINITY:
        return 0
    return a.series_order() // int(degree)


def exp(a: E) -> E:
    """Truncated exponential, Horner form 1 + a(1 + a/2(1 + a/3(...)))."""
    require_a1(a, "exp")
    one = a.unit()
    result = one
    for n in range(_powers_needed(a), 0, -1):
        result = one + (a * result).scale(QQ(1, n))
    return result


def log(u: E) -> E:
    """Truncated logarithm of u in 1 + A_1, Horner form y(1 - y(1/2 - y(1/3 - ...)))."""
    one = u.unit()
    y = u - one
    require_a1(y, "log")
    terms = _powers_needed(y)
    if terms == 0:
        return y
    s = one.scale(QQ(1, terms))
    for n in range(terms - 1, 0, -1):
        s = one.scale(QQ(1, n)) - y * s
    return y * s


def inverse(u: E) -> E:
    """Inverse of u in 1 + A_1 as the geometric series in (1 - u)."""
    one = u.unit()
    y = u - one
    require_a1(y, "inverse")
    s = one
    for _ in range(_powers_needed(y)):
        s = one - y * s
    return s


def c_product(a: E, b: E) -> E:
    """C(a, b) = log(exp(a) exp(b))."""
    a.check_compatible(b)
    return log(exp(a) * exp(b))


def bch(a: E, b: E) -> E:
    """BCH(a, b) = C(a, b) - a - b."""
    return c_product(a, b) - a - b


def homogeneous_components(x: E) -> dict[int, E]:
    """Non-zero homogeneous components of x, keyed by degree."""
    result = {}
    for k in range(0, x.ctx.order + 1):
        part = x.degree_part(k)
        if not part.is_zero():
            result[k] = part
    return result


@lru_cache(maxsize=None)
def _bernoulli_numbers(n: int) -> tuple:
    # B_m = -1/(m+1) * sum_{k<m} binom(m+1, k) B_k, so B_1 = -1/2.
    numbers = [QQ(1)]
    for m in range(1, n + 1):
        total = QQ(0)
        for k in range(m):
            total += numbers[k] * math.comb(m + 1, k)
        numbers.append(-total / (m + 1))
    return tuple(numbers)


def bernoulli(n: int) -> Rational:
    """
    b_n = B_n / n!, the coefficients of y/(e^y - 1) = sum b_n y^n.

    These are the coefficients of the ad-series of the weight zero recursion:
    b_0 = 1, b_1 = -1/2, b_2 = 1/12, b_3 = 0, b_4 = -1/720.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"Bernoulli index must be a non-negative integer, got {n!r}")
    return _bernoulli_numbers(n)[n] / math.factorial(n)


def fixed_point(step: Callable[[E], E], start: E, steps: int, label: str = "fixed point") -> E:
    """
    Iterate ``step`` exactly ``steps`` times from ``start``.

    One extra application must leave the result unchanged; otherwise the
    contraction the caller relies on does not hold and NonConvergence is
    raised.
    """
    current = start
    for i in range(steps):
        current = step(current)
        logger.debug("%s: iteration %d of %d", label, i + 1, steps)
    if step(current) != current:
        raise NonConvergence(f"{label}: not stationary after {steps} iterations")
    return current
