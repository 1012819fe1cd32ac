"""Truncated Laurent series in ε with an explicit pole cap."""

from __future__ import annotations

import re
from typing import Mapping, Optional

from .core import (INFINITY, Degree, FilteredElement, Rational, Scalar, TruncationContext,
                   format_rational, rational)
from .errors import DegreeOverflow, ParseError, PoleOverflow


class LaurentSeries(FilteredElement):
    """
    A Laurent series sum c_k ε^k read on the window [-pole_cap, ctx.order].

    Equality, printing and is_zero only look at exponents up to q = ctx.order,
    so products truncate above ε^q. Internally a series also keeps pole_cap
    guard exponents above q and remembers up to which exponent its
    coefficients are exact: multiplying by ε^{-k} moves exact guard terms
    into the window instead of losing them. Reading the window of a series
    that is exact only below ε^q raises DegreeOverflow. Poles deeper than
    the cap raise PoleOverflow.
    """

    coeffs: dict
    ctx: TruncationContext
    pole_cap: int
    # Coefficients are exact up to and including this exponent
    precision: Degree

    def __init__(self, coeffs: Mapping[int, Scalar], ctx: TruncationContext,
                 pole_cap: Optional[int] = None, precision: Degree = INFINITY):
        self.ctx = ctx
        self.pole_cap = ctx.order if pole_cap is None else pole_cap
        if self.pole_cap < 0:
            raise ValueError(f"Pole cap must be non-negative, got {self.pole_cap}")
        clean = {k: rational(c) for k, c in coeffs.items() if c != 0}
        if clean and min(clean) < -self.pole_cap:
            raise PoleOverflow(f"Pole of order {-min(clean)} exceeds the cap {self.pole_cap}")
        if any(k > self.guard_order for k in clean):
            precision = min(precision, self.guard_order)
        self.precision = precision
        self.coeffs = {k: c for k, c in clean.items() if k <= precision}

    @classmethod
    def constant(cls, c: Scalar, ctx: TruncationContext, pole_cap: Optional[int] = None) -> LaurentSeries:
        return cls({0: c}, ctx, pole_cap)

    @classmethod
    def monomial(cls, k: int, ctx: TruncationContext, pole_cap: Optional[int] = None,
                 c: Scalar = 1) -> LaurentSeries:
        return cls({k: c}, ctx, pole_cap)

    @property
    def guard_order(self) -> int:
        """The highest exponent stored: q plus one guard term per pole order."""
        return self.ctx.order + self.pole_cap

    def _like(self, coeffs: Mapping[int, Scalar], precision: Degree = INFINITY) -> LaurentSeries:
        return LaurentSeries(coeffs, self.ctx, self.pole_cap, precision)

    def window(self) -> dict:
        """The coefficients on [-p, q]."""
        if self.precision < self.ctx.order:
            raise DegreeOverflow(f"Series is exact only through ε^{self.precision}, "
                                 f"below the truncation order {self.ctx.order}")
        return {k: c for k, c in self.coeffs.items() if k <= self.ctx.order}

    def has_pole(self) -> bool:
        return any(k < 0 for k in self.coeffs)

    def pole_order(self) -> int:
        return max([0] + [-k for k in self.coeffs])

    def filtration_degree(self) -> Degree:
        if not self.coeffs:
            return self.precision + 1
        return min(self.coeffs)

    def series_order(self) -> int:
        return self.guard_order

    def unit(self) -> LaurentSeries:
        return self._like({0: 1})

    def zero(self) -> LaurentSeries:
        return self._like({})

    def is_zero(self) -> bool:
        return not self.window()

    def vanishes(self) -> bool:
        return not self.coeffs and self.precision == INFINITY

    def compatible(self, other) -> bool:
        return (isinstance(other, LaurentSeries) and other.ctx == self.ctx
                and other.pole_cap == self.pole_cap)

    def describe(self) -> str:
        return f"LaurentSeries(pole_cap={self.pole_cap}, order={self.ctx.order})"

    def scale(self, c: Scalar) -> LaurentSeries:
        c = rational(c)
        if c == 0:
            return self.zero()
        return self._like({k: c * v for k, v in self.coeffs.items()}, self.precision)

    def _add(self, other: LaurentSeries) -> LaurentSeries:
        result = dict(self.coeffs)
        for k, c in other.coeffs.items():
            result[k] = result.get(k, 0) + c
        return self._like(result, min(self.precision, other.precision))

    def _mul(self, other: LaurentSeries) -> LaurentSeries:
        # (A + O(ε^{a+1}))(B + O(ε^{b+1})) = AB + O(ε^{min(a + v(B), b + v(A)) + 1})
        precision = min(self.precision + other.filtration_degree(),
                        other.precision + self.filtration_degree())
        limit = min(precision, self.guard_order)
        result: dict = {}
        dropped = False
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j > limit:
                    dropped = True
                    continue
                result[i + j] = result.get(i + j, 0) + a * b
        if dropped:
            precision = min(precision, self.guard_order)
        return self._like(result, precision)

    def coefficient(self, k: int) -> Rational:
        if k > self.precision:
            raise DegreeOverflow(f"Coefficient of ε^{k} is unknown, the series is exact through ε^{self.precision}")
        return self.coeffs.get(k, rational(0))

    def pole_part(self) -> LaurentSeries:
        """The strict pole part (minimal subtraction); always exact."""
        if self.precision < -1:
            raise DegreeOverflow(f"Pole part is unknown, the series is exact through ε^{self.precision}")
        return self._like({k: c for k, c in self.coeffs.items() if k < 0})

    def regular_part(self) -> LaurentSeries:
        return self._like({k: c for k, c in self.coeffs.items() if k >= 0}, self.precision)

    def degree_part(self, k: int) -> LaurentSeries:
        return self._like({k: self.coefficient(k)})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LaurentSeries) and self.compatible(other)
                and self.window() == other.window())

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LaurentSeries({format_laurent(self)}, pole_cap={self.pole_cap}, order={self.ctx.order})"

    def __str__(self) -> str:
        return format_laurent(self)


def format_laurent(x: LaurentSeries) -> str:
    """
    Render the window as e.g. ``-1/2*eps^-2 + 1 + 3*eps``. A series that is
    exact only below ε^q ends in ``+ O(eps^k)``.
    """
    top = min(x.ctx.order, x.precision)
    window = {k: c for k, c in x.coeffs.items() if k <= top}
    parts = []
    for k in sorted(window):
        c = window[k]
        magnitude = -c if c < 0 else c
        power = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
        if not power:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = power
        else:
            body = f"{format_rational(magnitude)}*{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    text = "".join(parts) if parts else "0"
    if x.precision < x.ctx.order:
        text += f" + O(eps^{x.precision + 1})"
    return text


_TERM = re.compile(r"^(?:(?P<c>[0-9]+(?:/[0-9]+)?)(?:\*(?=eps))?)?(?P<eps>eps(?:\^(?P<k>-?[0-9]+))?)?$")


def parse_laurent(text: str, ctx: TruncationContext, pole_cap: Optional[int] = None) -> LaurentSeries:
    """Parse the format of format_laurent; plain rationals are constants."""
    source = text.strip()
    if not source:
        raise ParseError("Empty Laurent series")
    # Split on + and - that are not part of an exponent.
    pieces = re.split(r"(?<!\^)\s*([+-])\s*", source)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    coeffs: dict = {}
    for sign, term in zip(pieces[0::2], pieces[1::2]):
        m = _TERM.match(term.replace(" ", ""))
        if not m or not (m.group("c") or m.group("eps")):
            raise ParseError(f"Invalid Laurent term {term!r} in {text!r}")
        c = rational(m.group("c")) if m.group("c") else rational(1)
        k = 0
        if m.group("eps"):
            k = int(m.group("k")) if m.group("k") else 1
        coeffs[k] = coeffs.get(k, 0) + (c if sign == "+" else -c)
    return LaurentSeries(coeffs, ctx, pole_cap)
