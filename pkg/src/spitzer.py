"""Spitzer-type fixed point equations, Atkinson's factorization and the Bogoliubov recursions."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from sympy.polys.domains import QQ

from .bch import ChiVariant, chi, decompose_group_element, magnus_omega
from .core import E, FilteredElement, exp, fixed_point, inverse, log, rational, require_a1
from .errors import FlagError
from .report import CheckResult, check, check_degrees
from .rota_baxter import OperatorDescriptor, double_product, require_multiplicative_idempotent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpitzerProblem:
    """
    The data of the equations x = 1 - P(xb) and x' = 1 - P̃(bx').

    With θ the weight of P, the Atkinson factorization reads
    x(1 + θb)x' = 1. The weight zero case is allowed.
    """

    b: FilteredElement
    op: OperatorDescriptor
    # An exponent with 1 + θb = exp(θa), when the problem was built from one
    a: Optional[FilteredElement] = None

    def __post_init__(self):
        require_a1(self.b, "Spitzer equation")

    @classmethod
    def from_exponent(cls, a: FilteredElement, op: OperatorDescriptor) -> SpitzerProblem:
        """The problem with 1 + θb = exp(θa) (b = a when θ = 0)."""
        theta = op.weight
        if theta == 0:
            return cls(a, op, a)
        return cls((exp(a.scale(theta)) - a.unit()).scale(rational(1) / theta), op, a)

    @property
    def theta(self):
        return self.op.weight

    @cached_property
    def one_plus_theta_b(self) -> FilteredElement:
        return self.b.unit() + self.b.scale(self.theta)

    @cached_property
    def b_check(self) -> FilteredElement:
        """b̌ with 1 + θb̌ = (1 + θb)⁻¹ (b̌ = -b when θ = 0)."""
        if self.theta == 0:
            return -self.b
        return (inverse(self.one_plus_theta_b) - self.b.unit()).scale(rational(1) / self.theta)

    @cached_property
    def exponent(self) -> FilteredElement:
        """a with 1 + θb = exp(θa), taken from the constructor or as log(1 + θb)/θ."""
        if self.a is not None:
            return self.a
        if self.theta == 0:
            return self.b
        return log(self.one_plus_theta_b).scale(rational(1) / self.theta)

    def describe(self) -> str:
        return f"b = {self.b}, P = {self.op.name}, θ = {self.theta}"


def _steps(x: FilteredElement) -> int:
    return x.ctx.order + 1


def solve_left(prob: SpitzerProblem) -> FilteredElement:
    """The fixed point of x = 1 - P(xb), iterated from x = 1."""
    one, b, op = prob.b.unit(), prob.b, prob.op
    return fixed_point(lambda x: one - op(x * b), one, _steps(b), f"spitzer-left[{op.name}]")


def solve_right(prob: SpitzerProblem) -> FilteredElement:
    """The fixed point of x' = 1 - P̃(bx'), iterated from x' = 1."""
    one, b, op = prob.b.unit(), prob.b, prob.op
    return fixed_point(lambda x: one - op.complement(b * x), one, _steps(b), f"spitzer-right[{op.name}]")


def atkinson_check(prob: SpitzerProblem) -> list[CheckResult]:
    """
    x(1 + θb)x' = 1, and for idempotent weight-one P the factors agree with
    the unique group decomposition of 1 + b.
    """
    x, x_right = solve_left(prob), solve_right(prob)
    one = prob.b.unit()
    checks = [check("atkinson", x * prob.one_plus_theta_b * x_right - one, prob.b)]
    if prob.op.claims_idempotent and prob.theta == 1:
        eta_minus, eta_plus = decompose_group_element(prob.one_plus_theta_b, prob.op)
        checks.append(check("atkinson-unique-left", eta_minus * x - one, prob.b))
        checks.append(check("atkinson-unique-right", x_right * eta_plus - one, prob.b))
    return checks


def bogoliubov_pair(prob: SpitzerProblem) -> tuple[FilteredElement, FilteredElement]:
    """u = 1 + P(bx') and u' = 1 + P̃(xb), the inverses of x and x'."""
    x, x_right = solve_left(prob), solve_right(prob)
    one, b, op = prob.b.unit(), prob.b, prob.op
    return one + op(b * x_right), one + op.complement(x * b)


def solve_inverse_left(prob: SpitzerProblem) -> FilteredElement:
    """The fixed point of u = 1 - P(b̌u), which is x⁻¹."""
    one, op = prob.b.unit(), prob.op
    b_check = prob.b_check
    return fixed_point(lambda u: one - op(b_check * u), one, _steps(prob.b), f"bogoliubov[{op.name}]")


def star_exponential(y: E, op: OperatorDescriptor) -> E:
    """exp of y for the double product a *_P b = P(a)b + aP(b) - θab."""
    require_a1(y, "star exponential")
    one = y.unit()
    result, power = one, one
    for n in range(1, y.ctx.order + 1):
        power = y if n == 1 else double_product(power, y, op)
        result = result + power.scale(QQ(1, math.factorial(n)))
    return result


def spitzer_sum(b: E, op: OperatorDescriptor) -> E:
    """sum_n (-1)^n P(P(...P(b)b...)b), the expansion of the solution of x = 1 - P(xb)."""
    one = b.unit()
    total, term = one, one
    for n in range(1, b.ctx.order + 1):
        term = op(term * b)
        if term.is_zero():
            break
        total = total + (term if n % 2 == 0 else -term)
    return total


def spitzer_classical(b: E, op: OperatorDescriptor) -> list[CheckResult]:
    """
    exp(-P(log(1 + θb)/θ)) = sum_n (-1)^n P(P(...P(b)b...)b), degree by degree.

    Holds for every Rota–Baxter operator on a commutative algebra.
    """
    prob = SpitzerProblem(b, op)
    left = exp(-op(prob.exponent))
    return check_degrees(f"spitzer-classical[θ={prob.theta}]", left, spitzer_sum(b, op), b)


def spitzer_theta_verify(b: E, op: OperatorDescriptor) -> list[CheckResult]:
    """
    exp(-P(χ_θ(log(1 + θb)/θ))) = sum_n (-1)^n P(P(...P(b)b...)b), degree by degree.

    The noncommutative form; in a commutative algebra χ_θ is the identity.
    """
    prob = SpitzerProblem(b, op)
    if prob.theta == 0:
        raise FlagError(f"The weight-theta Spitzer identity needs θ ≠ 0, {op.name} has weight 0")
    left = exp(-op(chi(prob.exponent, op, ChiVariant.WEIGHT_THETA)))
    return check_degrees(f"spitzer-noncommutative[θ={prob.theta}]", left, spitzer_sum(b, op), b)


def geometric_series_verify(b: E, op: OperatorDescriptor) -> list[CheckResult]:
    """exp(-P(log(1 + b))) = (1 + P(b))⁻¹ = x for an idempotent algebra morphism P."""
    require_multiplicative_idempotent(op, [b, op(b), b * b])
    prob = SpitzerProblem(b, op)
    left = exp(-op(log(b.unit() + b)))
    right = inverse(b.unit() + op(b))
    return [
        check("geometric-series", left - right, b),
        check("geometric-series-fixed-point", right - solve_left(prob), b),
    ]


def weight_zero_lemma(a: E, op: OperatorDescriptor) -> list[CheckResult]:
    """
    With Ω = P(χ₀(a)), x = exp(-Ω) solves x = 1 - P(xa) and y = exp(Ω)
    solves y = 1 + P(ay).
    """
    omega = magnus_omega(a, op)
    one = omega.unit()
    x, y = exp(-omega), exp(omega)
    return [
        check("weight-zero-left", x - (one - op(x * a)), a),
        check("weight-zero-right", y - (one + op(a * y)), a),
    ]
