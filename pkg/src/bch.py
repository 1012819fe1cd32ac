"""The BCH-recursion χ, its inverse, the exponential factorization and uniformization."""

from __future__ import annotations

import logging
from enum import Enum
from typing import Optional, Sequence

from .core import (E, FilteredElement, Scalar, bch, bernoulli, bracket, c_product, exp, fixed_point,
                   homogeneous_components, log, rational, require_a1)
from .errors import FlagError, MembershipError
from .rota_baxter import OperatorDescriptor, require_multiplicative_idempotent

logger = logging.getLogger(__name__)


class ChiVariant(Enum):
    """Which recursion defines the fixed point."""

    # χ = a - BCH(P(χ), (id - P)(χ))
    TWO_SIDED = "two-sided"
    # χ = a + BCH(-P(χ), a)
    ONE_SIDED = "one-sided"
    # χ = a + BCH(-P(χ), θa)/θ, with P̃ = θ·id - P
    WEIGHT_THETA = "weight-theta"
    # χ = a + sum_n b_n ad(P(χ))^n (a), P of weight zero
    WEIGHT_ZERO = "weight-zero"


def _rest(x: E, op: OperatorDescriptor) -> E:
    # The complement id - P used by the weight-one recursions.
    return x - op(x)


def _theta(op: OperatorDescriptor, theta: Optional[Scalar]) -> Scalar:
    value = op.weight if theta is None else rational(theta)
    if value == 0:
        raise FlagError(f"The weight-theta recursion needs θ ≠ 0, {op.name} has weight 0")
    return value


def bernoulli_ad_series(p: E, a: E, terms: int) -> E:
    """sum_{n=1..terms} b_n ad(p)^n (a)."""
    total = a.zero()
    current = a
    for n in range(1, terms + 1):
        current = bracket(p, current)
        if current.is_zero():
            break
        b = bernoulli(n)
        if b != 0:
            total = total + current.scale(b)
    return total


def chi(a: E, op: OperatorDescriptor, variant: ChiVariant = ChiVariant.TWO_SIDED,
        theta: Optional[Scalar] = None) -> E:
    """
    The fixed point χ(a) of the chosen recursion.

    Every pass fixes one more filtration degree, so N passes (N the
    truncation order) reach the fixed point; fixed_point asserts that one
    more pass changes nothing.

    Parameters:
        a -- an element of A_1.
        op -- any filtration preserving linear map; the weight-zero variant
            requires weight 0.
        variant -- the recursion to iterate.
        theta -- overrides the operator weight for the weight-theta variant.

    Raises:
        DegreeError -- a is not in A_1.
        FlagError -- the weight does not fit the variant.
    """
    require_a1(a, "chi")
    steps = a.ctx.order
    label = f"chi[{variant.value}, {op.name}]"
    if variant is ChiVariant.TWO_SIDED:
        return fixed_point(lambda x: a - bch(op(x), _rest(x, op)), a, steps, label)
    if variant is ChiVariant.ONE_SIDED:
        return fixed_point(lambda x: a + bch(-op(x), a), a, steps, label)
    if variant is ChiVariant.WEIGHT_THETA:
        t = _theta(op, theta)
        return fixed_point(lambda x: a + bch(-op(x), a.scale(t)).scale(rational(1) / t), a, steps, label)
    if variant is ChiVariant.WEIGHT_ZERO:
        if op.weight != 0:
            raise FlagError(f"The weight-zero recursion needs a weight-zero operator, {op.name} has weight {op.weight}")
        return fixed_point(lambda x: a + bernoulli_ad_series(op(x), a, steps - 1), a, steps, label)
    raise ValueError(f"Unknown recursion variant {variant!r}")


def chi_theta_two_sided(a: E, op: OperatorDescriptor, theta: Optional[Scalar] = None) -> E:
    """χ_θ from χ = a - BCH(P(χ), θχ - P(χ))/θ."""
    require_a1(a, "chi")
    t = _theta(op, theta)
    return fixed_point(lambda x: a - bch(op(x), x.scale(t) - op(x)).scale(rational(1) / t),
                       a, a.ctx.order, f"chi[two-sided-theta, {op.name}]")


def chi_components(a: E, op: OperatorDescriptor,
                   variant: ChiVariant = ChiVariant.TWO_SIDED) -> dict[int, E]:
    """The homogeneous components of χ(a), keyed by degree."""
    return homogeneous_components(chi(a, op, variant))


def chi_inverse(a: E, op: OperatorDescriptor) -> E:
    """C(P(a), (id - P)(a))."""
    require_a1(a, "chi_inverse")
    return c_product(op(a), _rest(a, op))


def factorize_exponential(a: E, op: OperatorDescriptor,
                          variant: ChiVariant = ChiVariant.TWO_SIDED) -> tuple[E, E]:
    """
    The pair D_P(a) = (P(χ(a)), (id - P)(χ(a))), so that
    exp(a) = exp(P(χ(a))) exp((id - P)(χ(a))).
    """
    x = chi(a, op, variant)
    return op(x), _rest(x, op)


def recompose(pair: Sequence[E]) -> E:
    g_minus, g_plus = pair
    return c_product(g_minus, g_plus)


def chi_closed_multiplicative(u: E, op: OperatorDescriptor,
                              samples: Optional[Sequence[FilteredElement]] = None) -> E:
    """
    χ(u) = u + BCH(-P(u), u) for an idempotent algebra morphism P.

    The morphism property is checked on ``samples`` (by default u, P(u) and
    u²) before the closed form is used.
    """
    require_a1(u, "chi")
    require_multiplicative_idempotent(op, samples if samples is not None else [u, op(u), u * u])
    return u + bch(-op(u), u)


def decompose_group_element(eta: E, op: OperatorDescriptor) -> tuple[E, E]:
    """
    η = η₋η₊ with log η₋ in im P and log η₊ in im P̃, for idempotent P.
    """
    if not op.claims_idempotent:
        raise FlagError(f"Group decomposition needs an idempotent operator, {op.name} is not")
    g_minus, g_plus = factorize_exponential(log(eta), op)
    return exp(g_minus), exp(g_plus)


def _check_membership(a_plus: E, a_minus: E, op: OperatorDescriptor) -> None:
    if not op.claims_idempotent:
        raise FlagError(f"Uniformization needs an idempotent operator, {op.name} is not")
    if op(a_minus) != a_minus:
        raise MembershipError(f"a_minus = {a_minus} is not in the image of {op.name}")
    if not op(a_plus).is_zero():
        raise MembershipError(f"a_plus = {a_plus} is not in the image of ~{op.name}")


def uniformize(a_plus: E, a_minus: E, op: OperatorDescriptor) -> tuple[E, E]:
    """
    Rewrite exp(a₊)exp(a₋) as exp(Ψ₋)exp(Ψ₊) with Ψ₋ in im P and Ψ₊ in im P̃.

    Ψ(a₊, a₋) = D_P(C(a₊, a₋)).

    Raises:
        MembershipError -- a₋ is not in im P or a₊ is not in im P̃.
    """
    _check_membership(a_plus, a_minus, op)
    return factorize_exponential(c_product(a_plus, a_minus), op)


def uniformize_inverse(psi_minus: E, psi_plus: E, op: OperatorDescriptor) -> tuple[E, E]:
    """
    The inverse of uniformize: (a₊, a₋) with exp(a₊)exp(a₋) = exp(Ψ₋)exp(Ψ₊).

    Computed with the recursion of the complementary operator P̃, whose
    factorization puts the im P̃ factor first.
    """
    complement = op.complement_operator()
    _check_membership(psi_minus, psi_plus, complement)
    return factorize_exponential(c_product(psi_minus, psi_plus), complement)


def magnus_omega(a: E, op: OperatorDescriptor, order: Optional[int] = None) -> E:
    """
    The Magnus expansion Ω[a] = P(χ₀(a)) for a weight-zero integral operator.

    a may have a constant term; the integral raises the degree, so the
    recursion still converges, in ``order`` + 1 passes. With ``order`` the
    computation is carried out modulo degree order + 1.
    """
    if op.weight != 0:
        raise FlagError(f"The Magnus expansion needs a weight-zero operator, {op.name} has weight {op.weight}")
    if order is not None:
        a = a.truncated_to(order)
    steps = a.ctx.order + 1
    chi0 = fixed_point(lambda x: a + bernoulli_ad_series(op(x), a, a.ctx.order), a, steps,
                       f"magnus[{op.name}]")
    return op(chi0)


def picard_solution(a: E, op: OperatorDescriptor, order: Optional[int] = None) -> E:
    """The solution of F = 1 + P(aF) by Picard iteration from F = 1."""
    if order is not None:
        a = a.truncated_to(order)
    one = a.unit()
    return fixed_point(lambda f: one + op(a * f), one, a.ctx.order + 1, f"picard[{op.name}]")
