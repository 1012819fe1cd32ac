"""Filtration-preserving linear operators with a weight, and checkers for the Rota–Baxter identities."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .adjoined import AdjoinedSeries
from .core import FilteredElement, Rational, Scalar, bracket, rational
from .errors import FlagError
from .laurent import LaurentSeries
from .matrixpoly import evaluate_at_zero, riemann_integral
from .operated import OperatedPolynomial, formal_p
from .qmatrix import antisymmetric_part, symmetric_part
from .report import CheckResult, check
from .triangular import TriangularMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorDescriptor:
    """
    A linear map P on one concrete algebra together with its weight θ.

    The claims_* flags record what the operator is supposed to satisfy; the
    checkers below verify them on samples and never take them for granted.
    The complementary map is P̃ = θ·id - P.
    """

    name: str
    weight: Rational
    fn: Callable[[FilteredElement], FilteredElement]
    # P(x)P(y) + θP(xy) = P(xP(y)) + P(P(x)y)
    claims_rota_baxter: bool = True
    # P∘P = P
    claims_idempotent: bool = False
    # P(xy) = P(x)P(y)
    claims_multiplicative: bool = False

    def __call__(self, x: FilteredElement) -> FilteredElement:
        return self.fn(x)

    def complement(self, x: FilteredElement) -> FilteredElement:
        "Apply P̃ = θ·id - P."
        return x.scale(self.weight) - self.fn(x)

    def complement_operator(self) -> OperatorDescriptor:
        # An idempotent RB map of weight 1 has an idempotent complement; a
        # multiplicative one in general does not.
        return OperatorDescriptor(
            name=f"~{self.name}",
            weight=self.weight,
            fn=self.complement,
            claims_rota_baxter=self.claims_rota_baxter,
            claims_idempotent=self.claims_idempotent and self.weight == 1,
        )


def _check(identity: str, residual: FilteredElement, *sample: FilteredElement) -> CheckResult:
    result = check(identity, residual, *sample)
    if not result.passed:
        logger.info("%s fails on (%s): residual %s", identity, result.sample, result.residual)
    return result


# Operator constructors.


def pole_projection() -> OperatorDescriptor:
    """Minimal subtraction on Laurent series: keep the strict pole part."""
    return OperatorDescriptor("R", rational(1), LaurentSeries.pole_part, claims_idempotent=True)


def regular_projection() -> OperatorDescriptor:
    return OperatorDescriptor("R~", rational(1), LaurentSeries.regular_part, claims_idempotent=True)


def entrywise_lift(op: OperatorDescriptor) -> OperatorDescriptor:
    """Apply an operator on the base algebra to every entry of a triangular matrix."""

    def lifted(m: TriangularMatrix) -> TriangularMatrix:
        return m.map_entries(op.fn)

    return OperatorDescriptor(f"{op.name}[entrywise]", op.weight, lifted,
                              claims_rota_baxter=op.claims_rota_baxter,
                              claims_idempotent=op.claims_idempotent)


def coefficientwise_lift(op: OperatorDescriptor) -> OperatorDescriptor:
    """Apply an operator on A to every coefficient of a series in A[[t]]."""

    def lifted(f: AdjoinedSeries) -> AdjoinedSeries:
        return f.map_coefficients(op.fn)

    return OperatorDescriptor(f"{op.name}[t]", op.weight, lifted,
                              claims_rota_baxter=op.claims_rota_baxter,
                              claims_idempotent=op.claims_idempotent,
                              claims_multiplicative=op.claims_multiplicative)


def riemann_integral_operator() -> OperatorDescriptor:
    """The integral from 0 on matrix polynomial functions, weight zero."""
    return OperatorDescriptor("I", rational(0), lambda f: riemann_integral(f, truncate=True))


def evaluation_morphism() -> OperatorDescriptor:
    """x ↦ 0, an idempotent algebra morphism and hence Rota–Baxter of weight 1."""
    return OperatorDescriptor("ev0", rational(1), evaluate_at_zero,
                              claims_idempotent=True, claims_multiplicative=True)


def formal_p_operator(weight: Scalar = 1) -> OperatorDescriptor:
    """The formal symbol P of the free operated algebra; only linear."""
    return OperatorDescriptor("P", rational(weight), formal_p, claims_rota_baxter=False)


def parity_projector() -> OperatorDescriptor:
    """Keep the words of a tagged polynomial with an odd number of '-' letters."""

    def odd_part(x: OperatedPolynomial) -> OperatedPolynomial:
        return OperatedPolynomial({w: c for w, c in x.terms.items() if w.minus_count % 2 == 1}, x.ctx)

    return OperatorDescriptor("pi-", rational(1), odd_part,
                              claims_rota_baxter=False, claims_idempotent=True)


def _matrix_projector(name: str, part: Callable) -> OperatorDescriptor:
    # Works on every matrix-coefficient series exposing map_coefficients.
    return OperatorDescriptor(name, rational(1), lambda f: f.map_coefficients(part),
                              claims_rota_baxter=False, claims_idempotent=True)


def antisymmetric_projector() -> OperatorDescriptor:
    """X ↦ (X - Xᵀ)/2 on every coefficient."""
    return _matrix_projector("antisym", antisymmetric_part)


def symmetric_projector() -> OperatorDescriptor:
    """X ↦ (X + Xᵀ)/2 on every coefficient."""
    return _matrix_projector("sym", symmetric_part)


def identity_operator(weight: Scalar = 1) -> OperatorDescriptor:
    return OperatorDescriptor("id", rational(weight), lambda x: x,
                              claims_idempotent=True, claims_multiplicative=True)


def zero_operator(weight: Scalar = 1) -> OperatorDescriptor:
    return OperatorDescriptor("0", rational(weight), lambda x: x.zero(), claims_idempotent=True)


def scaled(op: OperatorDescriptor, factor: Scalar) -> OperatorDescriptor:
    """λP, which is Rota–Baxter of weight λθ whenever P is of weight θ."""
    factor = rational(factor)
    if factor == 1:
        return op
    return OperatorDescriptor(f"{factor}*{op.name}", factor * op.weight,
                              lambda x: op.fn(x).scale(factor),
                              claims_rota_baxter=op.claims_rota_baxter)


def modified_operator(op: OperatorDescriptor) -> OperatorDescriptor:
    """B = θ·id - 2P, which satisfies the modified Rota–Baxter relation."""
    theta = op.weight
    return OperatorDescriptor(f"B[{op.name}]", theta,
                              lambda x: x.scale(theta) - op.fn(x).scale(2),
                              claims_rota_baxter=False)


# Residuals. Each is zero exactly when the identity holds on the sample.


def rb_residual(op: OperatorDescriptor, x: FilteredElement, y: FilteredElement) -> FilteredElement:
    px, py = op(x), op(y)
    return px * py + op(x * y).scale(op.weight) - op(x * py) - op(px * y)


def mixed_residual(op: OperatorDescriptor, x: FilteredElement, y: FilteredElement) -> FilteredElement:
    """P(x)P̃(y) - P̃(P(x)y) - P(xP̃(y))."""
    px = op(x)
    qy = op.complement(y)
    return px * qy - op.complement(px * y) - op(x * qy)


def lie_residual(op: OperatorDescriptor, x: FilteredElement, y: FilteredElement) -> FilteredElement:
    px, py = op(x), op(y)
    return (bracket(px, py) + op(bracket(x, y)).scale(op.weight)
            - op(bracket(px, y) + bracket(x, py)))


def double_product(a: FilteredElement, b: FilteredElement, op: OperatorDescriptor) -> FilteredElement:
    """a *_P b = P(a)b + aP(b) - θab."""
    a.check_compatible(b)
    return op(a) * b + a * op(b) - (a * b).scale(op.weight)


def modified_residual(op: OperatorDescriptor, x: FilteredElement, y: FilteredElement) -> FilteredElement:
    """B(x)B(y) + θ²xy - B(B(x)y + xB(y)) for B the modified operator of P."""
    b = modified_operator(op)
    bx, by = b(x), b(y)
    return bx * by + (x * y).scale(op.weight * op.weight) - b(bx * y + x * by)


# Checkers. Each returns one CheckResult per identity and sample.


def check_rb_identity(op: OperatorDescriptor, pairs: Iterable[tuple]) -> list[CheckResult]:
    """The Rota–Baxter relation and the mixed relation on every pair."""
    checks = []
    for x, y in pairs:
        checks.append(_check(f"rota-baxter[{op.name}]", rb_residual(op, x, y), x, y))
        checks.append(_check(f"mixed[{op.name}]", mixed_residual(op, x, y), x, y))
    return checks


def check_lie_form(op: OperatorDescriptor, pairs: Iterable[tuple]) -> list[CheckResult]:
    return [_check(f"rota-baxter-lie[{op.name}]", lie_residual(op, x, y), x, y) for x, y in pairs]


def check_double_product(op: OperatorDescriptor, pairs: Sequence[tuple]) -> list[CheckResult]:
    """
    P and -P̃ are homomorphisms from the double product, and the double
    product is associative.
    """
    checks = []
    for x, y in pairs:
        d = double_product(x, y, op)
        checks.append(_check(f"double-product-P[{op.name}]", op(d) - op(x) * op(y), x, y))
        checks.append(_check(f"double-product-P~[{op.name}]",
                             op.complement(d) + op.complement(x) * op.complement(y), x, y))
    for (x, y), (z, _) in zip(pairs, list(pairs[1:]) + list(pairs[:1])):
        left = double_product(double_product(x, y, op), z, op)
        right = double_product(x, double_product(y, z, op), op)
        checks.append(_check(f"double-product-associative[{op.name}]", left - right, x, y, z))
    return checks


def check_modified(op: OperatorDescriptor, pairs: Iterable[tuple]) -> list[CheckResult]:
    """
    The modified relation of B = θ·id - 2P; for idempotent P of weight 1 also
    B² = id, B∘P = -P and B∘P̃ = P̃.
    """
    b = modified_operator(op)
    checks = []
    for x, y in pairs:
        checks.append(_check(f"modified-rota-baxter[{op.name}]", modified_residual(op, x, y), x, y))
        if op.claims_idempotent and op.weight == 1:
            checks.append(_check(f"B-squared[{op.name}]", b(b(x)) - x, x))
            checks.append(_check(f"B-P[{op.name}]", b(op(x)) + op(x), x))
            checks.append(_check(f"B-P~[{op.name}]", b(op.complement(x)) - op.complement(x), x))
    return checks


def check_image_closure(op: OperatorDescriptor, pairs: Iterable[tuple]) -> list[CheckResult]:
    """
    im P and im P̃ are subalgebras.

    For an idempotent operator the product must be fixed by it; otherwise the
    product is exhibited as the image of xQ(y) + Q(x)y - θxy.
    """
    checks = []
    for q in (op, op.complement_operator()):
        for x, y in pairs:
            qx, qy = q(x), q(y)
            product = qx * qy
            if q.claims_idempotent:
                residual = q(product) - product
            else:
                residual = q(x * qy + qx * y - (x * y).scale(q.weight)) - product
            checks.append(_check(f"image-closure[{q.name}]", residual, x, y))
    return checks


def check_direct_sum(op: OperatorDescriptor, samples: Iterable[FilteredElement]) -> list[CheckResult]:
    """P + P̃ = id and P∘P̃ = 0, so A = im P ⊕ im P̃ for idempotent weight-1 P."""
    if op.weight != 1:
        raise FlagError(f"Direct sum decomposition needs weight 1, {op.name} has weight {op.weight}")
    checks = []
    for x in samples:
        checks.append(_check(f"sum-is-identity[{op.name}]", op(x) + op.complement(x) - x, x))
        checks.append(_check(f"P-after-P~[{op.name}]", op(op.complement(x)), x))
    return checks


# Flag verification.


def is_idempotent(op: OperatorDescriptor, samples: Iterable[FilteredElement]) -> bool:
    return all(op(op(x)) == op(x) for x in samples)


def is_multiplicative(op: OperatorDescriptor, samples: Sequence[FilteredElement]) -> bool:
    return all(op(x * y) == op(x) * op(y) for x in samples for y in samples)


def preserves_filtration(op: OperatorDescriptor, samples: Iterable[FilteredElement]) -> bool:
    return all(op(x).filtration_degree() >= x.filtration_degree() for x in samples)


def verify_flags(op: OperatorDescriptor, samples: Sequence[FilteredElement]) -> dict[str, bool]:
    """Evaluate each claimed property on the samples."""
    pairs = [(x, y) for x in samples for y in samples]
    return {
        "rota_baxter": all(rb_residual(op, x, y).is_zero() for x, y in pairs),
        "idempotent": is_idempotent(op, samples),
        "multiplicative": is_multiplicative(op, samples),
        "filtration_preserving": preserves_filtration(op, samples),
    }


def require_multiplicative_idempotent(op: OperatorDescriptor, samples: Sequence[FilteredElement]) -> None:
    """Raise FlagError unless P claims and passes idempotency and multiplicativity."""
    if not (op.claims_idempotent and op.claims_multiplicative):
        raise FlagError(f"{op.name} is not declared an idempotent algebra morphism")
    if not is_idempotent(op, samples):
        raise FlagError(f"{op.name} fails P∘P = P on the given samples")
    if not is_multiplicative(op, samples):
        raise FlagError(f"{op.name} fails P(xy) = P(x)P(y) on the given samples")
