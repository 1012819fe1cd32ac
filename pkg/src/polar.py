"""Graded components of the polar factorization exp(tZ) = exp(X₋(t)) exp(X₊(t))."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Generic, Mapping

from .bch import chi
from .core import E, TruncationContext, exp, require_a1
from .errors import DegreeError
from .matrixpoly import MatrixPolyFunction
from .operated import OpApply, OperatedPolynomial, generators, render_brackets
from .qmatrix import QMatrix, antisymmetric_part, qeye, qscale, qzeros, symmetric_part
from .rota_baxter import OperatorDescriptor, parity_projector, symmetric_projector


@dataclass
class PolarSeries(Generic[E]):
    """
    The components X₋^(k) and X₊^(k), keyed by k ≥ 1.

    ``z`` is Z·t, ``op`` the projector onto the odd part g₋.
    """

    z: E
    op: OperatorDescriptor
    minus: dict = field(default_factory=dict)
    plus: dict = field(default_factory=dict)

    def odd(self) -> E:
        total = self.z.zero()
        for term in self.minus.values():
            total = total + term
        return total

    def even(self) -> E:
        total = self.z.zero()
        for term in self.plus.values():
            total = total + term
        return total

    def recompose(self) -> E:
        """exp(X₋) exp(X₊), which equals exp(Zt)."""
        return exp(self.odd()) * exp(self.even())


def _split(z: E, op: OperatorDescriptor, order: int) -> PolarSeries:
    require_a1(z, "polar_series")
    if order > z.ctx.order:
        raise DegreeError(f"Requested order {order} exceeds the truncation order {z.ctx.order}")
    x = chi(z, op)
    odd, even = op(x), op.complement(x)
    result = PolarSeries(z, op)
    for k in range(1, order + 1):
        result.minus[k] = odd.degree_part(k)
        result.plus[k] = even.degree_part(k)
    return result


def polar_generators(order: int) -> tuple:
    """Z₋ and Z₊ as tagged letters of the free algebra, with Z = Z₋ + Z₊ of degree one."""
    return generators(["Z-", "Z+"], TruncationContext(order), tags=["-", "+"])


def polar_series(order: int) -> PolarSeries:
    """
    The universal components: π₋ keeps the words with an odd number of
    Z₋ letters, and the letters carry the degree of t.
    """
    z_minus, z_plus = polar_generators(order)
    return _split(z_minus + z_plus, parity_projector(), order)


def matrix_polar_series(z: QMatrix, order: int) -> PolarSeries:
    """
    The components for a concrete matrix Z under the involution X ↦ -Xᵀ:
    g₋ is the symmetric and g₊ the antisymmetric matrices.
    """
    d = z.shape[0]
    zt = MatrixPolyFunction({1: z}, d, TruncationContext(order), variable="t")
    return _split(zt, symmetric_projector(), order)


def instantiate(x: OperatedPolynomial, values: Mapping[str, QMatrix]) -> QMatrix:
    """Evaluate a polynomial in the generators at concrete matrices."""
    d = next(iter(values.values())).shape[0]
    total = qzeros(d)
    for word, c in x.terms.items():
        product = qeye(d)
        for atom in word.atoms:
            if isinstance(atom, OpApply):
                raise ValueError(f"Cannot instantiate the operator term {atom.render()}")
            if atom.name not in values:
                raise KeyError(f"No value given for the generator {atom.name}")
            product = product @ values[atom.name]
        total = total + qscale(product, c)
    return total


def instantiate_series(series: PolarSeries, z: QMatrix) -> PolarSeries:
    """The universal components evaluated at Z₋ = sym(Z) and Z₊ = antisym(Z), as series in t."""
    values = {"Z-": symmetric_part(z), "Z+": antisymmetric_part(z)}
    order = series.z.ctx.order
    ctx = TruncationContext(order)
    d = z.shape[0]
    zt = MatrixPolyFunction({1: z}, d, ctx, variable="t")
    result = PolarSeries(zt, symmetric_projector())
    for k in series.minus:
        result.minus[k] = MatrixPolyFunction({k: instantiate(series.minus[k], values)}, d, ctx, "t")
        result.plus[k] = MatrixPolyFunction({k: instantiate(series.plus[k], values)}, d, ctx, "t")
    return result


def render_table(series: PolarSeries) -> list:
    """One line per degree with both components in bracket form."""
    lines = []
    for k in sorted(series.minus):
        lines.append(f"X-({k}) = {render_brackets(series.minus[k])}")
        lines.append(f"X+({k}) = {render_brackets(series.plus[k])}")
    return lines
