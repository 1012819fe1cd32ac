"""The convolution algebra of linear maps on rooted trees: characters, the even-odd split and the Birkhoff decomposition."""

from __future__ import annotations

import logging
from typing import Any, Callable, Mapping, Optional, Union

from sympy.polys.domains import QQ

from .bch import ChiVariant, chi
from .core import (INFINITY, Degree, FilteredElement, Rational, Scalar, TruncationContext, bch, exp,
                   fixed_point, inverse, log, rational, require_a1)
from .errors import NotCharacter, TargetMismatch
from .laurent import LaurentSeries
from .report import CheckResult, check, check_equal
from .rota_baxter import OperatorDescriptor
from .spitzer import SpitzerProblem, solve_left, solve_right, star_exponential
from .trees import (EMPTY_FOREST, Forest, HopfElement, RootedTree, admissible_cuts, all_forests,
                    all_trees, antipode, coproduct, reduced_coproduct)

logger = logging.getLogger(__name__)

# Characters take values in ℚ or in Laurent series.
Target = Union[Rational, LaurentSeries]


def _is_zero(value: Target) -> bool:
    if isinstance(value, LaurentSeries):
        return value.is_zero()
    return value == 0


def _vanishes(value: Target) -> bool:
    if isinstance(value, LaurentSeries):
        return value.vanishes()
    return value == 0


def _one(zero: Target) -> Target:
    return zero.unit() if isinstance(zero, LaurentSeries) else rational(1)


def _same_target(a: Target, b: Target) -> bool:
    if isinstance(a, LaurentSeries):
        return isinstance(b, LaurentSeries) and a.compatible(b)
    return not isinstance(b, LaurentSeries)


def laurent_target(degree: int) -> LaurentSeries:
    """The zero of the Laurent target used for characters up to the given degree."""
    return LaurentSeries({}, TruncationContext(degree), degree)


class LinearFunctional(FilteredElement):
    """
    A linear map from forests of degree at most D into a commutative target.

    The product is the convolution f ⋆ g = m ∘ (f ⊗ g) ∘ Δ and the unit is
    e = u ∘ ε. A functional lies in A_n when it vanishes on every forest of
    degree below n.
    """

    values: dict
    ctx: TruncationContext
    # The zero of the target algebra
    target_zero: Any

    def __init__(self, values: Mapping[Forest, Target], ctx: TruncationContext, target_zero: Target):
        self.ctx = ctx
        self.target_zero = target_zero
        self.values = {f: v for f, v in values.items() if f.degree <= ctx.order and not _vanishes(v)}

    def _like(self, values: Mapping[Forest, Target]) -> LinearFunctional:
        return LinearFunctional(values, self.ctx, self.target_zero)

    def __call__(self, forest: Union[Forest, RootedTree]) -> Target:
        if isinstance(forest, RootedTree):
            forest = Forest.of(forest)
        return self.values.get(forest, self.target_zero)

    def on(self, element: HopfElement) -> Target:
        "Evaluate on a linear combination of forests."
        total = self.target_zero
        for f, c in element.terms.items():
            total = total + self(f) * c
        return total

    def filtration_degree(self) -> Degree:
        if not self.values:
            return INFINITY
        return min(f.degree for f in self.values)

    def unit(self) -> LinearFunctional:
        return self._like({EMPTY_FOREST: _one(self.target_zero)})

    def zero(self) -> LinearFunctional:
        return self._like({})

    def is_zero(self) -> bool:
        return all(_is_zero(v) for v in self.values.values())

    def vanishes(self) -> bool:
        return not self.values

    def compatible(self, other) -> bool:
        return (isinstance(other, LinearFunctional) and other.ctx == self.ctx
                and _same_target(self.target_zero, other.target_zero))

    def check_compatible(self, other) -> None:
        if isinstance(other, LinearFunctional) and other.ctx == self.ctx and not self.compatible(other):
            raise TargetMismatch(f"Cannot combine functionals into {self.target_name()} "
                                 f"and into {other.target_name()}")
        super().check_compatible(other)

    def target_name(self) -> str:
        if isinstance(self.target_zero, LaurentSeries):
            return self.target_zero.describe()
        return "QQ"

    def describe(self) -> str:
        return f"LinearFunctional(degree={self.ctx.order}, target={self.target_name()})"

    def scale(self, c: Scalar) -> LinearFunctional:
        c = rational(c)
        return self._like({f: v * c for f, v in self.values.items()})

    def _add(self, other: LinearFunctional) -> LinearFunctional:
        result = dict(self.values)
        for f, v in other.values.items():
            result[f] = result[f] + v if f in result else v
        return self._like(result)

    def _mul(self, other: LinearFunctional) -> LinearFunctional:
        result = {}
        for forest in all_forests(self.ctx.order):
            total = self.target_zero
            for (left, right), m in coproduct(forest):
                a = self.values.get(left)
                if a is None:
                    continue
                b = other.values.get(right)
                if b is None:
                    continue
                total = total + (a * b) * m
            result[forest] = total
        return self._like(result)

    def degree_part(self, k: int) -> LinearFunctional:
        return self._like({f: v for f, v in self.values.items() if f.degree == k})

    def map_values(self, fn: Callable[[Target], Target]) -> LinearFunctional:
        return self._like({f: fn(v) for f, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LinearFunctional) and self.compatible(other)
                and all(self(f) == other(f) for f in self.values.keys() | other.values.keys()))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinearFunctional({self}, degree={self.ctx.order})"

    def __str__(self) -> str:
        if not self.values:
            return "0"
        return "{" + ", ".join(f"{f}: {self.values[f]}" for f in sorted(self.values)) + "}"

    def tree_values(self) -> dict:
        """The values on single trees, keyed by tree literal."""
        return {f.render(): str(v) for f, v in sorted(self.values.items()) if f.is_tree()}


def character(tree_values: Mapping[RootedTree, Target], degree: int,
              target_zero: Optional[Target] = None) -> LinearFunctional:
    """
    The character with the given values on trees, extended multiplicatively.

    Trees that are not listed are sent to zero.
    """
    zero = rational(0) if target_zero is None else target_zero
    one = _one(zero)
    values = {}
    for forest in all_forests(degree):
        value = one
        for tree in forest.trees:
            value = value * tree_values.get(tree, zero)
        values[forest] = value
    return LinearFunctional(values, TruncationContext(degree), zero)


def infinitesimal_character(tree_values: Mapping[RootedTree, Target], degree: int,
                            target_zero: Optional[Target] = None) -> LinearFunctional:
    """The functional supported on single trees with the given values."""
    zero = rational(0) if target_zero is None else target_zero
    values = {Forest.of(t): v for t, v in tree_values.items() if t.degree <= degree}
    return LinearFunctional(values, TruncationContext(degree), zero)


def delta(tree: RootedTree, degree: int, target_zero: Optional[Target] = None) -> LinearFunctional:
    """The infinitesimal character with value 1 on one tree."""
    zero = rational(0) if target_zero is None else target_zero
    return infinitesimal_character({tree: _one(zero)}, degree, zero)


def is_character(f: LinearFunctional) -> bool:
    one = _one(f.target_zero)
    if f(EMPTY_FOREST) != one:
        return False
    for forest in all_forests(f.ctx.order):
        if len(forest) < 2:
            continue
        product = one
        for tree in forest.trees:
            product = product * f(tree)
        if f(forest) != product:
            return False
    return True


def is_infinitesimal(f: LinearFunctional) -> bool:
    return all(forest.is_tree() for forest, v in f.values.items() if not _is_zero(v))


def require_character(f: LinearFunctional, what: str) -> None:
    if not is_character(f):
        raise NotCharacter(f"{what} needs a character, got {f}")


def convolution_inverse(phi: LinearFunctional) -> LinearFunctional:
    """φ⁻¹ = φ∘S, valid for characters."""
    require_character(phi, "convolution_inverse")
    values = {}
    for forest in all_forests(phi.ctx.order):
        values[forest] = phi.on(antipode(forest, phi.ctx))
    return phi._like(values)


# The grading involution and the parity projectors.


def grading_involution(f: LinearFunctional) -> LinearFunctional:
    """f̄(h) = (-1)^|h| f(h)."""
    return f._like({h: (-v if h.degree % 2 else v) for h, v in f.values.items()})


def _parity_part(f: LinearFunctional, parity: int) -> LinearFunctional:
    return f._like({h: v for h, v in f.values.items() if h.degree % 2 == parity})


def odd_projector() -> OperatorDescriptor:
    """π₋ = (id - bar)/2, which keeps the values on odd-degree forests."""
    return OperatorDescriptor("pi-", rational(1), lambda f: _parity_part(f, 1),
                              claims_rota_baxter=False, claims_idempotent=True)


def even_projector() -> OperatorDescriptor:
    """π₊ = (id + bar)/2."""
    return OperatorDescriptor("pi+", rational(1), lambda f: _parity_part(f, 0),
                              claims_rota_baxter=False, claims_idempotent=True)


def odd_part_closed(z: LinearFunctional) -> LinearFunctional:
    """π₋(χ(Z)) = π₋(Z) + 1/2 BCH(Z, -Z̄) without any fixed point."""
    require_a1(z, "odd_part_closed")
    odd = _parity_part(z, 1)
    return odd + bch(z, -grading_involution(z)).scale(rational(1) / 2)


def chi_closed_involutive(z: LinearFunctional) -> LinearFunctional:
    """χ(Z) = Z + BCH(-π₋(χ(Z)), Z) for the odd projector."""
    return z + bch(-odd_part_closed(z), z)


def even_odd_decompose(phi: LinearFunctional) -> tuple[LinearFunctional, LinearFunctional]:
    """
    φ = φ₋ ⋆ φ₊ with φ₋ odd (φ̄₋ = φ₋⁻¹) and φ₊ even (φ̄₊ = φ₊).

    Both factors are exponentials of the parity parts of χ(log φ) for the
    odd projector.
    """
    require_character(phi, "even_odd_decompose")
    x = chi(log(phi), odd_projector())
    return exp(_parity_part(x, 1)), exp(_parity_part(x, 0))


def _forest_value(tree_values: Mapping[RootedTree, Target], forest: Forest, one: Target) -> Target:
    value = one
    for tree in forest.trees:
        value = value * tree_values[tree]
    return value


def brute_force_even_odd(phi: LinearFunctional) -> tuple[LinearFunctional, LinearFunctional]:
    """
    Solve φ = φ₋ ⋆ φ₊, φ₊ even, φ̄₋ ⋆ φ₋ = e one tree at a time, in
    increasing degree. Each value is forced, so the split is unique.
    """
    require_character(phi, "brute_force_even_odd")
    zero, one = phi.target_zero, _one(phi.target_zero)
    minus: dict = {}
    plus: dict = {}
    for tree in all_trees(phi.ctx.order):
        cuts = admissible_cuts(tree)
        known = zero
        for pruned, trunk in cuts:
            known = known + _forest_value(minus, pruned, one) * plus[trunk]
        rest = phi(tree) - known
        if tree.degree % 2:
            minus[tree], plus[tree] = rest, zero
        else:
            twisted = zero
            for pruned, trunk in cuts:
                value = _forest_value(minus, pruned, one) * minus[trunk]
                twisted = twisted + (-value if pruned.degree % 2 else value)
            minus[tree] = twisted * QQ(-1, 2)
            plus[tree] = rest - minus[tree]
    return character(minus, phi.ctx.order, zero), character(plus, phi.ctx.order, zero)


# Minimal subtraction and the Birkhoff decomposition.


def minimal_subtraction() -> OperatorDescriptor:
    """ℛ(ψ) = R∘ψ, the pole projection applied to every value."""

    def pole(f: LinearFunctional) -> LinearFunctional:
        return f.map_values(LaurentSeries.pole_part)

    return OperatorDescriptor("R*", rational(1), pole, claims_idempotent=True)


def birkhoff_exponent(phi: LinearFunctional) -> LinearFunctional:
    """χ(log φ) for minimal subtraction, shared by the Birkhoff factors and the R̄-map."""
    require_character(phi, "birkhoff_exponent")
    return chi(log(phi), minimal_subtraction(), ChiVariant.TWO_SIDED)


def birkhoff_decompose(phi: LinearFunctional,
                       exponent: Optional[LinearFunctional] = None) -> tuple[LinearFunctional, LinearFunctional]:
    """
    φ = φ₋⁻¹ ⋆ φ₊ with φ₋ - e in im ℛ and φ₊ pole-free.

    With Z = log φ: φ₋ = exp(-ℛ(χ(Z))) and φ₊ = exp(ℛ̃(χ(Z))). ``exponent``
    is χ(Z) when the caller already has it.
    """
    require_character(phi, "birkhoff_decompose")
    op = minimal_subtraction()
    x = birkhoff_exponent(phi) if exponent is None else exponent
    return exp(-op(x)), exp(op.complement(x))


def birkhoff_spitzer(phi: LinearFunctional) -> tuple[LinearFunctional, LinearFunctional]:
    """
    The same split from the Spitzer equations with b = φ - e: φ₋ solves
    x = e - ℛ(x ⋆ b) and φ₊⁻¹ solves x' = e - ℛ̃(b ⋆ x').
    """
    require_character(phi, "birkhoff_spitzer")
    prob = SpitzerProblem(phi - phi.unit(), minimal_subtraction())
    return solve_left(prob), inverse(solve_right(prob))


def counterterm(phi: LinearFunctional) -> LinearFunctional:
    """
    Bogoliubov's recursion on trees, φ₋(t) = -R(φ(t) + sum φ₋(P^c(t)) φ(R^c(t))),
    extended multiplicatively to forests.
    """
    require_character(phi, "counterterm")
    one = _one(phi.target_zero)
    minus: dict = {}
    for tree in all_trees(phi.ctx.order):
        prepared = phi(tree)
        for pruned, trunk in admissible_cuts(tree):
            prepared = prepared + _forest_value(minus, pruned, one) * phi(trunk)
        minus[tree] = -prepared.pole_part()
    return character(minus, phi.ctx.order, phi.target_zero)


def renormalized(phi: LinearFunctional, minus: Optional[LinearFunctional] = None) -> LinearFunctional:
    """φ₊ = φ₋ ⋆ φ with φ₋ the counterterm, or ``minus`` when already known."""
    return (counterterm(phi) if minus is None else minus) * phi


def preparation_map(phi: LinearFunctional, minus: Optional[LinearFunctional] = None) -> LinearFunctional:
    """
    Bogoliubov's preparation φ(h) + sum φ₋(h')φ(h'') over the reduced
    coproduct, on forests of positive degree; zero on the empty forest.
    """
    minus = counterterm(phi) if minus is None else minus
    values = {}
    for forest in all_forests(phi.ctx.order):
        if forest.is_unit():
            continue
        value = phi(forest)
        for (left, right), m in reduced_coproduct(forest):
            value = value + (minus(left) * phi(right)) * m
        values[forest] = value
    return phi._like(values)


def rbar_map(phi: LinearFunctional, exponent: Optional[LinearFunctional] = None) -> LinearFunctional:
    """R̄[φ] = exp^{⋆ℛ}(-χ(log φ)), the star exponential for the double product of ℛ."""
    require_character(phi, "rbar_map")
    x = birkhoff_exponent(phi) if exponent is None else exponent
    return star_exponential(-x, minimal_subtraction())


def phi_plus_direct(phi: LinearFunctional) -> LinearFunctional:
    """φ₊ as the fixed point of φ₊ = e - ℛ̃(φ₊ ⋆ (φ⁻¹ - e))."""
    require_character(phi, "phi_plus_direct")
    op = minimal_subtraction()
    one = phi.unit()
    b = convolution_inverse(phi) - one
    return fixed_point(lambda x: one - op.complement(x * b), one, phi.ctx.order + 1, "phi-plus")


def is_pole_free(f: LinearFunctional) -> bool:
    return all(not v.has_pole() for v in f.values.values())


# Hopf algebra axioms, checked forest by forest.


def _tensor3(pairs: dict, left: bool) -> dict:
    # Apply Δ to the left or the right factor of a two-fold tensor.
    result: dict = {}
    for (a, b), c in pairs.items():
        split = coproduct(a if left else b)
        for (x, y), m in split:
            key = (x, y, b) if left else (a, x, y)
            result[key] = result.get(key, 0) + c * m
    return {k: v for k, v in result.items() if v != 0}


def check_hopf_axioms(degree: int) -> list[CheckResult]:
    """Coassociativity, the counit and the antipode on every forest up to the degree."""
    ctx = TruncationContext(max(degree, 1))
    checks = []
    for forest in all_forests(degree):
        pairs = dict(coproduct(forest))
        checks.append(check_equal("coassociative", _tensor3(pairs, True), _tensor3(pairs, False), forest))
        counit_left = HopfElement({b: c for (a, b), c in pairs.items() if a.is_unit()}, ctx)
        counit_right = HopfElement({a: c for (a, b), c in pairs.items() if b.is_unit()}, ctx)
        element = HopfElement.from_forest(forest, ctx)
        checks.append(check("counit-left", counit_left - element, forest))
        checks.append(check("counit-right", counit_right - element, forest))
        total = element.zero()
        for (a, b), c in pairs.items():
            total = total + (antipode(a, ctx) * HopfElement.from_forest(b, ctx)).scale(c)
        expected = element.unit() if forest.is_unit() else element.zero()
        checks.append(check("antipode", total - expected, forest))
    return checks


def check_parity_closure(degree: int) -> list[CheckResult]:
    """H±H± ⊂ H₊ and H±H∓ ⊂ H₋ on products of forests."""
    checks = []
    forests = [f for f in all_forests(degree) if not f.is_unit()]
    for a in forests:
        for b in forests:
            if a.degree + b.degree > degree:
                continue
            expected = (a.degree % 2 + b.degree % 2) % 2
            checks.append(check_equal("parity-closure", (a * b).degree % 2, expected, a, b))
    return checks
