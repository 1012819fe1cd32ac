"""Seeded random elements of every algebra, drawn with a numpy Generator."""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from sympy.polys.domains import QQ

from .adjoined import AdjoinedSeries
from .bivariate import BivariateMatrixSeries
from .core import FilteredElement, Rational, TruncationContext
from .hopf import LinearFunctional, character, infinitesimal_character, laurent_target
from .laurent import LaurentSeries
from .matrixpoly import MatrixPolyFunction
from .operated import OperatedPolynomial, OperatedWord, generators
from .qmatrix import QMatrix, antisymmetric_part, qmatrix, symmetric_part
from .trees import all_trees
from .triangular import TriangularMatrix

# Numerators are drawn from [-NUMERATOR, NUMERATOR], denominators from [1, DENOMINATOR].
NUMERATOR = 4
DENOMINATOR = 3


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_rational(rng: np.random.Generator, nonzero: bool = False) -> Rational:
    while True:
        num = int(rng.integers(-NUMERATOR, NUMERATOR + 1))
        if num or not nonzero:
            return QQ(num, int(rng.integers(1, DENOMINATOR + 1)))


def random_qmatrix(rng: np.random.Generator, d: int) -> QMatrix:
    return qmatrix([[random_rational(rng) for _ in range(d)] for _ in range(d)])


def random_symmetric(rng: np.random.Generator, d: int) -> QMatrix:
    return symmetric_part(random_qmatrix(rng, d))


def random_antisymmetric(rng: np.random.Generator, d: int) -> QMatrix:
    return antisymmetric_part(random_qmatrix(rng, d))


# Laurent series.


def laurent_zero(order: int, pole_cap: Optional[int] = None) -> LaurentSeries:
    return LaurentSeries({}, TruncationContext(order), pole_cap)


def random_laurent(rng: np.random.Generator, zero: LaurentSeries, low: int, high: int,
                   density: float = 0.6) -> LaurentSeries:
    """A series with exponents in [low, high], each present with the given probability."""
    coeffs = {k: random_rational(rng, nonzero=True) for k in range(low, high + 1) if rng.random() < density}
    return LaurentSeries(coeffs, zero.ctx, zero.pole_cap)


def laurent_monomials(zero: LaurentSeries, factors: int = 2) -> list:
    """
    ε^k for k in [-p/f, q/f], so that every product of f of them and of
    their images under the projections stays inside the [-p, q] window.
    """
    return [LaurentSeries.monomial(k, zero.ctx, zero.pole_cap)
            for k in range(-(zero.pole_cap // factors), zero.ctx.order // factors + 1)]


# Triangular matrices over Laurent series.


def random_triangular(rng: np.random.Generator, n: int, density: float = 0.6) -> TriangularMatrix:
    """
    A strictly lower n×n matrix over Laurent series of window (n-1, n-1).

    An entry in band k has exponents in [-k, k], so every product of such
    matrices stays inside the window.
    """
    zero = laurent_zero(n - 1, n - 1)
    entries = {}
    for i in range(n):
        for j in range(i):
            k = i - j
            entries[(i, j)] = random_laurent(rng, zero, -k, k, density)
    return TriangularMatrix(entries, n, zero)


# Matrix series.


def random_matrix_poly(rng: np.random.Generator, d: int, order: int, low: int = 1,
                       high: Optional[int] = None, variable: str = "x",
                       density: float = 1.0) -> MatrixPolyFunction:
    high = order if high is None else high
    coeffs = {k: random_qmatrix(rng, d) for k in range(low, high + 1) if rng.random() < density}
    return MatrixPolyFunction(coeffs, d, TruncationContext(order), variable)


def random_bivariate(rng: np.random.Generator, d: int, order: int, density: float = 0.5) -> BivariateMatrixSeries:
    """A series in A_1: no constant term, total degree up to the order."""
    coeffs = {}
    for i in range(order + 1):
        for j in range(order + 1 - i):
            if i + j and (i + j == 1 or rng.random() < density):
                coeffs[(i, j)] = random_qmatrix(rng, d)
    return BivariateMatrixSeries(coeffs, d, TruncationContext(order))


def random_split_bivariate(rng: np.random.Generator, d: int, order: int) -> tuple:
    """
    (a₊, a₋) with a₊ = t·(symmetric) and a₋ = s·(antisymmetric), plus one
    random higher term in each.
    """
    ctx = TruncationContext(order)
    plus = {(0, 1): random_symmetric(rng, d), (1, 1): random_symmetric(rng, d)}
    minus = {(1, 0): random_antisymmetric(rng, d), (1, 1): random_antisymmetric(rng, d)}
    return BivariateMatrixSeries(plus, d, ctx), BivariateMatrixSeries(minus, d, ctx)


def random_adjoined(rng: np.random.Generator, order: int, base_zero: FilteredElement,
                    coefficient: Callable[[np.random.Generator, int], FilteredElement]) -> AdjoinedSeries:
    """sum_{n=1..order} a_n t^n with a_n = coefficient(rng, n)."""
    coeffs = {n: coefficient(rng, n) for n in range(1, order + 1)}
    return AdjoinedSeries(coeffs, base_zero, TruncationContext(order))


def random_laurent_series_in_t(rng: np.random.Generator, order: int, spread: int = 1,
                               density: float = 0.6) -> AdjoinedSeries:
    """A series over Laurent series of window (order, order) whose coefficients have exponents in [-spread, spread]."""
    zero = laurent_zero(order, order)
    return random_adjoined(rng, order, zero, lambda r, n: random_laurent(r, zero, -spread, spread, density))


def random_matrix_series_in_t(rng: np.random.Generator, order: int, d: int = 2,
                              degree: int = 2) -> AdjoinedSeries:
    """A series in t over M_d(ℚ[x]) truncated at x^degree."""
    zero = MatrixPolyFunction({}, d, TruncationContext(degree))
    return random_adjoined(rng, order, zero,
                           lambda r, n: random_matrix_poly(r, d, degree, low=0, density=0.7))


# The free operated algebra.


def random_operated(rng: np.random.Generator, order: int, names: str = "x y",
                    max_terms: int = 3, max_length: int = 2) -> OperatedPolynomial:
    """Up to ``max_terms`` random words of length 1..max_length in the generators, without P."""
    ctx = TruncationContext(order)
    letters = generators(names, ctx)
    atoms = [next(iter(g.terms)).atoms[0] for g in letters]
    terms: dict = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        length = int(rng.integers(1, max_length + 1))
        word = OperatedWord([atoms[int(rng.integers(0, len(atoms)))] for _ in range(length)])
        terms[word] = terms.get(word, 0) + random_rational(rng, nonzero=True)
    result = OperatedPolynomial(terms, ctx)
    return result if not result.is_zero() else letters[0]


# Tree functionals.


def random_tree_values(rng: np.random.Generator, degree: int, laurent: bool = False,
                       density: float = 0.8) -> dict:
    """
    One value per tree up to the degree; with laurent=True a tree with k
    vertices gets exponents in [-k, k].
    """
    zero = laurent_target(degree)
    values = {}
    for tree in all_trees(degree):
        if laurent:
            values[tree] = random_laurent(rng, zero, -tree.degree, tree.degree, density)
        elif rng.random() < density:
            values[tree] = random_rational(rng, nonzero=True)
    return values


def random_character(rng: np.random.Generator, degree: int, laurent: bool = False) -> LinearFunctional:
    target = laurent_target(degree) if laurent else None
    return character(random_tree_values(rng, degree, laurent), degree, target)


def random_infinitesimal(rng: np.random.Generator, degree: int, laurent: bool = False) -> LinearFunctional:
    target = laurent_target(degree) if laurent else None
    return infinitesimal_character(random_tree_values(rng, degree, laurent), degree, target)
