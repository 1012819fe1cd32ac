import unittest

from hypothesis import given, settings, strategies as st

from src import samples
from src.core import TruncationContext
from src.errors import FlagError
from src.laurent import LaurentSeries
from src.matrixpoly import MatrixPolyFunction
from src.qmatrix import qmatrix
from src.rota_baxter import (antisymmetric_projector, check_direct_sum, check_double_product,
                             check_image_closure, check_lie_form, check_modified, check_rb_identity,
                             entrywise_lift, evaluation_morphism, identity_operator, modified_operator,
                             pole_projection, rb_residual, regular_projection, require_multiplicative_idempotent,
                             riemann_integral_operator, scaled, verify_flags, zero_operator)


def passed(results) -> bool:
    return all(r.passed for r in results)


class LaurentOperatorTest(unittest.TestCase):
    """Minimal subtraction and its complement on a monomial grid."""

    def setUp(self):
        zero = samples.laurent_zero(6, 6)
        self.grid = samples.laurent_monomials(zero, factors=3)
        self.pairs = [(x, y) for x in self.grid for y in self.grid]

    def test_identities(self):
        for op in (pole_projection(), regular_projection()):
            self.assertTrue(passed(check_rb_identity(op, self.pairs)))
            self.assertTrue(passed(check_lie_form(op, self.pairs)))
            self.assertTrue(passed(check_modified(op, self.pairs)))
            self.assertTrue(passed(check_double_product(op, self.pairs)))
            self.assertTrue(passed(check_image_closure(op, self.pairs)))
            self.assertTrue(passed(check_direct_sum(op, self.grid)))

    def test_complement(self):
        op = pole_projection()
        x = LaurentSeries({-1: 2, 0: 1, 1: 3}, TruncationContext(2), 2)
        self.assertEqual(op.complement(x), LaurentSeries({0: 1, 1: 3}, x.ctx, 2))
        self.assertEqual(op.complement_operator()(x), op.complement(x))
        self.assertTrue(op.complement_operator().claims_idempotent)

    def test_flags(self):
        flags = verify_flags(pole_projection(), self.grid)
        self.assertEqual(flags, {"rota_baxter": True, "idempotent": True, "multiplicative": False,
                                 "filtration_preserving": True})

    def test_modified_operator(self):
        b = modified_operator(pole_projection())
        x = LaurentSeries({-1: 1, 1: 1}, TruncationContext(2), 2)
        self.assertEqual(b(x), LaurentSeries({-1: -1, 1: 1}, x.ctx, 2))


class OperatorTest(unittest.TestCase):
    def test_integral(self):
        op = riemann_integral_operator()
        self.assertEqual(op.weight, 0)
        rng = samples.make_rng(4)
        elements = [samples.random_matrix_poly(rng, 2, 4, low=0) for _ in range(3)]
        pairs = [(x, y) for x in elements for y in elements]
        self.assertTrue(passed(check_rb_identity(op, pairs)))
        self.assertTrue(passed(check_image_closure(op, pairs)))
        with self.assertRaises(FlagError):
            check_direct_sum(op, elements)

    @settings(deadline=None)
    @given(st.integers(0, 10000))
    def test_entrywise_lift(self, seed):
        rng = samples.make_rng(seed)
        x, y = samples.random_triangular(rng, 4), samples.random_triangular(rng, 4)
        self.assertTrue(rb_residual(entrywise_lift(pole_projection()), x, y).is_zero())

    @settings(deadline=None)
    @given(st.integers(0, 10000), st.sampled_from([2, -1, 3]))
    def test_scaled(self, seed, factor):
        # λR is Rota–Baxter of weight λ.
        zero = samples.laurent_zero(6, 6)
        rng = samples.make_rng(seed)
        x = samples.random_laurent(rng, zero, -2, 2)
        y = samples.random_laurent(rng, zero, -2, 2)
        op = scaled(pole_projection(), factor)
        self.assertEqual(op.weight, factor)
        self.assertTrue(rb_residual(op, x, y).is_zero())

    def test_evaluation_morphism(self):
        op = evaluation_morphism()
        rng = samples.make_rng(8)
        elements = [samples.random_matrix_poly(rng, 2, 3, low=0) for _ in range(3)]
        require_multiplicative_idempotent(op, elements)
        flags = verify_flags(op, elements)
        self.assertTrue(all(flags.values()))

    def test_require_multiplicative(self):
        rng = samples.make_rng(9)
        elements = [samples.random_matrix_poly(rng, 2, 3, low=0) for _ in range(2)]
        with self.assertRaises(FlagError):
            require_multiplicative_idempotent(riemann_integral_operator(), elements)

    def test_trivial_operators(self):
        zero = samples.laurent_zero(4, 4)
        grid = samples.laurent_monomials(zero)
        pairs = [(x, y) for x in grid for y in grid]
        for op in (identity_operator(), zero_operator()):
            self.assertTrue(passed(check_rb_identity(op, pairs)))

    def test_antisymmetric_projector_not_rota_baxter(self):
        op = antisymmetric_projector()
        self.assertFalse(op.claims_rota_baxter)
        ctx = TruncationContext(2)
        x = MatrixPolyFunction({1: qmatrix([[0, 1], [0, 0]])}, 2, ctx)
        y = MatrixPolyFunction({1: qmatrix([[0, 0], [1, 0]])}, 2, ctx)
        self.assertFalse(rb_residual(op, x, y).is_zero())
