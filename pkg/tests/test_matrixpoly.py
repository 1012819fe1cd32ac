import unittest

from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ

from src import samples
from src.core import TruncationContext, exp
from src.errors import DegreeOverflow
from src.matrixpoly import MatrixPolyFunction, evaluate_at_zero, riemann_integral
from src.qmatrix import (antisymmetric_part, format_matrix, is_zero_matrix, matrices_equal, qeye, qmatrix,
                         qscale, symmetric_part)

CTX = TruncationContext(3)


class QMatrixTest(unittest.TestCase):
    """Exact rational matrices on numpy object arrays."""

    def test_build(self):
        m = qmatrix([[1, "1/2"], [0, QQ(-3, 4)]])
        self.assertEqual(m[0, 1], QQ(1, 2))
        self.assertEqual(format_matrix(m), "[[1, 1/2], [0, -3/4]]")
        with self.assertRaises(ValueError):
            qmatrix([[1, 2], [3]])
        with self.assertRaises(ValueError):
            qmatrix([])

    def test_parts(self):
        m = qmatrix([[1, 2], [0, 3]])
        self.assertTrue(matrices_equal(symmetric_part(m), qmatrix([[1, 1], [1, 3]])))
        self.assertTrue(matrices_equal(antisymmetric_part(m), qmatrix([[0, 1], [-1, 0]])))
        self.assertTrue(matrices_equal(symmetric_part(m) + antisymmetric_part(m), m))
        self.assertTrue(is_zero_matrix(qscale(m, 0)))
        self.assertTrue(matrices_equal(m @ qeye(2), m))


class MatrixPolyTest(unittest.TestCase):
    def test_product(self):
        a = qmatrix([[0, 1], [0, 0]])
        f = MatrixPolyFunction({1: a}, 2, CTX)
        # a is nilpotent, so f² vanishes.
        self.assertTrue((f * f).is_zero())
        g = MatrixPolyFunction({0: qeye(2), 2: a}, 2, CTX)
        self.assertEqual(f * g, MatrixPolyFunction({1: a, 3: a @ a}, 2, CTX))
        self.assertEqual(str(f), "[[0, 1], [0, 0]]*x")

    def test_truncation(self):
        f = MatrixPolyFunction.from_rows({2: [[1, 0], [0, 1]]}, CTX)
        self.assertTrue((f * f).is_zero())
        self.assertEqual(f.truncated_to(5) * f.truncated_to(5),
                         MatrixPolyFunction.from_rows({4: [[1, 0], [0, 1]]}, TruncationContext(5)))
        with self.assertRaises(ValueError):
            MatrixPolyFunction({-1: qeye(2)}, 2, CTX)

    def test_variable(self):
        f = MatrixPolyFunction({1: qeye(2)}, 2, CTX, variable="t")
        self.assertFalse(f.compatible(MatrixPolyFunction({1: qeye(2)}, 2, CTX)))
        self.assertEqual(str(f), "[[1, 0], [0, 1]]*t")

    def test_integral(self):
        f = MatrixPolyFunction.from_rows({0: [[1, 0], [0, 2]], 1: [[2, 2], [0, 0]]}, CTX)
        self.assertEqual(riemann_integral(f),
                         MatrixPolyFunction.from_rows({1: [[1, 0], [0, 2]], 2: [[1, 1], [0, 0]]}, CTX))
        top = MatrixPolyFunction({3: qeye(2)}, 2, CTX)
        with self.assertRaises(DegreeOverflow):
            riemann_integral(top)
        self.assertTrue(riemann_integral(top, truncate=True).is_zero())

    def test_evaluate_at_zero(self):
        f = MatrixPolyFunction.from_rows({0: [[1, 2], [3, 4]], 2: [[1, 1], [1, 1]]}, CTX)
        self.assertEqual(evaluate_at_zero(f), MatrixPolyFunction.from_rows({0: [[1, 2], [3, 4]]}, CTX))

    @settings(deadline=None)
    @given(st.integers(0, 10000))
    def test_integral_rota_baxter(self, seed):
        # I(f)I(g) = I(I(f)g + fI(g)) in the truncated algebra.
        rng = samples.make_rng(seed)
        f = samples.random_matrix_poly(rng, 2, 3, low=0)
        g = samples.random_matrix_poly(rng, 2, 3, low=0)

        def integral(h):
            return riemann_integral(h, truncate=True)

        self.assertEqual(integral(f) * integral(g), integral(integral(f) * g + f * integral(g)))

    def test_exp_nilpotent(self):
        a = qmatrix([[0, 1], [0, 0]])
        f = MatrixPolyFunction({1: a}, 2, CTX)
        self.assertEqual(exp(f), f.unit() + f)
