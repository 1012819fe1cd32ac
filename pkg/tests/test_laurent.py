import unittest

from sympy.polys.domains import QQ

from src.core import INFINITY, TruncationContext
from src.errors import DegreeOverflow, ParseError, PoleOverflow
from src.laurent import LaurentSeries, format_laurent, parse_laurent

CTX = TruncationContext(3)


def laurent(coeffs: dict, pole_cap: int = 3) -> LaurentSeries:
    return LaurentSeries(coeffs, CTX, pole_cap)


class LaurentTest(unittest.TestCase):
    """Laurent series with a pole cap, guard terms and tracked precision."""

    def test_parts(self):
        x = laurent({-2: 1, -1: QQ(1, 2), 0: 3, 2: -1})
        self.assertEqual(x.pole_part(), laurent({-2: 1, -1: QQ(1, 2)}))
        self.assertEqual(x.regular_part(), laurent({0: 3, 2: -1}))
        self.assertEqual(x.pole_part() + x.regular_part(), x)
        self.assertTrue(x.has_pole())
        self.assertEqual(x.pole_order(), 2)
        self.assertEqual(x.filtration_degree(), -2)
        self.assertEqual(x.coefficient(5), 0)

    def test_product(self):
        x = laurent({-1: 1, 0: 1})
        self.assertEqual(x * x, laurent({-2: 1, -1: 2, 0: 1}))

    def test_pole_overflow(self):
        x = laurent({-2: 1})
        with self.assertRaises(PoleOverflow):
            x * x
        with self.assertRaises(PoleOverflow):
            laurent({-4: 1})

    def test_guard_terms(self):
        # ε^4 is outside the window but kept, so a pole brings it back exactly.
        x = laurent({2: 1})
        product = x * x
        self.assertTrue(product.is_zero())
        self.assertFalse(product.vanishes())
        self.assertEqual(product * laurent({-1: 1}), laurent({3: 1}))
        self.assertEqual(laurent({-1: 1, 4: 1}).pole_part(), laurent({-1: 1}))
        self.assertEqual(laurent({-1: 1, 4: 1}).window(), {-1: 1})

    def test_precision(self):
        # ε^9 is past the guard terms, so the cube is exact only through ε^6.
        cube = laurent({3: 1}) ** 3
        self.assertEqual(cube.precision, 6)
        self.assertTrue(cube.is_zero())
        shifted = cube * laurent({-3: 1})
        self.assertEqual(shifted.precision, 3)
        self.assertTrue(shifted.is_zero())
        lost = shifted * laurent({-1: 1})
        self.assertEqual(lost.precision, 2)
        self.assertEqual(format_laurent(lost), "0 + O(eps^3)")
        with self.assertRaises(DegreeOverflow):
            lost.is_zero()
        with self.assertRaises(DegreeOverflow):
            lost.coefficient(3)
        self.assertEqual(lost.coefficient(2), 0)
        self.assertEqual(lost.pole_part(), laurent({}))

    def test_pole_times_high_term(self):
        # (ε^-1 + ε^3)^2 = ε^-2 + 2ε^2 + ε^6 with q = 5.
        ctx = TruncationContext(5)
        x = LaurentSeries({-1: 1, 3: 1}, ctx, 5)
        self.assertEqual(x ** 2, LaurentSeries({-2: 1, 2: 2}, ctx, 5))
        self.assertEqual((x ** 2).precision, INFINITY)
        # At q = 3 the ε^9 term is dropped and the window stays exact.
        y = laurent({-1: 1, 3: 1})
        self.assertEqual(y ** 3, laurent({-3: 1, 1: 3}))
        self.assertEqual((y ** 3).precision, 6)

    def test_compatible(self):
        self.assertFalse(laurent({0: 1}).compatible(laurent({0: 1}, pole_cap=2)))
        self.assertNotEqual(laurent({0: 1}), laurent({0: 1}, pole_cap=2))

    def test_format(self):
        self.assertEqual(format_laurent(laurent({-2: QQ(-1, 2), 0: 1, 1: 3})), "-1/2*eps^-2 + 1 + 3*eps")
        self.assertEqual(format_laurent(laurent({})), "0")
        self.assertEqual(str(laurent({-1: 1, 1: -1})), "eps^-1 - eps")

    def test_parse(self):
        for text in ("-1/2*eps^-2 + 1 + 3*eps", "eps^-1 - eps", "0", "2/3"):
            self.assertEqual(format_laurent(parse_laurent(text, CTX, 3)), text)
        self.assertEqual(parse_laurent("eps + eps", CTX, 3), laurent({1: 2}))
        with self.assertRaises(ParseError):
            parse_laurent("", CTX)
        with self.assertRaises(ParseError):
            parse_laurent("x^2", CTX)
