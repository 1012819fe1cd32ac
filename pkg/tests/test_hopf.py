import unittest

from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ

from src import samples
from src.bch import chi
from src.core import exp, log
from src.errors import NotCharacter, TargetMismatch
from src.hopf import (birkhoff_decompose, birkhoff_exponent, birkhoff_spitzer, brute_force_even_odd, character,
                      check_hopf_axioms, check_parity_closure, chi_closed_involutive, convolution_inverse,
                      counterterm, delta, even_odd_decompose, grading_involution, infinitesimal_character,
                      is_character, is_infinitesimal, is_pole_free, laurent_target, minimal_subtraction,
                      odd_part_closed, odd_projector, phi_plus_direct, preparation_map, rbar_map, renormalized)
from src.laurent import LaurentSeries
from src.rota_baxter import rb_residual
from src.trees import LEAF, ladder, parse_forest

L2 = ladder(2)


def laurent(coeffs: dict, degree: int) -> LaurentSeries:
    zero = laurent_target(degree)
    return LaurentSeries(coeffs, zero.ctx, zero.pole_cap)


class ConvolutionTest(unittest.TestCase):
    """The convolution product on functionals of forests."""

    def test_delta_square(self):
        d = delta(LEAF, 3)
        square = d * d
        self.assertEqual(square(L2), 1)
        self.assertEqual(square(parse_forest("* *")), 2)
        self.assertEqual(square(LEAF), 0)
        self.assertTrue(is_infinitesimal(d))
        self.assertFalse(is_infinitesimal(square))

    def test_unit(self):
        phi = character({LEAF: 2, L2: 3}, 3)
        self.assertEqual(phi * phi.unit(), phi)
        self.assertEqual(phi.unit() * phi, phi)
        self.assertEqual(phi(parse_forest("* *[*]")), 6)
        self.assertTrue(is_character(phi))

    @settings(deadline=None, max_examples=20)
    @given(st.integers(0, 10000))
    def test_inverse(self, seed):
        phi = samples.random_character(samples.make_rng(seed), 4)
        self.assertEqual(convolution_inverse(phi) * phi, phi.unit())
        self.assertEqual(exp(log(phi)), phi)
        self.assertTrue(is_infinitesimal(log(phi)))

    def test_errors(self):
        with self.assertRaises(NotCharacter):
            convolution_inverse(delta(LEAF, 3))
        with self.assertRaises(TargetMismatch):
            delta(LEAF, 3) + delta(LEAF, 3, laurent_target(3))

    def test_odd_projector_not_rota_baxter(self):
        d = delta(LEAF, 3)
        residual = rb_residual(odd_projector(), d, d)
        self.assertEqual(residual, d * d)
        self.assertFalse(residual.is_zero())


class HopfAxiomTest(unittest.TestCase):
    def test_axioms(self):
        self.assertTrue(all(r.passed for r in check_hopf_axioms(4)))
        self.assertTrue(all(r.passed for r in check_parity_closure(4)))


class EvenOddTest(unittest.TestCase):
    @settings(deadline=None, max_examples=10)
    @given(st.integers(0, 10000))
    def test_decomposition(self, seed):
        phi = samples.random_character(samples.make_rng(seed), 4)
        phi_minus, phi_plus = even_odd_decompose(phi)
        self.assertEqual(phi_minus * phi_plus, phi)
        self.assertEqual(grading_involution(phi_minus), convolution_inverse(phi_minus))
        self.assertEqual(grading_involution(phi_plus), phi_plus)
        self.assertEqual(brute_force_even_odd(phi), (phi_minus, phi_plus))

    @settings(deadline=None, max_examples=10)
    @given(st.integers(0, 10000))
    def test_closed_forms(self, seed):
        z = log(samples.random_character(samples.make_rng(seed), 4))
        x = chi(z, odd_projector())
        self.assertEqual(odd_part_closed(z), odd_projector()(x))
        self.assertEqual(chi_closed_involutive(z), x)

    def test_even_character(self):
        phi = character({L2: QQ(1, 2)}, 4)
        phi_minus, phi_plus = even_odd_decompose(phi)
        self.assertEqual(phi_minus, phi.unit())
        self.assertEqual(phi_plus, phi)


class BirkhoffTest(unittest.TestCase):
    """Minimal subtraction on characters with Laurent values."""

    def setUp(self):
        self.phi = character({LEAF: laurent({-1: 1}, 2), L2: laurent({-2: QQ(1, 2)}, 2)}, 2, laurent_target(2))

    def test_counterterm(self):
        minus = counterterm(self.phi)
        self.assertEqual(minus(LEAF), laurent({-1: -1}, 2))
        self.assertEqual(minus(L2), laurent({-2: QQ(1, 2)}, 2))
        plus = renormalized(self.phi)
        self.assertTrue(plus(LEAF).is_zero())
        self.assertTrue(plus(L2).is_zero())
        self.assertEqual(birkhoff_decompose(self.phi), (minus, plus))

    def test_primitive(self):
        phi = character({LEAF: laurent({-1: 1, 0: 1}, 3)}, 3, laurent_target(3))
        minus, plus = birkhoff_decompose(phi)
        self.assertEqual(minus(LEAF), laurent({-1: -1}, 3))
        self.assertEqual(plus(LEAF), laurent({0: 1}, 3))

    def test_high_terms_next_to_pole(self):
        # ε^3 sits at the top of the window, so products with the pole need the guard terms.
        phi = character({LEAF: laurent({-1: 1, 3: 1}, 3)}, 3, laurent_target(3))
        x = birkhoff_exponent(phi)
        minus, plus = birkhoff_decompose(phi, x)
        self.assertEqual(minus(LEAF), laurent({-1: -1}, 3))
        self.assertEqual(plus(LEAF), laurent({3: 1}, 3))
        self.assertEqual(convolution_inverse(minus) * plus, phi)
        self.assertEqual(counterterm(phi), minus)
        self.assertEqual(birkhoff_spitzer(phi), (minus, plus))
        self.assertEqual(renormalized(phi, minus), plus)
        self.assertEqual(rbar_map(phi, x), phi.unit() - preparation_map(phi, minus))
        self.assertTrue(is_pole_free(plus))

    @settings(deadline=None, max_examples=8)
    @given(st.integers(0, 10000))
    def test_routes_agree(self, seed):
        phi = samples.random_character(samples.make_rng(seed), 3, laurent=True)
        phi_minus, phi_plus = birkhoff_decompose(phi)
        one = phi.unit()
        op = minimal_subtraction()
        self.assertEqual(convolution_inverse(phi_minus) * phi_plus, phi)
        self.assertEqual(birkhoff_spitzer(phi), (phi_minus, phi_plus))
        self.assertEqual(counterterm(phi), phi_minus)
        self.assertEqual(phi_plus_direct(phi), phi_plus)
        self.assertTrue(is_pole_free(phi_plus))
        self.assertEqual(op(phi_minus - one), phi_minus - one)
        rbar = rbar_map(phi)
        self.assertEqual(op(rbar), phi_minus - one)
        self.assertEqual(rbar, one - preparation_map(phi))

    def test_infinitesimal_values(self):
        f = infinitesimal_character({LEAF: laurent({-1: 2}, 2)}, 2, laurent_target(2))
        self.assertEqual(minimal_subtraction()(f), f)
        self.assertEqual(f.tree_values(), {"*": str(laurent({-1: 2}, 2))})
