import unittest

from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ

from src import samples
from src.core import TruncationContext
from src.errors import ParseError, TruncationMismatch
from src.operated import (ApplyP, Generator, OpApply, OperatedPolynomial, OperatedWord, Product, Scaled, Sum,
                          alphabet_of, formal_p, generators, lie_bracket, lyndon_expansion, normalize,
                          parse_polynomial, render_brackets, render_raw)
from src.rota_baxter import parity_projector

CTX = TruncationContext(3)


class OperatedTest(unittest.TestCase):
    """Words, the formal operator P and truncation by degree."""

    def setUp(self):
        self.x, self.y = generators("x y", CTX)

    def test_truncation(self):
        x, y = self.x, self.y
        self.assertEqual(len((x * y * x).terms), 1)
        self.assertTrue((x * y * x * y).is_zero())
        self.assertEqual((x * y).filtration_degree(), 2)

    def test_formal_p(self):
        x, y = self.x, self.y
        px = formal_p(x * y)
        (word,) = px.terms
        self.assertIsInstance(word.atoms[0], OpApply)
        self.assertEqual(word.degree, 2)
        # P is only linear: P(x)P(y) and P(xy) are distinct words.
        self.assertNotEqual(formal_p(x) * formal_p(y), formal_p(x * y))
        self.assertEqual(formal_p(x + y.scale(2)), formal_p(x) + formal_p(y).scale(2))

    def test_minus_count(self):
        z_minus, z_plus = generators(["Z-", "Z+"], CTX, tags=["-", "+"])
        (word,) = (z_minus * formal_p(z_minus * z_plus)).terms
        self.assertEqual(word.minus_count, 2)

    def test_alphabet(self):
        found = alphabet_of(formal_p(self.x) * self.y)
        self.assertEqual(sorted(found), ["x", "y"])
        self.assertEqual(found["x"], Generator(0, "x"))

    def test_normalize(self):
        gx, gy = Generator(0, "x"), Generator(1, "y")
        expr = Sum((Product((gx, gy)), Scaled(2, ApplyP(gx)), 1))
        self.assertEqual(normalize(expr, CTX), self.x * self.y + formal_p(self.x).scale(2) + self.x.unit())
        with self.assertRaises(TruncationMismatch):
            normalize(generators("x", TruncationContext(2))[0], CTX)
        with self.assertRaises(TypeError):
            normalize("x", CTX)


class RenderTest(unittest.TestCase):
    def setUp(self):
        self.x, self.y = generators("x y", CTX)
        self.alphabet = alphabet_of(self.x, self.y)

    def test_raw(self):
        x, y = self.x, self.y
        self.assertEqual(render_raw(x * y - y.scale(QQ(1, 2))), "-1/2*y + x.y")
        self.assertEqual(render_raw(formal_p(x * x) * y.scale(3)), "3*P[x.x].y")
        self.assertEqual(render_raw(x.zero()), "0")
        self.assertEqual(render_raw(x.unit().scale(2) - x), "2 - x")

    def test_brackets(self):
        x, y = self.x, self.y
        self.assertEqual(render_brackets(lie_bracket(x, y)), "[x,y]")
        self.assertEqual(render_brackets(lie_bracket(y, x).scale(2)), "-2*[x,y]")
        self.assertEqual(render_brackets(lie_bracket(x, lie_bracket(x, y))), "[x,[x,y]]")
        # Not a Lie polynomial: the raw form is kept.
        self.assertEqual(render_brackets(x * y), "x.y")
        self.assertIsNone(lyndon_expansion(x * y))

    def test_operator_before_generator(self):
        (a,) = generators("a", CTX)
        c = lie_bracket(formal_p(a), a).scale(QQ(-1, 2))
        self.assertEqual(render_brackets(c), "-1/2*[P[a],a]")

    def test_parse(self):
        x, y = self.x, self.y
        self.assertEqual(parse_polynomial("-1/2*y + x.y", self.alphabet, CTX), x * y - y.scale(QQ(1, 2)))
        self.assertEqual(parse_polynomial("P[x.y] - 2*P[x].y", self.alphabet, CTX),
                         formal_p(x * y) - (formal_p(x) * y).scale(2))
        self.assertEqual(parse_polynomial("1 + x", self.alphabet, CTX), x.unit() + x)
        self.assertTrue(parse_polynomial("0", self.alphabet, CTX).is_zero())

    def test_parse_errors(self):
        for text in ("x + q", "P[x", "x.y.x.y", "x )", ""):
            with self.assertRaises(ParseError):
                parse_polynomial(text, self.alphabet, CTX)

    @settings(deadline=None)
    @given(st.integers(0, 10000))
    def test_raw_form_parses_back(self, seed):
        rng = samples.make_rng(seed)
        a, b = samples.random_operated(rng, 3), samples.random_operated(rng, 3)
        value = a * formal_p(b) - b
        alphabet = alphabet_of(value)
        self.assertEqual(parse_polynomial(render_raw(value), alphabet, value.ctx), value)

    @settings(deadline=None)
    @given(st.integers(0, 10000))
    def test_associative(self, seed):
        rng = samples.make_rng(seed)
        a, b, c = (samples.random_operated(rng, 3) for _ in range(3))
        self.assertEqual((a * b) * c, a * (b * c))


class WordTest(unittest.TestCase):
    def test_sort_key(self):
        x = Generator(0, "x")
        short = OperatedWord((x,))
        long = OperatedWord((x, x))
        wrapped = OperatedWord((OpApply(short),))
        self.assertLess(short.sort_key(), long.sort_key())
        # Generators sort before P[...] of the same degree.
        self.assertLess(short.sort_key(), wrapped.sort_key())
        self.assertEqual(OperatedWord(()).render(), "1")


def atoms_of(*letters: OperatedPolynomial) -> list:
    return [next(iter(g.terms)).atoms[0] for g in letters]


def words_of_degree(letters: list, degree: int, depth: int) -> list:
    """Every word of the given degree over the letters, with P nested at most ``depth`` deep."""
    if degree == 0:
        return [OperatedWord(())]
    result = []
    for k in range(1, degree + 1):
        for first in atoms_of_degree(letters, k, depth):
            for rest in words_of_degree(letters, degree - k, depth):
                result.append(OperatedWord((first,) + rest.atoms))
    return result


def atoms_of_degree(letters: list, k: int, depth: int) -> list:
    atoms = list(letters) if k == 1 else []
    if depth > 0:
        atoms += [OpApply(w) for w in words_of_degree(letters, k, depth - 1)]
    return atoms


class BracketTest(unittest.TestCase):
    """Lie brackets and canonical forms of random operated polynomials."""

    @settings(deadline=None, max_examples=50)
    @given(st.integers(0, 10000))
    def test_jacobi(self, seed):
        rng = samples.make_rng(seed)
        a = samples.random_operated(rng, 6)
        b = formal_p(samples.random_operated(rng, 6))
        c = samples.random_operated(rng, 6) * formal_p(samples.random_operated(rng, 6))
        total = (lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a))
                 + lie_bracket(c, lie_bracket(a, b)))
        self.assertTrue(total.is_zero())

    @staticmethod
    def reassociate(rng, factors: tuple):
        if len(factors) == 1:
            return factors[0]
        k = int(rng.integers(1, len(factors)))
        return Product((BracketTest.reassociate(rng, factors[:k]), BracketTest.reassociate(rng, factors[k:])))

    @settings(deadline=None, max_examples=100)
    @given(st.integers(0, 10000))
    def test_reassociation(self, seed):
        rng = samples.make_rng(seed)
        ctx = TruncationContext(6)
        gx, gy = Generator(0, "x"), Generator(1, "y")
        choices = (gx, gy, ApplyP(gx), ApplyP(Product((gx, gy))), Scaled(QQ(-2, 3), gy), Sum((gx, ApplyP(gy), 1)))
        factors = tuple(choices[int(rng.integers(0, len(choices)))] for _ in range(int(rng.integers(2, 6))))
        flat = normalize(Product(factors), ctx)
        self.assertEqual(normalize(self.reassociate(rng, factors), ctx), flat)
        self.assertEqual(normalize(self.reassociate(rng, factors), ctx), flat)


class ExhaustiveWordTest(unittest.TestCase):
    """Properties checked on every word up to a small degree."""

    def test_formal_p_preserves_degree(self):
        ctx = TruncationContext(4)
        letters = atoms_of(*generators("x y", ctx))
        for degree in range(1, 5):
            words = words_of_degree(letters, degree, 2)
            self.assertEqual(len(words), len(set(words)))
            for w in words:
                image = formal_p(OperatedPolynomial.from_word(w, ctx))
                (wrapped,) = image.terms
                self.assertEqual(wrapped.degree, w.degree)
                self.assertEqual(image.filtration_degree(), degree)

    def test_parity_projector(self):
        ctx = TruncationContext(5)
        letters = atoms_of(*generators(["Z-", "Z+"], ctx, tags=["-", "+"]))
        pi = parity_projector()
        for degree in range(1, 6):
            for w in words_of_degree(letters, degree, 1):
                x = OperatedPolynomial.from_word(w, ctx)
                image = pi(x)
                self.assertEqual(pi(image), image)
                self.assertTrue(image.is_zero() or image.filtration_degree() == degree)
                self.assertEqual(image.is_zero(), w.minus_count % 2 == 0)
        # [g±, g∓] ⊆ g₋ and [g±, g±] ⊆ g₊ on words without P.
        plain = [OperatedPolynomial.from_word(w, ctx) for d in range(1, 5) for w in words_of_degree(letters, d, 0)]
        for u in plain:
            for v in plain:
                if u.filtration_degree() + v.filtration_degree() > 5:
                    continue
                b = lie_bracket(u, v)
                odd = pi(u) == u
                if odd != (pi(v) == v):
                    self.assertEqual(pi(b), b)
                else:
                    self.assertTrue(pi(b).is_zero())
