import unittest

from src.core import TruncationContext
from src.errors import DegreeOverflow, ParseError
from src.trees import (EMPTY_FOREST, LEAF, Forest, HopfElement, admissible_cuts, all_forests, all_trees,
                       antipode, corolla, coproduct, counit, forests_of_degree, ladder, parse_forest,
                       parse_tree, reduced_coproduct, trees_of_degree)

L2 = ladder(2)


def forest(text: str) -> Forest:
    return parse_forest(text)


class TreeTest(unittest.TestCase):
    """Canonical non-planar trees and their literals."""

    def test_counts(self):
        self.assertEqual([len(trees_of_degree(n)) for n in range(1, 6)], [1, 1, 2, 4, 9])
        self.assertEqual(len(forests_of_degree(5)), 20)
        self.assertEqual(len(all_trees(5)), 17)
        self.assertEqual(len(all_forests(5)), 37)
        self.assertEqual(trees_of_degree(0), ())

    def test_render(self):
        self.assertEqual(LEAF.render(), "*")
        self.assertEqual(ladder(3).render(), "*[*[*]]")
        self.assertEqual(corolla(3).render(), "*[* *]")
        self.assertEqual(EMPTY_FOREST.render(), "1")
        self.assertEqual(ladder(4).degree, 4)

    def test_canonical(self):
        # Children order does not matter.
        a = parse_tree("*[*[*] *]")
        b = parse_tree("*[* *[*]]")
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))
        self.assertEqual(a.render(), "*[* *[*]]")
        self.assertNotEqual(ladder(3), corolla(3))

    def test_parse_forest(self):
        f = parse_forest("*[*] *")
        self.assertEqual(len(f), 2)
        self.assertEqual(f.degree, 3)
        self.assertEqual(f, Forest((LEAF, L2)))
        self.assertEqual(f.render(), "* *[*]")
        self.assertTrue(parse_forest("1").is_unit())
        for tree in all_trees(5):
            self.assertEqual(parse_tree(tree.render()), tree)

    def test_parse_errors(self):
        for text in ("", "*[*", "*]", "x", "*[*] 1", "[*]"):
            with self.assertRaises(ParseError):
                parse_forest(text)
        with self.assertRaises(ParseError):
            parse_tree("* *")


class CoproductTest(unittest.TestCase):
    def test_ladder(self):
        terms = coproduct(Forest.of(L2))
        self.assertEqual(terms, (((EMPTY_FOREST, Forest.of(L2)), 1),
                                 ((Forest.of(LEAF), Forest.of(LEAF)), 1),
                                 ((Forest.of(L2), EMPTY_FOREST), 1)))

    def test_corolla(self):
        # Δ'(*[* *]) = 2 * ⊗ *[*] + * * ⊗ *
        reduced = dict(reduced_coproduct(Forest.of(corolla(3))))
        self.assertEqual(reduced, {(forest("*"), forest("*[*]")): 2, (forest("* *"), forest("*")): 1})
        self.assertEqual(len(admissible_cuts(corolla(3))), 3)

    def test_multiplicative(self):
        terms = dict(coproduct(forest("* *")))
        self.assertEqual(terms, {(EMPTY_FOREST, forest("* *")): 1, (forest("*"), forest("*")): 2,
                                 (forest("* *"), EMPTY_FOREST): 1})
        self.assertEqual(coproduct(EMPTY_FOREST), (((EMPTY_FOREST, EMPTY_FOREST), 1),))

    def test_counit(self):
        self.assertEqual(counit(EMPTY_FOREST), 1)
        self.assertEqual(counit(forest("*")), 0)


class AntipodeTest(unittest.TestCase):
    def test_small_trees(self):
        ctx = TruncationContext(3)
        self.assertEqual(antipode(forest("*"), ctx), HopfElement({forest("*"): -1}, ctx))
        self.assertEqual(antipode(Forest.of(L2), ctx),
                         HopfElement({Forest.of(L2): -1, forest("* *"): 1}, ctx))
        self.assertEqual(antipode(Forest.of(corolla(3)), ctx),
                         HopfElement({forest("*[* *]"): -1, forest("* *[*]"): 2, forest("* * *"): -1}, ctx))
        self.assertEqual(antipode(EMPTY_FOREST, ctx), HopfElement({EMPTY_FOREST: 1}, ctx))

    def test_involution(self):
        # The algebra is commutative, so S∘S = id.
        ctx = TruncationContext(4)
        for f in all_forests(4):
            element = HopfElement.from_forest(f, ctx)
            self.assertEqual(element.antipode().antipode(), element)


class HopfElementTest(unittest.TestCase):
    def test_product(self):
        ctx = TruncationContext(3)
        dot = HopfElement.from_forest(forest("*"), ctx)
        ladder2 = HopfElement.from_forest(Forest.of(L2), ctx)
        self.assertEqual(dot * ladder2, HopfElement.from_forest(forest("* *[*]"), ctx))
        self.assertTrue((ladder2 * ladder2).is_zero())
        self.assertEqual(dot.filtration_degree(), 1)
        self.assertEqual(str(dot.unit() - ladder2), "1 - *[*]")
        self.assertEqual(str((dot * dot).scale(3)), "3*(* *)")

    def test_coproduct(self):
        ctx = TruncationContext(2)
        element = HopfElement.from_forest(Forest.of(L2), ctx)
        self.assertEqual(element.coproduct()[(forest("*"), forest("*"))], 1)
        self.assertEqual(element.counit(), 0)
        self.assertEqual(element.unit().counit(), 1)

    def test_degree_cap(self):
        with self.assertRaises(DegreeOverflow):
            HopfElement.from_forest(Forest.of(ladder(3)), TruncationContext(2))
