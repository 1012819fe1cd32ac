"""The Hopf algebra of non-planar rooted trees: canonical trees, forests, cuts, coproduct and antipode."""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterable, Mapping, Optional

from .core import INFINITY, Degree, FilteredElement, Rational, Scalar, TruncationContext, format_rational, rational
from .errors import DegreeOverflow, ParseError


class RootedTree:
    """
    A non-planar rooted tree, stored as the sorted tuple of the subtrees
    hanging off its root. Two trees are equal iff they are isomorphic.
    """

    __slots__ = ("children", "degree", "key", "_hash")

    children: tuple
    # Number of vertices
    degree: int
    # Canonical sort key: (degree, keys of the children)
    key: tuple

    def __init__(self, children: Iterable[RootedTree] = ()):
        self.children = tuple(sorted(children, key=lambda t: t.key))
        self.degree = 1 + sum(c.degree for c in self.children)
        self.key = (self.degree, tuple(c.key for c in self.children))
        self._hash = hash(self.key)

    def render(self) -> str:
        if not self.children:
            return "*"
        return "*[" + " ".join(c.render() for c in self.children) + "]"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootedTree) and self._hash == other._hash and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: RootedTree) -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"RootedTree({self.render()})"

    def __str__(self) -> str:
        return self.render()


class Forest:
    """A multiset of rooted trees; the empty forest is the unit 1."""

    __slots__ = ("trees", "degree", "key", "_hash")

    trees: tuple
    degree: int
    key: tuple

    def __init__(self, trees: Iterable[RootedTree] = ()):
        self.trees = tuple(sorted(trees, key=lambda t: t.key))
        self.degree = sum(t.degree for t in self.trees)
        self.key = (self.degree, len(self.trees), tuple(t.key for t in self.trees))
        self._hash = hash(self.key)

    @classmethod
    def of(cls, tree: RootedTree) -> Forest:
        return cls((tree,))

    def is_unit(self) -> bool:
        return not self.trees

    def is_tree(self) -> bool:
        return len(self.trees) == 1

    def __mul__(self, other: Forest) -> Forest:
        return Forest(self.trees + other.trees)

    def render(self) -> str:
        if not self.trees:
            return "1"
        return " ".join(t.render() for t in self.trees)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Forest) and self._hash == other._hash and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Forest) -> bool:
        return self.key < other.key

    def __len__(self) -> int:
        return len(self.trees)

    def __repr__(self) -> str:
        return f"Forest({self.render()})"

    def __str__(self) -> str:
        return self.render()


EMPTY_FOREST = Forest(())
LEAF = RootedTree(())


# Tree literals: `*` is a vertex, `*[t1 t2 ...]` a root carrying subtrees,
# a forest is a whitespace separated list of trees and `1` the empty forest.

_LITERAL = re.compile(r"\s*(\*|\[|\]|1)")


def _tokens(text: str) -> list:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _LITERAL.match(text, pos)
        if not m:
            raise ParseError(f"Invalid tree literal {text!r} at column {pos + 1}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _parse_trees(tokens: list, pos: int, text: str) -> tuple:
    trees = []
    while pos < len(tokens) and tokens[pos] == "*":
        pos += 1
        children: list = []
        if pos < len(tokens) and tokens[pos] == "[":
            children, pos = _parse_trees(tokens, pos + 1, text)
            if pos >= len(tokens) or tokens[pos] != "]":
                raise ParseError(f"Unbalanced brackets in tree literal {text!r}")
            pos += 1
        trees.append(RootedTree(children))
    return trees, pos


def parse_forest(text: str) -> Forest:
    tokens = _tokens(text)
    if tokens == ["1"]:
        return EMPTY_FOREST
    trees, pos = _parse_trees(tokens, 0, text)
    if pos != len(tokens) or not trees:
        raise ParseError(f"Invalid tree literal {text!r}")
    return Forest(trees)


def parse_tree(text: str) -> RootedTree:
    forest = parse_forest(text)
    if not forest.is_tree():
        raise ParseError(f"{text!r} is a forest of {len(forest)} trees, expected one tree")
    return forest.trees[0]


def ladder(n: int) -> RootedTree:
    """The chain with n vertices."""
    result = LEAF
    for _ in range(n - 1):
        result = RootedTree((result,))
    return result


def corolla(n: int) -> RootedTree:
    """A root carrying n - 1 leaves."""
    return RootedTree((LEAF,) * (n - 1))


# Enumeration.


@lru_cache(maxsize=None)
def trees_of_degree(n: int) -> tuple:
    """All trees with exactly n vertices, in canonical order."""
    if n < 1:
        return ()
    return tuple(sorted(RootedTree(f.trees) for f in forests_of_degree(n - 1)))


@lru_cache(maxsize=None)
def forests_of_degree(n: int) -> tuple:
    """All forests with exactly n vertices, in canonical order."""
    if n == 0:
        return (EMPTY_FOREST,)
    result = set()
    # A forest is a multiset of trees; group by the multiset of tree sizes.
    for parts in _partitions(n, n):
        pools = [trees_of_degree(size) for size in parts]
        for choice in _multiset_choices(parts, pools):
            result.add(Forest(choice))
    return tuple(sorted(result))


def _partitions(n: int, largest: int) -> list:
    if n == 0:
        return [()]
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return result


def _multiset_choices(parts: tuple, pools: list) -> list:
    # Equal sizes draw with replacement from the same pool, without order.
    groups: dict = {}
    for size, pool in zip(parts, pools):
        groups.setdefault(size, [pool, 0])[1] += 1
    options = [list(combinations_with_replacement(pool, count)) for pool, count in groups.values()]
    return [sum(choice, ()) for choice in product(*options)]


def all_trees(max_degree: int) -> tuple:
    return tuple(t for n in range(1, max_degree + 1) for t in trees_of_degree(n))


def all_forests(max_degree: int) -> tuple:
    return tuple(f for n in range(0, max_degree + 1) for f in forests_of_degree(n))


# Admissible cuts and the coproduct.


@lru_cache(maxsize=None)
def _cuts_keeping_root(tree: RootedTree) -> tuple:
    """
    Every admissible cut (including the empty one) as (pruned trees, trunk).

    The trunk is the part still attached to the root.
    """
    per_child = []
    for child in tree.children:
        options = [((child,), None)]
        options.extend(_cuts_keeping_root(child))
        per_child.append(options)
    result = []
    for choice in product(*per_child):
        pruned: tuple = ()
        kept = []
        for cut_off, trunk in choice:
            pruned += cut_off
            if trunk is not None:
                kept.append(trunk)
        result.append((pruned, RootedTree(kept)))
    return tuple(result)


def admissible_cuts(tree: RootedTree) -> list:
    """The non-trivial cuts of a tree as (pruned forest, trunk) pairs, with repetition."""
    return [(Forest(pruned), trunk) for pruned, trunk in _cuts_keeping_root(tree) if pruned]


@lru_cache(maxsize=None)
def tree_coproduct(tree: RootedTree) -> tuple:
    """Δ(t) = t⊗1 + 1⊗t + sum over cuts P^c(t) ⊗ R^c(t), as ((left, right), multiplicity) pairs."""
    terms: dict = {(Forest.of(tree), EMPTY_FOREST): 1}
    for pruned, trunk in _cuts_keeping_root(tree):
        key = (Forest(pruned), Forest.of(trunk))
        terms[key] = terms.get(key, 0) + 1
    return tuple(sorted(terms.items(), key=lambda item: (item[0][0].key, item[0][1].key)))


@lru_cache(maxsize=None)
def coproduct(forest: Forest) -> tuple:
    """The coproduct of a forest, multiplicative over its trees."""
    terms: dict = {(EMPTY_FOREST, EMPTY_FOREST): 1}
    for tree in forest.trees:
        step: dict = {}
        for (left, right), m in terms.items():
            for (l2, r2), m2 in tree_coproduct(tree):
                key = (left * l2, right * r2)
                step[key] = step.get(key, 0) + m * m2
        terms = step
    return tuple(sorted(terms.items(), key=lambda item: (item[0][0].key, item[0][1].key)))


def reduced_coproduct(forest: Forest) -> list:
    """The coproduct terms with both sides of positive degree."""
    return [(pair, m) for pair, m in coproduct(forest)
            if not pair[0].is_unit() and not pair[1].is_unit()]


def counit(forest: Forest) -> int:
    return 1 if forest.is_unit() else 0


# Linear combinations of forests.


class HopfElement(FilteredElement):
    """
    A rational linear combination of forests of degree at most D.

    Graded by the number of vertices; the product is the disjoint union.
    """

    terms: dict
    ctx: TruncationContext

    def __init__(self, terms: Mapping[Forest, Scalar], ctx: TruncationContext):
        self.ctx = ctx
        self.terms = {f: rational(c) for f, c in terms.items() if c != 0 and f.degree <= ctx.order}

    @classmethod
    def from_forest(cls, forest: Forest, ctx: TruncationContext, c: Scalar = 1) -> HopfElement:
        if forest.degree > ctx.order:
            raise DegreeOverflow(f"Forest {forest} of degree {forest.degree} exceeds the degree cap {ctx.order}")
        return cls({forest: c}, ctx)

    def filtration_degree(self) -> Degree:
        if not self.terms:
            return INFINITY
        return min(f.degree for f in self.terms)

    def unit(self) -> HopfElement:
        return HopfElement({EMPTY_FOREST: 1}, self.ctx)

    def zero(self) -> HopfElement:
        return HopfElement({}, self.ctx)

    def is_zero(self) -> bool:
        return not self.terms

    def compatible(self, other) -> bool:
        return isinstance(other, HopfElement) and other.ctx == self.ctx

    def scale(self, c: Scalar) -> HopfElement:
        c = rational(c)
        return HopfElement({f: c * v for f, v in self.terms.items()}, self.ctx)

    def _add(self, other: HopfElement) -> HopfElement:
        result = dict(self.terms)
        for f, c in other.terms.items():
            result[f] = result.get(f, 0) + c
        return HopfElement(result, self.ctx)

    def _mul(self, other: HopfElement) -> HopfElement:
        result: dict = {}
        for f1, c1 in self.terms.items():
            for f2, c2 in other.terms.items():
                if f1.degree + f2.degree > self.ctx.order:
                    continue
                f = f1 * f2
                result[f] = result.get(f, 0) + c1 * c2
        return HopfElement(result, self.ctx)

    def degree_part(self, k: int) -> HopfElement:
        return HopfElement({f: c for f, c in self.terms.items() if f.degree == k}, self.ctx)

    def coefficient(self, forest: Forest) -> Rational:
        return self.terms.get(forest, rational(0))

    def coproduct(self) -> dict:
        """Δ extended linearly, as {(left, right): coefficient}."""
        result: dict = {}
        for f, c in self.terms.items():
            for pair, m in coproduct(f):
                result[pair] = result.get(pair, 0) + c * m
        return {pair: c for pair, c in result.items() if c != 0}

    def counit(self) -> Rational:
        return self.coefficient(EMPTY_FOREST)

    def antipode(self) -> HopfElement:
        result = self.zero()
        for f, c in self.terms.items():
            result = result + antipode(f, self.ctx).scale(c)
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HopfElement) and self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"HopfElement({self}, degree={self.ctx.order})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for f in sorted(self.terms):
            c = self.terms[f]
            body = f.render() if f.trees else ""
            if not body:
                text = format_rational(c)
            elif c == 1:
                text = f"({body})" if len(f) > 1 else body
            elif c == -1:
                text = f"-({body})" if len(f) > 1 else f"-{body}"
            else:
                text = f"{format_rational(c)}*({body})" if len(f) > 1 else f"{format_rational(c)}*{body}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _tree_antipode(tree: RootedTree, order: int) -> tuple:
    # S(t) = -t - sum over non-trivial cuts S(P^c) R^c
    ctx = TruncationContext(order)
    result = HopfElement({Forest.of(tree): -1}, ctx)
    for pruned, trunk in admissible_cuts(tree):
        result = result - antipode(pruned, ctx) * HopfElement.from_forest(Forest.of(trunk), ctx)
    return tuple(result.terms.items())


def antipode(forest: Forest, ctx: Optional[TruncationContext] = None) -> HopfElement:
    """S on a forest, multiplicative since the algebra is commutative."""
    ctx = ctx or TruncationContext(max(forest.degree, 1))
    result = HopfElement({EMPTY_FOREST: 1}, ctx)
    for tree in forest.trees:
        result = result * HopfElement(dict(_tree_antipode(tree, ctx.order)), ctx)
    return result
