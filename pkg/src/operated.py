"""The free associative algebra over the rationals with one formal linear operator P."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

from .core import (INFINITY, Degree, FilteredElement, Rational, Scalar, TruncationContext,
                   bracket, format_rational, is_scalar, rational)
from .errors import ParseError, TruncationMismatch

Tag = Optional[str]


@dataclass(frozen=True)
class Generator:
    """A letter of the alphabet; ``grade`` is its filtration degree."""

    index: int
    name: str
    grade: int = 1
    # '+' or '-' for the polar parity split, None otherwise
    tag: Tag = None

    @property
    def degree(self) -> int:
        return self.grade

    def sort_key(self) -> tuple:
        return (0, self.index)

    def render(self) -> str:
        return self.name


class OpApply:
    """The formal operator applied to a single basis word, P[w]."""

    __slots__ = ("word", "_hash")

    word: OperatedWord

    def __init__(self, word: OperatedWord):
        self.word = word
        self._hash = hash(("P", word))

    @property
    def degree(self) -> int:
        return self.word.degree

    def sort_key(self) -> tuple:
        return (1, self.word.sort_key())

    def render(self) -> str:
        return f"P[{self.word.render()}]"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OpApply) and self._hash == other._hash and self.word == other.word

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return self.render()


Atom = Union[Generator, OpApply]


class OperatedWord:
    """
    A basis word: a tuple of atoms.

    The degree is the sum of the grades of all generators, counted inside
    P[...] as well. The empty word is the unit.
    """

    atoms: tuple
    degree: int

    def __init__(self, atoms: Sequence[Atom] = (), degree: Optional[int] = None):
        self.atoms = tuple(atoms)
        self.degree = sum(atom.degree for atom in self.atoms) if degree is None else degree
        self._hash = hash(self.atoms)

    @cached_property
    def _key(self) -> tuple:
        return (self.degree, len(self.atoms), tuple(atom.sort_key() for atom in self.atoms))

    def sort_key(self) -> tuple:
        """Graded, then length-lexicographic; generators before P[...]."""
        return self._key

    @cached_property
    def minus_count(self) -> int:
        """Number of generators tagged '-', counted recursively."""
        count = 0
        for atom in self.atoms:
            if isinstance(atom, OpApply):
                count += atom.word.minus_count
            elif atom.tag == "-":
                count += 1
        return count

    def concat(self, other: OperatedWord) -> OperatedWord:
        return OperatedWord(self.atoms + other.atoms, self.degree + other.degree)

    def render(self) -> str:
        if not self.atoms:
            return "1"
        return ".".join(atom.render() for atom in self.atoms)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, OperatedWord) and self._hash == other._hash
                and self.atoms == other.atoms)

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.atoms)

    def __repr__(self) -> str:
        return f"OperatedWord({self.render()})"


EMPTY_WORD = OperatedWord(())


class OperatedPolynomial(FilteredElement):
    """
    A finite rational combination of operated words, truncated at ``ctx.order``.

    Zero coefficients are never stored and every stored word has degree at
    most the truncation order. The filtration degree is the least word degree.
    """

    terms: dict
    ctx: TruncationContext

    def __init__(self, terms: Mapping[OperatedWord, Scalar], ctx: TruncationContext):
        self.ctx = ctx
        self.terms = {word: rational(c) for word, c in terms.items()
                      if c != 0 and word.degree <= ctx.order}

    @classmethod
    def from_word(cls, word: OperatedWord, ctx: TruncationContext,
                  coefficient: Scalar = 1) -> OperatedPolynomial:
        return cls({word: coefficient}, ctx)

    @classmethod
    def one(cls, ctx: TruncationContext) -> OperatedPolynomial:
        return cls({EMPTY_WORD: 1}, ctx)

    @cached_property
    def _by_degree(self) -> dict:
        buckets: dict = {}
        for word, c in self.terms.items():
            buckets.setdefault(word.degree, []).append((word, c))
        return buckets

    def filtration_degree(self) -> Degree:
        if not self.terms:
            return INFINITY
        return min(word.degree for word in self.terms)

    def unit(self) -> OperatedPolynomial:
        return OperatedPolynomial.one(self.ctx)

    def zero(self) -> OperatedPolynomial:
        return OperatedPolynomial({}, self.ctx)

    def is_zero(self) -> bool:
        return not self.terms

    def compatible(self, other) -> bool:
        return isinstance(other, OperatedPolynomial) and other.ctx == self.ctx

    def scale(self, c: Scalar) -> OperatedPolynomial:
        c = rational(c)
        if c == 0:
            return self.zero()
        return OperatedPolynomial({w: c * v for w, v in self.terms.items()}, self.ctx)

    def _add(self, other: OperatedPolynomial) -> OperatedPolynomial:
        result = dict(self.terms)
        for word, c in other.terms.items():
            result[word] = result.get(word, 0) + c
        return OperatedPolynomial(result, self.ctx)

    def _mul(self, other: OperatedPolynomial) -> OperatedPolynomial:
        order = self.ctx.order
        result: dict = {}
        right = other._by_degree
        for d1, left_terms in self._by_degree.items():
            for d2, right_terms in right.items():
                if d1 + d2 > order:
                    continue
                for w1, c1 in left_terms:
                    for w2, c2 in right_terms:
                        word = w1.concat(w2)
                        result[word] = result.get(word, 0) + c1 * c2
        return OperatedPolynomial(result, self.ctx)

    def degree_part(self, k: int) -> OperatedPolynomial:
        return OperatedPolynomial({w: c for w, c in self.terms.items() if w.degree == k}, self.ctx)

    def coefficient(self, word: OperatedWord) -> Rational:
        return self.terms.get(word, rational(0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def atoms(self) -> set:
        """Every atom occurring at top level of some word."""
        return {atom for word in self.terms for atom in word.atoms}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OperatedPolynomial) and self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"OperatedPolynomial({render_raw(self)}, order={self.ctx.order})"

    def __str__(self) -> str:
        return render_raw(self)


def generators(names: Union[str, Sequence[str]], ctx: TruncationContext,
               grades: Optional[Sequence[int]] = None,
               tags: Optional[Sequence[Tag]] = None) -> tuple:
    """Generators as polynomials, e.g. ``x, y = generators("x y", ctx)``."""
    if isinstance(names, str):
        names = names.split()
    grades = grades or [1] * len(names)
    tags = tags or [None] * len(names)
    result = []
    for index, (name, grade, tag) in enumerate(zip(names, grades, tags)):
        atom = Generator(index, name, grade, tag)
        result.append(OperatedPolynomial.from_word(OperatedWord((atom,)), ctx))
    return tuple(result)


def alphabet_of(*polys: OperatedPolynomial) -> dict:
    """Name -> Generator for every generator occurring (recursively) in the inputs."""
    found: dict = {}

    def visit(word: OperatedWord):
        for atom in word.atoms:
            if isinstance(atom, OpApply):
                visit(atom.word)
            else:
                found[atom.name] = atom

    for poly in polys:
        for word in poly.terms:
            visit(word)
    return found


def formal_p(x: OperatedPolynomial) -> OperatedPolynomial:
    """Wrap every basis word w into P[w]; no relation beyond linearity is imposed."""
    return OperatedPolynomial({OperatedWord((OpApply(w),), w.degree): c for w, c in x.terms.items()},
                              x.ctx)


def lie_bracket(x: OperatedPolynomial, y: OperatedPolynomial) -> OperatedPolynomial:
    return bracket(x, y)


# Expression trees accepted by normalize().


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Scaled:
    coefficient: Scalar
    expr: object


@dataclass(frozen=True)
class ApplyP:
    expr: object


Expr = Union[Sum, Product, Scaled, ApplyP, Generator, OperatedPolynomial, int, Rational]


def normalize(expr: Expr, ctx: TruncationContext) -> OperatedPolynomial:
    """Expand an expression tree into its canonical polynomial; P is only made linear."""
    if isinstance(expr, OperatedPolynomial):
        if expr.ctx != ctx:
            raise TruncationMismatch(f"Leaf of order {expr.ctx.order} in an expression of order {ctx.order}")
        return expr
    if isinstance(expr, Generator):
        return OperatedPolynomial.from_word(OperatedWord((expr,)), ctx)
    if is_scalar(expr):
        return OperatedPolynomial.one(ctx).scale(expr)
    if isinstance(expr, Sum):
        result = OperatedPolynomial({}, ctx)
        for term in expr.terms:
            result = result + normalize(term, ctx)
        return result
    if isinstance(expr, Product):
        result = OperatedPolynomial.one(ctx)
        for factor in expr.factors:
            result = result * normalize(factor, ctx)
        return result
    if isinstance(expr, Scaled):
        return normalize(expr.expr, ctx).scale(expr.coefficient)
    if isinstance(expr, ApplyP):
        return formal_p(normalize(expr.expr, ctx))
    raise TypeError(f"Not an operated expression: {expr!r}")


# Text rendering and parsing.


def _join_terms(items: Iterable[tuple]) -> str:
    parts = []
    for body, c in items:
        negative = c < 0
        magnitude = -c if negative else c
        if body == "1":
            text = format_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_rational(magnitude)}*{body}"
        if not parts:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f" - {text}" if negative else f" + {text}")
    return "".join(parts) if parts else "0"


def render_raw(x: OperatedPolynomial) -> str:
    """Raw word form, e.g. ``1/2*P[a.a].a - b``."""
    return _join_terms((word.render(), c) for word, c in x.sorted_terms())


def _lyndon_key(atom: Atom) -> tuple:
    # P[...] atoms sort before generators so that [P[a],a] keeps its printed orientation.
    if isinstance(atom, OpApply):
        return (0, atom.word.sort_key())
    return (1, atom.index)


def _is_lyndon(keys: tuple) -> bool:
    return all(keys < keys[i:] for i in range(1, len(keys)))


def _standard_split(word: tuple) -> int:
    """Start of the longest proper Lyndon suffix of a Lyndon word."""
    keys = tuple(_lyndon_key(a) for a in word)
    for i in range(1, len(word)):
        if _is_lyndon(keys[i:]):
            return i
    raise AssertionError(f"Word of length {len(word)} has no Lyndon suffix")


def _bracket_expansion(word: tuple) -> dict:
    """The standard bracketing of a Lyndon word expanded into words."""
    if len(word) == 1:
        return {word: 1}
    i = _standard_split(word)
    left, right = _bracket_expansion(word[:i]), _bracket_expansion(word[i:])
    result: dict = {}
    for u, cu in left.items():
        for v, cv in right.items():
            result[u + v] = result.get(u + v, 0) + cu * cv
            result[v + u] = result.get(v + u, 0) - cu * cv
    return {w: c for w, c in result.items() if c != 0}


def _render_bracket(word: tuple) -> str:
    if len(word) == 1:
        return word[0].render()
    i = _standard_split(word)
    return f"[{_render_bracket(word[:i])},{_render_bracket(word[i:])}]"


def lyndon_expansion(x: OperatedPolynomial) -> Optional[list]:
    """
    Coordinates of x in the Lyndon basis of the free Lie algebra on its atoms.

    Returns a list of (Lyndon word as atom tuple, coefficient), or None when
    x is not a Lie polynomial in its atoms.
    """
    remaining = {word.atoms: c for word, c in x.terms.items()}
    result = []
    while remaining:
        word = min(remaining, key=lambda w: (len(w), tuple(_lyndon_key(a) for a in w)))
        if not word or not _is_lyndon(tuple(_lyndon_key(a) for a in word)):
            return None
        c = remaining[word]
        for w, e in _bracket_expansion(word).items():
            value = remaining.get(w, 0) - c * e
            if value == 0:
                remaining.pop(w, None)
            else:
                remaining[w] = value
        result.append((word, c))
    result.sort(key=lambda item: OperatedWord(item[0]).sort_key())
    return result


def render_brackets(x: OperatedPolynomial) -> str:
    """Bracket form, e.g. ``-1/2*[P[a],a]``; falls back to the raw form for non-Lie input."""
    expansion = lyndon_expansion(x)
    if expansion is None:
        return render_raw(x)
    return _join_terms((_render_bracket(word), c) for word, c in expansion)


class _WordParser:
    """Recursive-descent parser for the raw word grammar (see doc/operated.md)."""

    def __init__(self, text: str, alphabet: Mapping[str, Generator]):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, message: str) -> ParseError:
        """Return (but do not raise!) a parse error pointing at the current position."""
        return ParseError(f"Column {self.pos + 1} of {self.text!r}: {message}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def number(self) -> Optional[Rational]:
        self.skip()
        m = re.compile(r"[0-9]+(?:/[0-9]+)?").match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return rational(m.group(0))

    def atom(self) -> Atom:
        if self.peek("P["):
            self.pos += 2
            inner = self.word()
            self.expect("]")
            return OpApply(inner)
        self.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z_0-9]*[+-]?").match(self.text, self.pos)
        if not m:
            raise self.error("expected a generator or P[...]")
        name = m.group(0)
        if name not in self.alphabet and name[-1] in "+-" and name[:-1] in self.alphabet:
            name = name[:-1]
        if name not in self.alphabet:
            raise self.error(f"unknown generator {name!r}")
        self.pos += len(name)
        return self.alphabet[name]

    def word(self) -> OperatedWord:
        if self.peek("1"):
            self.pos += 1
            return EMPTY_WORD
        atoms = [self.atom()]
        while self.peek("."):
            self.pos += 1
            atoms.append(self.atom())
        return OperatedWord(atoms)

    def term(self) -> tuple:
        c = self.number()
        if c is None:
            return self.word(), rational(1)
        if self.peek("*"):
            self.pos += 1
            return self.word(), c
        return EMPTY_WORD, c

    def polynomial(self, ctx: TruncationContext) -> OperatedPolynomial:
        terms: dict = {}
        sign = 1
        if self.peek("-"):
            self.pos += 1
            sign = -1
        elif self.peek("0") and self.text.strip() == "0":
            return OperatedPolynomial({}, ctx)
        while True:
            word, c = self.term()
            if word.degree > ctx.order:
                raise self.error(f"word {word.render()} exceeds truncation order {ctx.order}")
            terms[word] = terms.get(word, 0) + sign * c
            if self.peek("+"):
                self.pos += 1
                sign = 1
            elif self.peek("-"):
                self.pos += 1
                sign = -1
            else:
                break
        self.skip()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return OperatedPolynomial(terms, ctx)


def parse_polynomial(text: str, alphabet: Mapping[str, Generator],
                     ctx: TruncationContext) -> OperatedPolynomial:
    """Parse the raw form produced by render_raw back into a polynomial."""
    return _WordParser(text, alphabet).polynomial(ctx)
