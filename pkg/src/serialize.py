"""JSON encoding of every algebra element; rationals are written as "num/den" strings."""

from __future__ import annotations

from typing import Any, Callable, Optional

from benedict import benedict

from .adjoined import AdjoinedSeries
from .bivariate import BivariateMatrixSeries
from .core import INFINITY, Degree, FilteredElement, TruncationContext, encode_rational, rational
from .errors import ParseError, PoleOverflow
from .hopf import LinearFunctional, character, laurent_target, require_character
from .laurent import LaurentSeries, parse_laurent
from .matrixpoly import MatrixPolyFunction
from .operated import Generator, OperatedPolynomial, alphabet_of, parse_polynomial
from .qmatrix import QMatrix, matrix_rows, qmatrix
from .trees import HopfElement, parse_forest, parse_tree
from .triangular import TriangularMatrix


def _rows(m: QMatrix) -> list:
    return [[encode_rational(v) for v in row] for row in matrix_rows(m)]


def _encode_laurent(x: LaurentSeries) -> dict:
    precision = None if x.precision == INFINITY else x.precision
    return {"type": "laurent", "order": x.ctx.order, "pole_cap": x.pole_cap, "precision": precision,
            "coeffs": {str(k): encode_rational(c) for k, c in sorted(x.coeffs.items())}}


def _encode_matrix_poly(x: MatrixPolyFunction) -> dict:
    return {"type": "matrix_poly", "order": x.ctx.order, "dim": x.dim, "variable": x.variable,
            "coeffs": {str(k): _rows(m) for k, m in sorted(x.coeffs.items())}}


def _encode_bivariate(x: BivariateMatrixSeries) -> dict:
    return {"type": "bivariate", "order": x.ctx.order, "dim": x.dim,
            "coeffs": [[i, j, _rows(m)] for (i, j), m in sorted(x.coeffs.items())]}


def _encode_triangular(x: TriangularMatrix) -> dict:
    return {"type": "triangular", "n": x.n, "base": encode(x.base_zero),
            "entries": [[i, j, encode(v)] for (i, j), v in sorted(x.entries.items())]}


def _encode_adjoined(x: AdjoinedSeries) -> dict:
    return {"type": "adjoined", "order": x.ctx.order, "base": encode(x.base_zero),
            "coeffs": {str(n): encode(v) for n, v in sorted(x.coeffs.items())}}


def _encode_operated(x: OperatedPolynomial) -> dict:
    alphabet = sorted(alphabet_of(x).values(), key=lambda g: g.index)
    return {"type": "operated", "order": x.ctx.order,
            "alphabet": [{"name": g.name, "index": g.index, "grade": g.grade, "tag": g.tag} for g in alphabet],
            "terms": [[w.render(), encode_rational(c)] for w, c in x.sorted_terms()]}


def _encode_target(value: Any) -> Any:
    return encode(value) if isinstance(value, LaurentSeries) else encode_rational(value)


def _encode_functional(x: LinearFunctional) -> dict:
    target = "QQ" if not isinstance(x.target_zero, LaurentSeries) else encode(x.target_zero)
    return {"type": "functional", "degree": x.ctx.order, "target": target,
            "values": {f.render(): _encode_target(v) for f, v in sorted(x.values.items())}}


def _encode_hopf(x: HopfElement) -> dict:
    return {"type": "hopf", "degree": x.ctx.order,
            "terms": {f.render(): encode_rational(c) for f, c in sorted(x.terms.items())}}


_ENCODERS: list = [
    (LaurentSeries, _encode_laurent),
    (MatrixPolyFunction, _encode_matrix_poly),
    (BivariateMatrixSeries, _encode_bivariate),
    (TriangularMatrix, _encode_triangular),
    (AdjoinedSeries, _encode_adjoined),
    (OperatedPolynomial, _encode_operated),
    (LinearFunctional, _encode_functional),
    (HopfElement, _encode_hopf),
]


def encode(x: FilteredElement) -> dict:
    """A JSON-ready dict tagged with the element type."""
    for cls, encoder in _ENCODERS:
        if isinstance(x, cls):
            return encoder(x)
    raise TypeError(f"No JSON encoding for {type(x).__name__}")


# Decoding.


def _decode_rows(rows: list) -> QMatrix:
    return qmatrix([[rational(v) for v in row] for row in rows])


def _decode_precision(value: Any) -> Degree:
    if value is None:
        return INFINITY
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"Invalid precision: {value!r}")
    return value


def _decode_laurent(d: dict) -> LaurentSeries:
    return LaurentSeries({int(k): rational(c) for k, c in d["coeffs"].items()},
                         TruncationContext(d["order"]), d["pole_cap"], _decode_precision(d.get("precision")))


def _decode_matrix_poly(d: dict) -> MatrixPolyFunction:
    return MatrixPolyFunction({int(k): _decode_rows(rows) for k, rows in d["coeffs"].items()},
                              d["dim"], TruncationContext(d["order"]), d.get("variable", "x"))


def _decode_bivariate(d: dict) -> BivariateMatrixSeries:
    return BivariateMatrixSeries({(i, j): _decode_rows(rows) for i, j, rows in d["coeffs"]},
                                 d["dim"], TruncationContext(d["order"]))


def _decode_triangular(d: dict) -> TriangularMatrix:
    return TriangularMatrix({(i, j): decode(v) for i, j, v in d["entries"]}, d["n"], decode(d["base"]))


def _decode_adjoined(d: dict) -> AdjoinedSeries:
    return AdjoinedSeries({int(n): decode(v) for n, v in d["coeffs"].items()}, decode(d["base"]),
                          TruncationContext(d["order"]))


def _decode_operated(d: dict) -> OperatedPolynomial:
    ctx = TruncationContext(d["order"])
    alphabet = {g["name"]: Generator(g["index"], g["name"], g.get("grade", 1), g.get("tag"))
                for g in d["alphabet"]}
    result = OperatedPolynomial({}, ctx)
    for word, c in d["terms"]:
        result = result + parse_polynomial(word, alphabet, ctx).scale(rational(c))
    return result


def _decode_functional(d: dict) -> LinearFunctional:
    degree = d["degree"]
    if d["target"] == "QQ":
        zero = rational(0)
        values = {parse_forest(k): rational(v) for k, v in d["values"].items()}
    else:
        zero = decode(d["target"]) if isinstance(d["target"], dict) else laurent_target(degree)
        values = {parse_forest(k): decode(v) for k, v in d["values"].items()}
    return LinearFunctional(values, TruncationContext(degree), zero)


def _decode_hopf(d: dict) -> HopfElement:
    return HopfElement({parse_forest(k): rational(c) for k, c in d["terms"].items()},
                       TruncationContext(d["degree"]))


_DECODERS: dict[str, Callable[[dict], FilteredElement]] = {
    "laurent": _decode_laurent,
    "matrix_poly": _decode_matrix_poly,
    "bivariate": _decode_bivariate,
    "triangular": _decode_triangular,
    "adjoined": _decode_adjoined,
    "operated": _decode_operated,
    "functional": _decode_functional,
    "hopf": _decode_hopf,
}


def decode(d: dict) -> FilteredElement:
    """Inverse of encode."""
    try:
        decoder = _DECODERS[d["type"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"Not an encoded element: {d!r}") from exc
    try:
        return decoder(d)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"Malformed {d['type']} element: {exc}") from exc


def dumps(x: FilteredElement) -> str:
    return benedict(encode(x), keypath_separator=None).to_json(indent=2, ensure_ascii=False)


def _load_json(text: str) -> dict:
    try:
        data = benedict.from_json(text, keypath_separator=None)
    except ValueError as exc:
        raise ParseError(f"Invalid JSON: {exc}") from exc
    return data.dict()


def loads(text: str) -> FilteredElement:
    return decode(_load_json(text))


def loads_character(text: str, degree: int, laurent: Optional[bool] = None) -> LinearFunctional:
    """
    A character on trees of degree at most ``degree``, read from JSON.

    The text is either an encoded functional or a map from tree literals to
    values, e.g. ``{"*": "eps^-1 + 1", "*[*]": "1/2"}``. Values are rationals
    or Laurent series as printed by format_laurent; trees that are not listed
    are sent to zero. With laurent=None the target is Laurent series as soon
    as a value mentions eps.

    Raises:
        ParseError -- bad JSON, literal or value, a tree above the degree
            cap, or a pole the window of the target cannot hold.
        NotCharacter -- an encoded functional that is not a character.
    """
    data = _load_json(text)
    if "type" in data:
        phi = decode(data)
        if not isinstance(phi, LinearFunctional):
            raise ParseError(f"Expected a functional on trees, got {data['type']}")
        require_character(phi, "loads_character")
        if laurent and not isinstance(phi.target_zero, LaurentSeries):
            raise ParseError("Expected a character with Laurent series values")
        return phi
    if laurent is None:
        laurent = any("eps" in str(v) for v in data.values())
    zero = laurent_target(degree) if laurent else rational(0)
    values = {}
    try:
        for literal, value in data.items():
            tree = parse_tree(literal)
            if tree.degree > degree:
                raise ParseError(f"Tree {literal} has degree {tree.degree}, above the degree cap {degree}")
            if isinstance(value, bool) or not isinstance(value, (str, int)):
                raise ParseError(f"Value of {literal} must be a string or an integer, got {value!r}")
            if laurent:
                values[tree] = parse_laurent(str(value), zero.ctx, zero.pole_cap)
            else:
                values[tree] = rational(str(value))
        return character(values, degree, zero)
    except PoleOverflow as exc:
        raise ParseError(f"Character does not fit the Laurent window of degree {degree}: {exc}") from exc
