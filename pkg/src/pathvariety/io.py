"""JSON exchange formats.

All rationals travel as strings (``"-3/2"``, ``"4"``); tensors are lists of
``{"word": ..., "coeff": ...}`` terms in graded-lex order.  Encoders return
plain Python structures; :func:`dumps` renders them canonically.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ValidationError
from .freealg import FreeTensor, LetterMap, format_word, parse_word, to_fraction
from .ideals import ClosureType, GradedBasis, ideal_basis
from .paths import PiecewisePolyPath, PolynomialMap
from .poly import Polynomial
from .series import TruncatedSeries
from .varieties import RankSpec, VarietySpec


def frac_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"missing field {key!r}", key)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ValidationError(f"field {key!r} has the wrong type", key)
    return value


def _int_field(obj, key, minimum=None) -> int:
    value = _require(obj, key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"field {key!r} must be an integer", key)
    if minimum is not None and value < minimum:
        raise ValidationError(f"field {key!r} must be at least {minimum}", key)
    return value


# tensors


def tensor_to_json(x: FreeTensor) -> list:
    return [{"word": format_word(w, x.dim), "coeff": frac_str(c)} for w, c in x.items()]


def _tensor_terms(data):
    if isinstance(data, dict):
        data = _require(data, "terms", list)
    if not isinstance(data, list):
        raise ValidationError("a tensor must be a list of terms", "terms")
    out = []
    for term in data:
        word = _require(term, "word", str)
        coeff = _require(term, "coeff")
        out.append((word, coeff))
    return out


def infer_dim(data) -> int:
    """Smallest alphabet containing every letter of a tensor document."""
    if isinstance(data, dict) and "dimension" in data:
        return _int_field(data, "dimension", 1)
    top = 1
    for word, _ in _tensor_terms(data):
        letters = parse_word(word)
        if letters:
            top = max(top, max(letters))
    return top


def tensor_from_json(data, dim: int | None = None) -> FreeTensor:
    if dim is None:
        dim = infer_dim(data)
    elif isinstance(data, dict) and "dimension" in data and data["dimension"] != dim:
        raise ValidationError("tensor dimension conflicts with the requested alphabet", "dimension")
    terms = [(parse_word(w, dim), to_fraction(c)) for w, c in _tensor_terms(data)]
    return FreeTensor(terms, dim)


# series


def series_to_json(g: TruncatedSeries) -> dict:
    return {"level": g.level, "dimension": g.dim, "terms": tensor_to_json(g.tensor())}


def series_from_json(data, dim: int | None = None) -> TruncatedSeries:
    level = _int_field(data, "level", 0)
    terms = _require(data, "terms", list)
    if dim is None:
        dim = _int_field(data, "dimension", 1) if "dimension" in data else infer_dim(terms)
    return TruncatedSeries(tensor_from_json(terms, dim), level, dim)


# paths


def path_to_json(X: PiecewisePolyPath) -> dict:
    return {
        "dimension": X.dim,
        "segments": [[[frac_str(c) for c in comp] or ["0"] for comp in seg.components] for seg in X.segments],
    }


def path_from_json(data) -> PiecewisePolyPath:
    dim = _int_field(data, "dimension", 1)
    segments = _require(data, "segments", list)
    segs = []
    for s in segments:
        if not isinstance(s, list) or len(s) != dim:
            raise ValidationError(f"each segment needs {dim} component lists", "segments")
        comps = []
        for comp in s:
            if not isinstance(comp, list):
                raise ValidationError("segment components must be coefficient lists", "segments")
            comps.append([to_fraction(c) for c in comp])
        segs.append(comps)
    return PiecewisePolyPath(dim, tuple(segs))


# polynomials


def polynomial_to_json(p: Polynomial) -> list:
    return [{"exponents": list(e), "coeff": frac_str(c)} for e, c in p.items()]


def polynomial_from_json(data, nvars: int | None = None) -> Polynomial:
    if isinstance(data, dict):
        if nvars is None and "nvars" in data:
            nvars = _int_field(data, "nvars", 1)
        data = _require(data, "terms", list)
    if not isinstance(data, list):
        raise ValidationError("a polynomial must be a list of monomials", "terms")
    terms = []
    for mono in data:
        exps = _require(mono, "exponents", list)
        if not all(isinstance(e, int) and not isinstance(e, bool) for e in exps):
            raise ValidationError("exponents must be integers", "exponents")
        terms.append((tuple(exps), to_fraction(_require(mono, "coeff"))))
    if nvars is None:
        if not terms:
            raise ValidationError("cannot infer the number of variables of an empty polynomial", "nvars")
        nvars = len(terms[0][0])
    return Polynomial(terms, nvars)


def polynomials_from_json(data) -> list:
    """``{"nvars": n, "polys": [poly, ...]}`` into a list of polynomials."""
    nvars = _int_field(data, "nvars", 1)
    polys = _require(data, "polys", list)
    if not polys:
        raise ValidationError("need at least one polynomial", "polys")
    return [polynomial_from_json(p, nvars) for p in polys]


def polynomial_map_from_json(data) -> PolynomialMap:
    polys = polynomials_from_json(data)
    return PolynomialMap(tuple(polys), polys[0].nvars)


def polynomials_to_json(polys) -> dict:
    return {"nvars": polys[0].nvars, "polys": [polynomial_to_json(p) for p in polys]}


# letter maps and groups


def letter_map_from_json(data) -> LetterMap:
    dim = _int_field(data, "dimension", 1)
    images = _require(data, "images", list)
    return LetterMap(tuple(tensor_from_json(img, dim) for img in images), dim)


def letter_map_to_json(B: LetterMap) -> dict:
    return {"dimension": B.dim, "images": [tensor_to_json(img) for img in B.images]}


def group_from_json(data) -> list:
    mats = _require(data, "matrices", list)
    return [[[to_fraction(a) for a in row] for row in M] for M in mats]


# bases and specs


def basis_to_json(b: GradedBasis) -> dict:
    return {
        "level": b.level,
        "closure": b.closure.value,
        "dimension": b.dim,
        "pivots": [format_word(w, b.dim) for w in b.pivot_words],
        "rows": [tensor_to_json(r) for r in b.rows],
    }


def basis_from_json(data) -> GradedBasis:
    level = _int_field(data, "level", 0)
    closure = ClosureType.parse(_require(data, "closure", str))
    rows = _require(data, "rows", list)
    dim = _int_field(data, "dimension", 1) if "dimension" in data else max([infer_dim(r) for r in rows] or [1])
    tensors = [tensor_from_json(r, dim) for r in rows]
    # re-reduce: a hand-written file need not be in echelon form
    reduced = ideal_basis(tensors, ClosureType.SPAN, level, dim)
    return GradedBasis(level, closure, reduced.rows, reduced.pivot_words, dim)


def generators_from_json(data, dim: int | None = None) -> tuple:
    """A generator document: a list of tensors, or ``{"dimension", "generators"}``."""
    if isinstance(data, dict):
        if dim is None and "dimension" in data:
            dim = _int_field(data, "dimension", 1)
        data = _require(data, "generators", list)
    if not isinstance(data, list):
        raise ValidationError("generators must be a list of tensors", "generators")
    if data and isinstance(data[0], dict) and "word" in data[0]:
        data = [data]  # a single tensor
    if dim is None:
        dim = max([infer_dim(t) for t in data] or [1])
    return tuple(tensor_from_json(t, dim) for t in data), dim


def variety_spec_from_json(data):
    gens, dim = generators_from_json(data)
    closure = _require(data, "closure", str)
    level = _int_field(data, "level", 0)
    return VarietySpec(gens, ClosureType.parse(closure), level, dim)


def variety_spec_to_json(V) -> dict:
    return {
        "dimension": V.dim,
        "closure": V.closure.value,
        "level": V.level,
        "generators": [tensor_to_json(g) for g in V.generators],
    }


def rank_spec_from_json(data):
    tensors = _require(data, "tensors", list)
    dim = _int_field(data, "dimension", 1) if "dimension" in data else max([infer_dim(t) for t in tensors] or [1])
    return RankSpec(
        tuple(tensor_from_json(t, dim) for t in tensors),
        _int_field(data, "k", 0),
        data.get("side", "left"),
        _int_field(data, "level", 1),
        _int_field(data, "columns", 1) if "columns" in data else 50,
    )
