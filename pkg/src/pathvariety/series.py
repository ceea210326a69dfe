"""Truncated elements of the completed tensor algebra.

A :class:`TruncatedSeries` stores the coefficients of every word up to an
explicit level ``N``.  Arithmetic between series of different levels is an
error rather than a silent truncation.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import factorial

from .errors import ValidationError
from .freealg import (
    EMPTY,
    FreeTensor,
    antipode_word,
    shuffle_words,
    to_fraction,
    word_key,
    words_upto,
)


class TruncatedSeries:
    """Coefficients of all words of degree <= ``level`` (zeros omitted)."""

    __slots__ = ("level", "dim", "_terms")

    def __init__(self, terms=(), level: int = 0, dim: int = 1):
        if level < 0:
            raise ValidationError("truncation level must be non-negative", "level")
        tensor = terms if isinstance(terms, FreeTensor) else FreeTensor(terms, dim)
        if tensor.dim != dim:
            raise ValidationError(f"alphabet mismatch: {tensor.dim} vs {dim}")
        if tensor.degree() > level:
            raise ValidationError(f"term of degree {tensor.degree()} exceeds level {level}", "level")
        self.level = level
        self.dim = dim
        self._terms = tensor._terms

    @classmethod
    def _make(cls, terms: dict, level: int, dim: int) -> "TruncatedSeries":
        obj = cls.__new__(cls)
        obj.level = level
        obj.dim = dim
        obj._terms = {w: c for w, c in terms.items() if c != 0}
        return obj

    @classmethod
    def unit(cls, level: int, dim: int) -> "TruncatedSeries":
        return cls._make({EMPTY: Fraction(1)}, level, dim)

    @classmethod
    def from_tensor(cls, x: FreeTensor, level: int) -> "TruncatedSeries":
        """Truncate a tensor to ``level``."""
        return cls._make({w: c for w, c in x._terms.items() if len(w) <= level}, level, x.dim)

    def tensor(self) -> FreeTensor:
        return FreeTensor._make(self._terms, self.dim)

    def coeff(self, word) -> Fraction:
        if isinstance(word, str):
            return self.tensor().coeff(word)
        return self._terms.get(tuple(word), Fraction(0))

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def truncate(self, level: int) -> "TruncatedSeries":
        if level > self.level:
            raise ValidationError(f"cannot raise level {self.level} to {level}", "level")
        return TruncatedSeries._make({w: c for w, c in self._terms.items() if len(w) <= level}, level, self.dim)

    def _check(self, other: "TruncatedSeries"):
        if self.level != other.level:
            raise ValidationError(f"level mismatch: {self.level} vs {other.level}", "level")
        if self.dim != other.dim:
            raise ValidationError(f"alphabet mismatch: {self.dim} vs {other.dim}", "dimension")

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) + c
        return TruncatedSeries._make(terms, self.level, self.dim)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TruncatedSeries._make({w: -c for w, c in self._terms.items()}, self.level, self.dim)

    def __mul__(self, scalar):
        s = to_fraction(scalar)
        return TruncatedSeries._make({w: s * c for w, c in self._terms.items()}, self.level, self.dim)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.level, self.dim, self._terms) == (other.level, other.dim, other._terms)

    def __hash__(self):
        return hash((self.level, self.dim, frozenset(self._terms.items())))

    def __repr__(self):
        return f"TruncatedSeries({self.tensor()!r}, level={self.level})"


def _by_degree(terms: dict) -> dict:
    out = defaultdict(list)
    for w, c in terms.items():
        out[len(w)].append((w, c))
    return out


def series_mul(g: TruncatedSeries, h: TruncatedSeries) -> TruncatedSeries:
    """Concatenation product truncated at the common level."""
    g._check(h)
    N = g.level
    gd, hd = _by_degree(g._terms), _by_degree(h._terms)
    acc: dict = defaultdict(Fraction)
    for a, gterms in gd.items():
        for b, hterms in hd.items():
            if a + b > N:
                continue
            for u, cu in gterms:
                for v, cv in hterms:
                    acc[u + v] += cu * cv
    return TruncatedSeries._make(acc, N, g.dim)


def series_inverse(g: TruncatedSeries) -> TruncatedSeries:
    """Inverse for the concatenation product, via a truncated geometric series."""
    c0 = g.coeff(EMPTY)
    if c0 == 0:
        raise ValidationError("series with zero empty-word coefficient is not invertible")
    inv0 = 1 / c0
    h = TruncatedSeries._make({w: -c * inv0 for w, c in g._terms.items() if w}, g.level, g.dim)
    total = TruncatedSeries.unit(g.level, g.dim)
    power = total
    for _ in range(g.level):
        power = series_mul(power, h)
        total = total + power
    return total * inv0


def antipode_adjoint(g: TruncatedSeries) -> TruncatedSeries:
    """Apply the signed reversal to every word index."""
    out = {}
    for w, c in g._terms.items():
        sign, rw = antipode_word(w)
        out[rw] = sign * c
    return TruncatedSeries._make(out, g.level, g.dim)


def _as_series(x, level) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        if level is not None and level != x.level:
            raise ValidationError(f"level mismatch: {x.level} vs {level}", "level")
        return x
    if level is None:
        raise ValidationError("a truncation level is required for a tensor argument", "level")
    if x.degree() > level:
        raise ValidationError(f"term of degree {x.degree()} exceeds level {level}", "level")
    return TruncatedSeries.from_tensor(x, level)


def exp_conc(lie, level: int | None = None) -> TruncatedSeries:
    """Truncated exponential ``sum_k x^k / k!`` for the concatenation product."""
    x = _as_series(lie, level)
    if x.coeff(EMPTY) != 0:
        raise ValidationError("exp needs a series without empty-word term")
    total = TruncatedSeries.unit(x.level, x.dim)
    power = total
    for k in range(1, x.level + 1):
        power = series_mul(power, x)
        if not power._terms:
            break
        total = total + power * Fraction(1, factorial(k))
    return total


def log_conc(g, level: int | None = None) -> TruncatedSeries:
    """Truncated Mercator series ``sum_k (-1)^(k+1) (g-1)^k / k``."""
    g = _as_series(g, level)
    if g.coeff(EMPTY) != 1:
        raise ValidationError("log needs a series with empty-word coefficient 1")
    h = TruncatedSeries._make({w: c for w, c in g._terms.items() if w}, g.level, g.dim)
    total = TruncatedSeries._make({}, g.level, g.dim)
    power = TruncatedSeries.unit(g.level, g.dim)
    for k in range(1, g.level + 1):
        power = series_mul(power, h)
        if not power._terms:
            break
        total = total + power * Fraction((-1) ** (k + 1), k)
    return total


def pair(g: TruncatedSeries, x: FreeTensor) -> Fraction:
    """Dual pairing ``sum_w g(w) x(w)``."""
    if x.dim != g.dim:
        raise ValidationError(f"alphabet mismatch: {g.dim} vs {x.dim}")
    if x.degree() > g.level:
        raise ValidationError(f"tensor of degree {x.degree()} cannot be paired at level {g.level}", "level")
    gt = g._terms
    return sum((c * gt.get(w, 0) for w, c in x._terms.items()), Fraction(0))


def _nonempty_pairs(dim: int, level: int):
    # word pairs u <= v (graded-lex) with |u| + |v| <= level; shuffle is commutative
    words = list(words_upto(dim, level - 1, start=1))
    for i, u in enumerate(words):
        for v in words[i:]:
            if len(u) + len(v) > level:
                break
            yield u, v


def _pair_shuffle(terms: dict, u, v) -> Fraction:
    return sum((k * terms.get(w, 0) for w, k in shuffle_words(u, v).items()), Fraction(0))


def is_grouplike(g: TruncatedSeries) -> bool:
    """Character property on every word pair fitting in the truncation level."""
    t = g._terms
    if t.get(EMPTY, 0) != 1:
        return False
    for u, v in _nonempty_pairs(g.dim, g.level):
        if _pair_shuffle(t, u, v) != t.get(u, 0) * t.get(v, 0):
            return False
    return True


def is_lie(lie) -> bool:
    """Dual criterion: a Lie series annihilates every nontrivial shuffle."""
    if isinstance(lie, FreeTensor):
        lie = TruncatedSeries.from_tensor(lie, max(lie.degree(), 0))
    t = lie._terms
    if t.get(EMPTY, 0) != 0:
        return False
    for u, v in _nonempty_pairs(lie.dim, lie.level):
        if _pair_shuffle(t, u, v) != 0:
            return False
    return True


def first_kind_coordinate(x: FreeTensor, g: TruncatedSeries) -> Fraction:
    """``<log g, x>`` for grouplike ``g``."""
    if not is_grouplike(g):
        raise ValidationError("first-kind coordinates need a grouplike series")
    return pair(log_conc(g), x)
