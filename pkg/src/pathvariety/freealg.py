"""Words, sparse free tensors and the Hopf-algebraic operations on them.

Words are plain tuples of positive ints; the empty tuple is the unit word.
A :class:`FreeTensor` is an immutable finite linear combination of words
with :class:`fractions.Fraction` coefficients over the alphabet ``1..dim``.

The shuffle product is computed through the right halfshuffle recursion,

    w > i    = wi
    w > vi   = (w > v + v > w) i
    x sh y   = x > y + y > x

so the splitting ``x sh y = x > y + y > x`` holds structurally.  The left
halfshuffle has its own mirrored recursion.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import ValidationError

Word = tuple

EMPTY: Word = ()


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or "." in text or "e" in text.lower():
            raise ValidationError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not an exact rational: {value!r}") from exc
    raise ValidationError(f"not an exact rational: {value!r}")


def word_key(word: Word):
    """Graded-lexicographic sort key."""
    return (len(word), word)


def format_word(word: Word, dim: int) -> str:
    if dim <= 9:
        return "".join(str(i) for i in word)
    return ",".join(str(i) for i in word)


def parse_word(text: str, dim: int | None = None) -> Word:
    text = text.strip()
    if not text:
        return EMPTY
    try:
        if "," in text or (dim is not None and dim > 9):
            letters = tuple(int(part) for part in text.split(","))
        else:
            letters = tuple(int(ch) for ch in text)
    except ValueError as exc:
        raise ValidationError(f"malformed word {text!r}") from exc
    if any(i < 1 for i in letters):
        raise ValidationError(f"letters must be positive in word {text!r}")
    if dim is not None and any(i > dim for i in letters):
        raise ValidationError(f"word {text!r} uses a letter beyond alphabet size {dim}")
    return letters


def words_of_degree(dim: int, degree: int) -> Iterator[Word]:
    """All words of the given length, in lexicographic order."""
    return itertools.product(range(1, dim + 1), repeat=degree)


def words_upto(dim: int, level: int, start: int = 0) -> Iterator[Word]:
    """All words of length ``start..level`` in graded-lex order."""
    for n in range(start, level + 1):
        yield from words_of_degree(dim, n)


class FreeTensor:
    """Sparse element of the tensor algebra T(R^dim) with rational coefficients.

    Zero coefficients are never stored, so equality is equality of term maps.
    Instances are immutable and hashable.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), dim: int = 1):
        if dim < 1:
            raise ValidationError("alphabet size must be positive", "dimension")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = defaultdict(Fraction)
        for word, coeff in items:
            if isinstance(word, str):
                word = parse_word(word, dim)
            word = tuple(int(i) for i in word)
            if any(i < 1 or i > dim for i in word):
                raise ValidationError(f"word {word} outside alphabet 1..{dim}")
            acc[word] += to_fraction(coeff)
        self.dim = dim
        self._terms = {w: c for w, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _make(cls, terms: dict, dim: int) -> "FreeTensor":
        # Trusted constructor: terms already validated; zeros are dropped here.
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = {w: c for w, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    @classmethod
    def word(cls, word, dim: int, coeff=1) -> "FreeTensor":
        if isinstance(word, str):
            word = parse_word(word, dim)
        return cls({tuple(word): coeff}, dim)

    @classmethod
    def letter(cls, i: int, dim: int, coeff=1) -> "FreeTensor":
        return cls({(i,): coeff}, dim)

    @classmethod
    def unit(cls, dim: int) -> "FreeTensor":
        return cls._make({EMPTY: Fraction(1)}, dim)

    @classmethod
    def zero(cls, dim: int) -> "FreeTensor":
        return cls._make({}, dim)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def coeff(self, word) -> Fraction:
        if isinstance(word, str):
            word = parse_word(word, self.dim)
        return self._terms.get(tuple(word), Fraction(0))

    def degree(self) -> int:
        """Maximal word length; -1 for the zero tensor."""
        return max((len(w) for w in self._terms), default=-1)

    def low_degree(self) -> int:
        return min((len(w) for w in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def constant(self) -> Fraction:
        return self._terms.get(EMPTY, Fraction(0))

    def truncate(self, level: int) -> "FreeTensor":
        return FreeTensor._make({w: c for w, c in self._terms.items() if len(w) <= level}, self.dim)

    def homogeneous(self, degree: int) -> "FreeTensor":
        return FreeTensor._make({w: c for w, c in self._terms.items() if len(w) == degree}, self.dim)

    def leading_word(self) -> Word:
        return max(self._terms, key=word_key)

    def with_dim(self, dim: int) -> "FreeTensor":
        return FreeTensor(self._terms, dim)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    def _check(self, other: "FreeTensor"):
        if not isinstance(other, FreeTensor):
            return NotImplemented
        if other.dim != self.dim:
            raise ValidationError(f"alphabet mismatch: {self.dim} vs {other.dim}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) + c
        return FreeTensor._make(terms, self.dim)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) - c
        return FreeTensor._make(terms, self.dim)

    def __neg__(self):
        return FreeTensor._make({w: -c for w, c in self._terms.items()}, self.dim)

    def __mul__(self, scalar):
        if isinstance(scalar, FreeTensor):
            return NotImplemented
        s = to_fraction(scalar)
        return FreeTensor._make({w: s * c for w, c in self._terms.items()}, self.dim)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreeTensor):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"FreeTensor(0, dim={self.dim})"
        parts = []
        for w, c in self.items():
            label = format_word(w, self.dim) or "e"
            parts.append(f"{c}*{label}" if c != 1 else label)
        return f"FreeTensor({' + '.join(parts)}, dim={self.dim})"


def _same_dim(x: FreeTensor, y: FreeTensor) -> int:
    if x.dim != y.dim:
        raise ValidationError(f"alphabet mismatch: {x.dim} vs {y.dim}")
    return x.dim


def _bilinear(x: FreeTensor, y: FreeTensor, word_op) -> FreeTensor:
    dim = _same_dim(x, y)
    # integer multiplicities per coefficient product; Fractions only at the end
    groups: dict = defaultdict(lambda: defaultdict(int))
    for u, a in x._terms.items():
        for v, b in y._terms.items():
            bucket = groups[a * b]
            for w, k in word_op(u, v):
                bucket[w] += k
    if len(groups) == 1:
        ((ab, bucket),) = groups.items()
        return FreeTensor._make({w: ab * k for w, k in bucket.items() if k}, dim)
    acc: dict = defaultdict(Fraction)
    for ab, bucket in groups.items():
        for w, k in bucket.items():
            acc[w] += ab * k
    return FreeTensor._make(acc, dim)


def concat_product(x: FreeTensor, y: FreeTensor) -> FreeTensor:
    """Bilinear extension of word juxtaposition."""
    return _bilinear(x, y, lambda u, v: ((u + v, 1),))


def deconcat_terms(x: FreeTensor) -> dict:
    """The coproduct as a map ``(prefix, suffix) -> coefficient``."""
    out: dict = defaultdict(Fraction)
    for w, c in x._terms.items():
        for k in range(len(w) + 1):
            out[(w[:k], w[k:])] += c
    return {k: v for k, v in out.items() if v != 0}


def deconcat(x: FreeTensor) -> list:
    """All prefix/suffix splits as pairs ``(c*prefix, suffix)``.

    The sum of ``a (x) b`` over the returned pairs is the deconcatenation of
    ``x``.  Pairs are ordered by (prefix, suffix) in graded-lex order.
    """
    terms = deconcat_terms(x)
    keys = sorted(terms, key=lambda k: (word_key(k[0]), word_key(k[1])))
    return [
        (FreeTensor._make({u: terms[(u, v)]}, x.dim), FreeTensor._make({v: Fraction(1)}, x.dim))
        for u, v in keys
    ]


@lru_cache(maxsize=None)
def _hsr_words(u: Word, v: Word) -> tuple:
    # u > v for nonempty words
    i = v[-1]
    head = v[:-1]
    if not head:
        return ((u + (i,), 1),)
    return tuple((w + (i,), k) for w, k in _shuffle_words(u, head))


@lru_cache(maxsize=None)
def _hsl_words(u: Word, v: Word) -> tuple:
    # u < v for nonempty words: i u' < v = i (v < u' + u' < v)
    i = u[0]
    tail = u[1:]
    if not tail:
        return (((i,) + v, 1),)
    acc: dict = defaultdict(int)
    for w, k in _hsl_words(v, tail):
        acc[w] += k
    for w, k in _hsl_words(tail, v):
        acc[w] += k
    return tuple(((i,) + w, k) for w, k in acc.items())


def _shuffle_words(u: Word, v: Word) -> tuple:
    if u > v:
        u, v = v, u
    return _shuffle_words_sorted(u, v)


@lru_cache(maxsize=None)
def _shuffle_words_sorted(u: Word, v: Word) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict = defaultdict(int)
    for w, k in _hsr_words(u, v):
        acc[w] += k
    for w, k in _hsr_words(v, u):
        acc[w] += k
    return tuple(acc.items())


def shuffle_words(u: Word, v: Word) -> dict:
    """Shuffle of two words as ``{word: multiplicity}``."""
    return dict(_shuffle_words(tuple(u), tuple(v)))


def shuffle(x: FreeTensor, y: FreeTensor) -> FreeTensor:
    return _bilinear(x, y, _shuffle_words)


def _require_augmentation(*tensors: FreeTensor):
    for t in tensors:
        if t.constant() != 0:
            raise ValidationError("halfshuffles are defined on tensors without an empty-word term")


def half_shuffle_right(x: FreeTensor, y: FreeTensor) -> FreeTensor:
    """Right halfshuffle ``x > y``: the last letter always comes from ``y``."""
    _require_augmentation(x, y)
    return _bilinear(x, y, _hsr_words)


def half_shuffle_left(x: FreeTensor, y: FreeTensor) -> FreeTensor:
    """Left halfshuffle ``x < y``: the first letter always comes from ``x``."""
    _require_augmentation(x, y)
    return _bilinear(x, y, _hsl_words)


def antipode_word(word: Word) -> tuple:
    """Returns ``(sign, reversed word)``."""
    return (-1 if len(word) % 2 else 1), tuple(reversed(word))


def antipode(x: FreeTensor) -> FreeTensor:
    out = {}
    for w, c in x._terms.items():
        sign, rw = antipode_word(w)
        out[rw] = sign * c
    return FreeTensor._make(out, x.dim)


def relabel(x: FreeTensor, offset: int, dim: int) -> FreeTensor:
    """Shift every letter by ``offset`` into a larger alphabet of size ``dim``."""
    return FreeTensor({tuple(i + offset for i in w): c for w, c in x._terms.items()}, dim)


@dataclass(frozen=True)
class LetterMap:
    """Images of the letters ``1..len(images)`` in T(R^dim)."""

    images: tuple
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if not self.images:
            raise ValidationError("a letter map needs at least one image", "images")
        for img in self.images:
            if not isinstance(img, FreeTensor) or img.dim != self.dim:
                raise ValidationError(f"every image must be a tensor over alphabet {self.dim}", "images")

    @property
    def source_dim(self) -> int:
        return len(self.images)

    @classmethod
    def from_matrix(cls, matrix) -> "LetterMap":
        """Letter ``i`` maps to ``sum_j A[i][j] j``: the transpose action of ``A``."""
        rows = [[to_fraction(a) for a in row] for row in matrix]
        dim = len(rows[0])
        return cls(tuple(FreeTensor({(j + 1,): a for j, a in enumerate(row)}, dim) for row in rows), dim)

    @classmethod
    def identity(cls, dim: int) -> "LetterMap":
        return cls(tuple(FreeTensor.letter(i, dim) for i in range(1, dim + 1)), dim)


def letter_map_extend(A: LetterMap, x: FreeTensor, mode: str = "multiplicative") -> FreeTensor:
    """Extend a letter map to words.

    ``multiplicative`` sends ``i1...in`` to ``A(i1)...A(in)`` under
    concatenation.  ``lambda`` uses the right halfshuffle instead,
    ``wi -> L(w) > A(i)``, and needs every image free of an empty-word term.
    """
    if x.dim != A.source_dim:
        raise ValidationError(f"tensor alphabet {x.dim} does not match letter map source {A.source_dim}")
    if mode not in ("multiplicative", "lambda"):
        raise ValidationError(f"unknown extension mode {mode!r}", "mode")
    if mode == "lambda":
        for i, img in enumerate(A.images, 1):
            if img.constant() != 0:
                raise ValidationError(f"image of letter {i} has an empty-word term", "images")
        step = half_shuffle_right
    else:
        step = concat_product

    memo = {EMPTY: FreeTensor.unit(A.dim)}

    def image(word):
        if word not in memo:
            prev = image(word[:-1])
            img = A.images[word[-1] - 1]
            memo[word] = img if not word[:-1] else step(prev, img)
        return memo[word]

    acc: dict = defaultdict(Fraction)
    for w, c in x._terms.items():
        for v, k in image(w)._terms.items():
            acc[v] += c * k
    return FreeTensor._make(acc, A.dim)
