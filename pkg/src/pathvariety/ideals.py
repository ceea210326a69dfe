"""Graded truncated bases of shuffle and halfshuffle ideals.

A basis at level ``N`` is grown by a worklist: every vector that enlarges
the span is multiplied against every word whose degree still fits, and the
products are row-reduced into the span.  Products are only adjoined when
their full degree is at most ``N``, so every row is a genuine element of the
untruncated ideal.  For homogeneous generators this gives exactly the ideal
intersected with degrees ``<= N``; for inhomogeneous generators it gives the
part generated within that degree bound.

Halfshuffle ideals are closed on both sides: with ``>`` closure both
``v > w`` and ``w > v`` are adjoined (which makes them shuffle ideals too).
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ValidationError
from .freealg import (
    EMPTY,
    FreeTensor,
    LetterMap,
    _hsl_words,
    _hsr_words,
    _shuffle_words,
    letter_map_extend,
    to_fraction,
    word_key,
    words_upto,
)
from .linalg import Echelon
from .paths import PolynomialMap
from .poly import Polynomial
from .series import TruncatedSeries, antipode_adjoint


class ClosureType(enum.Enum):
    SHUFFLE = "shuffle"
    RIGHT_HALF = "right-half"
    LEFT_HALF = "left-half"
    BOTH_HALF = "both-half"
    SPAN = "span"  # plain linear span, no products

    @classmethod
    def parse(cls, text) -> "ClosureType":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown closure {text!r}", "closure")

    @property
    def halfshuffle(self) -> bool:
        return self in (ClosureType.RIGHT_HALF, ClosureType.LEFT_HALF, ClosureType.BOTH_HALF)


@dataclass(frozen=True)
class GradedBasis:
    level: int
    closure: ClosureType
    rows: tuple
    pivot_words: tuple
    dim: int

    def __len__(self):
        return len(self.rows)

    def pivots_by_degree(self) -> dict:
        out = defaultdict(int)
        for w in self.pivot_words:
            out[len(w)] += 1
        return dict(out)

    def echelon(self) -> Echelon:
        ech = Echelon(word_key)
        ech.rows = {p: dict(r._terms) for p, r in zip(self.pivot_words, self.rows)}
        return ech


@lru_cache(maxsize=None)
def _monomial_shuffle(exps: tuple) -> tuple:
    acc = {EMPTY: 1}
    for j, e in enumerate(exps, 1):
        for _ in range(e):
            nxt: dict = defaultdict(int)
            for w, k in acc.items():
                for v, m in _shuffle_words(w, (j,)):
                    nxt[v] += k * m
            acc = nxt
    return tuple(acc.items())


def phi(p: Polynomial, dim: int | None = None) -> FreeTensor:
    """Shuffle-algebra image of a polynomial: ``x_j -> letter j``."""
    dim = p.nvars if dim is None else dim
    if dim < p.nvars:
        raise ValidationError(f"alphabet {dim} smaller than {p.nvars} variables", "dimension")
    if p.constant() != 0:
        raise ValidationError("phi needs a polynomial with zero constant term", "polys")
    acc: dict = defaultdict(Fraction)
    for exps, c in p._terms.items():
        for w, k in _monomial_shuffle(exps):
            acc[w] += c * k
    return FreeTensor._make(acc, dim)


def m_p(p: PolynomialMap, x: FreeTensor) -> FreeTensor:
    """Halfshuffle pullback along ``p``: the lambda extension of ``i -> phi(p_i)``."""
    if x.dim != p.target_dim:
        raise ValidationError(f"tensor alphabet {x.dim} does not match map target {p.target_dim}")
    B = LetterMap(tuple(phi(q, p.nvars) for q in p.polys), p.nvars)
    used = {i for w in x._terms for i in w}
    for i in sorted(used):
        if B.images[i - 1].is_zero():
            raise ValidationError(f"component {i} of the map is zero, so letter {i} has no image", "polys")
    return letter_map_extend(B, x, mode="lambda")


def _word_products(closure: ClosureType):
    if closure is ClosureType.SHUFFLE:
        return (lambda v, w: _shuffle_words(v, w),)
    right = (lambda v, w: _hsr_words(v, w), lambda v, w: _hsr_words(w, v))
    left = (lambda v, w: _hsl_words(v, w), lambda v, w: _hsl_words(w, v))
    if closure is ClosureType.RIGHT_HALF:
        return right
    if closure is ClosureType.LEFT_HALF:
        return left
    if closure is ClosureType.BOTH_HALF:
        return right + left
    return ()


def _apply(op, vec: dict, word) -> dict:
    acc: dict = defaultdict(Fraction)
    for u, c in vec.items():
        for w, k in op(u, word):
            acc[w] += c * k
    return {w: c for w, c in acc.items() if c}


def _finish(ech: Echelon, level, closure, dim) -> GradedBasis:
    pivots = ech.sorted_pivots()
    rows = tuple(FreeTensor._make(ech.rows[p], dim) for p in pivots)
    return GradedBasis(level, closure, rows, tuple(pivots), dim)


def ideal_basis(generators, closure, level: int, dim: int | None = None) -> GradedBasis:
    """Row-reduced basis of the ideal generated by ``generators`` up to degree ``level``.

    Generators whose degree exceeds ``level`` cannot be certified at that
    level and are dropped.
    """
    closure = ClosureType.parse(closure)
    generators = list(generators)
    if dim is None:
        if not generators:
            raise ValidationError("alphabet size required for an empty generator list", "dimension")
        dim = generators[0].dim
    if level < 0:
        raise ValidationError("level must be non-negative", "level")
    seen = set()
    gens = []
    for g in generators:
        if g.dim != dim:
            raise ValidationError(f"generator alphabet {g.dim} differs from {dim}", "generators")
        if g.is_zero():
            raise ValidationError("zero generator", "generators")
        if closure.halfshuffle and g.constant() != 0:
            raise ValidationError("halfshuffle ideals need generators without empty-word term", "generators")
        if g.degree() <= level and g not in seen:
            seen.add(g)
            gens.append(g)

    ech = Echelon(word_key)
    ops = _word_products(closure)
    # Queue the reduced vector, not the raw product: its leading word is its
    # pivot, so cancellation of top-degree terms earns the extra room.
    queue = []
    for g in gens:
        p = ech.add(dict(g._terms))
        if p is not None:
            queue.append(dict(ech.rows[p]))
    all_words = list(words_upto(dim, level, start=1))
    while queue:
        vec = queue.pop()
        room = level - max(len(w) for w in vec)
        for word in all_words:
            if len(word) > room:
                break
            for op in ops:
                prod = _apply(op, vec, word)
                p = ech.add(prod) if prod else None
                if p is not None:
                    queue.append(dict(ech.rows[p]))
    return _finish(ech, level, closure, dim)


def member(x: FreeTensor, basis: GradedBasis):
    """Returns ``(is_member, coords)``; ``coords`` aligns with ``basis.rows``."""
    if x.dim != basis.dim:
        raise ValidationError(f"alphabet mismatch: {x.dim} vs {basis.dim}")
    if x.degree() > basis.level:
        raise ValidationError(f"degree {x.degree()} exceeds basis level {basis.level}", "level")
    coords = basis.echelon().coordinates(dict(x._terms))
    if coords is None:
        return False, None
    return True, [coords[p] for p in basis.pivot_words]


def shift_ideal(basis: GradedBasis, g: TruncatedSeries, side: str = "left") -> GradedBasis:
    """Rows ``x -> sum <A g, x1> x2`` (``side='left'``) or ``sum x1 <A g, x2>``.

    With ``g`` the signature of ``X`` the zero set of the result is ``X`` joined
    in front of (left) or behind (right) the original variety.
    """
    if g.level < basis.level:
        raise ValidationError(f"series level {g.level} below basis level {basis.level}", "level")
    if g.dim != basis.dim:
        raise ValidationError(f"alphabet mismatch: {g.dim} vs {basis.dim}")
    if side not in ("left", "right"):
        raise ValidationError(f"side must be 'left' or 'right', not {side!r}", "side")
    ag = antipode_adjoint(g)
    ech = Echelon(word_key)
    for row in basis.rows:
        acc: dict = defaultdict(Fraction)
        for w, c in row._terms.items():
            for k in range(len(w) + 1):
                if side == "left":
                    weight, rest = ag.coeff(w[:k]), w[k:]
                else:
                    weight, rest = ag.coeff(w[k:]), w[:k]
                if weight:
                    acc[rest] += c * weight
        acc = {w: c for w, c in acc.items() if c}
        if acc:
            ech.add(acc)
    return _finish(ech, basis.level, ClosureType.SPAN, basis.dim)


@lru_cache(maxsize=None)
def _power_word(word: tuple, n: int, block: int, dim: int) -> tuple:
    # sum over n-fold splits of word of shuffles of the parts; with block > 0
    # the i-th part is relabeled into letters (i-1)*dim+1 .. i*dim
    if n == 1:
        off = 0 if not block else (block - 1) * dim
        return ((tuple(i + off for i in word), 1),)
    off = 0 if not block else (block - 1) * dim
    nxt_block = block + 1 if block else 0
    acc: dict = defaultdict(int)
    for k in range(len(word) + 1):
        head = tuple(i + off for i in word[:k])
        for tail, m in _power_word(word[k:], n - 1, nxt_block, dim):
            for w, s in _shuffle_words(head, tail):
                acc[w] += m * s
    return tuple(acc.items())


def power_ideal(x: FreeTensor, n: int) -> FreeTensor:
    """``sum over n-fold deconcatenations of w1 sh ... sh wn``."""
    if n < 1:
        raise ValidationError("power must be a positive integer", "n")
    acc: dict = defaultdict(Fraction)
    for w, c in x._terms.items():
        for v, k in _power_word(w, n, 0, x.dim):
            acc[v] += c * k
    return FreeTensor._make(acc, x.dim)


def multi_path_ideal(x: FreeTensor, n: int) -> FreeTensor:
    """As :func:`power_ideal`, with part ``i`` relabeled into the ``i``-th letter block."""
    if n < 1:
        raise ValidationError("number of paths must be a positive integer", "n")
    acc: dict = defaultdict(Fraction)
    for w, c in x._terms.items():
        for v, k in _power_word(w, n, 1, x.dim):
            acc[v] += c * k
    return FreeTensor._make(acc, n * x.dim)


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), Fraction(0)) for j in range(n)) for i in range(n))


def validate_group(matrices) -> list:
    """Normalise a list of square matrices and check it is a finite group."""
    mats = []
    for A in matrices:
        M = tuple(tuple(to_fraction(a) for a in row) for row in A)
        if not M or any(len(row) != len(M) for row in M):
            raise ValidationError("group elements must be square matrices", "matrices")
        mats.append(M)
    if not mats:
        raise ValidationError("empty group", "matrices")
    n = len(mats[0])
    if any(len(M) != n for M in mats):
        raise ValidationError("group elements have different sizes", "matrices")
    elems = list(dict.fromkeys(mats))
    members = set(elems)
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    if ident not in members:
        raise ValidationError("set does not contain the identity", "matrices")
    for A in elems:
        for B in elems:
            if _matmul(A, B) not in members:
                raise ValidationError("set is not closed under multiplication", "matrices")
    # closed and finite with identity: inverses exist iff every row of the table contains the identity
    for A in elems:
        if not any(_matmul(A, B) == ident for B in elems):
            raise ValidationError("set is not closed under inverses", "matrices")
    return elems


def invariant_projector(G, x: FreeTensor) -> FreeTensor:
    """Average of the transpose actions ``A^T x`` over a finite matrix group."""
    elems = validate_group(G)
    if len(elems[0]) != x.dim:
        raise ValidationError(f"matrix size {len(elems[0])} does not match alphabet {x.dim}", "matrices")
    total = FreeTensor.zero(x.dim)
    for A in elems:
        total = total + letter_map_extend(LetterMap.from_matrix(A), x, "multiplicative")
    return total * Fraction(1, len(elems))
