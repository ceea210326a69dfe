"""Path-variety membership, bounded-rank tests and log-signature realization.

Every verdict here is certified only up to the truncation level it was
computed at: a path "in" a variety at level N annihilates the ideal up to
degree N.  A failing rank test refutes the rank bound outright; a passing
one certifies it up to the (level, column budget) used.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ValidationError
from .freealg import (
    EMPTY,
    FreeTensor,
    concat_product,
    half_shuffle_left,
    half_shuffle_right,
    to_fraction,
    words_of_degree,
    words_upto,
)
from .ideals import ClosureType, GradedBasis, ideal_basis, phi
from .linalg import rank
from .paths import PiecewisePolyPath, signature
from .poly import Polynomial
from .series import TruncatedSeries, is_lie, log_conc, pair


@dataclass(frozen=True)
class VarietySpec:
    generators: tuple
    closure: ClosureType
    level: int
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "closure", ClosureType.parse(self.closure))
        for g in self.generators:
            if g.dim != self.dim:
                raise ValidationError(f"generator alphabet {g.dim} differs from {self.dim}", "generators")

    def basis(self) -> GradedBasis:
        return ideal_basis(self.generators, self.closure, self.level, self.dim)


SIDES = ("left", "right", "two_sided")


@dataclass(frozen=True)
class RankSpec:
    tensors: tuple
    k: int
    side: str = "left"
    level: int = 4
    columns: int = 50

    def __post_init__(self):
        object.__setattr__(self, "tensors", tuple(self.tensors))
        if not self.tensors:
            raise ValidationError("rank spec needs at least one tensor", "tensors")
        dims = {t.dim for t in self.tensors}
        if len(dims) != 1:
            raise ValidationError("rank spec tensors use different alphabets", "tensors")
        for t in self.tensors:
            if t.is_zero():
                raise ValidationError("zero tensor in rank spec", "tensors")
            if t.constant() != 0:
                raise ValidationError("rank spec tensors must have no empty-word term", "tensors")
        if not 0 <= self.k:
            raise ValidationError("rank bound must be non-negative", "k")
        if self.side not in SIDES:
            raise ValidationError(f"side must be one of {SIDES}", "side")
        if self.columns < 1:
            raise ValidationError("column budget must be positive", "columns")
        if max(t.degree() for t in self.tensors) > self.level:
            raise ValidationError("tensor degree exceeds level", "level")

    @property
    def dim(self) -> int:
        return self.tensors[0].dim


def _pairs_all_zero(sig: TruncatedSeries, rows) -> bool:
    return all(pair(sig, row) == 0 for row in rows)


def in_variety(X: PiecewisePolyPath, V: VarietySpec, basis: GradedBasis | None = None) -> bool:
    """True iff ``sig(X)`` annihilates every row of the level-``N`` basis of ``V``."""
    if X.dim != V.dim:
        raise ValidationError(f"path dimension {X.dim} does not match alphabet {V.dim}", "dimension")
    basis = basis or V.basis()
    return _pairs_all_zero(signature(X, V.level), basis.rows)


def loops_variety(d: int, k: int, level: int | None = None) -> VarietySpec:
    """Loops of order ``k``: every signature level up to ``k`` vanishes."""
    if k < 1:
        raise ValidationError("loop order must be at least 1", "k")
    gens = tuple(FreeTensor.word(w, d) for w in words_upto(d, k, start=1))
    return VarietySpec(gens, ClosureType.SHUFFLE, k if level is None else level, d)


def increments_variety(polys, level: int | None = None) -> VarietySpec:
    """Paths whose increment lies in the zero set of ``polys``.

    A constant term ``c`` enters as ``c`` times the empty word.
    """
    polys = list(polys)
    if not polys:
        raise ValidationError("need at least one polynomial", "polys")
    d = polys[0].nvars
    gens = []
    for p in polys:
        if p.nvars != d:
            raise ValidationError("polynomials use different numbers of variables", "polys")
        c = p.constant()
        g = phi(p - c, d) + FreeTensor({EMPTY: c}, d)
        if not g.is_zero():
            gens.append(g)
    top = max(p.degree() for p in polys)
    return VarietySpec(tuple(gens), ClosureType.SHUFFLE, max(top, 1) if level is None else level, d)


def _context_ops(side: str):
    right = (("v>w", lambda v, w: half_shuffle_right(v, w)), ("w>v", lambda v, w: half_shuffle_right(w, v)))
    left = (("v<w", lambda v, w: half_shuffle_left(v, w)), ("w<v", lambda v, w: half_shuffle_left(w, v)))
    if side == "left":
        return right
    if side == "right":
        return left
    return right + left


def operator_contexts(dim: int, max_degree: int, side: str, limit: int):
    """Enumerate halfshuffle contexts in canonical order, at most ``limit``.

    A context is a tuple of ``(op_name, word)`` steps applied left to right;
    its degree is the total length of its words.  Contexts are listed by
    degree, then by first word, then by operation, then by the rest.
    """
    ops = [name for name, _ in _context_ops(side)]

    def of_degree(D):
        if D == 0:
            yield ()
            return
        for j in range(1, D + 1):
            for w in words_of_degree(dim, j):
                for name in ops:
                    for tail in of_degree(D - j):
                        yield ((name, w),) + tail

    out = []
    for D in range(max_degree + 1):
        for ctx in of_degree(D):
            out.append(ctx)
            if len(out) >= limit:
                return out
    return out


def apply_context(ctx, x: FreeTensor, side: str) -> FreeTensor:
    table = dict(_context_ops(side))
    for name, w in ctx:
        x = table[name](x, FreeTensor.word(w, x.dim))
    return x


def rank_matrix(X: PiecewisePolyPath, spec: RankSpec) -> list:
    if X.dim != spec.dim:
        raise ValidationError(f"path dimension {X.dim} does not match alphabet {spec.dim}", "dimension")
    room = spec.level - max(t.degree() for t in spec.tensors)
    contexts = operator_contexts(spec.dim, room, spec.side, spec.columns)
    sig = signature(X, spec.level)
    return [[pair(sig, apply_context(ctx, x, spec.side)) for ctx in contexts] for x in spec.tensors]


def rank_test(X: PiecewisePolyPath, spec: RankSpec) -> bool:
    """Does the span of stopped-signature vectors have dimension <= k (up to level/columns)?"""
    if spec.k >= len(spec.tensors):
        return True
    return rank(rank_matrix(X, spec)) <= spec.k


def letters(d: int) -> list:
    return [FreeTensor.letter(i, d) for i in range(1, d + 1)]


def subspace_test(X: PiecewisePolyPath, m: int, level: int, columns: int = 50) -> bool:
    return rank_test(X, RankSpec(tuple(letters(X.dim)), m, "left", level, columns))


def shuffle_monomials(d: int, m: int) -> list:
    """``phi`` of every monomial of total degree ``1..m`` in ``d`` variables."""
    out = []
    for deg in range(1, m + 1):
        for combo in itertools.combinations_with_replacement(range(d), deg):
            exps = [0] * d
            for j in combo:
                exps[j] += 1
            out.append(phi(Polynomial({tuple(exps): 1}, d)))
    return out


def hypersurface_test(X: PiecewisePolyPath, m: int, level: int, columns: int = 50) -> bool:
    monos = shuffle_monomials(X.dim, m)
    return rank_test(X, RankSpec(tuple(monos), len(monos) - 1, "left", level, columns))


def sphere_or_hyperplane_test(X: PiecewisePolyPath, level: int, columns: int = 50) -> bool:
    d = X.dim
    square = FreeTensor({(i, i): 1 for i in range(1, d + 1)}, d)
    return rank_test(X, RankSpec(tuple(letters(d)) + (square,), d, "left", level, columns))


def lyndon_words(dim: int, length: int) -> list:
    """Lyndon words of exactly ``length`` over ``1..dim``, lexicographic (Duval)."""
    out = []
    w = [0]
    while w:
        w[-1] += 1
        if len(w) == length:
            out.append(tuple(w))
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == dim:
            w.pop()
    return out


def is_lyndon(word: tuple) -> bool:
    return bool(word) and all(word < word[k:] for k in range(1, len(word)))


def standard_factorization(word: tuple):
    """``word = u v`` with ``v`` the longest proper Lyndon suffix."""
    for k in range(1, len(word)):
        if is_lyndon(word[k:]):
            return word[:k], word[k:]
    raise ValidationError(f"{word} has no standard factorization")


def bracket_tree(word: tuple):
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracket_tree(u), bracket_tree(v))


def bracket_tensor(tree, dim: int) -> FreeTensor:
    if isinstance(tree, int):
        return FreeTensor.letter(tree, dim)
    a, b = bracket_tensor(tree[0], dim), bracket_tensor(tree[1], dim)
    return concat_product(a, b) - concat_product(b, a)


def lyndon_coordinates(x: FreeTensor, degree: int) -> list:
    """Expand a homogeneous Lie element in the Lyndon bracket basis.

    The bracket of a Lyndon word ``w`` is ``w`` plus lexicographically larger
    words, so the system is triangular in increasing Lyndon order.
    """
    rest = x.homogeneous(degree)
    out = []
    for w in lyndon_words(x.dim, degree):
        c = rest.coeff(w)
        if c:
            out.append((w, c))
            rest = rest - bracket_tensor(bracket_tree(w), x.dim) * c
    if not rest.is_zero():
        raise ValidationError("tensor is not a Lie element")
    return out


def _gadget(tree, c: Fraction, dim: int) -> list:
    if isinstance(tree, int):
        inc = [Fraction(0)] * dim
        inc[tree - 1] = c
        return [tuple(inc)]
    a = _gadget(tree[0], c, dim)
    b = _gadget(tree[1], Fraction(1), dim)
    return a + b + _reverse_increments(a) + _reverse_increments(b)


def _reverse_increments(incs) -> list:
    return [tuple(-x for x in inc) for inc in reversed(incs)]


def bracket_gadget(word: tuple, c, dim: int) -> list:
    """Increments of a commutator loop whose log-signature starts with ``c * P(word)``."""
    return _gadget(bracket_tree(tuple(word)), to_fraction(c), dim)


def _path_from(increments, dim: int) -> PiecewisePolyPath:
    if not increments:
        return PiecewisePolyPath.constant(dim)
    return PiecewisePolyPath.linear(increments)


def realize_log_signature(lie: TruncatedSeries, level: int | None = None, dim: int | None = None) -> PiecewisePolyPath:
    """Piecewise linear path whose truncated log-signature equals ``lie``."""
    if level is not None and level != lie.level:
        raise ValidationError(f"level mismatch: series {lie.level} vs requested {level}", "level")
    if dim is not None and dim != lie.dim:
        raise ValidationError(f"alphabet mismatch: series {lie.dim} vs requested {dim}", "dimension")
    if not is_lie(lie):
        raise ValidationError("input is not a Lie element")
    N, d = lie.level, lie.dim
    first = tuple(lie.coeff((i,)) for i in range(1, d + 1))
    increments = [first] if any(first) else []
    target = lie.tensor()
    for k in range(2, N + 1):
        current = log_conc(signature(_path_from(increments, d), N)).tensor()
        defect = (target - current).homogeneous(k)
        for w, c in lyndon_coordinates(defect, k):
            increments += bracket_gadget(w, c, d)
    return _path_from(increments, d)


def linear_signature_polynomial(x: FreeTensor) -> Polynomial:
    """Signature coordinate of a linear path as a polynomial in its increment."""
    d = x.dim
    terms = {}
    for w, c in x._terms.items():
        exps = [0] * d
        for i in w:
            exps[i - 1] += 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + c / factorial(len(w))
    return Polynomial(terms, d)
