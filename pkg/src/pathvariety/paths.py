"""Piecewise-polynomial paths and their exact signatures.

Each segment is a tuple of univariate polynomials parameterised on [0, 1].
Paths carry no start point: segment ``k`` contributes its increment and is
glued to the end of segment ``k-1`` by translation, so only derivatives of
the components matter for signatures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .freealg import EMPTY, FreeTensor, LetterMap, to_fraction, words_upto
from .poly import (
    Polynomial,
    uadd,
    ucompose,
    uderiv,
    ueval,
    uintegrate,
    umul,
    upoly,
    uscale,
)
from .series import TruncatedSeries, series_mul

ONE = (Fraction(1),)


@dataclass(frozen=True)
class PolySegment:
    components: tuple

    def __post_init__(self):
        comps = tuple(upoly(c) for c in self.components)
        if not comps:
            raise ValidationError("a segment needs at least one component", "segments")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return len(self.components)

    def start(self) -> tuple:
        return tuple(ueval(c, 0) for c in self.components)

    def end(self) -> tuple:
        return tuple(ueval(c, 1) for c in self.components)

    def increment(self) -> tuple:
        return tuple(b - a for a, b in zip(self.start(), self.end()))

    def derivatives(self) -> tuple:
        return tuple(uderiv(c) for c in self.components)


@dataclass(frozen=True)
class PiecewisePolyPath:
    dim: int
    segments: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("path dimension must be positive", "dimension")
        segs = tuple(s if isinstance(s, PolySegment) else PolySegment(tuple(s)) for s in self.segments)
        for s in segs:
            if s.dim != self.dim:
                raise ValidationError(f"segment has {s.dim} components, path dimension is {self.dim}", "segments")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def constant(cls, dim: int) -> "PiecewisePolyPath":
        return cls(dim, ())

    @classmethod
    def linear(cls, increments) -> "PiecewisePolyPath":
        """Piecewise linear path through the given increments (one per segment)."""
        increments = [tuple(to_fraction(a) for a in inc) for inc in increments]
        if not increments:
            raise ValidationError("need at least one increment, or use constant()")
        dim = len(increments[0])
        return cls(dim, tuple(PolySegment(tuple((0, a) for a in inc)) for inc in increments))

    def increment(self) -> tuple:
        total = [Fraction(0)] * self.dim
        for s in self.segments:
            for j, a in enumerate(s.increment()):
                total[j] += a
        return tuple(total)

    def __len__(self):
        return len(self.segments)


def _segment_iterated_integrals(seg: PolySegment, level: int) -> dict:
    derivs = seg.derivatives()
    values = {EMPTY: Fraction(1)}
    frontier = {EMPTY: ONE}
    for _ in range(level):
        nxt = {}
        for w, F in frontier.items():
            for i, dx in enumerate(derivs, 1):
                if not dx:
                    continue
                G = uintegrate(umul(F, dx))
                if G:
                    nxt[w + (i,)] = G
                    values[w + (i,)] = sum(G, Fraction(0))
        frontier = nxt
    return values


def segment_signature(seg: PolySegment, level: int) -> TruncatedSeries:
    return TruncatedSeries._make(_segment_iterated_integrals(seg, level), level, seg.dim)


def signature(X: PiecewisePolyPath, level: int) -> TruncatedSeries:
    """Exact truncated signature: per-segment iterated integrals, joined by Chen's identity."""
    if level < 0:
        raise ValidationError("level must be non-negative", "level")
    total = TruncatedSeries.unit(level, X.dim)
    for seg in X.segments:
        total = series_mul(total, segment_signature(seg, level))
    assert total.coeff(EMPTY) == 1
    return total


def _prefix_closure(words) -> list:
    out = set()
    for w in words:
        for k in range(len(w) + 1):
            out.add(w[:k])
    return sorted(out, key=lambda w: (len(w), w))


def _stopped_table(X: PiecewisePolyPath, words) -> dict:
    """Stopped-signature polynomials for a prefix-closed family of words.

    Uses the continuation recursion ``F_wi(t) = F_wi(start) + int_0^t F_w dX_i``
    across segments, so it never multiplies whole series.
    """
    closed = _prefix_closure(words)
    table = {w: [] for w in closed}
    start = {w: (Fraction(1) if not w else Fraction(0)) for w in closed}
    for seg in X.segments:
        derivs = seg.derivatives()
        current = {}
        for w in closed:
            if not w:
                current[w] = ONE
                continue
            base = (start[w],) if start[w] else ()
            current[w] = uadd(base, uintegrate(umul(current[w[:-1]], derivs[w[-1] - 1])))
        for w in closed:
            table[w].append(current[w])
            start[w] = ueval(current[w], 1)
    return table


def stopped_signature_poly(X: PiecewisePolyPath, word) -> list:
    """Per segment, the polynomial ``t -> <sig(X) stopped at (segment, t), word>``.

    ``word`` may also be a :class:`FreeTensor`, read linearly.
    """
    if isinstance(word, FreeTensor):
        return stopped_tensor_poly(X, word)
    word = tuple(word)
    if any(i < 1 or i > X.dim for i in word):
        raise ValidationError(f"word {word} outside alphabet 1..{X.dim}")
    return _stopped_table(X, [word])[word]


def stopped_tensor_poly(X: PiecewisePolyPath, x: FreeTensor) -> list:
    if x.dim != X.dim:
        raise ValidationError(f"alphabet mismatch: path {X.dim} vs tensor {x.dim}")
    table = _stopped_table(X, list(x._terms))
    out = []
    for s in range(len(X.segments)):
        acc: tuple = ()
        for w, c in x._terms.items():
            acc = uadd(acc, uscale(table[w][s], c))
        out.append(acc)
    return out


def signature_pairing(X: PiecewisePolyPath, x: FreeTensor) -> Fraction:
    """``<sig(X), x>`` computed only over the prefixes of the words in ``x``."""
    if x.dim != X.dim:
        raise ValidationError(f"alphabet mismatch: path {X.dim} vs tensor {x.dim}")
    if not X.segments:
        return x.constant()
    table = _stopped_table(X, list(x._terms))
    return sum((c * ueval(table[w][-1], 1) for w, c in x._terms.items()), Fraction(0))


def concat(X: PiecewisePolyPath, Y: PiecewisePolyPath) -> PiecewisePolyPath:
    if X.dim != Y.dim:
        raise ValidationError(f"dimension mismatch: {X.dim} vs {Y.dim}", "dimension")
    return PiecewisePolyPath(X.dim, X.segments + Y.segments)


_REVERSE = (Fraction(1), Fraction(-1))


def reverse(X: PiecewisePolyPath) -> PiecewisePolyPath:
    segs = tuple(
        PolySegment(tuple(ucompose(c, _REVERSE) for c in s.components)) for s in reversed(X.segments)
    )
    return PiecewisePolyPath(X.dim, segs)


def left_subpath(X: PiecewisePolyPath, k: int, stop) -> PiecewisePolyPath:
    """Keep segments ``0..k-1`` and segment ``k`` restricted to ``[0, stop]``."""
    stop = to_fraction(stop)
    if not 0 <= k < len(X.segments):
        raise ValidationError(f"segment index {k} out of range", "segment")
    if not 0 <= stop <= 1:
        raise ValidationError("stop time must lie in [0, 1]", "stop")
    last = X.segments[k]
    scaled = PolySegment(tuple(ucompose(c, (Fraction(0), stop)) for c in last.components))
    return PiecewisePolyPath(X.dim, X.segments[:k] + (scaled,))


@dataclass(frozen=True)
class PolynomialMap:
    """Polynomials ``p_1..p_m`` in ``nvars`` variables, all vanishing at 0."""

    polys: tuple
    nvars: int

    def __post_init__(self):
        polys = tuple(self.polys)
        if not polys:
            raise ValidationError("polynomial map needs at least one component", "polys")
        for j, p in enumerate(polys):
            if p.nvars != self.nvars:
                raise ValidationError(f"component {j} has {p.nvars} variables, expected {self.nvars}", "polys")
            if p.constant() != 0:
                raise ValidationError(f"component {j} has nonzero constant term", "polys")
        object.__setattr__(self, "polys", polys)

    @property
    def target_dim(self) -> int:
        return len(self.polys)

    @classmethod
    def identity(cls, n: int) -> "PolynomialMap":
        return cls(tuple(Polynomial.variable(j, n) for j in range(1, n + 1)), n)


def apply_polynomial_map(p: PolynomialMap, X: PiecewisePolyPath) -> PiecewisePolyPath:
    """The path ``t -> p(X_t - X_0)``."""
    if p.nvars != X.dim:
        raise ValidationError(f"map expects dimension {p.nvars}, path has {X.dim}", "dimension")
    pos = [Fraction(0)] * X.dim
    segs = []
    for s in X.segments:
        shifted = [uadd(c, (pos[j] - ueval(c, 0),)) for j, c in enumerate(s.components)]
        segs.append(PolySegment(tuple(q.compose_univariate(shifted) for q in p.polys)))
        pos = [ueval(c, 1) for c in shifted]
    return PiecewisePolyPath(p.target_dim, tuple(segs))


def lambda_star(B: LetterMap, X: PiecewisePolyPath) -> PiecewisePolyPath:
    """Path whose ``j``-th component is the stopped signature of ``X`` against ``B(j)``."""
    if B.dim != X.dim:
        raise ValidationError(f"letter map targets alphabet {B.dim}, path has dimension {X.dim}")
    for j, img in enumerate(B.images, 1):
        if img.constant() != 0:
            raise ValidationError(f"image of letter {j} has an empty-word term", "images")
    comps = [stopped_tensor_poly(X, img) for img in B.images]
    segs = tuple(PolySegment(tuple(c[s] for c in comps)) for s in range(len(X.segments)))
    return PiecewisePolyPath(B.source_dim, segs)


def delta_shift(B: LetterMap, g: TruncatedSeries) -> LetterMap:
    """Shift letter images by the reduced coproduct weighted with ``<g, prefix>``."""
    top = max(img.degree() for img in B.images)
    if g.level < top:
        raise ValidationError(f"series level {g.level} below image degree {top}", "level")
    if g.dim != B.dim:
        raise ValidationError(f"alphabet mismatch: {g.dim} vs {B.dim}")
    if g.coeff(EMPTY) != 1:
        raise ValidationError("delta shift needs a grouplike series")
    images = []
    for img in B.images:
        acc = dict(img._terms)
        for w, c in img._terms.items():
            for k in range(1, len(w)):
                weight = g.coeff(w[:k])
                if weight:
                    acc[w[k:]] = acc.get(w[k:], 0) + c * weight
        images.append(FreeTensor._make(acc, B.dim))
    return LetterMap(tuple(images), B.dim)


def all_words_table(X: PiecewisePolyPath, level: int) -> dict:
    """Stopped polynomials for every word up to ``level``."""
    return _stopped_table(X, list(words_upto(X.dim, level)))
