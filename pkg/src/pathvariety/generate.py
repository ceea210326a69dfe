"""Seeded random inputs: paths, tensors and Lie elements with small rationals."""

from __future__ import annotations

import random
from fractions import Fraction

from .freealg import FreeTensor, concat_product, words_upto
from .paths import PiecewisePolyPath
from .series import TruncatedSeries


def small_rational(rng: random.Random, span: int = 3, denom: int = 3) -> Fraction:
    return Fraction(rng.randint(-span * denom, span * denom), rng.randint(1, denom))


def random_path(rng: random.Random, dim: int, segments: int, degree: int = 1) -> PiecewisePolyPath:
    """Piecewise polynomial path; ``degree=1`` gives a piecewise linear one."""
    segs = []
    for _ in range(segments):
        comps = []
        for _ in range(dim):
            comps.append([Fraction(0)] + [small_rational(rng) for _ in range(degree)])
        segs.append(comps)
    return PiecewisePolyPath(dim, tuple(segs))


def random_tensor(rng: random.Random, dim: int, max_degree: int, nterms: int = 4, min_degree: int = 0) -> FreeTensor:
    words = list(words_upto(dim, max_degree, start=min_degree))
    chosen = rng.sample(words, min(nterms, len(words)))
    return FreeTensor({w: small_rational(rng) for w in chosen}, dim)


def random_lie(rng: random.Random, dim: int, level: int, nterms: int = 3) -> TruncatedSeries:
    """Sparse random combination of letters and nested brackets up to ``level``."""
    total = FreeTensor.zero(dim)
    for _ in range(nterms):
        total = total + _random_bracket(rng, dim, rng.randint(1, level)) * small_rational(rng)
    return TruncatedSeries.from_tensor(total, level)


def _random_bracket(rng, dim, degree) -> FreeTensor:
    if degree == 1:
        return FreeTensor.letter(rng.randint(1, dim), dim)
    k = rng.randint(1, degree - 1)
    a, b = _random_bracket(rng, dim, k), _random_bracket(rng, dim, degree - k)
    return concat_product(a, b) - concat_product(b, a)
