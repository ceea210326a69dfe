"""Exact polynomial arithmetic.

Univariate polynomials are tuples of Fractions, constant term first, with no
trailing zeros (the zero polynomial is the empty tuple).  Multivariate
polynomials are :class:`Polynomial` objects holding ``{exponents: coeff}``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .errors import ValidationError
from .freealg import to_fraction


def upoly(coeffs) -> tuple:
    out = [to_fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def uadd(p, q) -> tuple:
    n = max(len(p), len(q))
    return upoly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def usub(p, q) -> tuple:
    return uadd(p, uscale(q, -1))


def uscale(p, s) -> tuple:
    if s == 0:
        return ()
    return tuple(c * s for c in p)


def umul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return upoly(out)


def uderiv(p) -> tuple:
    return upoly([i * c for i, c in enumerate(p)][1:])


def uintegrate(p) -> tuple:
    """Antiderivative vanishing at 0."""
    if not p:
        return ()
    return (Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(p))


def ueval(p, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def ucompose(p, q) -> tuple:
    """``p(q(t))``."""
    acc: tuple = ()
    for c in reversed(p):
        acc = uadd(umul(acc, q), (c,) if c else ())
    return acc


def upow(p, n: int) -> tuple:
    out: tuple = (Fraction(1),)
    for _ in range(n):
        out = umul(out, p)
    return out


class Polynomial:
    """Sparse multivariate polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, terms=(), nvars: int = 1):
        if nvars < 1:
            raise ValidationError("a polynomial needs at least one variable", "dimension")
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = defaultdict(Fraction)
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValidationError(f"exponent vector {exps} does not fit {nvars} variables", "exponents")
            acc[exps] += to_fraction(coeff)
        self.nvars = nvars
        self._terms = {e: c for e, c in acc.items() if c != 0}

    @classmethod
    def variable(cls, j: int, nvars: int) -> "Polynomial":
        """The coordinate ``x_j`` (1-based)."""
        exps = [0] * nvars
        exps[j - 1] = 1
        return cls({tuple(exps): 1}, nvars)

    @classmethod
    def constant_poly(cls, c, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def constant(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant_poly(other, self.nvars)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -to_fraction(other))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            s = to_fraction(other)
            return Polynomial({e: s * c for e, c in self._terms.items()}, self.nvars)
        acc: dict = defaultdict(Fraction)
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return Polynomial(acc, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant_poly(1, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Polynomial({self.items()}, nvars={self.nvars})"

    def __call__(self, *values) -> Fraction:
        if len(values) != self.nvars:
            raise ValidationError(f"expected {self.nvars} values, got {len(values)}")
        vals = [to_fraction(v) for v in values]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(vals, exps):
                term *= v**e
            total += term
        return total

    def compose_univariate(self, components) -> tuple:
        """Substitute univariate polynomials for the variables."""
        if len(components) != self.nvars:
            raise ValidationError(f"expected {self.nvars} components, got {len(components)}")
        powers: dict = {}
        out: tuple = ()
        for exps, c in self._terms.items():
            term: tuple = (c,)
            for j, e in enumerate(exps):
                if e:
                    key = (j, e)
                    if key not in powers:
                        powers[key] = upow(components[j], e)
                    term = umul(term, powers[key])
            out = uadd(out, term)
        return out
