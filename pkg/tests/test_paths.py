import random
from fractions import Fraction

import pytest
import sympy

from pathvariety.errors import ValidationError
from pathvariety.freealg import (
    FreeTensor,
    LetterMap,
    half_shuffle_right,
    shuffle,
    words_upto,
)
from pathvariety.generate import random_path, random_tensor
from pathvariety.paths import (
    PiecewisePolyPath,
    PolynomialMap,
    apply_polynomial_map,
    concat,
    delta_shift,
    lambda_star,
    left_subpath,
    reverse,
    signature,
    signature_pairing,
    stopped_signature_poly,
    stopped_tensor_poly,
)
from pathvariety.poly import Polynomial
from pathvariety.series import TruncatedSeries, is_grouplike, pair, series_inverse, series_mul

from .conftest import T
from .oracles import linear_path_signature_coeff, sympy_iterated_integral, sympy_stopped

PARABOLA = PiecewisePolyPath(2, (((0, 1), (0, 0, 1)),))
t = sympy.Symbol("t")


def as_sympy(coeffs):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(coeffs)))


def integral_f_dg(f, g):
    # int_0^1 f(t) g'(t) dt for coefficient lists
    return sum(
        (Fraction(a) * j * Fraction(b) / (i + j) for i, a in enumerate(f) for j, b in enumerate(g) if j),
        Fraction(0),
    )


def test_signature_examples():
    assert signature(PiecewisePolyPath.constant(2), 3).tensor() == FreeTensor.unit(2)
    assert pair(signature(PiecewisePolyPath.linear([(1, 0)]), 2), T("11")) == Fraction(1, 2)
    sig = signature(PARABOLA, 2)
    assert sig.coeff((1, 2)) == Fraction(2, 3) == sympy_iterated_integral([[0, 1], [0, 0, 1]], (1, 2))
    assert sig.coeff((2, 1)) == Fraction(1, 3) == sympy_iterated_integral([[0, 1], [0, 0, 1]], (2, 1))


def test_single_segment_matches_sympy():
    rng = random.Random(3)
    for _ in range(4):
        X = random_path(rng, 2, 1, degree=2)
        comps = [list(c) for c in X.segments[0].components]
        sig = signature(X, 3)
        for w in words_upto(2, 3, start=1):
            assert sig.coeff(w) == sympy_iterated_integral(comps, w)


def test_piecewise_linear_matches_block_oracle():
    rng = random.Random(4)
    for _ in range(6):
        dim = rng.randint(1, 3)
        X = random_path(rng, dim, rng.randint(1, 4))
        incs = [s.increment() for s in X.segments]
        sig = signature(X, 4)
        for w in words_upto(dim, 4):
            assert sig.coeff(w) == linear_path_signature_coeff(incs, w)


def test_stopped_examples():
    X = random_path(random.Random(5), 2, 3, degree=2)
    for poly in stopped_signature_poly(X, ()):
        assert as_sympy(poly) == 1
    (p,) = stopped_signature_poly(PiecewisePolyPath.linear([(1, 0)]), (1,))
    assert as_sympy(p) == t
    (p,) = stopped_signature_poly(PARABOLA, (1, 2))
    assert as_sympy(p) == sympy_stopped([[0, 1], [0, 0, 1]], (1, 2)) == sympy.Rational(2, 3) * t**3


def test_stopped_final_value_and_continuity():
    rng = random.Random(6)
    X = random_path(rng, 2, 3, degree=2)
    sig = signature(X, 4)
    for w in words_upto(2, 4, start=1):
        polys = stopped_signature_poly(X, w)
        assert len(polys) == 3
        values = [(as_sympy(p).subs(t, 0), as_sympy(p).subs(t, 1)) for p in polys]
        assert values[0][0] == 0
        for (_, end), (start, _) in zip(values, values[1:]):
            assert end == start
        assert values[-1][1] == sympy.Rational(sig.coeff(w).numerator, sig.coeff(w).denominator)


def test_sparse_pairing_route_agrees():
    rng = random.Random(7)
    for _ in range(5):
        X = random_path(rng, 3, 3, degree=rng.randint(1, 2))
        sig = signature(X, 4)
        x = random_tensor(rng, 3, 4, nterms=6)
        assert signature_pairing(X, x) == pair(sig, x)


def test_chen_reverse_and_grouplike():
    rng = random.Random(8)
    for _ in range(5):
        X = random_path(rng, 2, 2, degree=rng.randint(1, 2))
        Y = random_path(rng, 2, 3, degree=rng.randint(1, 2))
        sx, sy = signature(X, 4), signature(Y, 4)
        assert signature(concat(X, Y), 4).tensor() == series_mul(sx, sy).tensor()
        assert signature(reverse(X), 4).tensor() == series_inverse(sx).tensor()
        assert is_grouplike(sx)


def test_shuffle_identity_random_linear():
    rng = random.Random(9)
    for _ in range(4):
        dim = rng.randint(2, 3)
        X = random_path(rng, dim, rng.randint(1, 4))
        sig = signature(X, 5)
        words = list(words_upto(dim, 4, start=1))
        for u in words:
            for v in words:
                if u <= v and len(u) + len(v) <= 5:
                    x, y = FreeTensor({u: 1}, dim), FreeTensor({v: 1}, dim)
                    assert pair(sig, shuffle(x, y)) == sig.coeff(u) * sig.coeff(v)


def test_halfshuffle_integral_identity():
    rng = random.Random(10)
    X = random_path(rng, 2, 2, degree=2)
    sig = signature(X, 5)
    for u in words_upto(2, 4, start=1):
        for v in words_upto(2, 5 - len(u), start=1):
            fu, fv = stopped_signature_poly(X, u), stopped_signature_poly(X, v)
            rhs = sum((integral_f_dg(a, b) for a, b in zip(fu, fv)), Fraction(0))
            assert pair(sig, half_shuffle_right(FreeTensor({u: 1}, 2), FreeTensor({v: 1}, 2))) == rhs


def test_concat_reverse_subpath_examples():
    X = random_path(random.Random(11), 2, 3, degree=2)
    assert left_subpath(X, 2, 1) == X
    half = left_subpath(X, 1, Fraction(1, 2))
    assert len(half.segments) == 2
    # the truncated piece reaches the value of segment 1 at t = 1/2
    seg = X.segments[1]
    expect = [as_sympy(c).subs(t, sympy.Rational(1, 2)) - as_sympy(c).subs(t, 0) for c in seg.components]
    got = [sympy.Rational(a.numerator, a.denominator) for a in half.segments[1].increment()]
    assert got == expect
    assert reverse(reverse(X)) == X
    assert concat(X, PiecewisePolyPath.constant(2)) == X
    with pytest.raises(ValidationError):
        left_subpath(X, 3, 1)
    with pytest.raises(ValidationError):
        left_subpath(X, 0, 2)
    with pytest.raises(ValidationError):
        concat(X, PiecewisePolyPath.constant(3))


def test_apply_polynomial_map_examples():
    X = random_path(random.Random(12), 2, 2, degree=2)
    ident = apply_polynomial_map(PolynomialMap.identity(2), X)
    assert signature(ident, 4).tensor() == signature(X, 4).tensor()
    x, y = Polynomial.variable(1, 2), Polynomial.variable(2, 2)
    p = PolynomialMap((x * x, y), 2)
    img = apply_polynomial_map(p, PiecewisePolyPath.linear([(1, 1)]))
    assert [as_sympy(c) for c in img.segments[0].components] == [t**2, t]
    with pytest.raises(ValidationError):
        PolynomialMap((x + Polynomial.constant_poly(1, 2), y), 2)


def test_apply_polynomial_map_uses_running_position():
    # second segment must be composed after shifting by the first increment
    X = PiecewisePolyPath.linear([(1,), (1,)])
    sq = PolynomialMap((Polynomial({(2,): 1}, 1),), 1)
    img = apply_polynomial_map(sq, X)
    assert [as_sympy(s.components[0]) for s in img.segments] == [t**2, sympy.expand((1 + t) ** 2)]


def test_lambda_star_examples():
    X = random_path(random.Random(13), 2, 2, degree=2)
    same = lambda_star(LetterMap.identity(2), X)
    assert signature(same, 4).tensor() == signature(X, 4).tensor()
    diag = PiecewisePolyPath.linear([(1, 1)])
    img = lambda_star(LetterMap((T("12"),), 2), diag)
    assert as_sympy(img.segments[0].components[0]) == t**2 / 2
    with pytest.raises(ValidationError):
        lambda_star(LetterMap((FreeTensor({"": 1}, 2),), 2), diag)


def test_delta_shift_examples():
    g = signature(PiecewisePolyPath.linear([(1, 0)]), 3)
    B1 = LetterMap((FreeTensor({"1": 2, "2": 1}, 2), T("2")), 2)
    assert delta_shift(B1, g) == B1
    B = LetterMap((T("12"), FreeTensor({"121": 1, "2": 3}, 2)), 2)
    assert delta_shift(B, TruncatedSeries.unit(3, 2)) == B
    assert delta_shift(LetterMap((T("12"),), 2), g).images == (FreeTensor({"12": 1, "2": 1}, 2),)
    with pytest.raises(ValidationError):
        delta_shift(B, signature(PiecewisePolyPath.linear([(1, 0)]), 2))


def test_lambda_split_small():
    rng = random.Random(14)
    X = random_path(rng, 2, 2)
    Y = random_path(rng, 2, 2, degree=2)
    B = LetterMap((FreeTensor({"12": 1, "1": 2}, 2), FreeTensor({"22": -1, "21": 1}, 2)), 2)
    lhs = lambda_star(B, concat(X, Y))
    rhs = concat(lambda_star(B, X), lambda_star(delta_shift(B, signature(X, 2)), Y))
    assert signature(lhs, 4).tensor() == signature(rhs, 4).tensor()


def test_stopped_tensor_poly_is_linear():
    X = random_path(random.Random(15), 2, 2, degree=2)
    x = FreeTensor({"12": 2, "1": -1}, 2)
    a = stopped_tensor_poly(X, x)
    b1, b2 = stopped_signature_poly(X, (1, 2)), stopped_signature_poly(X, (1,))
    for p, q, r in zip(a, b1, b2):
        assert as_sympy(p) == sympy.expand(2 * as_sympy(q) - as_sympy(r))
