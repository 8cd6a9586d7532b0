from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from appellconv.appell import (
    ROUTES,
    AppellSeq,
    Poly,
    Seq,
    appell_convolve,
    appell_eval,
    appell_from_rv,
    appell_poly,
    appell_route,
    binomial_convolve,
    conv_inverse,
    identity_appell,
    multinomial_convolve,
    scale_transform,
)
from appellconv.errors import NotInvertibleError, OrderError, PreconditionError
from appellconv.exact import binomial
from appellconv.moments import (
    BernoulliP,
    CauchySigned,
    Constant,
    Exponential,
    Gamma,
    StdNormal,
    Uniform01,
)
from conftest import rationals

z = sympy.symbols("z")
U = Uniform01()

BERNOULLI = [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42), 0,
             Fraction(-1, 30), 0, Fraction(5, 66), 0, Fraction(-691, 2730)]
EULER = [1, Fraction(-1, 2), 0, Fraction(1, 4), 0, Fraction(-1, 2)]
CAUCHY = [1, Fraction(1, 2), Fraction(-1, 6), Fraction(1, 4), Fraction(-19, 30), Fraction(9, 4)]


def _frac(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _series_base(mgf, order: int) -> list[Fraction]:
    """n! [z^n] 1/mgf(z), computed symbolically."""
    series = sympy.series(1 / mgf, z, 0, order + 1).removeO()
    return [_frac(series.coeff(z, n) * sympy.factorial(n)) for n in range(order + 1)]


def test_bernoulli_base_numbers():
    assert list(appell_from_rv(U, 12, method="all").base) == BERNOULLI


def test_euler_and_cauchy_base_numbers():
    assert list(appell_from_rv(BernoulliP(Fraction(1, 2)), 5).base) == EULER
    assert list(appell_from_rv(CauchySigned(), 5).base) == CAUCHY


@pytest.mark.parametrize(
    "rv, mgf",
    [
        (U, (sympy.exp(z) - 1) / z),
        (BernoulliP(Fraction(1, 3)), 1 + (sympy.exp(z) - 1) / 3),
        (CauchySigned(), sympy.log(1 + z) / z),
        (Exponential(), 1 / (1 - z)),
        (StdNormal(), sympy.exp(z ** 2 / 2)),
        (Gamma(Fraction(3, 2)), (1 - z) ** sympy.Rational(-3, 2)),
        (Constant(Fraction(-3, 2)), sympy.exp(-sympy.Rational(3, 2) * z)),
    ],
    ids=lambda v: getattr(v, "name", ""),
)
def test_base_numbers_against_series_reciprocal(rv, mgf):
    assert list(appell_from_rv(rv, 8).base) == _series_base(mgf, 8)


def test_bernoulli_polynomials_against_sympy():
    A = appell_from_rv(U, 8, method="inverse")
    x = sympy.symbols("x")
    for n in range(9):
        expected = sympy.Poly(sympy.bernoulli(n, x), x).all_coeffs()[::-1]
        assert appell_poly(A, n).coefficients == tuple(_frac(c) for c in expected)


def test_euler_polynomials_against_sympy():
    A = appell_from_rv(BernoulliP(Fraction(1, 2)), 7, method="inverse")
    for n in range(8):
        for x in (Fraction(0), Fraction(1, 3), Fraction(-2)):
            assert appell_eval(A, n, x) == _frac(sympy.euler(n, sympy.Rational(x.numerator, x.denominator)))


@pytest.mark.parametrize("route", ROUTES)
def test_every_route_gives_bernoulli_polynomials(route):
    for n in range(7):
        for x in (Fraction(0), Fraction(1), Fraction(-1, 2)):
            assert appell_route(U, n, x, route) == _frac(
                sympy.bernoulli(n, sympy.Rational(x.numerator, x.denominator)))


def test_check_xs_and_single_route_construction():
    for route in ROUTES:
        assert appell_from_rv(Gamma(2), 6, method=route, check_xs=(1, Fraction(2, 3))).base == \
            appell_from_rv(Gamma(2), 6, method="inverse").base
    with pytest.raises(PreconditionError):
        appell_from_rv(U, 3, method="magic")


def test_conv_inverse_of_powers_of_two():
    v = conv_inverse(Seq(tuple(2 ** n for n in range(6))))
    assert list(v) == [(-2) ** n for n in range(6)]
    with pytest.raises(NotInvertibleError):
        conv_inverse(Seq((0, 1, 2)))


def test_scale_transform_of_bernoulli():
    B = appell_from_rv(U, 4)
    T2 = scale_transform(B, 2)
    assert appell_poly(T2, 2) == Poly((Fraction(2, 3), -2, 1))
    T0 = scale_transform(B, 0)
    assert list(T0.base) == [1, 0, 0, 0, 0]
    assert appell_eval(T0, 3, Fraction(1, 2)) == Fraction(1, 8)


def test_order_errors():
    B = appell_from_rv(U, 3)
    with pytest.raises(OrderError):
        appell_eval(B, 4, 0)
    with pytest.raises(OrderError):
        appell_poly(B, 5)
    with pytest.raises(OrderError):
        Seq((1, 2)).truncate(3)
    with pytest.raises(PreconditionError):
        AppellSeq(Seq((0, 1)))
    with pytest.raises(PreconditionError):
        binomial_convolve(Seq((1, 2)), Seq((1, 2, 3)))


def test_seq_text_roundtrip():
    s = Seq((1, Fraction(-1, 2), Fraction(1, 6)))
    assert s.to_text() == "0 1\n1 -1/2\n2 1/6\n"
    assert Seq.from_text(s.to_text()) == s
    with pytest.raises(PreconditionError):
        Seq.from_text("0 1\n2 3\n")


def test_poly_helpers():
    p = Poly((1, 0, 3, 0))
    assert p.degree == 2
    assert p(2) == 13
    assert p.derivative() == Poly((0, 6))
    assert Poly(()).degree == -1
    assert str(Poly((Fraction(1, 2), 0, -1))) == "1/2 + -1*x^2"


def test_multinomial_convolve_verifies_against_composition_sum():
    seqs = [Seq((1, 2, 3, 4)), Seq((1, Fraction(-1, 2), 0, 5)), Seq((2, 1, 1, 1))]
    fast = multinomial_convolve(seqs, verify=True)
    assert fast == binomial_convolve(binomial_convolve(seqs[0], seqs[1]), seqs[2])


# -- group laws -------------------------------------------------------------

seqs = st.integers(0, 6).flatmap(
    lambda order: st.lists(rationals, min_size=order + 1, max_size=order + 1)
    .filter(lambda v: v[0] != 0)
    .map(lambda v: Seq(tuple(v)))
)


@st.composite
def seq_pairs(draw, count=2):
    order = draw(st.integers(0, 6))
    out = []
    for _ in range(count):
        values = draw(st.lists(rationals, min_size=order + 1, max_size=order + 1).filter(lambda v: v[0] != 0))
        out.append(Seq(tuple(values)))
    return out


@given(seq_pairs(3))
def test_convolution_is_a_commutative_group(trio):
    a, b, c = trio
    e = Seq.identity(a.order)
    assert binomial_convolve(a, b) == binomial_convolve(b, a)
    assert binomial_convolve(binomial_convolve(a, b), c) == binomial_convolve(a, binomial_convolve(b, c))
    assert binomial_convolve(a, e) == a
    assert binomial_convolve(a, conv_inverse(a)) == e
    assert conv_inverse(conv_inverse(a)) == a


@given(seq_pairs(2), rationals, rationals)
def test_scale_transform_is_multiplicative(pair, w, v):
    A, C = (AppellSeq(s) for s in pair)
    lhs = scale_transform(appell_convolve(A, C), w)
    assert lhs.base == appell_convolve(scale_transform(A, w), scale_transform(C, w)).base
    assert scale_transform(scale_transform(A, w), v).base == scale_transform(A, w * v).base
    if w:
        assert scale_transform(scale_transform(A, w), 1 / w).base == A.base
    assert scale_transform(A, 1).base == A.base


@given(seq_pairs(2), rationals, rationals, st.integers(0, 6))
def test_appell_convolution_matches_polynomial_binomial_formula(pair, x, y, n):
    A, C = (AppellSeq(s) for s in pair)
    n = min(n, A.order)
    # (A x C)_n(x + y) = sum_k C(n, k) A_k(x) C_{n-k}(y)
    total = sum(binomial(n, k) * appell_eval(A, k, x) * appell_eval(C, n - k, y) for k in range(n + 1))
    assert appell_eval(A * C, n, x + y) == total


@given(seqs, rationals, st.integers(1, 6))
def test_appell_derivative_property(base, x, n):
    A = AppellSeq(base)
    n = min(n, A.order)
    if n == 0:
        return
    assert appell_poly(A, n).derivative() == appell_poly(A, n - 1).scale(n)


@given(seqs, rationals)
def test_identity_appell_is_neutral(base, x):
    A = AppellSeq(base)
    I = identity_appell(A.order)
    assert (A * I).base == A.base
    assert appell_eval(I, A.order, x) == x ** A.order
