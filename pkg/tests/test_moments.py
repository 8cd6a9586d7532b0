from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy import stats

from appellconv.errors import CatalogError, PreconditionError
from appellconv.exact import binomial
from appellconv.moments import (
    BernoulliP,
    CauchySigned,
    Constant,
    Exponential,
    Gamma,
    IIDSum,
    LinearCombination,
    StdNormal,
    Uniform01,
    iid_sum_moments,
    linear_combo_moments,
    moment,
    moment_sequence,
    parse_rv,
)
from conftest import rationals

U = Uniform01()


def _to_fraction(value) -> Fraction:
    value = sympy.nsimplify(value)
    return Fraction(int(value.p), int(value.q))


@pytest.mark.parametrize(
    "rv, oracle",
    [
        (U, stats.Uniform("u", 0, 1)),
        (Exponential(), stats.Exponential("e", 1)),
        (Gamma(Fraction(3, 2)), stats.Gamma("g", sympy.Rational(3, 2), 1)),
        (StdNormal(), stats.Normal("z", 0, 1)),
        (BernoulliP(Fraction(1, 3)), stats.Bernoulli("b", sympy.Rational(1, 3))),
    ],
    ids=lambda v: getattr(v, "name", ""),
)
def test_moments_against_symbolic_expectation(rv, oracle):
    for n in range(7):
        assert rv.moment(n) == _to_fraction(stats.E(oracle ** n)), n


def test_catalog_examples():
    assert moment(U, 3) == Fraction(1, 4)
    assert moment(Constant(Fraction(-3, 2)), 2) == Fraction(9, 4)
    assert moment(CauchySigned(), 2) == Fraction(2, 3)
    assert moment(CauchySigned(), 3) == Fraction(-3, 2)
    assert moment(StdNormal(), 4) == 3
    assert moment(StdNormal(), 5) == 0
    assert moment(Gamma(1), 4) == 24
    assert moment_sequence(U, 3).values == (1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))


def test_cauchy_generating_function():
    # sum_n E Y^n z^n / n! must equal log(1+z)/z
    z = sympy.symbols("z")
    series = sympy.series(sympy.log(1 + z) / z, z, 0, 8).removeO()
    for n in range(8):
        coeff = series.coeff(z, n) * sympy.factorial(n)
        assert CauchySigned().moment(n) == _to_fraction(coeff)


def test_sum_of_two_uniforms():
    seq = iid_sum_moments(U, 2, 3)
    assert seq[1] == 1
    assert seq[2] == Fraction(7, 6)
    assert seq[3] == Fraction(3, 2)
    assert seq.order == 3 and len(seq) == 4


def test_iid_sum_of_zero_terms_is_point_mass():
    assert iid_sum_moments(Exponential(), 0, 3).values == (1, 0, 0, 0)


def test_apostol_euler_parameter():
    assert BernoulliP.apostol_euler(1).p == Fraction(1, 2)
    assert BernoulliP.apostol_euler(3).p == Fraction(3, 4)
    with pytest.raises(PreconditionError):
        BernoulliP.apostol_euler(0)


def test_parameter_validation():
    with pytest.raises(PreconditionError):
        BernoulliP(Fraction(3, 2))
    with pytest.raises(PreconditionError):
        Gamma(0)
    with pytest.raises(PreconditionError):
        U.moment(-1)
    with pytest.raises(PreconditionError):
        LinearCombination((1, 2), (U,))
    with pytest.raises(CatalogError):
        moment("uniform01", 2)


def test_parse_rv():
    assert parse_rv("uniform01") == U
    assert parse_rv("bernoulli:1/2") == BernoulliP(Fraction(1, 2))
    assert parse_rv("gamma:3/2") == Gamma(Fraction(3, 2))
    assert parse_rv("const:-2").moment(3) == -8
    for bad in ("poisson", "bernoulli", "bernoulli:2", "normal:1", "gamma:0.5"):
        with pytest.raises(CatalogError):
            parse_rv(bad)


catalog = st.sampled_from(
    [U, Exponential(), StdNormal(), CauchySigned(), BernoulliP(Fraction(1, 3)), Gamma(Fraction(1, 2))]
)


@given(catalog, st.integers(0, 4), st.integers(0, 4), st.integers(0, 8))
def test_iid_sums_compose_by_binomial_convolution(rv, a, b, n):
    left, right = iid_sum_moments(rv, a, n), iid_sum_moments(rv, b, n)
    conv = sum(binomial(n, i) * left[i] * right[n - i] for i in range(n + 1))
    assert iid_sum_moments(rv, a + b, n)[n] == conv


@given(catalog, st.integers(1, 4), st.integers(0, 7))
def test_unit_linear_combination_equals_iid_sum(rv, k, n):
    combo = linear_combo_moments((1,) * k, (rv,) * k, n)
    assert combo[n] == IIDSum(rv, k).moment(n)


@given(catalog, rationals, st.integers(0, 7))
def test_single_term_combination_scales_moments(rv, w, n):
    assert LinearCombination((w,), (rv,)).moment(n) == w ** n * rv.moment(n)


@given(rationals, rationals, st.integers(0, 7))
def test_constants_add(a, b, n):
    combo = LinearCombination((1, 1), (Constant(a), Constant(b)))
    assert combo.moment(n) == (a + b) ** n
