"""Exact moment sequences of the catalog random variables.

A random variable enters the rest of the package only through its moments
``E Y**n``.  Catalog kinds carry closed forms; :class:`IIDSum` and
:class:`LinearCombination` are composite kinds whose moments are derived
from their components, so every downstream function accepts any of them.

The Apostol-Euler family with parameter ``lam`` is ``BernoulliP(lam / (1 + lam))``;
``BernoulliP(1/2)`` gives the Euler polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import CatalogError, PreconditionError
from .exact import (
    RationalLike,
    as_rational,
    binomial_convolution,
    compositions,
    double_factorial_odd,
    factorial,
    format_rational,
    multinomial,
    parse_rational,
    power,
    rising_factorial,
)


class RandomVariable:
    """Common interface: ``moment(n)`` and ``moments(order)``."""

    name: str = ""

    def moment(self, n: int) -> Fraction:
        raise NotImplementedError

    def moments(self, order: int) -> tuple[Fraction, ...]:
        return _moment_table(self, order)


@lru_cache(maxsize=None)
def _moment_table(rv: RandomVariable, order: int) -> tuple[Fraction, ...]:
    if order < 0:
        raise PreconditionError(f"truncation order must be >= 0, got {order}")
    return tuple(rv.moment(n) for n in range(order + 1))


def _check_degree(n: int) -> None:
    if n < 0:
        raise PreconditionError(f"moment order must be >= 0, got {n}")


@dataclass(frozen=True)
class Constant(RandomVariable):
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))

    @property
    def name(self) -> str:
        return f"const:{format_rational(self.c)}"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        return power(self.c, n)


@dataclass(frozen=True)
class Uniform01(RandomVariable):
    name = "uniform01"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        return Fraction(1, n + 1)


@dataclass(frozen=True)
class BernoulliP(RandomVariable):
    """P(Y = 1) = p, P(Y = 0) = 1 - p."""

    p: Fraction = Fraction(1, 2)

    def __post_init__(self):
        p = as_rational(self.p)
        if not 0 <= p <= 1:
            raise PreconditionError(f"Bernoulli parameter must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    @classmethod
    def apostol_euler(cls, lam: RationalLike) -> "BernoulliP":
        lam = as_rational(lam)
        if lam <= 0:
            raise PreconditionError(f"Apostol-Euler parameter must be > 0, got {lam}")
        return cls(lam / (1 + lam))

    @property
    def name(self) -> str:
        return f"bernoulli:{format_rational(self.p)}"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        return Fraction(1) if n == 0 else self.p


@dataclass(frozen=True)
class CauchySigned(RandomVariable):
    """Formal moments (-1)^n n!/(n+1), i.e. E exp(zY) = log(1+z)/z."""

    name = "cauchy"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        return Fraction((-1) ** n * factorial(n), n + 1)


@dataclass(frozen=True)
class Exponential(RandomVariable):
    name = "exponential"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        return Fraction(factorial(n))


@dataclass(frozen=True)
class Gamma(RandomVariable):
    """Gamma(alpha, 1); the moments are rising factorials of alpha."""

    alpha: Fraction = Fraction(1)

    def __post_init__(self):
        alpha = as_rational(self.alpha)
        if alpha <= 0:
            raise PreconditionError(f"gamma shape must be > 0, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def name(self) -> str:
        return f"gamma:{format_rational(self.alpha)}"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        return rising_factorial(self.alpha, n)


@dataclass(frozen=True)
class StdNormal(RandomVariable):
    name = "normal"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        if n % 2:
            return Fraction(0)
        return Fraction(double_factorial_odd(n // 2))


@dataclass(frozen=True)
class IIDSum(RandomVariable):
    """S_k = Y_1 + ... + Y_k for independent copies of ``rv``; S_0 = 0."""

    rv: RandomVariable
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise PreconditionError(f"number of summands must be >= 0, got {self.k}")

    @property
    def name(self) -> str:
        return f"iidsum({self.rv.name},{self.k})"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        return self.moments(n)[n]

    def moments(self, order: int) -> tuple[Fraction, ...]:
        return _iid_values(self.rv, self.k, order)


@dataclass(frozen=True)
class LinearCombination(RandomVariable):
    """w_1 Y^(1) + ... + w_m Y^(m) with independent components."""

    weights: tuple[Fraction, ...]
    rvs: tuple[RandomVariable, ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        weights = tuple(as_rational(w) for w in self.weights)
        rvs = tuple(self.rvs)
        if len(weights) != len(rvs):
            raise PreconditionError(
                f"{len(weights)} weights for {len(rvs)} random variables"
            )
        if not weights:
            raise PreconditionError("linear combination needs at least one term")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "rvs", rvs)

    @property
    def name(self) -> str:
        terms = ",".join(f"{format_rational(w)}*{rv.name}" for w, rv in zip(self.weights, self.rvs))
        return f"combo({terms})"

    def moment(self, n: int) -> Fraction:
        _check_degree(n)
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        tables = [rv.moments(n) for rv in self.rvs]
        total = Fraction(0)
        for idx in compositions(n, len(self.rvs)):
            term = Fraction(multinomial(n, idx))
            for w, table, i in zip(self.weights, tables, idx):
                term *= power(w, i) * table[i]
                if not term:
                    break
            total += term
        self._cache[n] = total
        return total


@dataclass(frozen=True)
class MomentSequence:
    """Truncated table (E Y**0, ..., E Y**order) for a source variable."""

    source: RandomVariable
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise PreconditionError("moment sequence must contain at least E Y^0")

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def moment(rv: RandomVariable, n: int) -> Fraction:
    """E Y**n for a catalog or composite random variable."""
    if not isinstance(rv, RandomVariable):
        raise CatalogError(f"not a catalog random variable: {rv!r}")
    return rv.moment(n)


def moment_sequence(rv: RandomVariable, order: int) -> MomentSequence:
    if not isinstance(rv, RandomVariable):
        raise CatalogError(f"not a catalog random variable: {rv!r}")
    return MomentSequence(rv, rv.moments(order))


@lru_cache(maxsize=None)
def _iid_values(rv: RandomVariable, k: int, order: int) -> tuple[Fraction, ...]:
    if order < 0:
        raise PreconditionError(f"truncation order must be >= 0, got {order}")
    if k == 0:
        return (Fraction(1),) + (Fraction(0),) * order
    if k == 1:
        return rv.moments(order)
    return tuple(binomial_convolution(_iid_values(rv, k - 1, order), rv.moments(order)))


def iid_sum_moments(rv: RandomVariable, k: int, order: int) -> MomentSequence:
    """Moments of a sum of ``k`` independent copies of ``rv`` up to ``order``.

    Moment sequences of independent summands compose by binomial
    convolution, so this is the k-fold convolution power.
    """
    source = IIDSum(rv, k)
    return MomentSequence(source, source.moments(order))


def linear_combo_moments(
    weights: Sequence[RationalLike], rvs: Sequence[RandomVariable], order: int
) -> MomentSequence:
    """Moments of w_1 Y^(1) + ... + w_m Y^(m) for independent Y^(j)."""
    source = LinearCombination(tuple(weights), tuple(rvs))
    return MomentSequence(source, source.moments(order))


CATALOG_NAMES = ("const:c", "uniform01", "bernoulli:p", "cauchy", "exponential", "gamma:a", "normal")

_SIMPLE = {
    "uniform01": Uniform01,
    "cauchy": CauchySigned,
    "exponential": Exponential,
    "normal": StdNormal,
}

_PARAMETRIC = {
    "const": Constant,
    "bernoulli": BernoulliP,
    "gamma": Gamma,
}


def parse_rv(text: str) -> RandomVariable:
    """Catalog lookup by canonical name, e.g. ``"bernoulli:1/2"``."""
    key, _, arg = text.strip().partition(":")
    key = key.lower()
    if key in _SIMPLE:
        if arg:
            raise CatalogError(f"{key} takes no parameter: {text!r}")
        return _SIMPLE[key]()
    if key in _PARAMETRIC:
        if not arg:
            raise CatalogError(f"{key} needs a parameter, e.g. {key}:1/2")
        try:
            return _PARAMETRIC[key](parse_rational(arg))
        except PreconditionError as exc:
            raise CatalogError(str(exc)) from exc
    raise CatalogError(f"unknown random variable {text!r}; choose from {', '.join(CATALOG_NAMES)}")
