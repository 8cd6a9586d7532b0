"""Binomial-convolution group, Appell sequences and scale transformations.

An Appell sequence is stored through its base numbers ``A_n(0)``;
polynomial values always come from

    A_n(x) = sum_k C(n, k) A_k(0) x**(n-k).

All tables are truncated at a fixed order ``N``: results are exact for
indices ``<= N`` and nothing is ever extended silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConsistencyError, NotInvertibleError, OrderError, PreconditionError
from .exact import (
    RationalLike,
    as_rational,
    binomial,
    binomial_convolution,
    compositions,
    factorial,
    format_rational,
    multinomial,
    parse_rational,
    power,
)
from .moments import IIDSum, RandomVariable
from .stirling import shifted_moment, stirling_poly


@dataclass(frozen=True)
class Seq:
    """Truncated real sequence u_0, ..., u_N with exact entries."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise PreconditionError("a sequence needs at least the term u_0")
        object.__setattr__(self, "values", tuple(as_rational(v) for v in self.values))

    @classmethod
    def identity(cls, order: int) -> "Seq":
        """e = (1, 0, 0, ...), the neutral element of binomial convolution."""
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def truncate(self, order: int) -> "Seq":
        if order > self.order:
            raise OrderError(f"cannot extend a sequence of order {self.order} to {order}")
        return Seq(self.values[: order + 1])

    def to_text(self) -> str:
        """One ``"index value"`` line per term."""
        return "".join(f"{n} {format_rational(v)}\n" for n, v in enumerate(self.values))

    @classmethod
    def from_text(cls, text: str) -> "Seq":
        values = []
        for expected, line in enumerate(l for l in text.splitlines() if l.strip()):
            index, value = line.split()
            if int(index) != expected:
                raise PreconditionError(f"expected index {expected}, found {index}")
            values.append(parse_rational(value))
        return cls(tuple(values))


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, coefficients from the constant term upward."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [as_rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * x + c
        return total

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coefficients) if k))

    def scale(self, factor: RationalLike) -> "Poly":
        factor = as_rational(factor)
        return Poly(tuple(factor * c for c in self.coefficients))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{format_rational(c)}*x^{k}" if k else format_rational(c))
        return " + ".join(terms)


def _check_same_order(*seqs: Seq) -> None:
    orders = {s.order for s in seqs}
    if len(orders) > 1:
        raise PreconditionError(f"order mismatch between sequences: {sorted(orders)}")


def binomial_convolve(u: Seq, v: Seq) -> Seq:
    """(u x v)_n = sum_k C(n, k) u_k v_{n-k}."""
    _check_same_order(u, v)
    return Seq(tuple(binomial_convolution(u.values, v.values)))


def multinomial_convolve(us: Sequence[Seq], verify: bool = False) -> Seq:
    """Left fold of :func:`binomial_convolve` over ``us``.

    With ``verify=True`` the direct multinomial sum over compositions is
    evaluated as well and any disagreement raises ConsistencyError.
    """
    us = list(us)
    if not us:
        raise PreconditionError("multinomial convolution of an empty list")
    _check_same_order(*us)
    result = us[0]
    for u in us[1:]:
        result = binomial_convolve(result, u)
    if verify:
        direct = _multinomial_sum(us)
        if direct != result:
            raise ConsistencyError("multinomial convolution", result, direct)
    return result


def _multinomial_sum(us: Sequence[Seq]) -> Seq:
    m = len(us)
    out = []
    for n in range(us[0].order + 1):
        total = Fraction(0)
        for idx in compositions(n, m):
            term = Fraction(multinomial(n, idx))
            for u, j in zip(us, idx):
                term *= u[j]
            total += term
        out.append(total)
    return Seq(tuple(out))


def conv_inverse(u: Seq) -> Seq:
    """The v with u x v = e, by forward recursion on n."""
    if u[0] == 0:
        raise NotInvertibleError("sequence with u_0 = 0 is not invertible")
    inv0 = 1 / u[0]
    v = [inv0]
    for n in range(1, u.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if u[k]:
                acc += binomial(n, k) * u[k] * v[n - k]
        v.append(-inv0 * acc)
    return Seq(tuple(v))


@dataclass(frozen=True)
class AppellSeq:
    """Appell sequence determined by its base numbers A_n(0), n <= order."""

    base: Seq
    provenance: str = ""

    def __post_init__(self):
        if self.base[0] == 0:
            raise PreconditionError("Appell sequence needs A_0(0) != 0")

    @property
    def order(self) -> int:
        return self.base.order

    def __call__(self, n: int, x: RationalLike) -> Fraction:
        return appell_eval(self, n, x)

    def __mul__(self, other: "AppellSeq") -> "AppellSeq":
        return appell_convolve(self, other)


def identity_appell(order: int) -> AppellSeq:
    """I(x) = (x**n), the neutral Appell sequence."""
    return AppellSeq(Seq.identity(order), "identity")


def appell_eval(A: AppellSeq, n: int, x: RationalLike) -> Fraction:
    """A_n(x) from the base numbers."""
    if n < 0:
        raise PreconditionError(f"degree must be >= 0, got {n}")
    if n > A.order:
        raise OrderError(f"degree {n} exceeds truncation order {A.order}")
    x = as_rational(x)
    total = Fraction(0)
    for k in range(n + 1):
        if A.base[k]:
            total += binomial(n, k) * A.base[k] * power(x, n - k)
    return total


def appell_poly(A: AppellSeq, n: int) -> Poly:
    """A_n as a polynomial in x: coefficient of x**j is C(n, j) A_{n-j}(0)."""
    if n < 0:
        raise PreconditionError(f"degree must be >= 0, got {n}")
    if n > A.order:
        raise OrderError(f"degree {n} exceeds truncation order {A.order}")
    return Poly(tuple(binomial(n, j) * A.base[n - j] for j in range(n + 1)))


def appell_convolve(A: AppellSeq, C: AppellSeq) -> AppellSeq:
    """(A x C)(x): base numbers are the convolution of the two bases."""
    base = binomial_convolve(A.base, C.base)
    return AppellSeq(base, f"({A.provenance} x {C.provenance})")


def scale_transform(A: AppellSeq, w: RationalLike) -> AppellSeq:
    """T_w A, with base numbers w**k A_k(0); T_0 A_n(x) = A_0(0) x**n."""
    w = as_rational(w)
    if w == 0:
        base = (A.base[0],) + (Fraction(0),) * A.order
    else:
        base = tuple(power(w, k) * a for k, a in enumerate(A.base))
    return AppellSeq(Seq(base), f"T[{format_rational(w)}]{A.provenance}")


def _route_alternating_stirling(rv: RandomVariable, n: int, x: Fraction) -> Fraction:
    total = Fraction(0)
    for r in range(n + 1):
        s = stirling_poly(rv, n, r, x)
        if s:
            total += (-1) ** r * factorial(r) * s
    return total


def _route_shifted_sums(rv: RandomVariable, n: int, x: Fraction) -> Fraction:
    total = Fraction(0)
    for k in range(n + 1):
        total += (-1) ** k * binomial(n + 1, k + 1) * shifted_moment(rv, k, n, x)
    return total


def _route_x_expansion(rv: RandomVariable, n: int, x: Fraction) -> Fraction:
    total = Fraction(0)
    for r in range(n + 1):
        inner = Fraction(0)
        for k in range(r + 1):
            inner += (-1) ** k * binomial(r + 1, k + 1) * IIDSum(rv, k).moments(r)[r]
        total += binomial(n, r) * power(x, n - r) * inner
    return total


ROUTES = ("stirling", "sums", "expansion", "inverse")

_POLY_ROUTES = {
    "stirling": _route_alternating_stirling,
    "sums": _route_shifted_sums,
    "expansion": _route_x_expansion,
}


def appell_route(rv: RandomVariable, n: int, x: RationalLike, route: str) -> Fraction:
    """A_n(x) for the moment-generated sequence of ``rv`` via one closed-form route.

    ``route`` is ``"stirling"``, ``"sums"`` or ``"expansion"``; ``"inverse"``
    evaluates the convolution-inverse base numbers instead.
    """
    x = as_rational(x)
    if route == "inverse":
        return appell_eval(AppellSeq(_inverse_base(rv, n), rv.name), n, x)
    if route not in _POLY_ROUTES:
        raise PreconditionError(f"unknown route {route!r}; choose from {ROUTES}")
    return _POLY_ROUTES[route](rv, n, x)


@lru_cache(maxsize=None)
def _inverse_base(rv: RandomVariable, order: int) -> Seq:
    return conv_inverse(Seq(rv.moments(order)))


def appell_from_rv(
    rv: RandomVariable,
    order: int,
    method: str = "all",
    check_xs: Iterable[RationalLike] = (),
) -> AppellSeq:
    """Appell sequence whose base numbers invert the moments of ``rv``.

    ``method`` picks how the base numbers are computed:

    * ``"stirling"``  -- sum_r (-1)^r r! S_Y(n, r)
    * ``"sums"``      -- sum_k C(n+1, k+1) (-1)^k E S_k^n
    * ``"expansion"`` -- the x-expansion in powers of x, at x = 0
    * ``"inverse"``   -- convolution inverse of the moment sequence
    * ``"all"``       -- every route, which must agree term by term

    Each value in ``check_xs`` additionally compares the three polynomial
    routes at that x with :func:`appell_eval`.  Any disagreement raises
    :class:`ConsistencyError` carrying both values.
    """
    if order < 0:
        raise PreconditionError(f"truncation order must be >= 0, got {order}")
    if method not in ROUTES + ("all",):
        raise PreconditionError(f"unknown route {method!r}; choose from {ROUTES + ('all',)}")
    zero = Fraction(0)
    route_fns = _POLY_ROUTES
    if method == "inverse" or method == "all":
        base = _inverse_base(rv, order)
    else:
        base = Seq(tuple(route_fns[method](rv, n, zero) for n in range(order + 1)))
    A = AppellSeq(base, rv.name)

    if method == "all":
        for name, fn in route_fns.items():
            for n in range(order + 1):
                value = fn(rv, n, zero)
                if value != base[n]:
                    raise ConsistencyError(f"{rv.name} base number {n}, route {name} vs inverse", value, base[n])
    for x in check_xs:
        x = as_rational(x)
        for n in range(order + 1):
            expected = appell_eval(A, n, x)
            for name, fn in route_fns.items():
                value = fn(rv, n, x)
                if value != expected:
                    raise ConsistencyError(f"{rv.name} A_{n}({x}), route {name}", value, expected)
    return A


@lru_cache(maxsize=None)
def appell_base(rv: RandomVariable, order: int) -> AppellSeq:
    """Cached single-route construction used by the identity engine."""
    return AppellSeq(_inverse_base(rv, order), rv.name)
