"""Probabilistic Stirling polynomials and numbers of the second kind.

For a random variable Y with i.i.d. partial sums S_k,

    S_Y(n, r; x) = (1/r!) sum_{k=0}^{r} C(r, k) (-1)^(r-k) E(x + S_k)^n,

and S_Y(n, r) = S_Y(n, r; 0).  With Y == 1 these are the classical
Stirling numbers of the second kind.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import PreconditionError
from .exact import RationalLike, as_rational, binomial, factorial, format_rational, power, seeded_rationals
from .moments import Constant, IIDSum, RandomVariable

ONE = Constant(Fraction(1))


def _check_range(n: int, r: int) -> None:
    if n < 0:
        raise PreconditionError(f"n must be >= 0, got {n}")
    if not 0 <= r <= n:
        raise PreconditionError(f"Stirling index needs 0 <= r <= n, got r={r}, n={n}")


@lru_cache(maxsize=None)
def shifted_moment(rv: RandomVariable, k: int, n: int, x: Fraction) -> Fraction:
    """E(x + S_k)^n, expanded binomially over the moments of S_k."""
    table = IIDSum(rv, k).moments(n)
    total = Fraction(0)
    for j in range(n + 1):
        if table[j]:
            total += binomial(n, j) * power(x, n - j) * table[j]
    return total


def stirling_poly(rv: RandomVariable, n: int, r: int, x: RationalLike = 0) -> Fraction:
    """S_Y(n, r; x) for 0 <= r <= n."""
    _check_range(n, r)
    x = as_rational(x)
    total = Fraction(0)
    for k in range(r + 1):
        total += (-1) ** (r - k) * binomial(r, k) * shifted_moment(rv, k, n, x)
    return total / factorial(r)


def stirling_num(rv: RandomVariable, n: int, r: int) -> Fraction:
    return stirling_poly(rv, n, r, 0)


def stirling2_recurrence(order: int) -> list[list[int]]:
    """Classical S(n, r) from S(n, r) = r S(n-1, r) + S(n-1, r-1)."""
    table = [[1]]
    for n in range(1, order + 1):
        prev = table[-1]
        row = [0] * (n + 1)
        for r in range(1, n + 1):
            left = prev[r] if r < n else 0
            row[r] = r * left + prev[r - 1]
        table.append(row)
    return table


# Fault-injection hook for the negative-control selftest: when set, the
# classical table returned below has one entry perturbed.
_corrupt_table: contextvars.ContextVar[bool] = contextvars.ContextVar("corrupt_stirling", default=False)


@contextlib.contextmanager
def corrupted_stirling_table() -> Iterator[None]:
    token = _corrupt_table.set(True)
    try:
        yield
    finally:
        _corrupt_table.reset(token)


@lru_cache(maxsize=None)
def _classical_table(order: int) -> tuple[tuple[int, ...], ...]:
    rows = []
    for n in range(order + 1):
        row = []
        for r in range(n + 1):
            value = stirling_num(ONE, n, r)
            if value.denominator != 1:
                raise AssertionError(f"S({n},{r}) = {value} is not an integer")
            row.append(value.numerator)
        rows.append(tuple(row))
    return tuple(rows)


def classical_stirling_table(order: int) -> tuple[tuple[int, ...], ...]:
    """Rows S(n, 0..n) for n <= order, computed as S_Y with Y == 1."""
    table = _classical_table(order)
    if _corrupt_table.get() and order >= 2:
        rows = [list(row) for row in table]
        rows[2][1] += 1
        table = tuple(tuple(row) for row in rows)
    return table


def classical_stirling(n: int, r: int) -> int:
    _check_range(n, r)
    return classical_stirling_table(n)[n][r]


def stirling_rows(rv: RandomVariable, order: int, x: RationalLike = 0, r: Optional[int] = None) -> list[str]:
    """Text rows ``"n r value"`` for the table CLI."""
    x = as_rational(x)
    lines = []
    for n in range(order + 1):
        rs = range(n + 1) if r is None else ([r] if r <= n else [])
        for rr in rs:
            lines.append(f"{n} {rr} {format_rational(stirling_poly(rv, n, rr, x))}")
    return lines


# -- formal power series cross-check -------------------------------------

def _series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if not ai:
            continue
        for j in range(order + 1 - i):
            out[i + j] += ai * b[j]
    return out


def stirling_generating_series(rv: RandomVariable, r: int, order: int, x: RationalLike) -> list[Fraction]:
    """Ordinary coefficients of e^{xz} (M(z) - 1)^r / r!, truncated at z^order.

    M(z) = sum_n E Y^n z^n / n! is the moment generating series.
    """
    x = as_rational(x)
    mu = rv.moments(order)
    shifted = [Fraction(0)] + [mu[n] / factorial(n) for n in range(1, order + 1)]
    series = [power(x, n) / factorial(n) for n in range(order + 1)]
    for _ in range(r):
        series = _series_mul(series, shifted, order)
    return [c / factorial(r) for c in series]


@dataclass(frozen=True)
class GFCheckReport:
    rv: str
    r: int
    order: int
    xs: tuple[Fraction, ...]
    passed: bool
    mismatch: Optional[tuple] = None  # (x, n, series coefficient, S_Y(n, r; x) / n!)

    def __bool__(self) -> bool:
        return self.passed


def gf_cross_check(
    rv: RandomVariable,
    r: int,
    order: int,
    xs: Optional[Sequence[RationalLike]] = None,
    seed: int = 0,
) -> GFCheckReport:
    """Compare series coefficients with S_Y(n, r; x)/n! for all n <= order.

    Coefficients below z^r must vanish.  ``xs`` defaults to three values
    drawn from a seeded pool of small rationals.
    """
    if r < 0 or r > order:
        raise PreconditionError(f"need 0 <= r <= order, got r={r}, order={order}")
    xs = tuple(as_rational(x) for x in xs) if xs is not None else seeded_rationals(3, seed)
    for x in xs:
        coeffs = stirling_generating_series(rv, r, order, x)
        for n in range(order + 1):
            expected = stirling_poly(rv, n, r, x) / factorial(n) if n >= r else Fraction(0)
            if coeffs[n] != expected:
                return GFCheckReport(rv.name, r, order, xs, False, (x, n, coeffs[n], expected))
    return GFCheckReport(rv.name, r, order, xs, True)
