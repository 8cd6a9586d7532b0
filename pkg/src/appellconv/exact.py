"""Exact rational arithmetic and combinatorial primitives.

Every scalar in the package is a :class:`fractions.Fraction` (aliased here
as ``Rational``).  Integer-valued helpers return plain ``int``, which mixes
with ``Fraction`` without loss.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Tuple, Union

from .errors import PreconditionError

Rational = Fraction
MultiIndex = Tuple[int, ...]
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or canonical ``"p/q"`` string to a Fraction.

    Floats and decimal strings are rejected: they cannot be represented
    without an implicit rounding decision.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; no decimal point, no exponent."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise PreconditionError(f"not a rational in p/q form: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise PreconditionError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value: Union[int, Fraction]) -> str:
    """Canonical text: ``"p/q"`` in lowest terms, ``"p"`` when q == 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated list such as ``"1,1/2,-3"``."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise PreconditionError(f"empty rational list: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def power(base: Fraction, exponent: int) -> Fraction:
    """``base ** exponent`` with the convention 0**0 == 1."""
    if exponent == 0:
        return Fraction(1)
    return Fraction(base) ** exponent


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise PreconditionError(f"factorial of negative integer {n}")
    return math.factorial(n)


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """C(n, k) for nonnegative integers, zero when k > n."""
    if n < 0 or k < 0:
        raise PreconditionError(f"binomial({n}, {k}) needs nonnegative arguments")
    return math.comb(n, k)


def multinomial(n: int, idx: Sequence[int]) -> int:
    """n! / (j_1! ... j_m!) for a composition ``idx`` of ``n``."""
    if not idx:
        raise PreconditionError("multi-index must have at least one part")
    if any(j < 0 for j in idx):
        raise PreconditionError(f"negative part in multi-index {tuple(idx)}")
    if sum(idx) != n:
        raise PreconditionError(f"multi-index {tuple(idx)} has weight {sum(idx)}, expected {n}")
    return _multinomial(tuple(idx))


@lru_cache(maxsize=None)
def _multinomial(idx: MultiIndex) -> int:
    # product of binomials keeps intermediates small
    result, running = 1, 0
    for j in idx:
        running += j
        result *= math.comb(running, j)
    return result


def rising_factorial(x: RationalLike, n: int) -> Fraction:
    """x (x+1) ... (x+n-1); the empty product is 1."""
    if n < 0:
        raise PreconditionError(f"rising factorial order must be >= 0, got {n}")
    return _rising(as_rational(x), n)


@lru_cache(maxsize=65536)
def _rising(x: Fraction, n: int) -> Fraction:
    result = Fraction(1)
    for t in range(n):
        result *= x + t
    return result


def generalized_binomial(upper: RationalLike, k: int) -> Fraction:
    """C(upper, k) = upper (upper-1) ... (upper-k+1) / k! for rational ``upper``."""
    if k < 0:
        raise PreconditionError(f"lower binomial index must be >= 0, got {k}")
    upper = as_rational(upper)
    return rising_factorial(upper - k + 1, k) / factorial(k)


def double_factorial_odd(k: int) -> int:
    """(2k-1)!! = 1 * 3 * ... * (2k-1), with (-1)!! = 1."""
    if k < 0:
        raise PreconditionError(f"double_factorial_odd needs k >= 0, got {k}")
    result = 1
    for t in range(1, 2 * k, 2):
        result *= t
    return result


def compositions(n: int, m: int) -> Iterator[MultiIndex]:
    """All m-tuples of nonnegative integers summing to n.

    Order is lexicographic descending, e.g. ``(2, 0), (1, 1), (0, 2)``.
    """
    if n < 0:
        raise PreconditionError(f"composition weight must be >= 0, got {n}")
    if m < 1:
        raise PreconditionError(f"composition length must be >= 1, got {m}")
    return iter(_compositions(n, m))


@lru_cache(maxsize=4096)
def _compositions(n: int, m: int) -> tuple[MultiIndex, ...]:
    if m == 1:
        return ((n,),)
    out = []
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, m - 1):
            out.append((first,) + rest)
    return tuple(out)


def count_compositions(n: int, m: int) -> int:
    return binomial(n + m - 1, m - 1)


def binomial_convolution(u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    """(u x v)_n = sum_k C(n,k) u_k v_{n-k}, for equal-length tables."""
    if len(u) != len(v):
        raise PreconditionError(f"order mismatch: {len(u) - 1} vs {len(v) - 1}")
    out = []
    for n in range(len(u)):
        total = Fraction(0)
        for k in range(n + 1):
            if u[k] and v[n - k]:
                total += binomial(n, k) * u[k] * v[n - k]
        out.append(total)
    return out


def product(values: Iterable) -> Fraction:
    result = Fraction(1)
    for v in values:
        result *= v
        if not result:
            break
    return result


# Small rationals with denominators 1..4 and |numerator| <= 3; "random"
# x and w values are drawn from here with a fixed seed.
DEFAULT_POOL = tuple(sorted({Fraction(p, q) for q in (1, 2, 3, 4) for p in range(-3, 4)}))


def seeded_rationals(
    count: int, seed: int = 0, pool: Sequence[Fraction] = DEFAULT_POOL
) -> tuple[Fraction, ...]:
    rng = random.Random(seed)
    return tuple(rng.choice(pool) for _ in range(count))
