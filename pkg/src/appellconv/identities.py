"""Both sides of the higher-order convolution identities, evaluated exactly.

The left-hand side is always the brute-force sum

    sum_{j_1+...+j_m=n} multinomial(n; j) C(j) A^(1)_{j_1}(x_1) ... A^(m)_{j_m}(x_m)

with C(j) = E(W_1^{j_1} ... W_m^{j_m}) supplied by a mixed-moment oracle.
Right-hand sides come from the closed forms in terms of moments of i.i.d.
partial sums, or (for Bernoulli slots) classical Stirling numbers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .appell import appell_base, appell_eval, appell_from_rv, appell_route
from .errors import ConsistencyError, PreconditionError
from .exact import (
    MultiIndex,
    RationalLike,
    as_rational,
    binomial,
    compositions,
    double_factorial_odd,
    factorial,
    format_rational,
    generalized_binomial,
    multinomial,
    parse_rational_list,
    power,
    rising_factorial,
)
from .moments import (
    Exponential,
    IIDSum,
    LinearCombination,
    RandomVariable,
    StdNormal,
    Uniform01,
    moment,
    parse_rv,
)
from .stirling import classical_stirling_table, stirling_poly

UNIFORM = Uniform01()


# -- mixed-moment oracles --------------------------------------------------

class MixedMomentOracle:
    """(i_1, ..., i_m) -> E(W_1^{i_1} ... W_m^{i_m}) for a weight vector W.

    Use one of the constructors :meth:`deterministic`, :meth:`dirichlet`,
    :meth:`iid`.  Values are memoized per instance.
    """

    def __init__(self, kind: str, m: int, params: tuple, evaluator: Callable[[MultiIndex], Fraction]):
        if m < 1:
            raise PreconditionError(f"oracle arity must be >= 1, got {m}")
        self.kind = kind
        self.m = m
        self.params = params
        self._evaluator = evaluator
        self._memo: dict[MultiIndex, Fraction] = {}

    @classmethod
    def deterministic(cls, weights: Sequence[RationalLike]) -> "MixedMomentOracle":
        w = tuple(as_rational(x) for x in weights)
        return cls("deterministic", len(w), w, lambda idx: _prod(power(wv, i) for wv, i in zip(w, idx)))

    @classmethod
    def dirichlet(cls, alpha: Sequence[RationalLike]) -> "MixedMomentOracle":
        a = tuple(as_rational(x) for x in alpha)
        if any(x <= 0 for x in a):
            raise PreconditionError(f"Dirichlet parameters must be positive, got {a}")
        return cls("dirichlet", len(a), a, lambda idx: dirichlet_mixed_moment(a, idx))

    @classmethod
    def iid(cls, rv: RandomVariable, m: int) -> "MixedMomentOracle":
        return cls("iid", m, (rv,), lambda idx: _prod(moment(rv, i) for i in idx))

    def __call__(self, idx: Sequence[int]) -> Fraction:
        idx = tuple(idx)
        if len(idx) != self.m:
            raise PreconditionError(f"oracle of arity {self.m} queried at {idx}")
        value = self._memo.get(idx)
        if value is None:
            value = self._evaluator(idx)
            self._memo[idx] = value
        return value

    @property
    def descriptor(self) -> str:
        if self.kind == "iid":
            return f"iid:{self.params[0].name}"
        return f"{self.kind}:{','.join(format_rational(p) for p in self.params)}"

    def __repr__(self) -> str:
        return f"MixedMomentOracle({self.descriptor!r}, m={self.m})"


def parse_oracle(text: str, m: int) -> MixedMomentOracle:
    """``deterministic:w1,...``, ``dirichlet:a1,...`` or ``iid:<rv name>``."""
    kind, _, arg = text.strip().partition(":")
    if kind == "deterministic":
        oracle = MixedMomentOracle.deterministic(parse_rational_list(arg))
    elif kind == "dirichlet":
        oracle = MixedMomentOracle.dirichlet(parse_rational_list(arg))
    elif kind == "iid":
        return MixedMomentOracle.iid(parse_rv(arg), m)
    else:
        raise PreconditionError(f"unknown oracle {text!r}; use deterministic:, dirichlet: or iid:")
    if oracle.m != m:
        raise PreconditionError(f"oracle {text!r} has arity {oracle.m}, expected {m}")
    return oracle


def dirichlet_mixed_moment(alpha: Sequence[RationalLike], idx: Sequence[int]) -> Fraction:
    """E(W_1^{j_1} ... W_m^{j_m}) = prod <a_v>_{j_v} / <sum a>_{sum j}."""
    if len(alpha) != len(idx):
        raise PreconditionError(f"{len(alpha)} Dirichlet parameters for index {tuple(idx)}")
    alpha = [as_rational(a) for a in alpha]
    num = _prod(rising_factorial(a, j) for a, j in zip(alpha, idx))
    return num / rising_factorial(sum(alpha), sum(idx))


def _prod(values) -> Fraction:
    result = Fraction(1)
    for v in values:
        result *= v
        if not result:
            return result
    return result


# -- problems and reports -------------------------------------------------

@dataclass
class ConvolutionProblem:
    """One instance of the convolution sum: degree n, m slots, weights W."""

    n: int
    slots: tuple[RandomVariable, ...]
    xs: tuple[Fraction, ...]
    oracle: MixedMomentOracle

    def __post_init__(self):
        self.slots = tuple(self.slots)
        self.xs = tuple(as_rational(x) for x in self.xs)
        if self.n < 0:
            raise PreconditionError(f"degree must be >= 0, got {self.n}")
        if not self.slots:
            raise PreconditionError("a convolution problem needs at least one slot")
        if len(self.xs) != len(self.slots) or self.oracle.m != len(self.slots):
            raise PreconditionError(
                f"arity mismatch: {len(self.slots)} slots, {len(self.xs)} x values, "
                f"oracle of arity {self.oracle.m}"
            )

    @property
    def m(self) -> int:
        return len(self.slots)

    def describe(self) -> dict[str, str]:
        return {
            "slots": ",".join(s.name for s in self.slots),
            "x": ",".join(format_rational(x) for x in self.xs),
            "oracle": self.oracle.descriptor,
        }


@dataclass
class VerificationReport:
    identity: str
    m: int
    n: int
    params: dict[str, str]
    lhs: Fraction
    rhs: Fraction
    lhs_route: str = "brute-force"
    rhs_route: str = "closed-form"
    micros: int = 0
    equal: bool = field(init=False)

    def __post_init__(self):
        self.equal = self.lhs == self.rhs

    @property
    def parameters(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params.items())

    def as_record(self) -> dict[str, object]:
        return {
            "identity": self.identity,
            "m": self.m,
            "n": self.n,
            "parameters": self.parameters,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "equal": self.equal,
            "micros": self.micros,
        }


def _report(identity, m, n, params, lhs_fn, rhs_fn, lhs_route="brute-force", rhs_route="closed-form"):
    start = time.perf_counter()
    lhs = lhs_fn()
    rhs = rhs_fn()
    micros = int((time.perf_counter() - start) * 1e6)
    return VerificationReport(identity, m, n, dict(params), lhs, rhs, lhs_route, rhs_route, micros)


# -- left-hand side ----------------------------------------------------------

def _weighted_product_sum(n: int, m: int, coeff: Callable[[MultiIndex], Fraction],
                          value: Callable[[int, int], Fraction], weighted: bool = True) -> Fraction:
    """sum over compositions j of n: [multinomial] * coeff(j) * prod_v value(v, j_v)."""
    total = Fraction(0)
    for idx in compositions(n, m):
        c = coeff(idx)
        if not c:
            continue
        term = c * multinomial(n, idx) if weighted else c
        for v, j in enumerate(idx):
            term *= value(v, j)
            if not term:
                break
        total += term
    return total


def lhs_multinomial_sum(p: ConvolutionProblem) -> Fraction:
    """Brute-force left-hand side; the universal oracle side of every check."""
    seqs = [appell_base(slot, p.n) for slot in p.slots]
    return _weighted_product_sum(p.n, p.m, p.oracle, lambda v, j: appell_eval(seqs[v], j, p.xs[v]))


# -- general right-hand sides ---------------------------------------------

def theorem4_routes(weights: Sequence[RationalLike], slots: Sequence[RandomVariable],
                    xs: Sequence[RationalLike], n: int) -> tuple[Fraction, Fraction]:
    """Both closed forms for the deterministic-weight sum, as a pair.

    The first sums (-1)^r r! S_{w.Y}(n, r; x) for the compound variable
    w.Y; the second expands E(w_1 S_k^(1) + ... + w_m S_k^(m))^r over the
    independent slot sums.  Here x = sum w_v x_v.
    """
    w = tuple(as_rational(v) for v in weights)
    slots = tuple(slots)
    xs = tuple(as_rational(v) for v in xs)
    if not (len(w) == len(slots) == len(xs)) or not w:
        raise PreconditionError("weights, slots and x values must have the same positive length")
    if n < 0:
        raise PreconditionError(f"degree must be >= 0, got {n}")
    x = sum((wv * xv for wv, xv in zip(w, xs)), Fraction(0))
    m = len(w)

    compound = LinearCombination(w, slots)
    route_a = Fraction(0)
    for r in range(n + 1):
        s = stirling_poly(compound, n, r, x)
        if s:
            route_a += (-1) ** r * factorial(r) * s

    route_b = Fraction(0)
    for r in range(n + 1):
        inner = Fraction(0)
        for k in range(r + 1):
            tables = [IIDSum(slot, k).moments(r) for slot in slots]
            mom = _weighted_product_sum(r, m, lambda idx: Fraction(1),
                                        lambda v, i: power(w[v], i) * tables[v][i])
            inner += (-1) ** k * binomial(r + 1, k + 1) * mom
        route_b += binomial(n, r) * power(x, n - r) * inner
    return route_a, route_b


def theorem4_rhs(weights, slots, xs, n: int) -> Fraction:
    a, b = theorem4_routes(weights, slots, xs, n)
    if a != b:
        raise ConsistencyError("theorem4 rhs: stirling route vs moment route", a, b)
    return a


def d_coefficient(oracle: MixedMomentOracle, idx: MultiIndex, xs: Sequence[Fraction], power_: int) -> Fraction:
    """E(W^idx (x_1 W_1 + ... + x_m W_m)^power_), expanded over compositions."""
    m = oracle.m
    total = Fraction(0)
    for l in compositions(power_, m):
        xpow = _prod(power(x, lv) for x, lv in zip(xs, l))
        if not xpow:
            continue
        total += multinomial(power_, l) * xpow * oracle(tuple(i + lv for i, lv in zip(idx, l)))
    return total


def _closed_rhs(n: int, m: int, d_fn: Callable[[MultiIndex, int], Fraction],
                sum_moment: Callable[[int, int, int], Fraction]) -> Fraction:
    """sum_r C(n,r) sum_k C(r+1,k+1)(-1)^k sum_i multinomial(r;i) D(i) prod_v E(S_k^(v))^{i_v}.

    ``d_fn(i, r)`` gives D(i; x); ``sum_moment(v, k, i)`` gives E(S_k^(v))^i.
    D does not depend on k, so it is evaluated once per (r, i).
    """
    total = Fraction(0)
    for r in range(n + 1):
        idxs = list(compositions(r, m))
        ds = [d_fn(idx, r) for idx in idxs]
        inner = Fraction(0)
        for k in range(r + 1):
            s = Fraction(0)
            for idx, d in zip(idxs, ds):
                if not d:
                    continue
                term = d * multinomial(r, idx)
                for v, i in enumerate(idx):
                    term *= sum_moment(v, k, i)
                    if not term:
                        break
                s += term
            inner += (-1) ** k * binomial(r + 1, k + 1) * s
        total += binomial(n, r) * inner
    return total


def theorem5_rhs(p: ConvolutionProblem) -> Fraction:
    """Closed form for a random weight vector W given by its mixed moments."""
    n, m = p.n, p.m
    tables: dict[tuple[int, int], tuple[Fraction, ...]] = {}

    def sum_moment(v: int, k: int, i: int) -> Fraction:
        key = (v, k)
        if key not in tables:
            tables[key] = IIDSum(p.slots[v], k).moments(n)
        return tables[key][i]

    return _closed_rhs(n, m, lambda idx, r: d_coefficient(p.oracle, idx, p.xs, n - r), sum_moment)


def stirling_ratio(k: int, i: int) -> Fraction:
    """S(k+i, k) / C(k+i, k), the i-th moment of a sum of k uniforms."""
    table = classical_stirling_table(k + i)
    return Fraction(table[k + i][k], binomial(k + i, k))


def _require_bernoulli(slots: Sequence[RandomVariable]) -> None:
    for slot in slots:
        if slot != UNIFORM:
            raise PreconditionError(f"Bernoulli-only identity got slot {slot.name}")


def corollary41_rhs(p: ConvolutionProblem) -> Fraction:
    """Mixed-moment RHS for Bernoulli slots, moments taken from the classical table."""
    _require_bernoulli(p.slots)
    return _closed_rhs(p.n, p.m, lambda idx, r: d_coefficient(p.oracle, idx, p.xs, p.n - r),
                       lambda v, k, i: stirling_ratio(k, i))


def _bernoulli_values(n: int, x: Fraction) -> list[Fraction]:
    B = appell_base(UNIFORM, n)
    return [appell_eval(B, j, x) for j in range(n + 1)]


def _common_x(xs: Sequence[RationalLike], m: int) -> Fraction:
    xs = [as_rational(x) for x in xs]
    if len(xs) != m:
        raise PreconditionError(f"expected {m} x values, got {len(xs)}")
    if any(x != xs[0] for x in xs):
        raise PreconditionError(f"this identity requires x_1 = ... = x_m, got {xs}")
    return xs[0]


def _bernoulli_closed_rhs(n: int, m: int, d_fn) -> Fraction:
    return _closed_rhs(n, m, d_fn, lambda v, k, i: stirling_ratio(k, i))


# -- deterministic weights ------------------------------------------------

def corollary42_terms(weights: Sequence[RationalLike], x: RationalLike, n: int, r: int,
                      idx: MultiIndex) -> tuple[Fraction, Fraction]:
    """(prod w^idx, prod w^idx * x^(n-r)) for idx of weight r."""
    w = [as_rational(v) for v in weights]
    c = _prod(power(wv, i) for wv, i in zip(w, idx))
    return c, c * power(as_rational(x), n - r)


# -- Dirichlet weights ----------------------------------------------------

def corollary43_terms(alpha: Sequence[RationalLike], n: int, r: int, idx: MultiIndex,
                      x: RationalLike) -> tuple[Fraction, Fraction]:
    """Closed-form (C, D) for Dirichlet weights with common x.

    C is evaluated at ``idx`` as if it had weight n; D at ``idx`` of
    weight r.  The components sum to one, which removes the x-expansion.
    """
    if sum(idx) != r:
        raise PreconditionError(f"index {tuple(idx)} does not have weight {r}")
    alpha = [as_rational(a) for a in alpha]
    num = _prod(rising_factorial(a, i) for a, i in zip(alpha, idx))
    c = num / rising_factorial(sum(alpha), r)
    return c, c * power(as_rational(x), n - r)


# -- i.i.d. exponential weights -------------------------------------------

def corollary45_terms(m: int, n: int, r: int, idx: MultiIndex, x: RationalLike = 1) -> tuple[int, Fraction]:
    """(prod idx_v!, x^(n-r) (m+n-1)!/(m+r-1)! prod idx_v!) for idx of weight r."""
    if len(idx) != m:
        raise PreconditionError(f"index {tuple(idx)} does not have {m} parts")
    if sum(idx) != r or r > n:
        raise PreconditionError(f"index {tuple(idx)} must have weight r={r} <= n={n}")
    c = 1
    for i in idx:
        c *= factorial(i)
    d = power(as_rational(x), n - r) * Fraction(factorial(m + n - 1), factorial(m + r - 1)) * c
    return c, d


def exponential_d_collapsed(idx: MultiIndex, n: int, r: int, x: RationalLike) -> Fraction:
    """D for i.i.d. exponential weights with the l-sum collapsed by Chu-Vandermonde."""
    m = len(idx)
    l_sum = generalized_binomial(r + m + (n - r) - 1, n - r)
    c = _prod(factorial(i) for i in idx)
    return power(as_rational(x), n - r) * factorial(n - r) * c * l_sum


# -- i.i.d. standard normal weights ---------------------------------------

def hermite_zero(n: int) -> Fraction:
    """H_n(0) = E(iZ)^n: 0 for odd n, (-1)^k (2k-1)!! for n = 2k."""
    if n < 0:
        raise PreconditionError(f"degree must be >= 0, got {n}")
    if n % 2:
        return Fraction(0)
    k = n // 2
    return Fraction((-1) ** k * double_factorial_odd(k))


def _times_neg_i_power(n: int, value: Fraction) -> Fraction:
    """(-i)^n * value for real ``value``; the result must be real."""
    re, im = ((1, 0), (0, -1), (-1, 0), (0, 1))[n % 4]
    if im * value:
        raise ConsistencyError(f"(-i)^{n} prefactor leaves an imaginary part", im * value, 0)
    return re * value


def corollary46_c(idx: MultiIndex) -> tuple[Fraction, Fraction]:
    """C(j) two ways: product of normal moments, and (-i)^n prod H_{j_v}(0)."""
    n = sum(idx)
    direct = _prod(moment(StdNormal(), j) for j in idx)
    hermite = _times_neg_i_power(n, _prod(hermite_zero(j) for j in idx))
    return direct, hermite


def corollary46_d(idx: MultiIndex, n: int, r: int, x: RationalLike) -> Fraction:
    """(-i)^n x^(n-r) sum_l multinomial(n-r; l) prod H_{i_v + l_v}(0)."""
    x = as_rational(x)
    m = len(idx)
    total = Fraction(0)
    for l in compositions(n - r, m):
        total += multinomial(n - r, l) * _prod(hermite_zero(i + lv) for i, lv in zip(idx, l))
    return power(x, n - r) * _times_neg_i_power(n, total)


# -- verification reports ------------------------------------------------------

def theorem1_check(rv: RandomVariable, n: int, x: RationalLike, route: str = "stirling") -> VerificationReport:
    """A_n(x) from the inverse-moment base numbers vs one closed-form route."""
    x = as_rational(x)
    A = appell_from_rv(rv, n, method="inverse")
    return _report("theorem1", 1, n, {"rv": rv.name, "x": format_rational(x), "route": route},
                   lambda: appell_eval(A, n, x), lambda: appell_route(rv, n, x, route),
                   lhs_route="inverse-moments", rhs_route=route)


def theorem4_check(weights, slots, xs, n: int) -> VerificationReport:
    w = tuple(as_rational(v) for v in weights)
    slots = tuple(slots)
    p = ConvolutionProblem(n, slots, tuple(xs), MixedMomentOracle.deterministic(w))
    params = p.describe()
    params["w"] = ",".join(format_rational(v) for v in w)
    return _report("theorem4", p.m, n, params, lambda: lhs_multinomial_sum(p),
                   lambda: theorem4_rhs(w, slots, p.xs, n), rhs_route="stirling+moments")


def theorem5_check(p: ConvolutionProblem) -> VerificationReport:
    return _report("theorem5", p.m, p.n, p.describe(), lambda: lhs_multinomial_sum(p),
                   lambda: theorem5_rhs(p), rhs_route="theorem5")


def corollary41_check(p: ConvolutionProblem) -> VerificationReport:
    """Brute force vs Stirling-ratio form; the general mixed-moment form must agree too."""
    def rhs():
        value = corollary41_rhs(p)
        general = theorem5_rhs(p)
        if value != general:
            raise ConsistencyError("corollary41 vs theorem5 rhs", value, general)
        return value

    return _report("corollary41", p.m, p.n, p.describe(), lambda: lhs_multinomial_sum(p), rhs,
                   rhs_route="stirling-ratio")


def corollary42_check(weights, xs, n: int) -> VerificationReport:
    w = tuple(as_rational(v) for v in weights)
    m = len(w)
    p = ConvolutionProblem(n, (UNIFORM,) * m, tuple(xs), MixedMomentOracle.deterministic(w))
    x = sum((wv * xv for wv, xv in zip(w, p.xs)), Fraction(0))
    params = p.describe()
    params["w"] = ",".join(format_rational(v) for v in w)
    return _report("corollary42", m, n, params, lambda: lhs_multinomial_sum(p),
                   lambda: _bernoulli_closed_rhs(n, m, lambda idx, r: corollary42_terms(w, x, n, r, idx)[1]))


def corollary43_check(alpha, xs, n: int) -> VerificationReport:
    alpha = tuple(as_rational(a) for a in alpha)
    m = len(alpha)
    x = _common_x(xs, m)
    values = _bernoulli_values(n, x)

    def lhs():
        return _weighted_product_sum(n, m, lambda j: corollary43_terms(alpha, n, n, j, x)[0],
                                     lambda v, j: values[j])

    params = {"alpha": ",".join(format_rational(a) for a in alpha), "x": format_rational(x)}
    return _report("corollary43", m, n, params, lhs,
                   lambda: _bernoulli_closed_rhs(n, m, lambda idx, r: corollary43_terms(alpha, n, r, idx, x)[1]))


def corollary45_check(m: int, xs, n: int) -> VerificationReport:
    x = _common_x(xs, m)
    values = _bernoulli_values(n, x)

    def lhs():
        return _weighted_product_sum(n, m, lambda j: Fraction(corollary45_terms(m, n, n, j)[0]),
                                     lambda v, j: values[j])

    return _report("corollary45", m, n, {"x": format_rational(x)}, lhs,
                   lambda: _bernoulli_closed_rhs(n, m, lambda idx, r: corollary45_terms(m, n, r, idx, x)[1]))


def corollary46_check(m: int, xs, n: int) -> VerificationReport:
    """Hermite-coefficient form; both C routes are compared on the way."""
    x = _common_x(xs, m)
    values = _bernoulli_values(n, x)

    def coeff(j):
        direct, hermite = corollary46_c(j)
        if direct != hermite:
            raise ConsistencyError(f"corollary46 C{j}: normal moments vs hermite", direct, hermite)
        return hermite

    return _report("corollary46", m, n, {"x": format_rational(x)},
                   lambda: _weighted_product_sum(n, m, coeff, lambda v, j: values[j]),
                   lambda: _bernoulli_closed_rhs(n, m, lambda idx, r: corollary46_d(idx, n, r, x)),
                   rhs_route="hermite")


def eq440_check(m: int, n: int, x: RationalLike) -> VerificationReport:
    """Unweighted sum of products of Bernoulli polynomials at a common x."""
    if m < 2:
        raise PreconditionError(f"need m >= 2, got {m}")
    x = as_rational(x)
    values = _bernoulli_values(n, x)

    def rhs():
        total = Fraction(0)
        for r in range(n + 1):
            inner = Fraction(0)
            idxs = list(compositions(r, m))
            for k in range(r + 1):
                s = sum((_prod(stirling_ratio(k, i) for i in idx) for idx in idxs), Fraction(0))
                inner += (-1) ** k * binomial(r + 1, k + 1) * s
            total += binomial(m + n - 1, n - r) * power(x, n - r) * inner
        return total

    return _report("eq440", m, n, {"x": format_rational(x)},
                   lambda: _weighted_product_sum(n, m, lambda j: Fraction(1), lambda v, j: values[j],
                                                 weighted=False),
                   rhs)


def chu_vandermonde_check(t: Sequence[RationalLike], n: int) -> VerificationReport:
    """sum_l prod C(t_v + l_v, l_v) against C(t + m + n - 1, n)."""
    t = tuple(as_rational(v) for v in t)
    if not t:
        raise PreconditionError("need at least one parameter")
    if n < 0:
        raise PreconditionError(f"degree must be >= 0, got {n}")
    m = len(t)

    def lhs():
        total = Fraction(0)
        for l in compositions(n, m):
            total += _prod(rising_factorial(tv + 1, lv) / factorial(lv) for tv, lv in zip(t, l))
        return total

    return _report("lemma8", m, n, {"t": ",".join(format_rational(v) for v in t)}, lhs,
                   lambda: generalized_binomial(sum(t) + m + n - 1, n))


def norlund_printed_rhs(n: int, s: Fraction) -> Fraction:
    B = appell_base(UNIFORM, n)
    return -n * (s - 1) * appell_eval(B, n - 1, s) - (n - 1) * appell_eval(B, n, s)


def norlund_rhs(n: int, s: Fraction) -> Fraction:
    B = appell_base(UNIFORM, n)
    return n * (s - 1) * appell_eval(B, n - 1, s) - (n - 1) * appell_eval(B, n, s)


def norlund_check(n: int, x: RationalLike, y: RationalLike) -> VerificationReport:
    """Second-order Bernoulli convolution with the sign of the first term fixed.

    The commonly printed form -n(s-1)B_{n-1}(s) - (n-1)B_n(s) is evaluated
    as well and recorded in the parameters for comparison.
    """
    if n < 1:
        raise PreconditionError(f"need n >= 1, got {n}")
    x, y = as_rational(x), as_rational(y)
    s = x + y
    B = appell_base(UNIFORM, n)

    def lhs():
        return sum((binomial(n, k) * appell_eval(B, k, x) * appell_eval(B, n - k, y)
                    for k in range(n + 1)), Fraction(0))

    report = _report("norlund", 2, n, {"x": format_rational(x), "y": format_rational(y)},
                     lhs, lambda: norlund_rhs(n, s), rhs_route="corrected-sign")
    printed = norlund_printed_rhs(n, s)
    report.params["printed_rhs"] = format_rational(printed)
    report.params["printed_equal"] = str(printed == report.lhs).lower()
    return report
