"""Acceptance battery: every criterion with its pinned sizes and time budget.

Each check returns ``None`` on success or a string describing the first
failure.  All comparisons are exact rational equality.  ``quick`` shrinks
the sizes for a fast smoke run; the full sizes are the acceptance gate.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Callable, Optional

from . import identities as ids
from .appell import (
    Seq,
    appell_base,
    appell_convolve,
    appell_eval,
    appell_from_rv,
    appell_poly,
    binomial_convolve,
    conv_inverse,
    scale_transform,
)
from .errors import AppellError
from .exact import DEFAULT_POOL, binomial, compositions, seeded_rationals
from .moments import (
    BernoulliP,
    CauchySigned,
    Constant,
    Exponential,
    Gamma,
    StdNormal,
    Uniform01,
    iid_sum_moments,
    linear_combo_moments,
)
from .stirling import ONE, classical_stirling_table, gf_cross_check, stirling2_recurrence, stirling_num

SEED = 2018
U = Uniform01()
HALF = BernoulliP(Fraction(1, 2))
CATALOG = (
    Constant(Fraction(1)),
    Constant(Fraction(-3, 2)),
    U,
    BernoulliP(Fraction(1, 3)),
    CauchySigned(),
    Exponential(),
    Gamma(Fraction(3, 2)),
    StdNormal(),
)
COMMON_XS = (Fraction(0), Fraction(1), Fraction(1, 3))


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    budget: float  # seconds
    check: Callable[[bool], Optional[str]]


def _first_failure(reports) -> Optional[str]:
    for report in reports:
        if not report.equal:
            rec = report.as_record()
            return f"{rec['identity']} n={rec['n']} {rec['parameters']}: lhs {rec['lhs']} != rhs {rec['rhs']}"
    return None


def check_theorem1(quick: bool) -> Optional[str]:
    order = 10 if quick else 20
    for rv in (U, HALF, BernoulliP(Fraction(2, 3)), CauchySigned()):
        appell_from_rv(rv, order, method="all", check_xs=(0, 1, Fraction(-1, 2)))
    return None


def check_bernoulli(quick: bool) -> Optional[str]:
    B = appell_from_rv(U, 12, method="inverse").base
    for n in range(1, 13):
        total = sum((binomial(n + 1, k) * B[k] for k in range(n + 1)), Fraction(0))
        if total:
            return f"sum_k C({n + 1},k) B_k = {total} at n={n}"
    return None


def check_classical_stirling(quick: bool) -> Optional[str]:
    order = 15
    rec = stirling2_recurrence(order)
    table = classical_stirling_table(order)
    for n in range(order + 1):
        for r in range(n + 1):
            if stirling_num(ONE, n, r) != rec[n][r] or table[n][r] != rec[n][r]:
                return f"S({n},{r}): table {table[n][r]} vs recurrence {rec[n][r]}"
            value = binomial(n, r) * iid_sum_moments(U, r, n - r)[n - r]
            if value != rec[n][r]:
                return f"C({n},{r}) E S_{r}^{n - r} = {value} != S({n},{r}) = {rec[n][r]}"
    return None


def check_generating_function(quick: bool) -> Optional[str]:
    for rv in CATALOG:
        for r in range(7):
            report = gf_cross_check(rv, r, 12, seed=SEED)
            if not report:
                return f"{rv.name} r={r}: mismatch {report.mismatch}"
    return None


def check_theorem4(quick: bool) -> Optional[str]:
    rng = random.Random(SEED)
    n_max = 8 if quick else 12
    for m in (2, 3):
        for n in range(n_max + 1):
            for _ in range(5):
                slots = tuple(rng.choice((U, HALF)) for _ in range(m))
                w = tuple(rng.choice(DEFAULT_POOL) for _ in range(m))
                xs = tuple(rng.choice(DEFAULT_POOL) for _ in range(m))
                failure = _first_failure([ids.theorem4_check(w, slots, xs, n)])
                if failure:
                    return failure
    return None


def _criterion6_oracles(m: int, rng: random.Random):
    yield ids.MixedMomentOracle.deterministic(tuple(rng.choice(DEFAULT_POOL) for _ in range(m)))
    alphas = [(Fraction(1), Fraction(1)), (Fraction(1, 2), Fraction(3, 2)), (Fraction(1), Fraction(2), Fraction(3))]
    for alpha in alphas:
        if len(alpha) == m:
            yield ids.MixedMomentOracle.dirichlet(alpha)
    yield ids.MixedMomentOracle.iid(Exponential(), m)
    yield ids.MixedMomentOracle.iid(StdNormal(), m)


def check_theorem5(quick: bool) -> Optional[str]:
    rng = random.Random(SEED)
    n_max = 6 if quick else 10
    for m in (2, 3):
        for oracle in _criterion6_oracles(m, rng):
            for n in range(n_max + 1):
                xs = tuple(rng.choice(DEFAULT_POOL) for _ in range(m))
                p = ids.ConvolutionProblem(n, (U,) * m, xs, oracle)
                failure = _first_failure([ids.corollary41_check(p)])
                if failure:
                    return failure
    return None


def check_corollary43(quick: bool) -> Optional[str]:
    n_max = 6 if quick else 10
    alphas = [(Fraction(1), Fraction(1)), (Fraction(1, 2), Fraction(3, 2)), (Fraction(1), Fraction(2), Fraction(3))]
    for alpha in alphas:
        m = len(alpha)
        oracle = ids.MixedMomentOracle.dirichlet(alpha)
        for x in COMMON_XS:
            for n in range(n_max + 1):
                for j in compositions(n, m):
                    closed_c, _ = ids.corollary43_terms(alpha, n, n, j, x)
                    if closed_c != oracle(j):
                        return f"alpha={alpha} C{j}: closed {closed_c} != oracle {oracle(j)}"
                for r in range(n + 1):
                    for i in compositions(r, m):
                        _, closed_d = ids.corollary43_terms(alpha, n, r, i, x)
                        raw_d = ids.d_coefficient(oracle, i, (x,) * m, n - r)
                        if closed_d != raw_d:
                            return f"alpha={alpha} x={x} D{i} n={n}: closed {closed_d} != raw {raw_d}"
                failure = _first_failure([ids.corollary43_check(alpha, (x,) * m, n)])
                if failure:
                    return failure
    return None


def check_corollary45(quick: bool) -> Optional[str]:
    n_max = 6 if quick else 10
    for m in (2, 3, 4):
        for n in range(n_max + 1):
            for x in COMMON_XS:
                failure = _first_failure([ids.eq440_check(m, n, x), ids.corollary45_check(m, (x,) * m, n)])
                if failure:
                    return failure
    # Chu-Vandermonde, integer t_v <= 3 (m <= 3) and t = (1/2, 1/2)
    vectors = [tuple(Fraction(v) for v in t) for m in (1, 2, 3) for t in itertools.product(range(4), repeat=m)]
    vectors.append((Fraction(1, 2), Fraction(1, 2)))
    for t in vectors:
        for n in range(9):
            failure = _first_failure([ids.chu_vandermonde_check(t, n)])
            if failure:
                return failure
    # exponential oracle: raw l-sum, collapsed l-sum and closed form agree
    for m in range(1, 5):
        oracle = ids.MixedMomentOracle.iid(Exponential(), m)
        for n in range(9):
            for r in range(n + 1):
                for i in compositions(r, m):
                    raw = ids.d_coefficient(oracle, i, (Fraction(1),) * m, n - r)
                    collapsed = ids.exponential_d_collapsed(i, n, r, 1)
                    closed = ids.corollary45_terms(m, n, r, i, 1)[1]
                    if not raw == collapsed == closed:
                        return f"exponential D{i} n={n}: raw {raw}, collapsed {collapsed}, closed {closed}"
    return None


def check_corollary46(quick: bool) -> Optional[str]:
    n_max = 6 if quick else 10
    for m in (2, 3):
        normal = ids.MixedMomentOracle.iid(StdNormal(), m)
        for n in range(n_max + 1):
            for j in compositions(n, m):
                direct, hermite = ids.corollary46_c(j)
                if direct != hermite or direct != normal(j):
                    return f"C{j}: normal moments {direct} vs hermite {hermite}"
            for x in COMMON_XS:
                for r in range(n + 1):
                    for i in compositions(r, m):
                        raw = ids.d_coefficient(normal, i, (x,) * m, n - r)
                        hermite = ids.corollary46_d(i, n, r, x)
                        if raw != hermite:
                            return f"D{i} n={n} x={x}: raw {raw} vs hermite {hermite}"
                failure = _first_failure([ids.corollary46_check(m, (x,) * m, n)])
                if failure:
                    return failure
    return None


def check_norlund(quick: bool) -> Optional[str]:
    rng = random.Random(SEED)
    pairs = [(rng.choice(DEFAULT_POOL), rng.choice(DEFAULT_POOL)) for _ in range(5)]
    for x, y in pairs:
        for n in range(1, 21):
            report = ids.norlund_check(n, x, y)
            if not report.equal:
                return _first_failure([report])
    # negative control: the printed sign is wrong already at n = 1
    for x, y in [(Fraction(0), Fraction(0))] + [p for p in pairs if sum(p) != 1]:
        if ids.norlund_check(1, x, y).params["printed_equal"] != "false":
            return f"printed form unexpectedly holds at n=1, (x, y) = ({x}, {y})"
    return None


def check_group_laws(quick: bool) -> Optional[str]:
    N = 12
    rng = random.Random(SEED)

    nonzero = [q for q in DEFAULT_POOL if q]

    def random_seq():
        return Seq(tuple([rng.choice(nonzero)] + [rng.choice(DEFAULT_POOL) for _ in range(N)]))

    for _ in range(5):
        u, v, t = random_seq(), random_seq(), random_seq()
        if binomial_convolve(binomial_convolve(u, v), t) != binomial_convolve(u, binomial_convolve(v, t)):
            return "binomial convolution is not associative"
        if binomial_convolve(u, v) != binomial_convolve(v, u):
            return "binomial convolution is not commutative"
        if binomial_convolve(u, conv_inverse(u)) != Seq.identity(N):
            return "u x inverse(u) != e"
    for rv in CATALOG:
        mu = Seq(rv.moments(N))
        if binomial_convolve(mu, conv_inverse(mu)) != Seq.identity(N):
            return f"{rv.name}: moments x inverse != e"

    family = [appell_base(rv, N) for rv in (U, HALF, CauchySigned(), Exponential(), StdNormal())]
    ws = seeded_rationals(4, SEED)
    for A, C in zip(family, family[1:]):
        for w in ws:
            lhs = scale_transform(appell_convolve(A, C), w).base
            rhs = appell_convolve(scale_transform(A, w), scale_transform(C, w)).base
            if lhs != rhs:
                return f"T_{w} is not a homomorphism on {A.provenance}, {C.provenance}"
            if w and scale_transform(scale_transform(A, w), 1 / w).base != A.base:
                return f"T_{w} T_(1/{w}) != id on {A.provenance}"
            if scale_transform(scale_transform(A, w), 2).base != scale_transform(A, 2 * w).base:
                return f"T_2 T_{w} != T_{2 * w}"
        if scale_transform(A, 1).base != A.base:
            return "T_1 != id"
        AC = appell_convolve(A, C)
        for n in range(N + 1):
            x1, x2 = rng.choice(DEFAULT_POOL), rng.choice(DEFAULT_POOL)
            split = sum((binomial(n, k) * appell_eval(A, k, x1) * appell_eval(C, n - k, x2)
                         for k in range(n + 1)), Fraction(0))
            if split != appell_eval(AC, n, x1 + x2):
                return f"convolution split fails at n={n}"
    for A in family:
        for n in range(1, 11):
            if appell_poly(A, n).derivative() != appell_poly(A, n - 1).scale(n):
                return f"A_{n}' != {n} A_{n - 1} for {A.provenance}"
    # base of T_w1 A1 x T_w2 A2 is the inverse of the moments of w1 Y1 + w2 Y2
    pairs = [(U, HALF), (CauchySigned(), U), (HALF, StdNormal())]
    for (Y1, Y2), (w1, w2) in zip(pairs, [seeded_rationals(2, SEED + k) for k in range(3)]):
        A = appell_convolve(scale_transform(appell_base(Y1, N), w1), scale_transform(appell_base(Y2, N), w2))
        mu = linear_combo_moments((w1, w2), (Y1, Y2), N)
        if A.base != conv_inverse(Seq(mu.values)):
            return f"scaled convolution of {Y1.name}, {Y2.name} is not generated by w.Y"
    return None


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "four-route Appell agreement", 5.0, check_theorem1),
    Criterion(2, "Bernoulli ground truth", 1.0, check_bernoulli),
    Criterion(3, "classical Stirling table and uniform-sum representation", 2.0, check_classical_stirling),
    Criterion(4, "generating-function cross-check", 3.0, check_generating_function),
    Criterion(5, "weighted-sum identity: brute force vs both closed forms", 10.0, check_theorem4),
    Criterion(6, "mixed-moment identity over all oracles", 20.0, check_theorem5),
    Criterion(7, "Dirichlet coefficients vs oracle", 2.0, check_corollary43),
    Criterion(8, "exponential weights, unweighted Bernoulli sum, Chu-Vandermonde", 5.0, check_corollary45),
    Criterion(9, "normal weights via Hermite numbers", 5.0, check_corollary46),
    Criterion(10, "Norlund identity, corrected sign", 1.0, check_norlund),
    Criterion(11, "group and scale-transform laws", 5.0, check_group_laws),
)
TOTAL_BUDGET = 60.0


@dataclass
class Outcome:
    criterion: Criterion
    elapsed: float
    failure: Optional[str]

    @property
    def passed(self) -> bool:
        return self.failure is None and self.elapsed <= self.criterion.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        c = self.criterion
        text = f"[{status}] {c.number:>2}. {c.title} ({self.elapsed:.2f}s / {c.budget:g}s)"
        if self.failure:
            text += f": {self.failure}"
        elif not self.passed:
            text += ": over time budget"
        return text


def run_criterion(criterion: Criterion, quick: bool = False) -> Outcome:
    start = time.perf_counter()
    try:
        failure = criterion.check(quick)
    except AppellError as exc:
        failure = f"{type(exc).__name__}: {exc}"
    return Outcome(criterion, time.perf_counter() - start, failure)


@dataclass
class Summary:
    outcomes: list[Outcome]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes) and self.elapsed <= TOTAL_BUDGET


def run_all(quick: bool = False, stream: IO[str] = sys.stdout) -> Summary:
    """Run every criterion, printing one PASS/FAIL line each plus a total."""
    outcomes = []
    start = time.perf_counter()
    for criterion in CRITERIA:
        outcome = run_criterion(criterion, quick)
        outcomes.append(outcome)
        print(outcome.line(), file=stream, flush=True)
    summary = Summary(outcomes, time.perf_counter() - start)
    count = sum(o.passed for o in outcomes)
    print(f"{count}/{len(outcomes)} criteria passed in {summary.elapsed:.2f}s "
          f"(budget {TOTAL_BUDGET:g}s)", file=stream)
    return summary
