"""Deterministic generation of identity instances for the ``verify`` command.

A :class:`SweepSpec` names one registered identity plus its parameter
ranges.  Anything not given explicitly (weights, x tuples, slot choices) is
drawn from the seeded pool in :mod:`appellconv.exact`, so the same spec
always produces the same instances in the same order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from . import identities as ids
from .errors import PreconditionError
from .exact import DEFAULT_POOL
from .moments import BernoulliP, RandomVariable, Uniform01, parse_rv

DEFAULT_SEED = 2018
DEFAULT_SLOT_POOL: tuple[RandomVariable, ...] = (Uniform01(), BernoulliP(Fraction(1, 2)))


@dataclass
class SweepSpec:
    identity: str
    n_max: int
    ms: tuple[int, ...] = (2,)
    slots: Optional[tuple[RandomVariable, ...]] = None
    weights: Optional[tuple[Fraction, ...]] = None
    alpha: Optional[tuple[Fraction, ...]] = None
    t: Optional[tuple[Fraction, ...]] = None
    xs: Optional[tuple[Fraction, ...]] = None
    rvs: Optional[tuple[RandomVariable, ...]] = None
    oracle: Optional[str] = None
    seed: int = DEFAULT_SEED
    samples: int = 5
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        if self.identity not in IDENTITIES:
            raise PreconditionError(
                f"unknown identity {self.identity!r}; choose from {', '.join(sorted(IDENTITIES))}"
            )
        if self.n_max < 0:
            raise PreconditionError(f"--n-max must be >= 0, got {self.n_max}")
        if not self.ms or any(m < 1 for m in self.ms):
            raise PreconditionError(f"--m values must be positive, got {self.ms}")
        if self.samples < 1:
            raise PreconditionError("need at least one sample per degree")
        self.rng = random.Random(self.seed)

    def pick(self, pool=DEFAULT_POOL, count: int = 1) -> tuple:
        return tuple(self.rng.choice(pool) for _ in range(count))

    def x_pool(self) -> tuple[Fraction, ...]:
        return self.xs if self.xs else DEFAULT_POOL

    def common_xs(self) -> tuple[Fraction, ...]:
        """x values for identities evaluated at x_1 = ... = x_m."""
        if self.xs:
            return self.xs
        return self.pick(count=3)


def _tuple_or_draw(spec: SweepSpec, given, m: int, pool=DEFAULT_POOL) -> tuple[tuple, bool]:
    """(values, fixed): the given tuple when it has length m, else a fresh draw."""
    if given is not None and len(given) == m:
        return tuple(given), True
    return spec.pick(pool, m), False


def _theorem1(spec: SweepSpec) -> Iterator[ids.VerificationReport]:
    rvs = spec.rvs or (Uniform01(),)
    xs = spec.xs or (Fraction(0),)
    for rv in rvs:
        for n in range(spec.n_max + 1):
            for x in xs:
                for route in ("stirling", "sums", "expansion"):
                    yield ids.theorem1_check(rv, n, x, route)


def _instances(spec: SweepSpec, m: int, *, need_w: bool, bernoulli: bool):
    """(slots, w, xs) triples for one (m, n): a single fixed instance or ``samples`` draws."""
    if bernoulli:
        slots, slots_fixed = (Uniform01(),) * m, True
    else:
        slots_fixed = spec.slots is not None and len(spec.slots) == m
    fixed_w = spec.weights is not None and len(spec.weights) == m
    fixed_x = spec.xs is not None and len(spec.xs) == m
    fixed = slots_fixed and (fixed_w or not need_w) and fixed_x
    for _ in range(1 if fixed else spec.samples):
        if not bernoulli:
            slots = _tuple_or_draw(spec, spec.slots, m, DEFAULT_SLOT_POOL)[0]
        w = _tuple_or_draw(spec, spec.weights, m)[0] if need_w else ()
        xs = spec.xs if fixed_x else spec.pick(spec.x_pool(), m)
        yield slots, w, xs


def _theorem4(spec: SweepSpec):
    for m in spec.ms:
        for n in range(spec.n_max + 1):
            for slots, w, xs in _instances(spec, m, need_w=True, bernoulli=False):
                yield ids.theorem4_check(w, slots, xs, n)


def _corollary42(spec: SweepSpec):
    for m in spec.ms:
        for n in range(spec.n_max + 1):
            for _slots, w, xs in _instances(spec, m, need_w=True, bernoulli=True):
                yield ids.corollary42_check(w, xs, n)


def _oracle_for(spec: SweepSpec, m: int) -> ids.MixedMomentOracle:
    if spec.oracle:
        return ids.parse_oracle(spec.oracle, m)
    if spec.alpha is not None:
        return ids.MixedMomentOracle.dirichlet(spec.alpha)
    if spec.weights is not None:
        return ids.MixedMomentOracle.deterministic(spec.weights)
    return ids.MixedMomentOracle.dirichlet((Fraction(1),) * m)


def _oracle_identity(check: Callable, bernoulli: bool):
    def run(spec: SweepSpec):
        ms = (len(spec.alpha),) if spec.alpha is not None and not spec.oracle else spec.ms
        for m in ms:
            oracle = _oracle_for(spec, m)
            if oracle.m != m:
                raise PreconditionError(f"oracle arity {oracle.m} does not match m={m}")
            for n in range(spec.n_max + 1):
                for slots, _w, xs in _instances(spec, m, need_w=False, bernoulli=bernoulli):
                    yield check(ids.ConvolutionProblem(n, slots, xs, oracle))
    return run


def _corollary43(spec: SweepSpec):
    if spec.alpha is None:
        raise PreconditionError("corollary43 needs --alpha")
    m = len(spec.alpha)
    for n in range(spec.n_max + 1):
        for x in spec.common_xs():
            yield ids.corollary43_check(spec.alpha, (x,) * m, n)


def _common_x_identity(check: Callable):
    def run(spec: SweepSpec):
        xs = spec.common_xs()
        for m in spec.ms:
            for n in range(spec.n_max + 1):
                for x in xs:
                    yield check(m, n, x)
    return run


def _lemma8(spec: SweepSpec):
    if spec.t is not None:
        vectors = [spec.t]
    else:
        vectors = [tuple(Fraction(v) for v in combo)
                   for m in spec.ms for combo in itertools.product(range(4), repeat=m)]
    for t in vectors:
        for n in range(spec.n_max + 1):
            yield ids.chu_vandermonde_check(t, n)


def _norlund(spec: SweepSpec):
    pool = spec.x_pool()
    pairs = [spec.pick(pool, 2) for _ in range(spec.samples)]
    for n in range(1, spec.n_max + 1):
        for x, y in pairs:
            yield ids.norlund_check(n, x, y)


IDENTITIES: dict[str, Callable[[SweepSpec], Iterator[ids.VerificationReport]]] = {
    "theorem1": _theorem1,
    "theorem4": _theorem4,
    "theorem5": _oracle_identity(ids.theorem5_check, bernoulli=False),
    "corollary41": _oracle_identity(ids.corollary41_check, bernoulli=True),
    "corollary42": _corollary42,
    "corollary43": _corollary43,
    "corollary45": _common_x_identity(lambda m, n, x: ids.corollary45_check(m, (x,) * m, n)),
    "corollary46": _common_x_identity(lambda m, n, x: ids.corollary46_check(m, (x,) * m, n)),
    "eq440": _common_x_identity(lambda m, n, x: ids.eq440_check(m, n, x)),
    "lemma8": _lemma8,
    "norlund": _norlund,
}


def run_sweep(spec: SweepSpec) -> Iterator[ids.VerificationReport]:
    """Reports for every instance of ``spec``, in deterministic order."""
    return IDENTITIES[spec.identity](spec)


def parse_slots(text: str) -> tuple[RandomVariable, ...]:
    return tuple(parse_rv(part) for part in text.split(",") if part.strip())
