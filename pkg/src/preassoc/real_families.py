"""Rule-defined variadic functions over floats, checked by seeded sampling.

Sampled inputs lie on the grid ``k/1024`` inside ``[-10, 10]`` and sums use
``math.fsum``, so permuting a word or moving mass between two of its entries
leaves the sum bit-for-bit unchanged.  Comparisons use ``tol`` as an
absolute bound for values of magnitude up to 1e3 and as a relative bound
above that (``expsum`` reaches about 1e39).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Any, Callable

from .core import EPS, CheckReport, PreassocError

GRID = 1024
SPAN = 10.0
MAX_PART = 3


class UnsupportedFamily(PreassocError):
    pass


@dataclass(frozen=True)
class RealFamily:
    name: str
    rule: Callable[[tuple], float]
    params: dict = field(default_factory=dict)
    empty_value: Any = EPS
    pair_generator: Callable[[random.Random], tuple] | None = None

    @property
    def eps_standard(self) -> bool:
        return self.empty_value is EPS

    def __call__(self, *xs):
        return evaluate(self, xs)


def evaluate(family: RealFamily, word):
    word = tuple(float(x) for x in word)
    for x in word:
        if not math.isfinite(x):
            raise PreassocError(f"non-finite input {x!r}")
    if not word:
        return family.empty_value
    return family.rule(word)


def close(a, b, tol: float) -> bool:
    if a is EPS or b is EPS:
        return a is b
    scale = max(abs(a), abs(b))
    return abs(a - b) <= tol * (1.0 if scale <= 1e3 else scale)


# -- sampling ------------------------------------------------------------------

def as_rng(rng) -> random.Random:
    return rng if isinstance(rng, random.Random) else random.Random(rng)


def sample_value(rng: random.Random) -> float:
    return rng.randint(-int(SPAN * GRID), int(SPAN * GRID)) / GRID


def sample_word(rng: random.Random, min_len=0, max_len=MAX_PART) -> tuple:
    return tuple(sample_value(rng) for _ in range(rng.randint(min_len, max_len)))


def _permute(rng, y):
    y = list(y)
    rng.shuffle(y)
    return tuple(y)


def _transfer(rng, y):
    """Move a grid amount of mass from one entry to another."""
    y = list(y)
    if len(y) < 2:
        return tuple(y)
    i, j = rng.sample(range(len(y)), 2)
    d = sample_value(rng)
    y[i] += d
    y[j] -= d
    return tuple(y)


def sum_preserving_pair(rng: random.Random) -> tuple:
    y = sample_word(rng, 1)
    y2 = _permute(rng, y) if rng.random() < 0.5 else _transfer(rng, y)
    return y, y2


def _flip_signs(rng, y):
    return tuple(-v if rng.random() < 0.5 else v for v in y)


def abs_preserving_pair(rng: random.Random) -> tuple:
    y = sample_word(rng, 1)
    return y, _flip_signs(rng, _permute(rng, y))


def same_length_pair(rng: random.Random) -> tuple:
    y = sample_word(rng, 1)
    return y, tuple(sample_value(rng) for _ in y)


def nonpositive_pair(rng: random.Random) -> tuple:
    """Two words with nonpositive sums, hence both valued 0 under relu∘sum."""
    def word():
        w = [-abs(v) for v in sample_word(rng, 1)]
        return tuple(w)
    return word(), word()


def negated_pair(rng: random.Random) -> tuple:
    y = sample_word(rng, 1)
    return y, tuple(-v for v in y)


def expseq_pair(rng: random.Random) -> tuple:
    """Arity-2 words ``(½log a, ½log b)``, ``(½log a', ½log b')`` with ``a+b = a'+b'``."""
    total = rng.uniform(2.0, 20.0)
    a, a2 = rng.uniform(0.5, total - 0.5), rng.uniform(0.5, total - 0.5)
    half = lambda t: 0.5 * math.log(t)
    return (half(a), half(total - a)), (half(a2), half(total - a2))


# -- families ------------------------------------------------------------------

def _pnorm_rule(p):
    return lambda w: math.fsum(abs(x) ** p for x in w) ** (1.0 / p)


def _expseq_rule(w):
    n = len(w)
    return math.fsum(math.exp(n * x) for x in w)


def make_family(name: str, **params) -> RealFamily:
    """Build a registered family: ``sum``, ``pnorm`` (p), ``expsum``,
    ``scaled_sum`` (c), ``sqdist``, ``length``, ``relu_sum``, ``abs_sum``,
    ``expseq``."""
    if name == "sum":
        return RealFamily(name, math.fsum, {}, EPS, sum_preserving_pair)
    if name == "pnorm":
        p = float(params.get("p", 2.0))
        if not p >= 1:
            raise PreassocError(f"p-norm needs p >= 1, got {p}")
        return RealFamily(name, _pnorm_rule(p), {"p": p}, EPS, abs_preserving_pair)
    if name == "expsum":
        return RealFamily(name, lambda w: math.exp(math.fsum(w)), {}, EPS, sum_preserving_pair)
    if name == "scaled_sum":
        c = float(params.get("c", 2.0))
        return RealFamily(name, lambda w: c * math.fsum(w), {"c": c}, EPS, sum_preserving_pair)
    if name == "sqdist":
        return RealFamily(name, lambda w: math.fsum(x * x for x in w), {}, EPS, abs_preserving_pair)
    if name == "length":
        return RealFamily(name, lambda w: float(len(w)), {}, 0.0, same_length_pair)
    if name == "relu_sum":
        return RealFamily(name, lambda w: max(math.fsum(w), 0.0), {}, EPS, nonpositive_pair)
    if name == "abs_sum":
        return RealFamily(name, lambda w: abs(math.fsum(w)), {}, EPS, negated_pair)
    if name == "expseq":
        return RealFamily(name, _expseq_rule, {}, EPS, expseq_pair)
    raise UnsupportedFamily(f"unknown family {name!r}")


FAMILY_NAMES = ("sum", "pnorm", "expsum", "scaled_sum", "sqdist", "length",
                "relu_sum", "abs_sum", "expseq")


def with_unary_identity(family: RealFamily) -> RealFamily:
    """Same family with its unary part replaced by the identity."""
    rule = family.rule
    return replace(family, name=family.name + "_id1",
                   rule=lambda w: w[0] if len(w) == 1 else rule(w))


# -- sampled checks ------------------------------------------------------------

def check_associativity_identity(family: RealFamily, rng, count=1000, tol=1e-9) -> CheckReport:
    """Sample ``count`` decompositions and compare ``F(xyz)`` with ``F(x F(y) z)``."""
    if not family.eps_standard:
        raise PreassocError(f"{family.name} is not an ε-standard operation")
    rng = as_rng(rng)
    name = f"associative[{family.name}]"
    for _ in range(count):
        x, y, z = sample_word(rng), sample_word(rng), sample_word(rng)
        v = evaluate(family, y)
        mid = () if v is EPS else (v,)
        if not close(evaluate(family, x + y + z), evaluate(family, x + mid + z), tol):
            return CheckReport.failed(name, (x, y, z))
    return CheckReport.passed(name)


def check_preassociativity_instance(family: RealFamily, x, y, y2, z, tol=1e-9) -> CheckReport:
    """One instance of ``F(y) = F(y') ⇒ F(xyz) = F(xy'z)``."""
    x, y, y2, z = (tuple(float(v) for v in w) for w in (x, y, y2, z))
    if not close(evaluate(family, y), evaluate(family, y2), tol):
        raise PreassocError("premise fails: F(y) != F(y')")
    if close(evaluate(family, x + y + z), evaluate(family, x + y2 + z), tol):
        return CheckReport.passed(f"preassociative[{family.name}]")
    return CheckReport.failed(f"preassociative[{family.name}]", (x, y, y2, z))


def check_preassociativity_witnessed(family: RealFamily, rng, count=1000, tol=1e-9) -> CheckReport:
    """Equal-value pairs from the family's generator, in random contexts."""
    if family.pair_generator is None:
        raise UnsupportedFamily(f"{family.name} has no equal-value pair generator")
    rng = as_rng(rng)
    name = f"preassociative[{family.name}]"
    for _ in range(count):
        y, y2 = family.pair_generator(rng)
        if not close(evaluate(family, y), evaluate(family, y2), tol):
            raise AssertionError(f"pair generator for {family.name} produced unequal values")
        x, z = sample_word(rng), sample_word(rng)
        if not close(evaluate(family, x + y + z), evaluate(family, x + y2 + z), tol):
            return CheckReport.failed(name, (x, y, y2, z))
    return CheckReport.passed(name)


def small_integer_probes(limit=10):
    """0, -1, 1, -2, 2, ... up to ``±limit``."""
    yield 0.0
    for k in range(1, limit + 1):
        yield float(-k)
        yield float(k)


def check_unary_idempotence(family: RealFamily, probes=None, tol=1e-9) -> CheckReport:
    """``F₁(x) = x`` at each probe point; witness the first failing ``(x,)``."""
    name = f"unarily_idempotent[{family.name}]"
    for x in (small_integer_probes() if probes is None else probes):
        if not close(evaluate(family, (x,)), float(x), tol):
            return CheckReport.failed(name, (float(x),))
    return CheckReport.passed(name)


def check_unary_range_idempotence(family: RealFamily, rng, count=1000, tol=1e-9) -> CheckReport:
    """Sampled ``F₁(F(w)) = F(w)`` over nonempty words."""
    rng = as_rng(rng)
    name = f"unarily_range_idempotent[{family.name}]"
    for _ in range(count):
        w = sample_word(rng, 1)
        v = evaluate(family, w)
        if not close(evaluate(family, (v,)), v, tol):
            return CheckReport.failed(name, (w,))
    return CheckReport.passed(name)


# -- the arity-indexed exponential counterexample ------------------------------

@dataclass(frozen=True)
class ExpSeqDemo:
    x: tuple
    x_prime: tuple
    h2: float
    h2_prime: float
    h3: float
    h3_prime: float

    @property
    def ok(self) -> bool:
        return abs(self.h2 - self.h2_prime) <= 1e-9 and abs(self.h3 - self.h3_prime) > 0.9


def expseq_counterexample() -> ExpSeqDemo:
    """Sum composed with ``exp(n·x)`` at arity ``n``: equal at arity 2, unequal at 3."""
    H = make_family("expseq")
    x = (math.log(1), math.log(2))
    x_prime = (0.5 * math.log(3), 0.5 * math.log(2))
    x3 = (0.0,)
    return ExpSeqDemo(x, x_prime,
                      evaluate(H, x), evaluate(H, x_prime),
                      evaluate(H, x + x3), evaluate(H, x_prime + x3))


# -- factorization -------------------------------------------------------------

@dataclass(frozen=True)
class RealFactorization:
    inner: RealFamily
    outer: Callable[[float], float]
    outer_name: str
    report: CheckReport


def _factor_table(family):
    p = family.params
    return {
        "sum": (lambda: make_family("sum"), lambda t: t, "identity"),
        "expsum": (lambda: make_family("sum"), math.exp, "exp"),
        "scaled_sum": (lambda: make_family("sum"), lambda t: p["c"] * t, f"t -> {p.get('c')}*t"),
        "sqdist": (lambda: make_family("pnorm", p=2), lambda t: t * t, "t -> t^2"),
        "pnorm": (lambda: make_family("pnorm", p=p.get("p", 2.0)), lambda t: t, "identity"),
    }


_NOT_FACTORABLE = {
    "relu_sum": "not preassociative",
    "abs_sum": "not preassociative",
    "expseq": "not preassociative",
    "length": "unary part does not reach the whole range",
}


def factorize_family(family: RealFamily, rng=0, count=1000, tol=1e-9) -> RealFactorization:
    """Registered ``F♭ = f ∘ H♭`` split, verified on ``count`` sampled words."""
    table = _factor_table(family)
    if family.name not in table:
        reason = _NOT_FACTORABLE.get(family.name, "not registered as factorable")
        raise UnsupportedFamily(f"{family.name}: {reason}")
    make_inner, outer, outer_name = table[family.name]
    inner = make_inner()
    rng = as_rng(rng)
    name = f"factorization[{family.name}]"
    report = CheckReport.passed(name)
    for _ in range(count):
        w = sample_word(rng, 1)
        if not close(outer(evaluate(inner, w)), evaluate(family, w), tol):
            report = CheckReport.failed(name, (w,))
            break
    return RealFactorization(inner, outer, outer_name, report)
