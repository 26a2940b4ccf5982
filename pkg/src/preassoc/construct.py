"""Building variadic functions from their low-arity parts, and factoring them.

Associative ε-standard operations are fixed by ``F₁`` and ``F₂`` through the
left fold ``G_n = F₂ ∘ (G_{n-1}, id)``.  Preassociative functions whose unary
part has the same range as the whole function are fixed by ``F₀, F₁, F₂``
through ``G_n = F₂ ∘ (g ∘ G_{n-1}, id)`` for a quasi-inverse ``g`` of ``F₁``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .core import (
    EPS,
    BinaryMap,
    Carrier,
    CheckReport,
    Codomain,
    CodomainError,
    PreconditionError,
    TabulatedVariadic,
    UnaryMap,
    is_standard,
)
from .oracle import is_preassociative, is_unarily_quasi_range_idempotent
from .quasi_inverse import canonical_quasi_inverse, is_quasi_inverse


@dataclass(frozen=True)
class ExtensionConditionsReport:
    conditions: tuple
    chosen_g: UnaryMap | None = None

    @property
    def verdict(self) -> bool:
        return all(c.verdict for c in self.conditions)

    def __bool__(self):
        return self.verdict

    def __getitem__(self, name) -> CheckReport:
        for c in self.conditions:
            if c.property_name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list:
        return [c for c in self.conditions if not c.verdict]


class ExtensionError(PreconditionError):
    """No extension exists; ``report`` is the :class:`ExtensionConditionsReport`."""


class CollisionError(PreconditionError):
    """A unary map merges two values it must keep apart."""

    def __init__(self, message, pair):
        super().__init__(message, CheckReport.failed("injective_on_range", pair))
        self.pair = pair


def _check_operation_parts(F1: UnaryMap, F2: BinaryMap):
    sym = F2.carrier.symbols
    if F1.domain != sym or not set(F1.codomain) <= set(sym):
        raise CodomainError("F1 must map the carrier into itself")
    if F2.codomain.epsilon or set(F2.codomain.values) != set(sym):
        raise CodomainError("F2 must map pairs of carrier symbols to carrier symbols")


def _first(name, cases):
    for witness, ok in cases:
        if not ok:
            return CheckReport.failed(name, witness)
    return CheckReport.passed(name)


def _binary_conditions(sym, H1, H2):
    """Absorption of ``H1`` by ``H2`` on both sides, and associativity of ``H2``.

    ``H1``/``H2`` are plain callables that may return None where undefined.
    """
    pairs = list(itertools.product(sym, repeat=2))

    def absorbs(a, b):
        v = H2(a, b)
        if v is None:
            return False
        l, r = H1(a), H1(b)
        return l is not None and r is not None and H2(l, b) == v == H2(a, r)

    def assoc(a, b, c):
        ab, bc = H2(a, b), H2(b, c)
        if ab is None or bc is None:
            return False
        return H2(ab, c) == H2(a, bc) is not None

    return (
        _first("binary_absorbs_unary", (((a, b), absorbs(a, b)) for a, b in pairs)),
        _first("binary_associative",
               (((a, b, c), assoc(a, b, c)) for a, b, c in itertools.product(sym, repeat=3))),
    )


def check_associative_extension(F1: UnaryMap, F2: BinaryMap) -> ExtensionConditionsReport:
    """Conditions for an associative ε-standard operation with parts ``F1, F2``.

    (i) ``F1∘F1 = F1`` and ``F1∘F2 = F2``; (ii) ``F2`` absorbs ``F1`` in each
    argument; (iii) ``F2`` is associative.
    """
    _check_operation_parts(F1, F2)
    sym = F2.carrier.symbols
    cond_i = _first("unary_idempotent_and_absorbing", itertools.chain(
        (((a,), F1(F1(a)) == F1(a)) for a in sym),
        (((a, b), F1(F2(a, b)) == F2(a, b)) for a, b in itertools.product(sym, repeat=2)),
    ))
    cond_ii, cond_iii = _binary_conditions(sym, F1, F2)
    return ExtensionConditionsReport((cond_i, cond_ii, cond_iii))


def fold_table(carrier: Carrier, codomain: Codomain, horizon: int, F0, F1: UnaryMap,
               F2: BinaryMap, g: UnaryMap | None = None) -> TabulatedVariadic:
    """Tabulate ``G₀ = F0, G₁ = F1, G₂ = F2, G_n = F2(g(G_{n-1}(x₁⋯x_{n-1})), x_n)``.

    No conditions are checked; ``g = None`` means the values are already letters.
    """
    sym = carrier.symbols
    table = {(): F0}
    for i in range(carrier.n):
        table[(i,)] = F1(sym[i])
    for i, j in itertools.product(range(carrier.n), repeat=2):
        table[(i, j)] = F2.at(i, j)
    for k in range(3, horizon + 1):
        for w in itertools.product(range(carrier.n), repeat=k):
            v = table[w[:-1]]
            table[w] = F2(g(v) if g is not None else v, sym[w[-1]])
    return TabulatedVariadic(carrier, codomain, horizon, table)


def expanded_value(F2: BinaryMap, symbols, g: UnaryMap | None = None):
    """``F2(H2(⋯H2(H2(x₁x₂)x₃)⋯)x_n)`` with ``H2 = g∘F2``, for ``n >= 2``.

    Independent of any tabulation; used to cross-check the recursive fold.
    """
    symbols = tuple(symbols)
    if len(symbols) < 2:
        raise ValueError("expansion needs at least two letters")
    h2 = F2 if g is None else (lambda a, b: g(F2(a, b)))
    inner = functools.reduce(h2, symbols[1:-1], symbols[0])
    return F2(inner, symbols[-1])


def extend_associative(F1: UnaryMap, F2: BinaryMap, horizon: int) -> TabulatedVariadic:
    """The unique associative ε-standard operation with ``G₁ = F1``, ``G₂ = F2``."""
    rep = check_associative_extension(F1, F2)
    if not rep:
        raise ExtensionError("no associative extension: " +
                             ", ".join(c.property_name for c in rep.failures()), rep)
    X = F2.carrier
    return fold_table(X, Codomain.operations(X), horizon, EPS, F1, F2)


def _require_quasi_inverse(F1: UnaryMap, g: UnaryMap):
    try:
        rep = is_quasi_inverse(F1, g)
    except CodomainError as exc:
        raise PreconditionError(f"g is not a quasi-inverse of F1: {exc}") from None
    if not rep:
        raise PreconditionError("g is not a quasi-inverse of F1", rep)


def check_preassociative_extension(F1: UnaryMap, F2: BinaryMap,
                                   g: UnaryMap | None = None) -> ExtensionConditionsReport:
    """Conditions for a preassociative, unarily quasi-range-idempotent extension.

    ``ran(F2) ⊆ ran(F1)``, then on ``H1 = g∘F1`` and ``H2 = g∘F2``: absorption
    of ``H1`` by ``H2`` and associativity of ``H2``.  ``g`` defaults to the
    canonical quasi-inverse of ``F1``.
    """
    sym = F2.carrier.symbols
    if F1.domain != sym:
        raise CodomainError("F1 and F2 must share the carrier")
    if g is None:
        g = canonical_quasi_inverse(F1)
    _require_quasi_inverse(F1, g)
    r1 = F1.range()
    inclusion = _first("range_inclusion",
                       (((a, b), F2(a, b) in r1) for a, b in itertools.product(sym, repeat=2)))

    def lift(v):
        return g(v) if v is not None and g.defined_at(v) else None

    cond_i, cond_ii = _binary_conditions(sym, lambda a: lift(F1(a)), lambda a, b: lift(F2(a, b)))
    return ExtensionConditionsReport((inclusion, cond_i, cond_ii), chosen_g=g)


def extend_preassociative(F0, F1: UnaryMap, F2: BinaryMap, g: UnaryMap | None,
                          horizon: int) -> TabulatedVariadic:
    """The unique standard, preassociative, quasi-range-idempotent extension.

    Values live in ``F2.codomain``; ``F0`` must lie there and differ from
    every value on nonempty words.
    """
    rep = check_preassociative_extension(F1, F2, g)
    if not rep:
        raise ExtensionError("no preassociative extension: " +
                             ", ".join(c.property_name for c in rep.failures()), rep)
    cod = F2.codomain
    if F0 not in cod:
        raise CodomainError(f"F0 = {F0!r} is outside the codomain")
    if not set(F1.table) <= set(cod.atoms):
        raise CodomainError("F1 takes values outside the codomain of F2")
    G = fold_table(F2.carrier, cod, horizon, F0, F1, F2, rep.chosen_g)
    std = is_standard(G)
    if not std:
        raise PreconditionError(f"F0 = {F0!r} is also the value of a nonempty word", std)
    return G


@dataclass(frozen=True)
class Factorization:
    """``F♭ = f ∘ H♭`` with ``H`` associative and ``f`` one-to-one on ``ran(H♭)``."""

    H: TabulatedVariadic
    f: UnaryMap
    g: UnaryMap


def _require(report: CheckReport, what: str):
    if not report:
        raise PreconditionError(f"{what}: {report.property_name} fails", report)


def build_range_idempotent_inner(F: TabulatedVariadic, g: UnaryMap | None = None) -> TabulatedVariadic:
    """The ε-standard operation ``H`` with ``H♭ = g ∘ F♭``.

    Needs ``ran(F₁) = ran(F♭)`` and ``g ∈ Q(F₁)`` (canonical by default).
    """
    _require(is_unarily_quasi_range_idempotent(F), "inner operation")
    F1 = F.unary()
    if g is None:
        g = canonical_quasi_inverse(F1)
    _require_quasi_inverse(F1, g)
    X = F.carrier
    return TabulatedVariadic.from_function(
        X, Codomain.operations(X), F.horizon,
        lambda w: EPS if not w else g(F.table[w]))


def factorize(F: TabulatedVariadic, g: UnaryMap | None = None) -> Factorization:
    """Split a standard, preassociative, quasi-range-idempotent ``F`` as ``f ∘ H``."""
    _require(is_standard(F), "factorize")
    _require(is_preassociative(F), "factorize")
    _require(is_unarily_quasi_range_idempotent(F), "factorize")
    F1 = F.unary()
    if g is None:
        g = canonical_quasi_inverse(F1)
    H = build_range_idempotent_inner(F, g)
    ran_h = H.flat_range()
    dom = tuple(s for s in F.carrier.symbols if s in ran_h)
    f = UnaryMap(dom, F.codomain.atoms, tuple(F1(s) for s in dom))
    return Factorization(H, f, g)


def _extend_codomain(cod: Codomain, a) -> Codomain:
    if a in cod:
        return cod
    if a is EPS:
        return Codomain(cod.values, True)
    return Codomain(cod.values + (a,), cod.epsilon)


def _require_standard_preassociative(F, what):
    _require(is_standard(F), what)
    _require(is_preassociative(F), what)


def compose_right(F: TabulatedVariadic, g: UnaryMap, a, carrier: Carrier | None = None) -> TabulatedVariadic:
    """``H_n = F_n ∘ (g, …, g)`` over the domain of ``g``, with ``H(ε) = a``."""
    _require_standard_preassociative(F, "compose_right")
    if a in F.flat_range():
        raise PreconditionError(f"a = {a!r} is already a value of F on a nonempty word")
    carrier = Carrier(g.domain) if carrier is None else carrier
    if carrier.symbols != g.domain:
        raise CodomainError("g must be defined on the new carrier, in carrier order")
    lift = tuple(F.carrier.index(g(s)) for s in carrier.symbols)
    return TabulatedVariadic.from_function(
        carrier, _extend_codomain(F.codomain, a), F.horizon,
        lambda w: a if not w else F.table[tuple(lift[i] for i in w)])


def compose_left(F: TabulatedVariadic, g: UnaryMap, a) -> TabulatedVariadic:
    """``H♭ = g ∘ F♭`` with ``H(ε) = a``; ``g`` must be one-to-one on ``ran(F♭)``.

    A collision raises :class:`CollisionError` with the two merged values.
    """
    _require_standard_preassociative(F, "compose_left")
    ran = [v for v in F.codomain.atoms if v in F.flat_range()]
    seen = {}
    for v in ran:
        if not g.defined_at(v):
            raise CodomainError(f"g is undefined at {v!r}")
        u = g(v)
        if u in seen:
            raise CollisionError(f"g merges {seen[u]!r} and {v!r}", (seen[u], v))
        seen[u] = v
    if a in seen:
        raise PreconditionError(f"a = {a!r} is already a value of g ∘ F♭")
    base = Codomain(tuple(v for v in g.codomain if v is not EPS), EPS in g.codomain)
    return TabulatedVariadic.from_function(
        F.carrier, _extend_codomain(base, a), F.horizon,
        lambda w: a if not w else g(F.table[w]))
