"""Small named tables used by the tests, demos and scripts."""

from __future__ import annotations

import random

from .core import EPS, Carrier, Codomain, TabulatedVariadic


def digits(n: int) -> Carrier:
    """Carrier ``{"0", ..., str(n-1)}``."""
    return Carrier(tuple(str(i) for i in range(n)))


def length_table(carrier: Carrier, horizon: int) -> TabulatedVariadic:
    """``F(x) = |x|`` into ``{0, ..., horizon}``."""
    cod = Codomain(tuple(range(horizon + 1)))
    return TabulatedVariadic.from_function(carrier, cod, horizon, len)


def mod_sum(m: int, horizon: int, empty=EPS) -> TabulatedVariadic:
    """Sum mod ``m`` on carrier ``digits(m)``; ``empty`` is the value at ε."""
    X = digits(m)
    cod = Codomain.operations(X)
    return TabulatedVariadic.from_function(
        X, cod, horizon, lambda w: empty if not w else str(sum(w) % m))


def max_table(n: int, horizon: int) -> TabulatedVariadic:
    X = digits(n)
    return TabulatedVariadic.from_function(
        X, Codomain.operations(X), horizon, lambda w: EPS if not w else str(max(w)))


def permuted(F: TabulatedVariadic, sigma: dict) -> TabulatedVariadic:
    """``σ ∘ F♭`` with ε kept at the empty word; ``sigma`` maps codomain values."""
    return TabulatedVariadic.from_function(
        F.carrier, F.codomain, F.horizon,
        lambda w: F.table[w] if not w else sigma[F.table[w]])


def projection_mix(n: int, horizon: int) -> TabulatedVariadic:
    """First projection at arity 2, last projection at arities >= 3, ``F₁ = id``."""
    X = digits(n)

    def rule(w):
        if not w:
            return EPS
        if len(w) == 2:
            return X.symbols[w[0]]
        return X.symbols[w[-1]]

    return TabulatedVariadic.from_function(X, Codomain.operations(X), horizon, rule)


def first_projection(n: int, horizon: int) -> TabulatedVariadic:
    """``F_k(x₁⋯x_k) = x₁``; associative and asymmetric."""
    X = digits(n)
    return TabulatedVariadic.from_function(
        X, Codomain.operations(X), horizon, lambda w: EPS if not w else X.symbols[w[0]])


def arity_constants(carrier: Carrier, horizon: int, c="c", c2="d", empty="e") -> TabulatedVariadic:
    """``F₁ = c``, ``F_n = c'`` for ``n >= 2``, distinct value at ε."""
    cod = Codomain((c, c2, empty))
    return TabulatedVariadic.from_function(
        carrier, cod, horizon, lambda w: empty if not w else (c if len(w) == 1 else c2))


def random_table(rng: random.Random, n: int, horizon: int, *, eps_standard=False,
                 eps_weight=0.0) -> TabulatedVariadic:
    """Uniformly random operation table on ``digits(n)``.

    With ``eps_standard`` the empty word maps to ε and nothing else does;
    otherwise every entry is ε with probability ``eps_weight``.
    """
    X = digits(n)
    sym = X.symbols

    def rule(w):
        if eps_standard:
            return EPS if not w else rng.choice(sym)
        if rng.random() < eps_weight:
            return EPS
        return rng.choice(sym)

    return TabulatedVariadic.from_function(X, Codomain.operations(X), horizon, rule)


def random_permutation(rng: random.Random, atoms) -> dict:
    atoms = list(atoms)
    shuffled = atoms[:]
    rng.shuffle(shuffled)
    return dict(zip(atoms, shuffled))
