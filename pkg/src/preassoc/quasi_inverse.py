"""Quasi-inverses of finite maps.

``g`` is a quasi-inverse of ``f`` when ``f∘g`` is the identity on ``ran(f)``
and ``g`` takes no value outside ``g(ran(f))``.  Members of ``Q(f)`` are maps
from ``f.codomain`` back into ``f.domain``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import CheckReport, CodomainError, PreconditionError, UnaryMap


class RangeInclusionError(PreconditionError):
    """``ran(f) ⊄ ran(g)``; ``witness`` is the offending value of ``f``."""

    def __init__(self, message, witness):
        super().__init__(message, CheckReport.failed("range_inclusion", (witness,)))
        self.witness = witness


def is_quasi_inverse(f: UnaryMap, g: UnaryMap) -> CheckReport:
    """Check ``g ∈ Q(f)``.

    Witness ``(v,)`` for a value of ``ran(f)`` with ``f(g(v)) != v``, or
    ``(u,)`` for an element whose image under ``g`` misses ``g(ran(f))``.
    """
    rf = f.ordered_range()
    for v in rf:
        if not g.defined_at(v):
            raise CodomainError(f"ran(f) ⊄ dom(g): g is undefined at {v!r}")
    for u in g.table:
        if not f.defined_at(u):
            raise CodomainError(f"ran(g) ⊄ dom(f): f is undefined at {u!r}")
    for v in rf:
        if f(g(v)) != v:
            return CheckReport.failed("quasi_inverse", (v,))
    hit = {g(v) for v in rf}
    for u in g.domain:
        if g(u) not in hit:
            return CheckReport.failed("quasi_inverse", (u,))
    return CheckReport.passed("quasi_inverse")


def _preimages(f: UnaryMap):
    pre = {}
    for i, (x, v) in enumerate(zip(f.domain, f.table)):
        pre.setdefault(v, []).append(i)
    return pre


def iter_quasi_inverses(f: UnaryMap) -> Iterator[UnaryMap]:
    """Stream ``Q(f)`` in lexicographic order of tables (by domain index of ``f``).

    Values on ``ran(f)`` range over sections of ``f``; the remaining points
    range over the values already taken on ``ran(f)``.
    """
    pre = _preimages(f)
    cod = f.codomain
    yield from _backtrack(f, pre, cod, 0, [], {})


def _backtrack(f, pre, cod, pos, chosen, taken):
    # taken: multiset of values already assigned on ran(f)
    if pos == len(cod):
        hit = {chosen[k] for k, v in enumerate(cod) if v in pre}
        if all(c in hit for c in chosen):
            yield UnaryMap(cod, f.domain, tuple(f.domain[i] for i in chosen))
        return
    v = cod[pos]
    if v in pre:
        options = pre[v]
    else:
        # must land in g(ran f); points of ran f later in the order are still open
        later = {i for u in cod[pos + 1:] if u in pre for i in pre[u]}
        options = sorted(set(taken) | later)
    for i in options:
        chosen.append(i)
        if v in pre:
            taken[i] = taken.get(i, 0) + 1
        yield from _backtrack(f, pre, cod, pos + 1, chosen, taken)
        if v in pre:
            taken[i] -= 1
            if not taken[i]:
                del taken[i]
        chosen.pop()


@dataclass(frozen=True)
class QuasiInverseSet:
    base: UnaryMap
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g):
        return g in self.members


def enumerate_quasi_inverses(f: UnaryMap) -> QuasiInverseSet:
    return QuasiInverseSet(f, tuple(iter_quasi_inverses(f)))


def canonical_quasi_inverse(f: UnaryMap) -> UnaryMap:
    """The lexicographically least member of ``Q(f)``, built directly."""
    pre = _preimages(f)
    low = min(min(ix) for ix in pre.values())
    idx = tuple(pre[v][0] if v in pre else low for v in f.codomain)
    return UnaryMap(f.codomain, f.domain, tuple(f.domain[i] for i in idx))


def solve_right_factor(f, g: UnaryMap, e: UnaryMap | None = None):
    """Find ``h`` with ``f = g ∘ h``.

    ``f`` is a :class:`UnaryMap` or a mapping (e.g. one arity slice of a
    table).  Built as ``h = e ∘ f`` for ``e ∈ Q(g)``, the canonical member by
    default.  Raises :class:`RangeInclusionError` when ``ran(f) ⊄ ran(g)``.
    """
    items = list(zip(f.domain, f.table)) if isinstance(f, UnaryMap) else list(f.items())
    rg = g.range()
    for _, v in items:
        if v not in rg:
            raise RangeInclusionError(f"{v!r} is in ran(f) but not in ran(g)", v)
    if e is None:
        e = canonical_quasi_inverse(g)
    else:
        rep = is_quasi_inverse(g, e)
        if not rep:
            raise PreconditionError("e is not a quasi-inverse of g", rep)
    if isinstance(f, UnaryMap):
        return UnaryMap(f.domain, g.domain, tuple(e(v) for v in f.table))
    return {k: e(v) for k, v in items}


def all_maps(domain, codomain) -> Iterator[UnaryMap]:
    """Every map ``domain → codomain``; the brute-force search space."""
    domain, codomain = tuple(domain), tuple(codomain)
    for values in itertools.product(codomain, repeat=len(domain)):
        yield UnaryMap(domain, codomain, values)


def quasi_inverses_by_filter(f: UnaryMap) -> list:
    """``Q(f)`` by filtering every map ``f.codomain → f.domain``."""
    return [g for g in all_maps(f.codomain, f.domain) if is_quasi_inverse(f, g)]
