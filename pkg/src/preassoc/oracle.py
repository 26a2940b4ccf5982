"""Exhaustive decision procedures, all relative to the table's horizon.

Every check returns a :class:`CheckReport`.  On failure the witness is the
first violation in canonical word order, with ties broken by the order in
which the property quantifies its variables.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .core import (
    CheckReport,
    EPS,
    HorizonError,
    PreconditionError,
    TabulatedVariadic,
    enumerate_words,
    require_operation,
)


def _splits(w):
    m = len(w)
    for i in range(m + 1):
        for j in range(i, m + 1):
            yield w[:i], w[i:j], w[j:]


def _assoc(F: TabulatedVariadic, name: str, short: bool) -> CheckReport:
    require_operation(F, name)
    L, table = F.horizon, F.table
    for w in F.words():
        fw = table[w]
        for x, y, z in _splits(w):
            if short and len(x) + len(z) > 1:
                continue
            u = x + F.value_word(table[y]) + z
            if len(u) <= L and table[u] != fw:
                return CheckReport.failed(name, (x, y, z), L)
    return CheckReport.passed(name, L)


def is_associative(F: TabulatedVariadic) -> CheckReport:
    """``F(xyz) = F(x F(y) z)`` for every in-horizon decomposition.

    When ``F(y) = ε`` the substituted string is ``xz``.  Witness ``(x, y, z)``.
    """
    return _assoc(F, "associative", short=False)


def is_associative_short(F: TabulatedVariadic) -> CheckReport:
    """Associativity restricted to decompositions with ``|xz| <= 1``."""
    return _assoc(F, "associative_short", short=True)


@dataclass(frozen=True)
class KernelPartition:
    """Words up to the horizon grouped by equal value.

    Blocks are numbered by their least word in canonical order.
    """

    classes: tuple
    class_of: dict
    values: tuple
    n: int
    horizon: int

    def __len__(self):
        return len(self.classes)

    def first_violation(self):
        """First ``(x, y, y', z)`` with ``|xz| = 1`` breaking congruence, or None."""
        L, cls = self.horizon, self.class_of
        letters = [(a,) for a in range(self.n)]
        members = [tuple(y for y in block if len(y) < L) for block in self.classes]
        for x in [()] + letters:
            best = None
            for z in (letters if x == () else [()]):
                for block in members:
                    if len(block) < 2:
                        continue
                    # the block's least word is the least y that can fail
                    y = block[0]
                    target = cls[x + y + z]
                    for y2 in block[1:]:
                        if cls[x + y2 + z] != target:
                            key = (_canon(y), _canon(y2), _canon(z))
                            if best is None or key < best[0]:
                                best = (key, y, y2, z)
                            break
            if best is not None:
                return (x, best[1], best[2], best[3])
        return None

    def is_congruence(self) -> bool:
        return self.first_violation() is None


def _canon(w):
    return (len(w), w)


def kernel_partition(F: TabulatedVariadic) -> KernelPartition:
    blocks = {}
    order = []
    for w in F.words():
        v = F.table[w]
        if v not in blocks:
            blocks[v] = []
            order.append(v)
        blocks[v].append(w)
    classes = tuple(tuple(blocks[v]) for v in order)
    class_of = {w: k for k, block in enumerate(classes) for w in block}
    return KernelPartition(classes, class_of, tuple(order), F.carrier.n, F.horizon)


def is_preassociative(F: TabulatedVariadic) -> CheckReport:
    """Preassociativity via single-letter closure of the kernel partition.

    Chains of one-letter extensions reach every context while staying inside
    the horizon, so this agrees with the full definition up to the horizon.
    Witness ``(x, y, y', z)`` with ``|xz| = 1``.
    """
    bad = kernel_partition(F).first_violation()
    if bad is None:
        return CheckReport.passed("preassociative", F.horizon)
    return CheckReport.failed("preassociative", bad, F.horizon)


def _buckets(F):
    by_value = defaultdict(list)
    for w in F.words():
        by_value[F.table[w]].append(w)
    return by_value


def is_preassociative_brute(F: TabulatedVariadic) -> CheckReport:
    """Definitional check over all contexts ``x, z``; witness ``(x, y, y', z)``."""
    L, t = F.horizon, F.table
    same = _buckets(F)
    words = list(F.words())
    for x in words:
        for y in words:
            if len(x) + len(y) > L:
                break
            for y2 in same[t[y]]:
                if y2 == y or len(x) + len(y2) > L:
                    continue
                room = L - len(x) - max(len(y), len(y2))
                for z in enumerate_words(F.carrier, 0, room):
                    if t[x + y + z] != t[x + y2 + z]:
                        return CheckReport.failed("preassociative_brute", (x, y, y2, z), L)
    return CheckReport.passed("preassociative_brute", L)


def is_preassociative_pairwise(F: TabulatedVariadic) -> CheckReport:
    """``F(x)=F(x') ∧ F(y)=F(y') ⇒ F(xy)=F(x'y')``; witness ``(x, x', y, y')``."""
    L, t = F.horizon, F.table
    same = _buckets(F)
    words = list(F.words())
    for x in words:
        for x2 in same[t[x]]:
            for y in words:
                if len(x) + len(y) > L:
                    break
                for y2 in same[t[y]]:
                    if len(x2) + len(y2) > L:
                        continue
                    if t[x + y] != t[x2 + y2]:
                        return CheckReport.failed("preassociative_pairwise", (x, x2, y, y2), L)
    return CheckReport.passed("preassociative_pairwise", L)


def is_strongly_preassociative(F: TabulatedVariadic) -> CheckReport:
    """``F(xz)=F(x'z') ⇒ F(xyz)=F(x'yz')`` with ``|y| = 1``.

    Witness ``(x, x', y, z, z')``.  Needs a horizon of at least 3.
    """
    L, t = F.horizon, F.table
    if L < 3:
        raise HorizonError("strong preassociativity needs horizon >= 3")
    words = list(F.words(0, L - 1))
    # suffix buckets: for each x', value -> z' (canonical) with |x'z'| <= L-1
    tails = {}
    for x2 in words:
        b = defaultdict(list)
        for z2 in enumerate_words(F.carrier, 0, L - 1 - len(x2)):
            b[t[x2 + z2]].append(z2)
        tails[x2] = b
    letters = [(a,) for a in range(F.carrier.n)]
    for x in words:
        for x2 in words:
            for y in letters:
                for z in enumerate_words(F.carrier, 0, L - 1 - len(x)):
                    v = t[x + y + z]
                    for z2 in tails[x2][t[x + z]]:
                        if t[x2 + y + z2] != v:
                            return CheckReport.failed("strongly_preassociative",
                                                      (x, x2, y, z, z2), L)
    return CheckReport.passed("strongly_preassociative", L)


def is_symmetric(F: TabulatedVariadic) -> CheckReport:
    """Invariance of each arity part under adjacent transpositions; witness ``(w, w')``."""
    t = F.table
    for w in F.words(2):
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                continue
            s = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
            if t[s] != t[w]:
                return CheckReport.failed("symmetric", (w, s), F.horizon)
    return CheckReport.passed("symmetric", F.horizon)


def is_idempotent(F: TabulatedVariadic) -> CheckReport:
    require_operation(F, "idempotence")
    sym = F.carrier.symbols
    for k in range(1, F.horizon + 1):
        for a in range(F.carrier.n):
            w = (a,) * k
            if F.table[w] != sym[a]:
                return CheckReport.failed("idempotent", (w,), F.horizon)
    return CheckReport.passed("idempotent", F.horizon)


def is_unarily_idempotent(F: TabulatedVariadic) -> CheckReport:
    require_operation(F, "unary idempotence")
    sym = F.carrier.symbols
    for a in range(F.carrier.n):
        if F.table[(a,)] != sym[a]:
            return CheckReport.failed("unarily_idempotent", ((a,),), F.horizon)
    return CheckReport.passed("unarily_idempotent", F.horizon)


def is_unarily_range_idempotent(F: TabulatedVariadic) -> CheckReport:
    """``F₁ ∘ F♭ = F♭``; witness the nonempty word ``w`` with ``F(F(w)) != F(w)``."""
    require_operation(F, "unary range-idempotence")
    t = F.table
    for w in F.words(1):
        if t[F.value_word(t[w])] != t[w]:
            return CheckReport.failed("unarily_range_idempotent", (w,), F.horizon)
    return CheckReport.passed("unarily_range_idempotent", F.horizon)


def is_unarily_quasi_range_idempotent(F: TabulatedVariadic) -> CheckReport:
    """``ran(F₁) = ran(F♭)``; any codomain.  Witness a word valued outside ``ran(F₁)``."""
    r1 = {F.table[(a,)] for a in range(F.carrier.n)}
    for w in F.words(2):
        if F.table[w] not in r1:
            return CheckReport.failed("unarily_quasi_range_idempotent", (w,), F.horizon)
    return CheckReport.passed("unarily_quasi_range_idempotent", F.horizon)


def is_unary_part_idempotent(F: TabulatedVariadic) -> CheckReport:
    """``F₁ ∘ F₁ = F₁`` for an operation; witness the letter ``(a,)``."""
    require_operation(F, "F₁ ∘ F₁ = F₁")
    t = F.table
    for a in range(F.carrier.n):
        v = t[(a,)]
        if t[F.value_word(v)] != v:
            return CheckReport.failed("unary_part_idempotent", ((a,),), F.horizon)
    return CheckReport.passed("unary_part_idempotent", F.horizon)


@dataclass(frozen=True)
class IdempotenceProfile:
    idempotent: CheckReport
    unarily_idempotent: CheckReport
    unarily_range_idempotent: CheckReport
    unarily_quasi_range_idempotent: CheckReport

    def reports(self):
        return [self.idempotent, self.unarily_idempotent,
                self.unarily_range_idempotent, self.unarily_quasi_range_idempotent]


def idempotence_profile(F: TabulatedVariadic) -> IdempotenceProfile:
    require_operation(F, "idempotence profile")
    return IdempotenceProfile(
        is_idempotent(F),
        is_unarily_idempotent(F),
        is_unarily_range_idempotent(F),
        is_unarily_quasi_range_idempotent(F),
    )


def _constant_value(part):
    vals = set(part.values())
    return next(iter(vals)) if len(vals) == 1 else None


def constant_part_check(F: TabulatedVariadic) -> CheckReport:
    """Propagation of constant arity parts in a preassociative table.

    (a) ``F_n`` constant ⇒ ``F_{n+1}`` constant; (b) ``F_n = F_{n+1} = c`` ⇒
    ``F_m = c`` for all ``m >= n``.  Raises if ``F`` is not preassociative.
    """
    pre = is_preassociative(F)
    if not pre:
        raise PreconditionError("constant_part_check needs a preassociative table", pre)
    name, L = "constant_part_propagation", F.horizon
    parts = F.parts()
    consts = [_constant_value(p) if k else None for k, p in enumerate(parts)]
    for n in range(1, L):
        if consts[n] is not None and consts[n + 1] is None:
            words = list(parts[n + 1])
            first = words[0]
            other = next(w for w in words if parts[n + 1][w] != parts[n + 1][first])
            return CheckReport.failed(name, (first, other), L)
        c = consts[n]
        if c is not None and consts[n + 1] is not None and consts[n + 1] == c:
            for m in range(n + 2, L + 1):
                for w, v in parts[m].items():
                    if v != c:
                        return CheckReport.failed(name, (w,), L)
    return CheckReport.passed(name, L)


# -- witness replay ------------------------------------------------------------

def _replay_assoc(F, x, y, z):
    u = x + F.value_word(F(y)) + z
    return len(u) <= F.horizon and F(x + y + z) != F(u)


_REPLAY = {
    "associative": _replay_assoc,
    "associative_short": _replay_assoc,
    "preassociative": lambda F, x, y, y2, z: F(y) == F(y2) and F(x + y + z) != F(x + y2 + z),
    "preassociative_brute": lambda F, x, y, y2, z: F(y) == F(y2) and F(x + y + z) != F(x + y2 + z),
    "preassociative_pairwise": lambda F, x, x2, y, y2: (
        F(x) == F(x2) and F(y) == F(y2) and F(x + y) != F(x2 + y2)),
    "strongly_preassociative": lambda F, x, x2, y, z, z2: (
        F(x + z) == F(x2 + z2) and F(x + y + z) != F(x2 + y + z2)),
    "symmetric": lambda F, w, s: sorted(w) == sorted(s) and F(w) != F(s),
    "idempotent": lambda F, w: F(w) != F.carrier.symbols[w[0]],
    "unarily_idempotent": lambda F, w: F(w) != F.carrier.symbols[w[0]],
    "unarily_range_idempotent": lambda F, w: F(F.value_word(F(w))) != F(w),
    "unarily_quasi_range_idempotent": lambda F, w: (
        F(w) not in {F((a,)) for a in range(F.carrier.n)}),
    "unary_part_idempotent": lambda F, w: F(F.value_word(F(w))) != F(w),
    "standard": lambda F, w: len(w) > 0 and F(w) == F(()),
    "epsilon_standard": lambda F, w: F(()) is not EPS if not w else F(w) == F(()),
}


def replay(F: TabulatedVariadic, report: CheckReport) -> bool:
    """Re-evaluate a failing report's witness against the plain definition.

    Returns True when the witness really violates the property.
    """
    if report.verdict:
        raise ValueError("nothing to replay: the report passed")
    return bool(_REPLAY[report.property_name](F, *report.witness))


ORACLES = {
    "associative": is_associative,
    "associative_short": is_associative_short,
    "preassociative": is_preassociative,
    "preassociative_brute": is_preassociative_brute,
    "preassociative_pairwise": is_preassociative_pairwise,
    "strongly_preassociative": is_strongly_preassociative,
    "symmetric": is_symmetric,
    "idempotent": is_idempotent,
    "unarily_idempotent": is_unarily_idempotent,
    "unarily_range_idempotent": is_unarily_range_idempotent,
    "unarily_quasi_range_idempotent": is_unarily_quasi_range_idempotent,
    "unary_part_idempotent": is_unary_part_idempotent,
}
