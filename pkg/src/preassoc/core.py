"""Carriers, words, finite maps and tabulated variadic functions.

Words are plain tuples of carrier indices; the empty tuple is the empty
string.  Codomain values are arbitrary hashable atoms, with the singleton
``EPS`` standing for the empty string when a codomain admits it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Iterator, Mapping, Sequence

Word = tuple  # tuple[int, ...] of carrier indices


class Epsilon(enum.Enum):
    EPS = "ε"

    def __repr__(self):
        return "ε"

    __str__ = __repr__


EPS = Epsilon.EPS


class PreassocError(ValueError):
    """Base class for precondition and input failures."""


class CarrierMismatch(PreassocError):
    pass


class HorizonError(PreassocError):
    pass


class CodomainError(PreassocError):
    pass


class PreconditionError(PreassocError):
    """A required property failed; ``report`` holds the failing check."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _check_distinct(items, what):
    seen = set()
    for item in items:
        if item in seen:
            raise PreassocError(f"duplicate {what}: {item!r}")
        seen.add(item)


@dataclass(frozen=True)
class Carrier:
    symbols: tuple

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise PreassocError("carrier must have at least one symbol")
        if EPS in self.symbols:
            raise PreassocError("ε cannot be a carrier symbol")
        _check_distinct(self.symbols, "carrier symbol")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    def __len__(self):
        return len(self.symbols)

    @property
    def n(self) -> int:
        return len(self.symbols)

    def index(self, symbol) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise CarrierMismatch(f"{symbol!r} is not a carrier symbol") from None

    def word(self, symbols: Sequence) -> Word:
        """Encode a sequence of symbols as a word."""
        return tuple(self.index(s) for s in symbols)

    def spell(self, word: Word) -> tuple:
        return tuple(self.symbols[i] for i in word)

    def contains_word(self, word: Word) -> bool:
        return all(isinstance(i, int) and 0 <= i < self.n for i in word)


@dataclass(frozen=True)
class Codomain:
    values: tuple
    epsilon: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if EPS in self.values:
            raise PreassocError("ε is opted in through the epsilon flag, not listed")
        _check_distinct(self.values, "codomain value")
        if not self.values and not self.epsilon:
            raise PreassocError("codomain is empty")

    @property
    def atoms(self) -> tuple:
        return self.values + ((EPS,) if self.epsilon else ())

    def __contains__(self, value):
        if value is EPS:
            return self.epsilon
        return value in self.values

    @classmethod
    def operations(cls, carrier: Carrier) -> "Codomain":
        """The codomain ``X ∪ {ε}`` of variadic operations on ``carrier``."""
        return cls(carrier.symbols, epsilon=True)

    def is_operation_codomain(self, carrier: Carrier) -> bool:
        return self.epsilon and set(self.values) == set(carrier.symbols)


def word_count(n: int, min_len: int, max_len: int) -> int:
    return sum(n**k for k in range(min_len, max_len + 1))


def enumerate_words(carrier: Carrier | int, min_len: int, max_len: int) -> Iterator[Word]:
    """Yield every word with length in ``[min_len, max_len]``.

    Order is by length, then lexicographic by carrier index.
    """
    if not 0 <= min_len <= max_len:
        raise PreassocError(f"need 0 <= min_len <= max_len, got {min_len}, {max_len}")
    n = carrier if isinstance(carrier, int) else carrier.n
    for k in range(min_len, max_len + 1):
        yield from itertools.product(range(n), repeat=k)


def concat(x: Word, y: Word, carrier: Carrier | None = None) -> Word:
    if carrier is not None:
        for w in (x, y):
            if not carrier.contains_word(w):
                raise CarrierMismatch(f"word {w!r} is not over a carrier of size {carrier.n}")
    return tuple(x) + tuple(y)


def format_word(word, carrier: Carrier | None = None) -> str:
    """Comma-joined letters; ``""`` for the empty word."""
    if carrier is not None:
        word = carrier.spell(word)
    return ",".join(str(s) for s in word)


def parse_word(text: str, carrier: Carrier) -> Word:
    if text == "":
        return ()
    return carrier.word(text.split(","))


@dataclass(frozen=True)
class CheckReport:
    """Verdict of one property check, with a witness when it fails.

    ``witness`` is a tuple whose items instantiate the quantified variables
    of the property (words for table oracles, atoms or float tuples for the
    map and real-family checks).
    """

    property_name: str
    verdict: bool
    witness: tuple | None = None
    horizon_used: int | None = None
    note: str = ""

    def __post_init__(self):
        if self.verdict and self.witness is not None:
            raise ValueError("a passing report carries no witness")
        if not self.verdict and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def __bool__(self):
        return self.verdict

    @classmethod
    def passed(cls, name, horizon=None, note=""):
        return cls(name, True, None, horizon, note)

    @classmethod
    def failed(cls, name, witness, horizon=None, note=""):
        return cls(name, False, tuple(witness), horizon, note)


@dataclass(frozen=True)
class UnaryMap:
    """A total map between two finite atom lists."""

    domain: tuple
    codomain: tuple
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "codomain", tuple(self.codomain))
        object.__setattr__(self, "table", tuple(self.table))
        _check_distinct(self.domain, "domain element")
        _check_distinct(self.codomain, "codomain element")
        if len(self.table) != len(self.domain):
            raise PreassocError("unary table must have one value per domain element")
        cod = set(self.codomain)
        for x, v in zip(self.domain, self.table):
            if v not in cod:
                raise CodomainError(f"value {v!r} at {x!r} is outside the codomain")
        object.__setattr__(self, "_lookup", dict(zip(self.domain, self.table)))

    @classmethod
    def from_dict(cls, mapping: Mapping, domain=None, codomain=None) -> "UnaryMap":
        domain = tuple(mapping) if domain is None else tuple(domain)
        missing = [x for x in domain if x not in mapping]
        if missing:
            raise PreassocError(f"unary map is not total: missing {missing!r}")
        if codomain is None:
            codomain = tuple(dict.fromkeys(mapping[x] for x in domain))
        return cls(domain, codomain, tuple(mapping[x] for x in domain))

    @classmethod
    def from_function(cls, domain, codomain, fn: Callable) -> "UnaryMap":
        domain = tuple(domain)
        return cls(domain, codomain, tuple(fn(x) for x in domain))

    @classmethod
    def identity(cls, atoms) -> "UnaryMap":
        atoms = tuple(atoms)
        return cls(atoms, atoms, atoms)

    def __call__(self, x):
        try:
            return self._lookup[x]
        except KeyError:
            raise CodomainError(f"{x!r} is outside the domain") from None

    def defined_at(self, x) -> bool:
        return x in self._lookup

    def as_dict(self) -> dict:
        return dict(self._lookup)

    def range(self) -> frozenset:
        return frozenset(self.table)

    def ordered_range(self) -> tuple:
        """Range listed in codomain order."""
        r = self.range()
        return tuple(v for v in self.codomain if v in r)

    def restrict(self, subset) -> "UnaryMap":
        subset = set(subset)
        dom = tuple(x for x in self.domain if x in subset)
        return UnaryMap(dom, self.codomain, tuple(self._lookup[x] for x in dom))

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def compose(self, inner: "UnaryMap") -> "UnaryMap":
        """``self ∘ inner``."""
        return UnaryMap(inner.domain, self.codomain, tuple(self(v) for v in inner.table))


@dataclass(frozen=True)
class BinaryMap:
    """A total map ``X² → Y``, indexed by symbol pairs."""

    carrier: Carrier
    codomain: Codomain
    table: tuple  # table[i][j] = value at (symbols[i], symbols[j])

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.table)
        object.__setattr__(self, "table", rows)
        n = self.carrier.n
        if len(rows) != n or any(len(r) != n for r in rows):
            raise PreassocError(f"binary table must be {n}x{n}")
        for r in rows:
            for v in r:
                if v not in self.codomain:
                    raise CodomainError(f"binary value {v!r} is outside the codomain")

    @classmethod
    def from_function(cls, carrier: Carrier, codomain: Codomain, fn: Callable) -> "BinaryMap":
        s = carrier.symbols
        return cls(carrier, codomain, tuple(tuple(fn(a, b) for b in s) for a in s))

    @classmethod
    def from_dict(cls, carrier: Carrier, codomain: Codomain, mapping: Mapping) -> "BinaryMap":
        s = carrier.symbols
        try:
            return cls(carrier, codomain, tuple(tuple(mapping[a, b] for b in s) for a in s))
        except KeyError as exc:
            raise PreassocError(f"binary map is not total: missing {exc.args[0]!r}") from None

    def __call__(self, a, b):
        return self.table[self.carrier.index(a)][self.carrier.index(b)]

    def at(self, i: int, j: int):
        return self.table[i][j]

    def range(self) -> frozenset:
        return frozenset(v for r in self.table for v in r)


@dataclass(frozen=True, eq=True)
class TabulatedVariadic:
    """Values of ``F: X* → Y`` on every word of length at most ``horizon``."""

    carrier: Carrier
    codomain: Codomain
    horizon: int
    table: Mapping[Word, Any] = field(compare=False)

    def __post_init__(self):
        if self.horizon < 2:
            raise HorizonError(f"horizon must be at least 2, got {self.horizon}")
        table = dict(self.table)
        expected = word_count(self.carrier.n, 0, self.horizon)
        if len(table) != expected:
            missing = next((w for w in enumerate_words(self.carrier, 0, self.horizon)
                            if w not in table), None)
            if missing is not None:
                raise PreassocError(f"table is not total: no value for {format_word(missing, self.carrier)!r}")
            raise PreassocError(f"table has {len(table)} entries, expected {expected}")
        for w, v in table.items():
            if not (isinstance(w, tuple) and len(w) <= self.horizon and self.carrier.contains_word(w)):
                raise PreassocError(f"bad table key {w!r}")
            if v not in self.codomain:
                raise CodomainError(f"value {v!r} at {format_word(w, self.carrier)!r} is outside the codomain")
        object.__setattr__(self, "table", MappingProxyType(table))

    def __eq__(self, other):
        if not isinstance(other, TabulatedVariadic):
            return NotImplemented
        return (self.carrier == other.carrier and self.codomain == other.codomain
                and self.horizon == other.horizon and dict(self.table) == dict(other.table))

    __hash__ = None

    @classmethod
    def from_function(cls, carrier, codomain, horizon, fn: Callable[[Word], Any]):
        """Tabulate ``fn`` (called on index tuples) up to ``horizon``."""
        return cls(carrier, codomain, horizon,
                   {w: fn(w) for w in enumerate_words(carrier, 0, horizon)})

    @classmethod
    def from_symbol_function(cls, carrier, codomain, horizon, fn: Callable[[tuple], Any]):
        """Like ``from_function`` but ``fn`` receives symbol tuples."""
        return cls.from_function(carrier, codomain, horizon, lambda w: fn(carrier.spell(w)))

    @classmethod
    def from_parts(cls, carrier, codomain, parts: Sequence[Mapping[Word, Any]]):
        table = {}
        for part in parts:
            table.update(part)
        return cls(carrier, codomain, len(parts) - 1, table)

    def __call__(self, word: Word):
        return self.table[tuple(word)]

    def at(self, *symbols):
        return self.table[self.carrier.word(symbols)]

    @property
    def epsilon_value(self):
        return self.table[()]

    def words(self, min_len=0, max_len=None) -> Iterator[Word]:
        return enumerate_words(self.carrier, min_len, self.horizon if max_len is None else max_len)

    def part(self, k: int) -> dict:
        """The arity-``k`` slice."""
        if not 0 <= k <= self.horizon:
            raise HorizonError(f"arity {k} is outside horizon {self.horizon}")
        return {w: self.table[w] for w in enumerate_words(self.carrier, k, k)}

    def parts(self) -> list:
        return [self.part(k) for k in range(self.horizon + 1)]

    def flat_range(self) -> frozenset:
        """``ran(F♭)`` up to the horizon."""
        return frozenset(v for w, v in self.table.items() if w)

    def unary(self) -> UnaryMap:
        """``F₁`` as a map from carrier symbols into the codomain atoms."""
        return UnaryMap(self.carrier.symbols, self.codomain.atoms,
                        tuple(self.table[(i,)] for i in range(self.carrier.n)))

    def binary(self) -> BinaryMap:
        n = self.carrier.n
        return BinaryMap(self.carrier, self.codomain,
                         tuple(tuple(self.table[(i, j)] for j in range(n)) for i in range(n)))

    def is_operation(self) -> bool:
        return self.codomain.is_operation_codomain(self.carrier)

    def value_word(self, value) -> Word:
        """The word a value of an operation stands for: ``ε`` → ``()``, letter → 1-word."""
        if value is EPS:
            return ()
        return (self.carrier.index(value),)

    def replace(self, word: Word, value) -> "TabulatedVariadic":
        """Copy with a single entry changed."""
        table = dict(self.table)
        table[tuple(word)] = value
        return TabulatedVariadic(self.carrier, self.codomain, self.horizon, table)

    def truncate(self, horizon: int) -> "TabulatedVariadic":
        if horizon > self.horizon:
            raise HorizonError(f"cannot extend horizon {self.horizon} to {horizon}")
        return TabulatedVariadic(self.carrier, self.codomain, horizon,
                                 {w: v for w, v in self.table.items() if len(w) <= horizon})


def require_operation(F: TabulatedVariadic, what: str):
    if not F.is_operation():
        raise CodomainError(f"{what} needs codomain = carrier ∪ {{ε}}")


def is_standard(F: TabulatedVariadic) -> CheckReport:
    e = F.epsilon_value
    for w in F.words(1):
        if F.table[w] == e:
            return CheckReport.failed("standard", (w,), F.horizon)
    return CheckReport.passed("standard", F.horizon)


def is_epsilon_standard(F: TabulatedVariadic) -> CheckReport:
    if not F.codomain.epsilon:
        raise CodomainError("ε-standardness needs ε in the codomain")
    if F.epsilon_value is not EPS:
        return CheckReport.failed("epsilon_standard", ((),), F.horizon)
    rep = is_standard(F)
    if not rep:
        return CheckReport.failed("epsilon_standard", rep.witness, F.horizon)
    return CheckReport.passed("epsilon_standard", F.horizon)


# -- operation-definition files ------------------------------------------------

_TABLE_FIELDS = {"carrier", "codomain", "epsilon", "horizon", "table"}


def _decode_value(v):
    return EPS if v is None else v


def _encode_value(v):
    return None if v is EPS else v


def table_from_json(doc: Mapping) -> TabulatedVariadic:
    """Build a table from the decoded operation-definition document.

    ε is written as JSON ``null`` in values and as ``""`` for the empty word.
    """
    if not isinstance(doc, Mapping):
        raise PreassocError("operation definition must be a JSON object")
    unknown = set(doc) - _TABLE_FIELDS
    if unknown:
        raise PreassocError(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("carrier", "codomain", "horizon", "table"):
        if key not in doc:
            raise PreassocError(f"missing field: {key}")
    if not isinstance(doc["carrier"], list) or not all(isinstance(s, str) and s and "," not in s
                                                       for s in doc["carrier"]):
        raise PreassocError("field 'carrier' must be a list of non-empty strings without commas")
    if not isinstance(doc["codomain"], list):
        raise PreassocError("field 'codomain' must be a list")
    horizon = doc["horizon"]
    if not isinstance(horizon, int) or isinstance(horizon, bool):
        raise PreassocError("field 'horizon' must be an integer")
    if not isinstance(doc["table"], Mapping):
        raise PreassocError("field 'table' must be an object")
    carrier = Carrier(doc["carrier"])
    codomain = Codomain(doc["codomain"], bool(doc.get("epsilon", False)))
    table = {}
    for key, value in doc["table"].items():
        try:
            w = parse_word(key, carrier)
        except CarrierMismatch as exc:
            raise PreassocError(f"table key {key!r}: {exc}") from None
        if w in table:
            raise PreassocError(f"duplicate table key {key!r}")
        table[w] = _decode_value(value)
    return TabulatedVariadic(carrier, codomain, horizon, table)


def table_to_json(F: TabulatedVariadic) -> dict:
    return {
        "carrier": list(F.carrier.symbols),
        "codomain": list(F.codomain.values),
        "epsilon": F.codomain.epsilon,
        "horizon": F.horizon,
        "table": {format_word(w, F.carrier): _encode_value(F.table[w]) for w in F.words()},
    }
