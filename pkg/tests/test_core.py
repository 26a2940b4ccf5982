import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preassoc.catalog import length_table, mod_sum
from preassoc.core import (
    EPS,
    Carrier,
    CarrierMismatch,
    Codomain,
    CodomainError,
    HorizonError,
    PreassocError,
    TabulatedVariadic,
    concat,
    enumerate_words,
    is_epsilon_standard,
    is_standard,
    table_from_json,
    table_to_json,
    word_count,
)


def test_enumerate_words_small(ab):
    assert list(enumerate_words(ab, 0, 1)) == [(), (0,), (1,)]
    assert [ab.spell(w) for w in enumerate_words(ab, 2, 2)] == [
        ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]


def test_enumerate_words_count(abc):
    ws = list(enumerate_words(abc, 0, 3))
    assert len(ws) == 1 + 3 + 9 + 27 == 40
    assert len(set(ws)) == 40


@given(st.integers(2, 4), st.integers(0, 5), st.integers(0, 5))
def test_word_count_geometric(n, lo, hi):
    lo, hi = min(lo, hi), max(lo, hi)
    got = sum(1 for _ in enumerate_words(n, lo, hi))
    assert got == (n ** (hi + 1) - n ** lo) // (n - 1) == word_count(n, lo, hi)


def test_enumerate_words_order(abc):
    ws = list(enumerate_words(abc, 0, 3))
    assert ws == sorted(ws, key=lambda w: (len(w), w))


def test_enumerate_words_bad_bounds(ab):
    with pytest.raises(PreassocError):
        list(enumerate_words(ab, 2, 1))


def test_concat(abc):
    ab_ = abc.word("ab")
    assert concat(ab_, ()) == ab_
    assert concat((), ab_) == ab_
    assert abc.spell(concat(abc.word("a"), abc.word("bc"))) == ("a", "b", "c")
    x = abc.word("abc")
    assert concat(x, x) == x * 2 and len(concat(x, x)) == 6


def test_concat_carrier_mismatch(ab):
    with pytest.raises(CarrierMismatch):
        concat((0, 2), (1,), ab)


@settings(max_examples=50)
@given(st.lists(st.integers(0, 2), max_size=3), st.lists(st.integers(0, 2), max_size=3),
       st.lists(st.integers(0, 2), max_size=3))
def test_concat_monoid_laws(x, y, z):
    x, y, z = tuple(x), tuple(y), tuple(z)
    assert concat(concat(x, y), z) == concat(x, concat(y, z))
    assert concat(x, ()) == x == concat((), x)


def test_carrier_invariants():
    with pytest.raises(PreassocError):
        Carrier(("a", "a"))
    with pytest.raises(PreassocError):
        Carrier(())
    with pytest.raises(PreassocError):
        Codomain(("x", "x"))


def test_table_must_be_total(ab):
    cod = Codomain.operations(ab)
    table = {w: EPS if not w else "a" for w in enumerate_words(ab, 0, 2)}
    del table[(1, 1)]
    with pytest.raises(PreassocError, match="b,b"):
        TabulatedVariadic(ab, cod, 2, table)


def test_table_values_in_codomain(ab):
    cod = Codomain(("a", "b"))
    with pytest.raises(CodomainError):
        TabulatedVariadic.from_function(ab, cod, 2, lambda w: EPS if not w else "a")


def test_horizon_minimum(ab):
    with pytest.raises(HorizonError):
        TabulatedVariadic.from_function(ab, Codomain.operations(ab), 1, lambda w: EPS)


def test_table_size(abc):
    F = mod_sum(3, 4)
    assert len(F.table) == sum(3 ** k for k in range(5))


@settings(max_examples=30)
@given(st.integers(1, 3), st.integers(2, 4), st.randoms(use_true_random=False))
def test_parts_round_trip(n, L, rnd):
    X = Carrier(tuple("xyz"[:n]))
    cod = Codomain.operations(X)
    F = TabulatedVariadic.from_function(
        X, cod, L, lambda w: rnd.choice(X.symbols + (EPS,)))
    G = TabulatedVariadic.from_parts(X, cod, F.parts())
    assert G == F
    assert dict(G.table) == dict(F.table)


def test_length_table_is_standard(ab):
    assert is_standard(length_table(ab, 3))


def test_constant_table_not_standard(ab):
    F = TabulatedVariadic.from_function(ab, Codomain(("c",)), 3, lambda w: "c")
    rep = is_standard(F)
    assert not rep and rep.witness == ((0,),)


def test_unique_eps_is_standard(ab):
    F = TabulatedVariadic.from_function(ab, Codomain.operations(ab), 3,
                                        lambda w: EPS if not w else "a")
    assert is_standard(F)


def test_epsilon_standard_mod2():
    assert is_epsilon_standard(mod_sum(2, 3))
    rep = is_epsilon_standard(mod_sum(2, 3, empty="0"))
    assert not rep and rep.witness == ((),)


def test_epsilon_standard_letter_maps_to_eps(ab):
    F = TabulatedVariadic.from_function(ab, Codomain.operations(ab), 2,
                                        lambda w: EPS if w in ((), (0,)) else "b")
    rep = is_epsilon_standard(F)
    assert not rep and rep.witness == ((0,),)


def test_epsilon_standard_needs_eps(ab):
    with pytest.raises(CodomainError):
        is_epsilon_standard(length_table(ab, 2))


def test_json_round_trip():
    F = mod_sum(3, 3)
    doc = json.loads(json.dumps(table_to_json(F)))
    assert doc["table"][""] is None
    assert table_from_json(doc) == F


def test_json_rejects_unknown_field():
    doc = table_to_json(mod_sum(2, 2))
    doc["extra"] = 1
    with pytest.raises(PreassocError, match="unknown field"):
        table_from_json(doc)


def test_json_rejects_duplicate_symbol():
    doc = table_to_json(mod_sum(2, 2))
    doc["carrier"] = ["0", "0"]
    with pytest.raises(PreassocError, match="duplicate"):
        table_from_json(doc)


def test_associative_standard_is_eps_standard():
    # every associative table from the catalog with F(ε)=ε is ε-standard
    from preassoc.oracle import is_associative
    for m in (2, 3):
        F = mod_sum(m, 3)
        assert is_associative(F) and is_standard(F) and is_epsilon_standard(F)
