import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preassoc.core import CodomainError, UnaryMap
from preassoc.quasi_inverse import (
    RangeInclusionError,
    all_maps,
    canonical_quasi_inverse,
    enumerate_quasi_inverses,
    is_quasi_inverse,
    quasi_inverses_by_filter,
    solve_right_factor,
)

ABC = ("a", "b", "c")


def umap(domain, values, codomain=None):
    return UnaryMap(tuple(domain), tuple(codomain or domain), tuple(values))


collapse = umap(ABC, "aac")


def test_identity_is_self_quasi_inverse():
    idm = UnaryMap.identity(ABC)
    assert is_quasi_inverse(idm, idm)


def test_collapse_examples():
    assert is_quasi_inverse(collapse, umap(ABC, "bbc"))
    rep = is_quasi_inverse(collapse, umap(ABC, "abc"))
    assert not rep
    # b is not hit by g on ran(f) = {a, c}
    assert rep.witness == ("b",)


def test_domain_mismatch():
    g = umap(("a",), "a", ABC)
    with pytest.raises(CodomainError):
        is_quasi_inverse(collapse, g)


def test_enumerate_identity():
    Q = enumerate_quasi_inverses(UnaryMap.identity(ABC))
    assert list(Q) == [UnaryMap.identity(ABC)]


def test_enumerate_collapse_matches_filter():
    Q = enumerate_quasi_inverses(collapse)
    brute = quasi_inverses_by_filter(collapse)
    assert len(brute) == 4
    assert list(Q) == brute


def test_enumerate_constant_map():
    f = umap("ab", "aa")
    Q = enumerate_quasi_inverses(f)
    brute = [g for g in all_maps("ab", "ab") if is_quasi_inverse(f, g)]
    assert list(Q) == brute
    assert len(Q) == 2


maps = st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, 4).flatmap(
        lambda m: st.tuples(st.just(m), st.lists(st.integers(0, m - 1), min_size=n, max_size=n)))))


def _build(shape):
    n, (m, values) = shape
    dom = tuple(f"x{i}" for i in range(n))
    cod = tuple(f"y{j}" for j in range(m))
    return UnaryMap(dom, cod, tuple(cod[v] for v in values))


@settings(max_examples=200, deadline=None)
@given(maps)
def test_enumeration_complete(shape):
    f = _build(shape)
    Q = enumerate_quasi_inverses(f)
    assert len(Q) >= 1
    assert list(Q) == quasi_inverses_by_filter(f)
    assert Q.members[0] == canonical_quasi_inverse(f)


@settings(max_examples=200, deadline=None)
@given(maps)
def test_member_properties(shape):
    f = _build(shape)
    rf = f.range()
    for g in enumerate_quasi_inverses(f):
        assert is_quasi_inverse(f, g)
        assert is_quasi_inverse(g, f)  # symmetry
        assert rf <= set(g.domain) and g.range() <= set(f.domain)
        assert f.restrict(g.range()).is_injective()
        assert g.restrict(rf).is_injective()
        for v in g.domain:
            assert g(f(g(v))) == g(v)
        for x in f.domain:
            assert f(g(f(x))) == f(x)


def test_members_distinct_and_sorted():
    f = umap("abcd", "aacc", "abcd")
    Q = enumerate_quasi_inverses(f)
    keys = [tuple(f.domain.index(v) for v in g.table) for g in Q]
    assert keys == sorted(set(keys))


def test_solve_right_factor_identity_case():
    g = umap(ABC, "aac")
    h = solve_right_factor(g, g)
    assert g.compose(h) == g


def test_solve_right_factor_constant():
    f = umap(ABC, "bbb")
    g = umap(ABC, "cab")  # surjective
    h = solve_right_factor(f, g)
    assert set(h.table) == {"c"}  # the preimage of b
    assert g.compose(h) == f


def test_solve_right_factor_fails():
    f = umap(ABC, "abc")
    g = umap(ABC, "aac")
    with pytest.raises(RangeInclusionError) as exc:
        solve_right_factor(f, g)
    assert exc.value.witness == "b"


def test_solve_right_factor_on_slice():
    g = umap(ABC, "aac")
    part = {(0, 0): "a", (0, 1): "c"}
    h = solve_right_factor(part, g)
    assert {k: g(v) for k, v in h.items()} == part


@settings(max_examples=100, deadline=None)
@given(maps, st.data())
def test_solve_right_factor_property(shape, data):
    g = _build(shape)
    rg = sorted(g.range())
    k = data.draw(st.integers(1, 4))
    f = UnaryMap(tuple(f"z{i}" for i in range(k)), g.codomain,
                 tuple(data.draw(st.sampled_from(rg)) for _ in range(k)))
    h = solve_right_factor(f, g)
    assert g.compose(h) == f
