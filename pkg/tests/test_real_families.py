import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preassoc.core import EPS, PreassocError
from preassoc import real_families as rf


def test_relu_counterexample():
    H = rf.make_family("relu_sum")
    assert H(-1, -2) == 0 == H(-1, 1)
    assert H(-1, -2, 1) == 0
    assert H(-1, 1, 1) == 1
    rep = rf.check_preassociativity_instance(H, (), (-1, -2), (-1, 1), (1,))
    assert not rep


def test_abs_counterexample():
    F = rf.make_family("abs_sum")
    assert F(1) == F(-1) == 1
    assert F(1, 1) == 2 and F(1, -1) == 0
    assert not rf.check_preassociativity_instance(F, (1,), (1,), (-1,), ())


def test_expseq_counterexample():
    d = rf.expseq_counterexample()
    assert abs(d.h2 - 5) <= 1e-9 and abs(d.h2_prime - 5) <= 1e-9
    assert abs(d.h3 - 10) <= 1e-9
    assert abs(d.h3_prime - (3 ** 1.5 + 2 ** 1.5 + 1)) <= 1e-9
    assert abs(d.h3 - d.h3_prime) > 0.9
    assert d.ok


@pytest.mark.parametrize("p", [1, 2, 3])
def test_pnorm_associative_not_unarily_idempotent(p):
    F = rf.make_family("pnorm", p=p)
    assert rf.check_associativity_identity(F, 0, count=1000)
    rep = rf.check_unary_idempotence(F)
    assert not rep and rep.witness == (-1.0,)
    assert F(-1) == 1
    assert rf.check_unary_range_idempotence(F, 0)


def test_pnorm_with_identity_unary_stays_associative():
    F = rf.with_unary_identity(rf.make_family("pnorm", p=2))
    assert rf.check_associativity_identity(F, 1, count=500)
    assert rf.check_unary_idempotence(F)


def test_scaled_sum_not_associative():
    F = rf.make_family("scaled_sum", c=2)
    rep = rf.check_associativity_identity(F, 0, count=200)
    assert not rep


@pytest.mark.parametrize("name", ["sum", "expsum", "scaled_sum", "sqdist", "length", "pnorm"])
def test_preassociative_families(name):
    assert rf.check_preassociativity_witnessed(rf.make_family(name), 3, count=500)


@pytest.mark.parametrize("name", ["relu_sum", "abs_sum", "expseq"])
def test_non_preassociative_families(name):
    rep = rf.check_preassociativity_witnessed(rf.make_family(name), 3, count=1000)
    assert not rep


def test_sampling_is_deterministic():
    F = rf.make_family("scaled_sum", c=2)
    a = rf.check_associativity_identity(F, 42, count=50)
    b = rf.check_associativity_identity(F, 42, count=50)
    assert a.witness == b.witness


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_sum_preserving_pairs_are_exact(seed):
    y, y2 = rf.sum_preserving_pair(random.Random(seed))
    assert math.fsum(y) == math.fsum(y2)


@settings(max_examples=100)
@given(st.integers(0, 10**9))
def test_grid_samples(seed):
    w = rf.sample_word(random.Random(seed))
    assert all(-rf.SPAN <= v <= rf.SPAN and (v * rf.GRID).is_integer() for v in w)


@pytest.mark.parametrize("name", ["sum", "expsum", "scaled_sum", "sqdist", "pnorm"])
def test_factorize_family(name):
    fac = rf.factorize_family(rf.make_family(name), rng=7, count=500)
    assert fac.report
    assert rf.check_associativity_identity(fac.inner, 7, count=200)


@pytest.mark.parametrize("name", ["relu_sum", "abs_sum", "expseq", "length"])
def test_factorize_family_unsupported(name):
    with pytest.raises(rf.UnsupportedFamily):
        rf.factorize_family(rf.make_family(name))


def test_pnorm_requires_p_at_least_one():
    with pytest.raises(PreassocError):
        rf.make_family("pnorm", p=0.5)


def test_unknown_family():
    with pytest.raises(PreassocError):
        rf.make_family("nope")


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_non_finite_input(bad):
    with pytest.raises(PreassocError):
        rf.make_family("sum")(1.0, bad)


def test_empty_word():
    assert rf.make_family("sum")() is EPS
    assert rf.make_family("length")() == 0.0


def test_close_tolerance():
    assert rf.close(1.0, 1.0 + 1e-12, 1e-9)
    assert not rf.close(1.0, 1.1, 1e-9)
    assert rf.close(1e6, 1e6 * (1 + 1e-12), 1e-9)
    assert not rf.close(EPS, 0.0, 1e-9)
