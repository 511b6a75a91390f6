from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rcftkernel import matrix as mx
from rcftkernel.errors import NotCoprime
from rcftkernel.galois import units
from rcftkernel.lambdas import (
    ZCache, bezout_matrix, check_lambda_bezout, check_zadd, check_zcoc, check_zmult, extract_z,
    lambda_matrix, lambda_one_over_n, lemma_suite, r_star, working_order,
)
from rcftkernel.modular_data import minimal_model


def test_r_star_examples():
    assert r_star(Fraction(2, 5)) == Fraction(3, 5)
    for n in range(1, 13):
        assert r_star(Fraction(1, n)) == Fraction(1, n) % 1
    assert r_star(0) == 0


@given(st.integers(1, 200), st.integers(1, 200))
def test_r_star_involution_and_row(k, n):
    r = Fraction(k, n)
    assert r_star(r_star(r)) == r % 1
    m = bezout_matrix(r)
    # (a/c)* = d/c for the bottom row of an SL2 matrix
    assert r_star(Fraction(m.a, m.c)) == Fraction(m.d, m.c) % 1


def test_lambda_zero_is_s(ising):
    assert lambda_matrix(ising, 0).entries == mx.at_order(ising.s_matrix, working_order(ising, 0))


def test_lambda_one_over_N(lee_yang):
    N = lee_yang.conductor
    r = Fraction(1, N)
    assert lambda_matrix(lee_yang, r).entries == lee_yang.t_power(Fraction(-2, N)).to_matrix(working_order(lee_yang, r))


@pytest.mark.parametrize("n", range(1, 13))
def test_lambda_one_over_n(ising, n):
    assert lambda_one_over_n(ising, n).entries == lambda_matrix(ising, Fraction(1, n)).entries


def test_lambda_n_equals_N(ising):
    N = ising.conductor
    assert lambda_one_over_n(ising, N).entries == lambda_matrix(ising, Fraction(1, N)).entries


@pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(2, 5), Fraction(3, 7), Fraction(5, 8)])
def test_periodicity_and_bezout(lee_yang, r):
    assert lambda_matrix(lee_yang, r + 1).entries == lambda_matrix(lee_yang, r).entries
    assert check_lambda_bezout(lee_yang, r)


def test_z_zero_identity(lee_yang):
    cache = ZCache(lee_yang)
    for l in units(60):
        assert cache.z(l, 0).is_identity()


def test_z_requires_unit(lee_yang):
    with pytest.raises(NotCoprime):
        extract_z(lee_yang, 7, Fraction(1, 7))


def test_z_identities(ising):
    cache = ZCache(ising)
    for l in (7, 11, 13):
        r1, r2 = Fraction(1, 5), Fraction(2, 5)
        assert check_zadd(cache, l, r1, r2)
        assert check_zmult(cache, l, r1, 3)
        assert check_zcoc(cache, l, 11, r2)
        assert 5 % cache.z(l, r1).order() == 0


def test_suite_lee_yang(lee_yang):
    res = lemma_suite(lee_yang, max_den=6)
    assert {name: r.failed for name, r in res.items() if r.failed} == {}
    assert res["zadd"].passed > 1000


def test_suite_ising(ising):
    res = lemma_suite(ising, max_den=6)
    assert {name: r.failed for name, r in res.items() if r.failed} == {}


@pytest.mark.parametrize("pq", [(2, 7), (3, 5), (3, 8)])
def test_suite_small(pq):
    res = lemma_suite(minimal_model(*pq), max_den=4, max_l=30)
    assert all(r.ok for r in res.values())
