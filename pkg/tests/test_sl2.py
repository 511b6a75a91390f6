import random

import pytest
from hypothesis import given, settings, strategies as st

from rcftkernel import matrix as mx
from rcftkernel.errors import NotCoprime, NotUnimodular
from rcftkernel.galois import extract_g, units
from rcftkernel.modular_data import charge_conjugation
from rcftkernel.sl2 import (
    IDENTITY, S_GEN, T_GEN, SL2NMatrix, SL2ZMatrix, check_gal2, decompose, lift, rep, sl2_order, tau,
)


def test_generators_decompose():
    assert decompose(T_GEN).tokens == (("T", 1),)
    assert decompose(S_GEN).tokens == (("S", 1),)
    assert decompose(IDENTITY).tokens == ()


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        SL2ZMatrix(1, 1, 1, 1)
    with pytest.raises(NotUnimodular):
        SL2NMatrix(6, 2, 0, 0, 2)


@st.composite
def sl2z(draw):
    c = draw(st.integers(-60, 60))
    d = draw(st.integers(-60, 60))
    from math import gcd
    if gcd(c, d) != 1:
        c, d = 1, 0
    from rcftkernel.sl2 import _egcd
    _, x, y = _egcd(d, c)
    j = draw(st.integers(-5, 5))
    return SL2ZMatrix(x + j * c, -y + j * d, c, d)


@settings(max_examples=200, deadline=None)
@given(sl2z())
def test_decompose_round_trip(m):
    assert decompose(m).to_matrix() == m


def test_published_generator_round_trip():
    m = lift(SL2NMatrix(60, 19, 5, 5, 14))
    assert m.a * m.d - m.b * m.c == 1
    assert m.reduce(60) == SL2NMatrix(60, 19, 5, 5, 14)
    assert decompose(m).to_matrix() == m


def test_rep_basics(ising):
    size = ising.size
    assert rep(ising, IDENTITY) == mx.identity(size, ising.field_order)
    assert rep(ising, S_GEN) == ising.s_matrix
    s2 = rep(ising, S_GEN @ S_GEN)
    perm = charge_conjugation(ising)
    assert s2 == tuple(tuple(1 if perm[p] == q else 0 for q in range(size)) for p in range(size))


def test_rep_is_hom(lee_yang):
    rng = random.Random(3)
    for _ in range(20):
        a = lift(_rand(rng, 60))
        b = lift(_rand(rng, 60))
        assert rep(lee_yang, a @ b) == mx.matmul(rep(lee_yang, a), rep(lee_yang, b))


def _rand(rng, N):
    from math import gcd
    while True:
        c, d = rng.randrange(N), rng.randrange(N)
        if gcd(gcd(c, d), N) == 1:
            break
    from rcftkernel.kernel import _top_rows
    a, b = rng.choice(_top_rows(N, c, d))
    return SL2NMatrix(N, a, b, c, d)


def test_lift_identity():
    assert lift(SL2NMatrix(60, 1, 0, 0, 1)) == IDENTITY
    assert lift(SL2NMatrix(1, 0, 0, 0, 0)) == IDENTITY


def test_lift_reduces_back():
    rng = random.Random(7)
    for N in (2, 12, 48, 60, 97):
        for _ in range(50):
            m = _rand(rng, N)
            assert lift(m).reduce(N) == m


def test_tau():
    N = 60
    t = SL2NMatrix(N, 1, 1, 0, 1)
    assert tau(t, 7) == SL2NMatrix(N, 1, 7, 0, 1)
    rng = random.Random(1)
    for _ in range(30):
        m = _rand(rng, N)
        assert tau(m, 1) == m
        l, k = rng.choice(units(N)), rng.choice(units(N))
        assert tau(tau(m, k), l) == tau(m, l * k)
        assert tau(m @ m, l) == tau(m, l) @ tau(m, l)
    with pytest.raises(NotCoprime):
        tau(t, 6)


def test_gal2_examples(ising, lee_yang):
    t = SL2NMatrix(48, 1, 1, 0, 1)
    assert all(check_gal2(ising, t, l) for l in units(48))
    s = SL2NMatrix(48, 0, -1, 1, 0)
    assert check_gal2(ising, s, 5)
    g5 = extract_g(ising, 5).to_matrix(ising.field_order)
    assert rep(ising, lift(tau(s, 5))) == mx.matmul(ising.s_matrix, g5)


def test_gal2_random(lee_yang):
    rng = random.Random(11)
    for _ in range(100):
        assert check_gal2(lee_yang, _rand(rng, 60), rng.choice(units(60)))


def test_sl2_order():
    assert sl2_order(60) == 138240
    assert sl2_order(48) == 73728
    assert sl2_order(2) == 6
    assert sl2_order(1) == 1
