import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffbias.characters import (
    RootOfUnity,
    TableBoundError,
    character,
    characters,
    euler_phi,
    is_exact_zero,
    unit_group,
)
from ffbias.field import Poly, gcd, iter_monic, parse_poly

MODULI = [(3, "t^2+1"), (3, "t^2+2"), (3, "t^3+2*t+1"), (3, "t^3"), (3, "t^3+t^2"), (2, "t^4+t"), (5, "t^2+2")]


def brute_phi(d):
    return sum(1 for e in range(d.degree) for f in _all(e, d.q) if gcd(f, d).is_one()) + (1 if d.degree == 0 else 0)


def _all(e, q):
    # every polynomial of degree e with any leading coefficient, plus the units when e == 0
    for f in iter_monic(e, q):
        for c in range(1, q):
            yield f.scale(c)


def test_unit_group_examples():
    G = unit_group(parse_poly("t^2+1", 3))
    assert G.order == 8 and G.orders == (8,)
    assert unit_group(parse_poly("t", 3)).order == 2
    G = unit_group(parse_poly("t^2+2", 3))
    assert G.order == 4 and sorted(G.orders) == [2, 2]


@pytest.mark.parametrize("q,text", MODULI)
def test_phi_matches_count(q, text):
    d = parse_poly(text, q)
    assert euler_phi(d) == brute_phi(d) == unit_group(d).order


def test_t2p1_characters():
    chars = characters(parse_poly("t^2+1", 3))
    assert len(chars) == 8
    real = [c for c in chars if c.is_real and not c.is_principal]
    assert [c.index for c in real] == [4]
    for i in range(1, 8):
        assert chars[i].conj() == chars[8 - i]


@pytest.mark.parametrize("q,text", MODULI)
def test_principal_and_zero(q, text):
    d = parse_poly(text, q)
    chi0 = characters(d)[0]
    chi = characters(d)[-1]
    for n in range(0, 4):
        for f in iter_monic(n, q):
            v0 = chi0(f)
            if gcd(f, d).is_one():
                assert v0 == RootOfUnity.make(0, 1)
            else:
                assert v0.is_zero and chi(f).is_zero


@pytest.mark.parametrize("q,text", MODULI)
def test_multiplicative(q, text):
    d = parse_poly(text, q)
    fs = [f for n in range(4) for f in iter_monic(n, q)][:60]
    for chi in characters(d)[:6]:
        for f in fs[::3]:
            for g in fs[::5]:
                a, b, ab = chi(f), chi(g), chi(f * g)
                if a.is_zero or b.is_zero:
                    assert ab.is_zero
                else:
                    assert ab == a * b


@pytest.mark.parametrize("q,text", MODULI)
def test_periodic(q, text):
    d = parse_poly(text, q)
    chi = characters(d)[-1]
    for f in iter_monic(2, q):
        assert chi(f) == chi(f + d * Poly((1, 1), q))


@pytest.mark.parametrize("q,text", MODULI)
def test_orders_and_group_structure(q, text):
    d = parse_poly(text, q)
    chars = characters(d)
    G = chars[0].group
    assert len({c.exponents for c in chars}) == G.order
    assert math.lcm(*(c.order for c in chars)) == G.exponent
    for c in chars:
        assert (c ** c.order).is_principal


@given(st.integers(0, 25), st.integers(0, 25))
def test_character_product_values(i, j):
    d = parse_poly("t^3+2*t+1", 3)
    G = unit_group(d)
    a, b = character(G, i), character(G, j)
    prod = type(a)(G, tuple((x + y) % o for x, y, o in zip(a.exponents, b.exponents, G.orders)))
    for f in list(iter_monic(2, 3)):
        va, vb, vp = a(f), b(f), prod(f)
        assert vp == va * vb


@pytest.mark.parametrize("q,text", MODULI)
def test_row_sums_vanish_exactly(q, text):
    d = parse_poly(text, q)
    for chi in characters(d)[1:]:
        ind = chi.ind_table
        assert is_exact_zero(np.bincount(ind[ind >= 0], minlength=chi.order), chi.order)


def test_table_bound():
    with pytest.raises(TableBoundError):
        unit_group(parse_poly("t^13+t+2", 3), table_bound=1000)
