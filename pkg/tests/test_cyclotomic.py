import cmath

import pytest
from hypothesis import given, strategies as st

from ffbias.cyclotomic import CyclotomicRing

Ns = st.sampled_from([1, 2, 3, 4, 6, 8, 12, 13, 26])


def vec(N):
    return st.lists(st.integers(-20, 20), min_size=N, max_size=N)


@given(Ns.flatmap(lambda N: st.tuples(st.just(N), vec(N), vec(N))))
def test_ring_ops_match_complex(args):
    N, u, v = args
    R = CyclotomicRing(N)
    a, b = R.from_counts(u), R.from_counts(v)
    za = sum(c * cmath.exp(2j * cmath.pi * i / N) for i, c in enumerate(u))
    zb = sum(c * cmath.exp(2j * cmath.pi * i / N) for i, c in enumerate(v))
    assert abs(R.to_complex(R.add(a, b)) - (za + zb)) < 1e-9
    assert abs(R.to_complex(R.mul(a, b)) - za * zb) < 1e-7
    assert R.mul(a, b) == R.mul(b, a)


@given(Ns.flatmap(lambda N: st.tuples(st.just(N), vec(N), st.integers(1, 9))))
def test_exact_div_inverts_scale(args):
    N, u, m = args
    R = CyclotomicRing(N)
    a = R.from_counts(u)
    assert R.exact_div(R.scale(a, m), m) == a


def test_sum_of_all_roots_is_zero():
    for N in (2, 3, 8, 12):
        R = CyclotomicRing(N)
        assert R.is_zero(R.from_counts([1] * N))
        assert R.as_integer(R.from_counts([1] + [0] * (N - 1))) == 1


def test_galois():
    R = CyclotomicRing(8)
    z = R.zeta_power(1)
    assert R.galois(z, 3) == R.zeta_power(3)
    with pytest.raises(ValueError):
        R.galois(z, 2)


def test_not_divisible():
    R = CyclotomicRing(3)
    with pytest.raises(ArithmeticError):
        R.exact_div(R.zeta_power(1), 2)
