import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffbias.characters import characters
from ffbias.euler import (
    _ell,
    euler_E,
    euler_F,
    euler_F_direct,
    euler_P,
    euler_P_pm,
    log_l_square,
)
from ffbias.field import irreducibles, parse_poly
from ffbias.lfunc import l_function

CHI = characters(parse_poly("t^2+1", 3))[1]
REAL = characters(parse_poly("t^3+t^2+2", 3))[13]


def test_trivial_exponents():
    for u in (0.1, 0.3j, -0.2 + 0.1j):
        assert euler_E(1.0, u, CHI).value == 1
        assert euler_E(0.0, u, CHI).value == 1
    rho = l_function(CHI).zeros[0][0]
    assert abs(euler_F(1.0, rho, CHI) - 1) < 1e-15
    assert abs(euler_F(0.0, rho, CHI) - 1) < 1e-15


@given(st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=0.3, allow_nan=False, allow_infinity=False))
def test_ell_matches_closed_form(z, x):
    if abs(z * x) > 0.9 or abs(x) > 0.9:
        return
    w = z * (z - 1) / 2
    closed = -cmath.log(1 - z * x) + z * cmath.log(1 - x) + w * cmath.log(1 - x * x)
    assert abs(_ell(z, np.array([x]))[0] - closed) < 1e-12


def test_E_against_explicit_primes():
    z, u, D = -0.6 + 0.2j, 0.25, 6
    w = z * (z - 1) / 2
    logv = 0j
    for e in range(1, D + 1):
        for p in irreducibles(e, 3):
            v = CHI(p)
            if v.is_zero:
                continue
            x = complex(v) * u**e
            logv += -cmath.log(1 - z * x) + z * cmath.log(1 - x) + w * cmath.log(1 - x * x)
    got = euler_E(z, u, CHI, D)
    assert abs(got.log_value - logv) < 1e-12


def test_tail_bound_covers_truncation():
    z, u = -0.7, 0.45 * cmath.exp(0.7j)
    ref = euler_E(z, u, CHI, 24)
    for D in (4, 6, 8, 12):
        ev = euler_E(z, u, CHI, D)
        assert abs(ev.log_value - ref.log_value) <= ev.tail_bound
        assert ev.tail_bound > ref.tail_bound


def test_direct_F_matches_identity():
    rho = 0.5 * cmath.exp(0.9j)
    for z in (-0.7, 0.4 + 0.3j, -1.3):
        direct = euler_F_direct(z, rho, CHI)
        via = cmath.exp(z * (z - 1) / 2 * log_l_square(rho, CHI)) * euler_E(z, rho, CHI, 16).value
        assert abs(direct.value - via) < 1e-8 * abs(via)


def test_domain_errors():
    with pytest.raises(ValueError):
        euler_E(2.0, 0.6, CHI)
    with pytest.raises(ValueError):
        euler_F(0.5, 3**-0.5, REAL)


def test_P_limits_and_signs():
    Pp, Pm = euler_P_pm(1e-7, REAL)
    assert abs(Pp.value - 1) < 1e-6 and abs(Pm.value - 1) < 1e-6
    Pp, Pm = euler_P_pm(0.9, REAL, 14)
    assert Pp.value.real > 0 and Pm.value.real > 0
    with pytest.raises(ValueError):
        euler_P(0.5, CHI, 1)
    with pytest.raises(ValueError):
        euler_P(0.5, REAL, 0)


def test_P_cutoff_convergence():
    a = euler_P(0.8, REAL, 1, 10)
    b = euler_P(0.8, REAL, 1, 20)
    assert abs(a.log_value - b.log_value) <= a.tail_bound
