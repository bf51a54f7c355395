import math

import numpy as np
import pytest

from ffbias.characters import characters
from ffbias.field import gcd, iter_monic, parse_poly, von_mangoldt
from ffbias.lfunc import (
    RHViolation,
    c_rho,
    c_rho_z,
    l_coeffs,
    l_function,
    l_principal,
    l_roots,
)

MODULI = [(3, "t^2+1"), (3, "t^2+2"), (3, "t^3+2*t+1"), (3, "t^3+t^2+2"), (3, "t^4+1"), (5, "t^3+t+1"), (2, "t^5+t^2+1")]


def brute_coeff(chi, n):
    return sum(complex(chi(f)) for f in iter_monic(n, chi.q))


def brute_lambda(chi, m):
    return sum(von_mangoldt(f) * complex(chi(f)) for f in iter_monic(m, chi.q))


@pytest.mark.parametrize("q,text", MODULI)
def test_coefficients_against_enumeration(q, text):
    d = parse_poly(text, q)
    for chi in characters(d)[1:]:
        L = l_coeffs(chi)
        assert L.coeffs[0] == 1
        full = np.zeros(d.degree + 1, dtype=complex)
        full[: len(L.coeffs)] = L.coeffs
        for n in range(d.degree + 1):
            assert abs(full[n] - brute_coeff(chi, n)) < 1e-9
        assert L.degree < d.degree


@pytest.mark.parametrize("q,text", MODULI)
def test_power_sums_of_inverse_roots(q, text):
    # sum_{deg f = m} Lambda(f) chi(f) = -sum alpha^m, a route that never looks at L's coefficients
    d = parse_poly(text, q)
    for chi in characters(d)[1:6]:
        L = l_function(chi)
        for m in range(1, 6):
            ps = -sum(mult * a**m for a, mult in L.inverse_roots)
            assert abs(ps - brute_lambda(chi, m)) < 1e-8 * q ** (m / 2)


@pytest.mark.parametrize("q,text", MODULI)
def test_rh_and_bookkeeping(q, text):
    d = parse_poly(text, q)
    for chi in characters(d)[1:]:
        L = l_function(chi)
        assert sum(m for _, m in L.inverse_roots) == L.degree
        crit = sum(m for _, m in L.nonreal) + L.m_plus + L.m_minus
        assert crit + len(L.trivial_roots) == L.degree
        for a, _ in L.inverse_roots:
            r = abs(a)
            assert min(abs(r - 1), abs(r - math.sqrt(q))) < 1e-9
        for rho, m in L.zeros:
            assert abs(L(rho)) < 1e-9


def test_t2p1_degree_one():
    d = parse_poly("t^2+1", 3)
    for chi in characters(d)[1:]:
        L = l_function(chi)
        assert L.degree == 1
        (a, m), = L.inverse_roots
        assert m == 1 and min(abs(abs(a) - math.sqrt(3)), abs(abs(a) - 1)) < 1e-12


def test_conjugate_character_conjugates_roots():
    d = parse_poly("t^3+2*t+1", 3)
    for chi in characters(d)[1:]:
        key = lambda a: (round(a.real, 9), round(a.imag, 9))
        A = sorted((a for a, _ in l_function(chi).inverse_roots), key=key)
        B = sorted((a.conjugate() for a, _ in l_function(chi.conj()).inverse_roots), key=key)
        assert np.allclose(A, B)


def test_real_zero_bookkeeping():
    # the inverse root +sqrt(q) is the zero u = +q^(-1/2) and is counted by m_plus
    for text in ("t^3+t", "t^3+2*t", "t^4+t^2+2"):
        d = parse_poly(text, 3)
        for chi in characters(d)[1:]:
            L = l_function(chi)
            s = 3 ** -0.5
            assert (abs(L(s)) < 1e-9) == (L.m_plus > 0)
            assert (abs(L(-s)) < 1e-9) == (L.m_minus > 0)


def test_multiple_root_clusters():
    d = parse_poly("t^3+t^2+2", 3)
    chi = characters(d)[13]
    L = l_coeffs(chi)
    # squaring L doubles every multiplicity
    sq = type(L)(chi=chi, coeffs=np.convolve(L.coeffs, L.coeffs))
    R = l_roots(sq)
    assert [m for _, m in R.inverse_roots] == [2, 2]


def test_rh_violation_raised():
    L = l_coeffs(characters(parse_poly("t^2+1", 3))[1])
    bad = type(L)(chi=L.chi, coeffs=np.array([1, -2.5], dtype=complex))
    with pytest.raises(RHViolation):
        l_roots(bad)


def test_c_rho_matches_derivative():
    # c_rho = -rho L'(rho) for a simple zero
    d = parse_poly("t^4+1", 3)
    for chi in characters(d)[1:8]:
        L = l_function(chi)
        for rho, m in L.zeros:
            if m == 1:
                assert abs(c_rho(L, rho) - (-rho * L.derivative(rho))) < 1e-9
                assert abs(c_rho_z(L, rho, 1.0) - c_rho(L, rho)) < 1e-9


def test_principal_series():
    d = parse_poly("t^2+2", 3)
    P = l_principal(d)
    series = P.series(6)
    for n in range(7):
        brute = sum(1 for f in iter_monic(n, 3) if gcd(f, d).is_one())
        assert series[n] == brute
    assert abs(P.phi_ratio() - 4 / 9) < 1e-15
