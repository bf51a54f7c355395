"""Truncated Euler products E_z, F_z and P_+- with explicit tail bounds.

Every product here runs over monic irreducibles p, but a factor depends on p
only through deg p and the class of chi(p).  Exact class counts per degree
come from the prime character sums, so no list of primes is ever built and
the cutoff D costs O(D * N) factor evaluations.

A factor of E_z is exp(l(z, x)) with x = chi(p) u^deg p and

    l(z, x) = -log(1 - z x) + z log(1 - x) + w log(1 - x^2),  w = z(z - 1)/2,
            = sum_{m >= 3} (z^m - z - 2w [m even]) x^m / m,

so |l| <= (|z x|^3 / (1 - |z x|) + (|z| + 2|w|) |x|^3 / (1 - |x|)) / 3.  With at
most q^e / e primes of degree e this bounds the log of the omitted tail.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .characters import Character
from .charsums import prime_char_sums
from .field import factor
from .lfunc import l_function, l_principal

DEFAULT_CUTOFF = 12
_SERIES_SWITCH = 0.25


@dataclass(frozen=True)
class EulerProductEval:
    value: complex
    log_value: complex
    tail_bound: float  # bound on |log(full product) - log_value|
    cutoff: int

    @property
    def error(self) -> float:
        """Bound on |full product - value|."""
        return abs(self.value) * math.expm1(self.tail_bound)


@lru_cache(maxsize=256)
def _class_counts(chi: Character, D: int) -> tuple[tuple[int, ...], ...]:
    ps = prime_char_sums(chi, D)
    return tuple(tuple(ps.class_counts(e)) for e in range(1, D + 1))


def _ell(z: complex, x: np.ndarray) -> np.ndarray:
    """log of (1 - z x)^-1 (1 - x)^z (1 - x^2)^(z(z-1)/2), elementwise."""
    w = z * (z - 1) / 2
    x = np.asarray(x, dtype=complex)
    out = np.empty_like(x)
    small = np.abs(x) * max(1.0, abs(z)) < _SERIES_SWITCH
    if small.any():
        xs = x[small]
        acc = np.zeros_like(xs)
        zm, xm = z * z, xs * xs
        for m in range(3, 200):
            zm *= z
            xm = xm * xs
            c = (zm - z - (2 * w if m % 2 == 0 else 0)) / m
            term = c * xm
            acc += term
            if np.max(np.abs(term)) < 1e-18 * max(1e-300, np.max(np.abs(acc))):
                break
        out[small] = acc
    big = ~small
    if big.any():
        xb = x[big]
        out[big] = -np.log(1 - z * xb) + z * np.log(1 - xb) + w * np.log(1 - xb * xb)
    return out


def _factor_bound(z: complex, t: float) -> float:
    w = abs(z * (z - 1) / 2)
    zt = abs(z) * t
    return (zt**3 / (1 - zt) + (abs(z) + 2 * w) * t**3 / (1 - t)) / 3


def _tail(z: complex, absu: float, q: int, D: int) -> float:
    """sum_{e > D} (q^e / e) * bound(|u|^e): summed until the terms are geometric and negligible."""
    total, e = 0.0, D + 1
    while True:
        t = absu**e
        term = q**e / e * _factor_bound(z, t) if t > 0 else 0.0
        total += term
        # once q |u|^3 < 1 the terms shrink at least geometrically
        ratio = q * absu**3 * max(1.0, abs(z)) ** 3
        if term == 0.0 or (e > D + 5 and term < 1e-18 * max(total, 1e-300)):
            if ratio < 1:
                total += term * ratio / (1 - ratio)
            break
        e += 1
        if e > D + 10_000:
            break
    return total


def _check_domain(z: complex, u: complex, q: int) -> None:
    if abs(z * u) >= 1:
        raise ValueError(f"|z u| = {abs(z * u):.4g} >= 1: Euler product does not converge")
    if abs(u) >= q ** (-1 / 3):
        raise ValueError(f"|u| = {abs(u):.4g} >= q^(-1/3): Euler product does not converge")


def euler_E(z: complex, u: complex, chi: Character, D: int = DEFAULT_CUTOFF) -> EulerProductEval:
    """E_z(u, chi) truncated at deg p <= D."""
    if D < 1:
        raise ValueError("cutoff D must be >= 1")
    q, N = chi.q, chi.order
    _check_domain(z, u, q)
    zeta = np.exp(2j * np.pi * np.arange(N) / N)
    logv = 0j
    for e, counts in enumerate(_class_counts(chi, D), start=1):
        cnt = np.array(counts, dtype=float)
        logv += complex(np.dot(cnt, _ell(z, zeta * u**e)))
    return EulerProductEval(cmath.exp(logv), logv, _tail(z, abs(u), q, D), D)


def log_l_square(u: complex, chi: Character) -> complex:
    """log L(u^2, chi^2) on the branch used for L^z."""
    psi = chi**2
    if psi.is_principal:
        return l_principal(chi.modulus).log_power(u * u)
    return l_function(psi).log_power(u * u)


def euler_F(z: complex, rho: complex, chi: Character, D: int = DEFAULT_CUTOFF) -> complex:
    """F_z(rho, chi) = L(rho^2, chi^2)^(z(z-1)/2) E_z(rho, chi).

    On |u| = q^(-1/2) the product defining F_z does not converge absolutely,
    so it is only ever evaluated through this identity.
    """
    q = chi.q
    if (chi**2).is_principal and min(abs(rho - q**-0.5), abs(rho + q**-0.5)) < 1e-12:
        raise ValueError("F_z has a singularity at u = +-q^(-1/2) when chi^2 is principal")
    w = z * (z - 1) / 2
    return cmath.exp(w * log_l_square(rho, chi)) * euler_E(z, rho, chi, D).value


def euler_F_direct(z: complex, u: complex, chi: Character, cutoff: int = 600) -> EulerProductEval:
    """F_z(u, chi) from its own Euler product, for |u| < q^(-1/2).

    log F_z = sum_e sum_{m >= 2} (z^m - z)/m P_e(chi^m) u^(e m), truncated at e m <= cutoff.
    """
    q, N = chi.q, chi.order
    if abs(u) ** 2 * q >= 1:
        raise ValueError("direct product for F_z needs |u| < q^(-1/2)")
    if abs(z * u) >= 1:
        raise ValueError("|z u| >= 1")
    P = prime_char_sums(chi, cutoff // 2).table
    acc = 0j
    for e in range(1, cutoff // 2 + 1):
        ue = u**e
        for m in range(2, cutoff // e + 1):
            acc += (z**m - z) / m * P[e, m % N] * ue**m
    # omitted terms: |P_e| <= q^e / e, |(z^m - z)/m| <= (|z|^m + |z|) / m
    tail, a, az = 0.0, abs(u), abs(z)
    for e in range(1, cutoff + 1):
        m0 = max(2, cutoff // e + 1)
        t = a**e
        if max(az, 1.0) * t >= 1:
            return EulerProductEval(cmath.exp(acc), acc, math.inf, cutoff)
        geo = (az * t) ** m0 / (1 - az * t) + az * t**m0 / (1 - t)
        tail += q**e / e * geo / m0
    e = cutoff + 1
    while True:
        t = a**e
        term = q**e / e * ((az * t) ** 2 / (1 - az * t) + az * t * t / (1 - t)) / 2
        tail += term
        if term < 1e-20 or e > 20 * cutoff:
            break
        e += 1
    return EulerProductEval(cmath.exp(acc), acc, tail, cutoff)


def _divisor_degrees(chi: Character) -> tuple[int, ...]:
    return tuple(p.degree for p, _ in factor(chi.modulus).factors)


def euler_P(r: float, chi: Character, sign: int, D: int = DEFAULT_CUTOFF) -> EulerProductEval:
    """P_+(r) (sign=+1) or P_-(r) (sign=-1) truncated at deg p <= D."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if chi.is_principal or not chi.is_real:
        raise ValueError("P_+- is defined for real non-principal characters")
    q = chi.q
    if not 0 < r < math.sqrt(q):
        raise ValueError("r must lie in (0, q^(1/2))")
    counts = _class_counts(chi, D)
    w = r * (r + 1) / 2
    logv = 0.0
    for e, cnt in enumerate(counts, start=1):
        T = sign**e * q ** (-e / 2)
        for a, c in enumerate(cnt):
            if not c:
                continue
            x = T * (1 if a == 0 else -1)
            if 1 + r * x <= 0:
                raise ValueError(f"singular factor at degree {e}: 1 + r chi(p) (+-1)^e q^(-e/2) = 0")
            logv += c * float(_ell(-r, np.array([x]))[0].real)
    for e in _divisor_degrees(chi):
        logv += w * math.log1p(-(q ** (-e)))
    tail = _tail(-r, q**-0.5, q, D)
    return EulerProductEval(complex(math.exp(logv)), complex(logv), tail, D)


def euler_P_pm(r: float, chi: Character, D: int = DEFAULT_CUTOFF) -> tuple[EulerProductEval, EulerProductEval]:
    return euler_P(r, chi, 1, D), euler_P(r, chi, -1, D)
