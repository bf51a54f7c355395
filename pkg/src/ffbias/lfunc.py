"""L(u, chi) as an explicit polynomial, its inverse roots, and branch powers.

For non-principal chi of modulus d, L(u, chi) = sum_n a_n u^n with
a_n = sum over monic f of degree n of chi(f), and a_n = 0 for n >= deg d
(each residue class mod d receives equally many monic f).  Below deg d the
monic f of degree n are themselves reduced residues, so the coefficients are
read off the character's residue table.

Inverse roots alpha have |alpha| in {1, sqrt(q)} (the Riemann hypothesis for
curves); zeros are rho = 1/alpha.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .characters import Character
from .cyclotomic import CyclotomicRing
from .field import Poly, factor

RH_TOL = 1e-9
CLUSTER_RADIUS = 1e-7


class RHViolation(ArithmeticError):
    """An inverse root off the circles |alpha| = 1, sqrt(q): an arithmetic bug."""


@dataclass(frozen=True)
class LData:
    chi: Character
    coeffs: np.ndarray  # complex, constant term first, trailing zeros trimmed
    exact: tuple = ()  # coefficients in Z[zeta_N], N = chi.order
    roots_known: bool = False
    inverse_roots: tuple[tuple[complex, int], ...] = ()
    m_plus: int = 0
    m_minus: int = 0
    nonreal: tuple[tuple[float, int], ...] = ()  # (gamma_j, m_j)
    trivial_roots: tuple[complex, ...] = ()

    @property
    def q(self) -> int:
        return self.chi.q

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def zeros(self) -> list[tuple[complex, int]]:
        self._need_roots()
        return [(1 / a, m) for a, m in self.inverse_roots]

    def critical_zeros(self) -> list[tuple[complex, int]]:
        """Zeros on |u| = q^(-1/2), with multiplicity."""
        s = math.sqrt(self.q)
        return [(1 / a, m) for a, m in self.inverse_roots if abs(abs(a) - s) < RH_TOL * s]

    def _need_roots(self) -> None:
        if not self.roots_known:
            raise ValueError("root data not computed; call l_roots first")

    def __call__(self, u: complex) -> complex:
        return complex(np.polyval(self.coeffs[::-1], u))

    def derivative(self, u: complex) -> complex:
        c = self.coeffs
        return complex(sum(i * c[i] * u ** (i - 1) for i in range(1, len(c))))

    def log_power(self, u: complex, exclude: complex | None = None) -> complex:
        """sum_rho m_rho log(1 - u/rho), principal branch, optionally skipping one zero."""
        self._need_roots()
        acc = 0j
        for a, m in self.inverse_roots:
            if exclude is not None and abs(1 / a - exclude) < CLUSTER_RADIUS:
                continue
            w = 1 - u * a
            if w.imag == 0 and w.real <= 0:
                raise ValueError(f"u = {u} lies on a branch cut of L^z")
            acc += m * cmath.log(w)
        return acc

    def power(self, u: complex, z: complex, exclude: complex | None = None) -> complex:
        """L(u, chi)^z on the principal branch (BranchPower)."""
        return cmath.exp(z * self.log_power(u, exclude))

    def multiplicity(self, rho: complex) -> int:
        self._need_roots()
        for a, m in self.inverse_roots:
            if abs(1 / a - rho) < CLUSTER_RADIUS:
                return m
        return 0


def l_coeffs(chi: Character) -> LData:
    if chi.is_principal:
        raise ValueError("principal character: use l_principal")
    q, D, N = chi.q, chi.modulus.degree, chi.order
    ring = CyclotomicRing(N)
    ind = chi.ind_table
    exact = []
    for n in range(D):
        cls = ind[q**n : 2 * q**n]
        cls = cls[cls >= 0]
        exact.append(ring.from_counts(np.bincount(cls, minlength=N)))
    while exact and ring.is_zero(exact[-1]):
        exact.pop()
    coeffs = np.array([ring.to_complex(a) for a in exact], dtype=complex)
    return LData(chi=chi, coeffs=coeffs, exact=tuple(exact))


@dataclass(frozen=True)
class PrincipalL:
    """L(u, chi_0) = prod_{p | d} (1 - u^deg p) / (1 - q u)."""

    modulus: Poly
    prime_degrees: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.modulus.q

    def numerator(self) -> np.ndarray:
        out = np.array([1], dtype=np.int64)
        for e in self.prime_degrees:
            f = np.zeros(e + 1, dtype=np.int64)
            f[0], f[e] = 1, -1
            out = np.convolve(out, f)
        return out

    def __call__(self, u: complex) -> complex:
        num = np.prod([1 - u**e for e in self.prime_degrees]) if self.prime_degrees else 1
        return complex(num / (1 - self.q * u))

    def log_power(self, u: complex) -> complex:
        acc = -cmath.log(1 - self.q * u)
        for e in self.prime_degrees:
            acc += cmath.log(1 - u**e)
        return acc

    def power(self, u: complex, z: complex) -> complex:
        return cmath.exp(z * self.log_power(u))

    def series(self, n: int) -> np.ndarray:
        """Power-series coefficients up to u^n (exact integers)."""
        num = self.numerator()
        geo = np.array([self.q**i for i in range(n + 1)], dtype=object)
        out = [sum(int(num[i]) * geo[m - i] for i in range(min(m, len(num) - 1) + 1)) for m in range(n + 1)]
        return np.array(out, dtype=object)

    def phi_ratio(self) -> float:
        """prod_{p | d} (1 - q^(-deg p)) = phi(d) / q^deg d."""
        return math.prod(1 - self.q ** (-e) for e in self.prime_degrees)


def l_principal(d: Poly) -> PrincipalL:
    return PrincipalL(d, tuple(p.degree for p, _ in factor(d).factors))


def l_function(chi: Character) -> LData:
    return l_roots(l_coeffs(chi))


# -- roots ----------------------------------------------------------------------

def _group(raw: np.ndarray, radius: float) -> list[list[complex]]:
    groups: list[list[complex]] = []
    for x in sorted(raw, key=lambda v: (round(v.real, 6), round(v.imag, 6))):
        for g in groups:
            if abs(np.mean(g) - x) < radius:
                g.append(x)
                break
        else:
            groups.append([x])
    return groups


def _refine(poly: np.ndarray, x: complex, m: int, steps: int = 50) -> complex:
    # Newton on the (m-1)-th derivative, where an m-fold root is simple
    dp = np.polyder(poly, m - 1) if m > 1 else poly
    ddp = np.polyder(dp)
    for _ in range(steps):
        den = np.polyval(ddp, x)
        if den == 0:
            break
        step = np.polyval(dp, x) / den
        x = x - step
        if abs(step) < 1e-17 * max(1.0, abs(x)):
            break
    return complex(x)


def _reconstruct(groups: Sequence[tuple[complex, int]], degree: int) -> np.ndarray:
    out = np.array([1], dtype=complex)
    for a, m in groups:
        for _ in range(m):
            out = np.convolve(out, [1, -a])
    return out


def l_roots(L: LData, cluster_radius: float = CLUSTER_RADIUS, rh_tol: float = RH_TOL) -> LData:
    q = L.q
    D = L.degree
    if D <= 0:
        return replace(L, roots_known=True)
    # inverse roots are the roots of x^D + a_1 x^(D-1) + ... + a_D
    poly = L.coeffs.copy()
    raw = np.roots(poly)
    scale = math.sqrt(q)
    best = None
    for radius in (cluster_radius * scale, 1e-4 * scale):
        groups = []
        for g in _group(raw, radius):
            groups.append((_refine(poly, complex(np.mean(g)), len(g)), len(g)))
        resid = np.max(np.abs(_reconstruct(groups, D) - L.coeffs))
        if best is None or resid < best[1] - 1e-14:
            best = (groups, resid)
    groups, resid = best
    if resid > 1e-9:
        raise ArithmeticError(f"root reconstruction residual {resid:.2e} too large")
    for i, (a, _) in enumerate(groups):
        for b, _ in groups[i + 1 :]:
            if abs(a - b) < cluster_radius:
                raise ArithmeticError("distinct root groups closer than the cluster radius")

    m_plus = m_minus = 0
    nonreal, trivial, inv = [], [], []
    for a, m in groups:
        r = abs(a)
        if abs(r - scale) <= rh_tol * scale:
            if abs(a.imag) <= rh_tol * scale:
                a = complex(math.copysign(scale, a.real), 0.0)
                if a.real > 0:
                    m_plus += m
                else:
                    m_minus += m
            else:
                nonreal.append((cmath.phase(a) % (2 * math.pi), m))
        elif abs(r - 1) <= rh_tol:
            trivial.extend([a] * m)
        else:
            raise RHViolation(f"inverse root {a} has modulus {r}, not 1 or sqrt({q})")
        inv.append((a, m))
    nonreal.sort()
    inv.sort(key=lambda am: (cmath.phase(am[0]) % (2 * math.pi), abs(am[0])))
    return replace(
        L,
        roots_known=True,
        inverse_roots=tuple(inv),
        m_plus=m_plus,
        m_minus=m_minus,
        nonreal=tuple(nonreal),
        trivial_roots=tuple(trivial),
    )


def c_rho(L: LData, rho: complex) -> complex:
    """L(u)/(1 - u/rho)^m_rho at u = rho, i.e. the product over the other zeros."""
    _check_rho(L, rho)
    out = 1 + 0j
    for a, m in L.inverse_roots:
        if abs(1 / a - rho) < CLUSTER_RADIUS:
            continue
        out *= (1 - rho * a) ** m
    return out


def c_rho_z(L: LData, rho: complex, z: complex) -> complex:
    """exp(z * sum_{rho' != rho} m log(1 - rho/rho'))."""
    _check_rho(L, rho)
    return L.power(rho, z, exclude=rho)


def _check_rho(L: LData, rho: complex) -> None:
    L._need_roots()
    if L.multiplicity(rho):
        return
    s = 1 / math.sqrt(L.q)
    if abs(rho - s) < CLUSTER_RADIUS or abs(rho + s) < CLUSTER_RADIUS:
        return
    raise ValueError(f"{rho} is not a zero of L(u, chi) nor +-q^(-1/2)")
