"""Asymptotic formulas for M_z(n, chi) and the normalised sums pi~_k(n, chi).

Contents, bottom up:

* the Hankel integral (1/2 pi i) int w^z (1 - w/n)^-(n+1) dw and its exact
  closed form for the infinite contour;
* saddle-point coefficient extraction for n^(a z) f(z) and n^(a z^2 + b z) f(z),
  with circle quadrature as the independent check;
* the explicit formula for M_z(n, chi) as a sum over critical zeros;
* main terms for pi~_k in the fixed-k regimes and in the k ~ alpha log n
  regime, including the bias exponent b(alpha).

Reciprocal gamma is used throughout, so terms that vanish at poles of Gamma
come out as exact zeros.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln, loggamma, rgamma

from .characters import Character
from .charsums import SumTable, norm_factor
from .euler import DEFAULT_CUTOFF, euler_E, euler_F, euler_P_pm
from .lfunc import LData, c_rho_z, l_principal

HANKEL_TOL = 1e-10


# -- Hankel integral -----------------------------------------------------------------

_GL = {m: leggauss(m) for m in (16, 32)}


def _gl(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, m: int) -> complex:
    x, w = _GL[m]
    h = (b - a) / 2
    return complex(h * np.dot(w, f(a + h * (x + 1))))


def adaptive_gl(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, tol: float, depth: int = 50) -> complex:
    """Adaptive Gauss-Legendre: accept a panel when 16 and 32 nodes agree."""
    coarse = _gl(f, a, b, 16)
    fine = _gl(f, a, b, 32)
    if abs(fine - coarse) <= tol or depth == 0:
        return fine
    mid = (a + b) / 2
    return adaptive_gl(f, a, mid, tol / 2, depth - 1) + adaptive_gl(f, mid, b, tol / 2, depth - 1)


def hankel_integral(z: complex, n: int, delta: float = 0.5, tol: float = HANKEL_TOL) -> complex:
    """(1/2 pi i) int_H w^z (1 - w/n)^-(n+1) dw, H = unit circle plus both sides of [-n delta, -1].

    The circle contributes (1/2 pi) int_{-pi}^{pi} e^{i(z+1)t} (1 - e^{it}/n)^-(n+1) dt; the two
    rays combine to -(sin(pi z)/pi) int_1^{n delta} x^z (1 + x/n)^-(n+1) dx.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n < 2:
        raise ValueError("n must be >= 2")
    z = complex(z)

    def circle(t):
        e = np.exp(1j * t)
        return np.exp(1j * (z + 1) * t - (n + 1) * np.log1p(-e / n))

    def ray(x):
        return np.exp(z * np.log(x) - (n + 1) * np.log1p(x / n))

    c = adaptive_gl(circle, -math.pi, math.pi, tol / 4) / (2 * math.pi)
    end = n * delta
    rays = 0j
    if end > 1 and abs(np.sin(np.pi * z)) > 0:
        # geometric panels: the integrand decays like e^{-x} well before n delta
        edges = [1.0]
        while edges[-1] < end:
            edges.append(min(end, edges[-1] * 2))
        for lo, hi in zip(edges, edges[1:]):
            rays += adaptive_gl(ray, lo, hi, tol / (4 * len(edges)))
        rays *= -np.sin(np.pi * z) / np.pi
    return c + rays


def hankel_closed_form(z: complex, n: int) -> complex:
    """The same integral over the infinite contour: n^(z+1) Gamma(n-z) / (Gamma(n+1) Gamma(-z))."""
    z = complex(z)
    return complex(np.exp((z + 1) * math.log(n) + loggamma(n - z) - gammaln(n + 1)) * rgamma(-z))


# -- coefficient extraction ------------------------------------------------------------

def circle_coeff(g: Callable[[np.ndarray], np.ndarray], k: int, r: float, points: int | None = None) -> complex:
    """k-th Taylor coefficient of g by the trapezoid rule on |z| = r."""
    M = points or max(256, 4 * k + 64)
    th = 2 * np.pi * np.arange(M) / M
    z = r * np.exp(1j * th)
    return complex(np.mean(g(z) * np.exp(-1j * k * th)) / r**k)


@dataclass(frozen=True)
class SaddleParams:
    a: float
    b: float
    k: int
    n: float
    r: float

    @classmethod
    def solve(cls, a: float, b: float, k: float, n: float) -> SaddleParams:
        if a <= 0 or b <= 0:
            raise ValueError("a and b must be positive")
        L = math.log(n)
        x = 8 * a * k / (b * b * L)
        r = 2 * k / (b * L * (1 + math.sqrt(1 + x)))
        return cls(a, b, k, n, r)

    @property
    def residual(self) -> float:
        L = math.log(self.n)
        return self.r**2 + self.b / (2 * self.a) * self.r - self.k / (2 * self.a * L)


def _log_fact(k: int) -> float:
    return math.lgamma(k + 1)


def lemma2_main(a: float, f: Callable[[complex], complex], n: float, k: int) -> complex:
    """(a log n)^k / k! * f(k / (a log n))."""
    L = a * math.log(n)
    return math.exp(k * math.log(L) - _log_fact(k)) * complex(f(k / L))


def extract_coeff_lemma2(a: float, f: Callable[[complex], complex], n: float, k: int, A: float = 1.0) -> complex:
    if a <= 0:
        raise ValueError("a must be positive")
    if not 1 <= k <= a * A * math.log(n):
        raise ValueError(f"k = {k} outside 1 <= k <= a A log n")
    return lemma2_main(a, f, n, k)


def lemma2_quadrature(a: float, f: Callable, n: float, k: int) -> complex:
    """c_k of n^(a z) f(z) by circle quadrature at the saddle radius k / (a log n)."""
    L = math.log(n)
    return circle_coeff(lambda z: np.exp(a * L * z) * f(z), k, k / (a * L))


def extract_coeff_lemma3(a: float, b: float, f: Callable, n: float, k: int, part: str, A: float = 1.0) -> complex:
    """Main terms of the three extraction formulas for n^(a z^2 + b z) f(z)."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    L = math.log(n)
    if part == "a":
        if not 1 <= k <= min(L**0.5, b * A * L):
            raise ValueError(f"k = {k} outside the part (a) range")
        return math.exp(k * math.log(b * L) - _log_fact(k))
    if part == "b":
        if not 1 <= k <= min(L ** (2 / 3), b * A * L):
            raise ValueError(f"k = {k} outside the part (b) range")
        return math.exp(k * math.log(b * L) - _log_fact(k) + a * k * k / (b * b * L))
    if part == "c":
        if not 1 <= k <= 2 * a * A * A * L:
            raise ValueError(f"k = {k} outside the part (c) range")
        r = SaddleParams.solve(a, b, k, n).r
        logm = (a * r * r + b * r) * L - k * math.log(r)
        return math.exp(logm) * complex(f(r)) / math.sqrt(2 * math.pi * (4 * a * r * r + b * r) * L)
    raise ValueError("part must be 'a', 'b' or 'c'")


def lemma3_quadrature(a: float, b: float, f: Callable, n: float, k: int) -> complex:
    L = math.log(n)
    r = SaddleParams.solve(a, b, k, n).r
    return circle_coeff(lambda z: np.exp(L * (a * z * z + b * z)) * f(z), k, r)


# -- explicit formula for M_z ---------------------------------------------------------------

@dataclass(frozen=True)
class RootTerm:
    label: str
    rho: complex
    multiplicity: int
    value: complex


@dataclass(frozen=True)
class Prop1Result:
    z: complex
    n: int
    terms: tuple[RootTerm, ...]
    normalized: bool = False

    @property
    def total(self) -> complex:
        return sum((t.value for t in self.terms), 0j)

    @property
    def scale(self) -> float:
        """max over terms of |rho^-n n^(-z m - 1)|-type size, for normalising residuals."""
        return max((abs(t.value) for t in self.terms), default=0.0)


def _critical_zeros(L: LData) -> list[tuple[complex, int]]:
    return sorted(L.critical_zeros(), key=lambda rm: (cmath.phase(rm[0]) % (2 * math.pi)))


def prop1_Mz(z: complex, n: int, L: LData, D: int = DEFAULT_CUTOFF, normalized: bool = False) -> Prop1Result:
    """Explicit-formula approximation to M_z(n, chi) = sum_k z^k pi_k(n, chi).

    With normalized=True every term is divided by q^(n/2), which keeps
    very large n in floating-point range.
    """
    chi = L.chi
    q = chi.q
    z = complex(z)
    if abs(z) >= math.sqrt(q):
        raise ValueError("need |z| < q^(1/2)")
    logn = math.log(n)
    sq = q**-0.5
    base = 0.0 if normalized else (n / 2) * math.log(q)
    real_case = (chi**2).is_principal
    terms = []
    for rho, m in _critical_zeros(L):
        if real_case and abs(rho.imag) < 1e-12:
            continue
        F = euler_F(z, rho, chi, D)
        c = c_rho_z(L, rho, z)
        # rho^-n / q^(n/2) split into a modulus part (zero up to rounding) and a phase
        logmod = -n * (math.log(abs(rho)) + 0.5 * math.log(q))
        phase = -((n * cmath.phase(rho)) % (2 * math.pi))
        val = cmath.exp(base + logmod + 1j * phase + (-z * m - 1) * logn) * F * c * complex(rgamma(-z * m))
        terms.append(RootTerm(f"rho@{cmath.phase(1 / rho):.6f}", rho, m, val))
    if real_case:
        for sgn, m in ((1, L.m_plus), (-1, L.m_minus)):
            val = real_zero_term(z, logn, L, sgn, D) * (sgn**n) * math.exp(base)
            terms.append(RootTerm("plus" if sgn > 0 else "minus", sgn * sq, m, val))
    return Prop1Result(z, n, tuple(terms), normalized)


def real_zero_term(z: complex, logn: float, L: LData, sign: int, D: int = DEFAULT_CUTOFF) -> complex:
    """Term of u = sign q^(-1/2) in the explicit formula, divided by sign^n q^(n/2).

    Only log n enters, so n need not be an integer here.
    """
    chi = L.chi
    z = complex(z)
    w = z * (z - 1) / 2
    m = L.m_plus if sign > 0 else L.m_minus
    rho = sign * chi.q**-0.5
    E = euler_E(z, rho, chi, D).value
    c = c_rho_z(L, rho, z)
    ratio = l_principal(chi.modulus).phi_ratio()
    val = cmath.exp((-1 - z * m + w) * logn + w * math.log(ratio / 2)) * E * c
    return val * complex(rgamma(-z * m + w))


# -- pi~_k main terms -------------------------------------------------------------------

@dataclass(frozen=True)
class FormulaReport:
    n: int
    k: int
    chi_id: str
    exact: complex
    main: complex
    oscillating: complex
    bias: complex
    error_scale: float  # factor multiplying the O(.) in the error term
    extras: dict = field(default_factory=dict)

    @property
    def residual(self) -> complex:
        return self.exact - self.main


def chi_id(chi: Character) -> str:
    return f"{chi.modulus}#{chi.index}"


def _tilde(table: SumTable, k: int) -> complex:
    return table[k] * norm_factor(table.n, k, table.chi.q)


def _osc(L: LData, n: int, k: int) -> tuple[complex, float]:
    s, mass = 0j, 0.0
    for g, m in L.nonreal:
        s += m**k * cmath.exp(1j * n * g)
        mass += m**k
    return s, mass


def thm1_main(table: SumTable, k: int, L: LData) -> FormulaReport:
    """Fixed-k formula for chi^2 != chi_0."""
    chi, n = L.chi, table.n
    if (chi**2).is_principal:
        raise ValueError("needs chi^2 != chi_0")
    if not 1 <= k <= math.sqrt(chi.q) * math.log(n):
        raise ValueError(f"k = {k} outside 1 <= k <= q^(1/2) log n")
    osc, mass = _osc(L, n, k)
    bias = L.m_plus**k + (-1) ** n * L.m_minus**k
    scale = k / math.log(n) * (mass + L.m_plus**k + L.m_minus**k)
    return FormulaReport(n, k, chi_id(chi), _tilde(table, k), osc + bias, osc, bias, scale)


def thm3_main(table: SumTable, k: int, L: LData, variant: str = "first") -> FormulaReport:
    """Fixed-k formula for real chi; 'second' adds the Gaussian correction to the bias terms."""
    chi, n = L.chi, table.n
    if not (chi**2).is_principal:
        raise ValueError("needs chi^2 = chi_0")
    logn = math.log(n)
    osc, mass = _osc(L, n, k)
    if variant == "first":
        if not 1 <= k <= logn**0.5:
            raise ValueError(f"k = {k} outside 1 <= k <= (log n)^(1/2)")
        amp = [(m + 0.5) ** k for m in (L.m_plus, L.m_minus)]
        scale = k / logn * mass + k * k / logn * max(amp)
    elif variant == "second":
        if not 1 <= k <= logn ** (2 / 3):
            raise ValueError(f"k = {k} outside 1 <= k <= (log n)^(2/3)")
        amp = [(m + 0.5) ** k * math.exp((k - 1) ** 2 / (2 * (m + 0.5) ** 2 * logn)) for m in (L.m_plus, L.m_minus)]
        scale = k / logn * mass + (1 / k + k**3 / logn**2) * max(amp)
    else:
        raise ValueError("variant must be 'first' or 'second'")
    bias = amp[0] + (-1) ** n * amp[1]
    return FormulaReport(n, k, chi_id(chi), _tilde(table, k), osc + bias, osc, bias, scale)


# -- bias exponent and constants ---------------------------------------------------------

def s_of(alpha: float) -> float:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    # (sqrt(1 + 16 a) - 1) / (8 a) without cancellation for small a
    return 2 / (1 + math.sqrt(1 + 16 * alpha))


def bias_function(alpha: float) -> tuple[float, float]:
    """(s(alpha), b(alpha)) with b = alpha ((s - 1)/2 - log 2 s)."""
    s = s_of(alpha)
    return s, alpha * ((s - 1) / 2 - math.log(2 * s))


def bias_inner(s: float) -> float:
    """(s - 1)/2 - log 2s, the factor whose sign decides the sign of b."""
    return (s - 1) / 2 - math.log(2 * s)


@dataclass(frozen=True)
class Constants:
    beta: float
    gamma: float

    @property
    def beta_residual(self) -> float:
        return abs(math.exp(self.beta - 1) - 4 * self.beta**2)

    @property
    def gamma_residual(self) -> float:
        return abs(self.gamma - (1 - self.beta) / (4 * self.beta**2))


def solve_constants(start: float = 0.35, tol: float = 1e-15, max_iter: int = 100) -> Constants:
    """Newton on g(beta) = e^(beta-1) - 4 beta^2; gamma = (1 - beta)/(4 beta^2)."""
    x = start
    for _ in range(max_iter):
        g = math.exp(x - 1) - 4 * x * x
        step = g / (math.exp(x - 1) - 8 * x)
        x -= step
        if abs(step) < tol:
            break
    else:
        raise ArithmeticError("Newton iteration for beta did not converge")
    return Constants(x, (1 - x) / (4 * x * x))


# -- k ~ alpha log n -----------------------------------------------------------------------

@dataclass(frozen=True)
class BiasEval:
    alpha: float
    r: float
    s: float
    u: float
    b: float
    h_plus: complex
    h_minus: complex
    h_j: tuple[tuple[float, complex], ...]  # (gamma_j, h_j)


def saddle_r(alpha: float) -> float:
    """Positive root of r^2 + r/2 - alpha = 0."""
    return 4 * alpha / (1 + math.sqrt(1 + 16 * alpha))


def check_thm4_hypotheses(L: LData) -> None:
    chi = L.chi
    if chi.is_principal or not chi.is_real:
        raise ValueError("needs a real non-principal character")
    if L.m_plus or L.m_minus:
        raise ValueError(f"hypothesis violated: m_+ = {L.m_plus}, m_- = {L.m_minus}")
    if any(m != 1 for _, m in L.nonreal):
        raise ValueError("hypothesis violated: a non-real zero is multiple")


def h_coefficients(alpha: float, L: LData, D: int = DEFAULT_CUTOFF, form: str = "derived") -> BiasEval:
    """Coefficients of the bias and oscillating terms at k/log n ~ alpha.

    form="derived" keeps the factor 1/r that the saddle-point evaluation of
    the +-q^(-1/2) terms produces; form="stated" omits it.
    """
    chi = L.chi
    q = chi.q
    if not 0 < alpha < math.sqrt(q):
        raise ValueError("alpha must lie in (0, q^(1/2))")
    r = saddle_r(alpha)
    s, b = bias_function(alpha)
    hj = []
    for rho, m in _critical_zeros(L):
        if abs(rho.imag) < 1e-12 and (chi**2).is_principal:
            continue
        F = euler_F(-alpha, rho, chi, D)
        c = c_rho_z(L, rho, -alpha)
        hj.append((cmath.phase(1 / rho) % (2 * math.pi), F * c * complex(rgamma(1 + alpha))))
    hp = hm = 0j
    if (chi**2).is_principal:
        Pp, Pm = euler_P_pm(r, chi, D)
        w = r * (r + 1) / 2
        base = 2.0 ** (-w) * float(rgamma(w)) / math.sqrt(1 + r * r / alpha)
        if form == "derived":
            base /= r
        elif form != "stated":
            raise ValueError("form must be 'derived' or 'stated'")
        sq = q**-0.5
        hp = Pp.value * base * cmath.exp(-r * L.log_power(sq))
        hm = Pm.value * base * cmath.exp(-r * L.log_power(-sq))
    return BiasEval(alpha, r, s, alpha, b, hp, hm, tuple(hj))


def thm4_eval(table: SumTable, k: int, L: LData, D: int = DEFAULT_CUTOFF, form: str = "derived") -> tuple[FormulaReport, BiasEval]:
    """Large-k prediction with alpha taken as u = (k - 1)/log n."""
    chi, n = L.chi, table.n
    check_thm4_hypotheses(L)
    if k < 2:
        raise ValueError("needs k >= 2")
    logn = math.log(n)
    u = (k - 1) / logn
    ev = h_coefficients(u, L, D, form)
    bias = (ev.h_plus + (-1) ** n * ev.h_minus) * math.exp(ev.b * logn)
    osc = sum((h * cmath.exp(1j * n * g) for g, h in ev.h_j), 0j)
    osc_bound = sum(abs(h) for _, h in ev.h_j)
    rep = FormulaReport(
        n, k, chi_id(chi), _tilde(table, k), bias + osc, osc, bias, 1.0,
        {"osc_bound": osc_bound, "n_b": math.exp(ev.b * logn)},
    )
    return rep, ev


def saddle_sides(n: float, k: int) -> tuple[float, float]:
    """Both sides of the saddle-point identity for the +-q^(-1/2) terms.

    left  = n^(r^2/2 + r/2) r^-(k-1) / sqrt(2 pi (2 r^2 + r/2) log n),
    right = (log n)^(k-1)/(k-1)! * n^b(u) / sqrt(1 + r^2/u),  u = (k-1)/log n.
    """
    logn = math.log(n)
    u = (k - 1) / logn
    r = saddle_r(u)
    left = math.exp((r * r / 2 + r / 2) * logn - (k - 1) * math.log(r)) / math.sqrt(2 * math.pi * (2 * r * r + r / 2) * logn)
    _, b = bias_function(u)
    right = math.exp((k - 1) * math.log(logn) - math.lgamma(k) + b * logn) / math.sqrt(1 + r * r / u)
    return left, right
