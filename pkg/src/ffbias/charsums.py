"""pi_k(n, chi): exact enumeration and the generating-function pipeline.

The analytic route never touches individual polynomials of degree n.  Power
sums of inverse roots (Newton identities on the L-coefficients, exact in
Z[zeta_N]) give the Lambda-sums c_m(chi^j) = sum_{deg f = m} Lambda(f) chi^j(f),
Moebius-style inversion gives the prime sums P[e][j], and

    G(z, u) = prod_p (1 - z chi(p) u^deg p)^(-1) = exp(S),
    S = sum_{j >= 1} z^j / j sum_e P[e][j mod N] u^(j e),

is exponentiated with m G_m = sum_l l S_l G_(m-l).  pi_k(n, chi) is the
coefficient of z^k u^n.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .characters import Character
from .cyclotomic import CyclotomicRing
from .field import count_irreducibles, factor, index_digits, omega_table, reduce_rows

N_CAP = 300
ENUM_CAP = 2**24


class BudgetError(RuntimeError):
    pass


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("FFBIAS_THREADS", "")))
    except ValueError:
        return os.cpu_count() or 1


@dataclass(frozen=True, eq=False)
class PrimeCharSums:
    chi: Character
    n_max: int
    exact: tuple  # exact[e][j] in Z[zeta_N]; row 0 unused
    table: np.ndarray  # complex (n_max + 1, N)

    @property
    def modulus(self):
        return self.chi.modulus

    @property
    def N(self) -> int:
        return self.chi.order

    def class_counts(self, e: int) -> list[int]:
        """Exact number of monic irreducible p of degree e with chi(p) = zeta_N^a, per a."""
        ring = CyclotomicRing(self.N)
        N = self.N
        out = []
        for a in range(N):
            acc = ring.zero()
            for j in range(N):
                acc = ring.add(acc, ring.mul(self.exact[e][j], ring.zeta_power(-a * j)))
            out.append(ring.as_integer(ring.exact_div(acc, N)))
        return out


def _lambda_sums(chi: Character, j: int, n_max: int, ring: CyclotomicRing) -> list:
    """c_m(chi^j) for m = 0..n_max, exactly."""
    psi = chi**j
    q = chi.q
    if psi.is_principal:
        divs = [p.degree for p, _ in factor(chi.modulus).factors]
        return [ring.zero()] + [
            ring.integer(q**m - sum(e for e in divs if m % e == 0)) for m in range(1, n_max + 1)
        ]
    # coefficients of L(u, chi^j) from the class histogram of chi, so that
    # non-primitive powers stay exact in Z[zeta_N]
    ind = chi.ind_table
    N = chi.order
    a = []
    for n in range(chi.modulus.degree):
        cls = ind[q**n : 2 * q**n]
        cls = cls[cls >= 0]
        a.append(ring.from_counts(np.bincount(cls * j % N, minlength=N)))
    D = len(a) - 1
    c = [ring.zero()]
    for m in range(1, n_max + 1):
        acc = ring.scale(a[m], m) if m <= D else ring.zero()
        for i in range(1, min(m - 1, D) + 1):
            acc = ring.sub(acc, ring.mul(c[m - i], a[i]))
        c.append(acc)
    return c


@lru_cache(maxsize=64)
def _prime_char_sums(chi: Character, n_max: int) -> PrimeCharSums:
    N = chi.order
    ring = CyclotomicRing(N)
    lam = [_lambda_sums(chi, j, n_max, ring) for j in range(N)]
    P = [[ring.zero()] * N]
    for m in range(1, n_max + 1):
        row = []
        for j in range(N):
            acc = lam[j][m]
            for e in range(1, m):
                if m % e == 0:
                    acc = ring.sub(acc, ring.scale(P[e][j * (m // e) % N], e))
            row.append(ring.exact_div(acc, m))
        P.append(row)
    table = np.array([[ring.to_complex(x) for x in row] for row in P], dtype=complex)
    table.setflags(write=False)
    return PrimeCharSums(chi, n_max, tuple(tuple(r) for r in P), table)


def prime_char_sums(chi: Character, n_max: int) -> PrimeCharSums:
    """Exact prime sums P[e][j] = sum_{deg p = e} chi^j(p), 1 <= e <= n_max, j mod N."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return _prime_char_sums(chi, n_max)


@dataclass(frozen=True, eq=False)
class SumTable:
    n: int
    chi: Character
    values: np.ndarray  # complex, index k = 0..n
    method: str
    counts: np.ndarray | None = None  # exact (n+1, N) value-class counts, enumeration only

    def __getitem__(self, k: int) -> complex:
        return complex(self.values[k])

    def M(self, z: complex) -> complex:
        """M_z(n, chi) = sum_k z^k pi_k(n, chi)."""
        return complex(np.polyval(self.values[::-1], z))

    def normalized(self) -> NormalizedTable:
        return normalize(self)


@dataclass(frozen=True, eq=False)
class NormalizedTable:
    n: int
    q: int
    values: np.ndarray  # index k = 1..n at position k; position 0 is nan

    def __getitem__(self, k: int) -> complex:
        if k < 1:
            raise IndexError("normalisation is defined for k >= 1 only")
        return complex(self.values[k])


def norm_factor(n: int, k: int, q: int) -> float:
    """n (k-1)! (-1)^k / (q^(n/2) (log n)^(k-1))."""
    if n < 2:
        raise ValueError("normalisation needs n >= 2")
    if k < 1:
        raise ValueError("normalisation is defined for k >= 1 only")
    L = math.log(n)
    sign = -1.0 if k % 2 else 1.0
    if k <= 20 and n <= 1000:
        return sign * n * math.factorial(k - 1) / (q ** (n / 2) * L ** (k - 1))
    return sign * math.exp(math.log(n) + math.lgamma(k) - (n / 2) * math.log(q) - (k - 1) * math.log(L))


def normalize(T: SumTable) -> NormalizedTable:
    q = T.chi.q
    vals = np.full(T.n + 1, np.nan, dtype=complex)
    for k in range(1, T.n + 1):
        vals[k] = T.values[k] * norm_factor(T.n, k, q)
    return NormalizedTable(T.n, q, vals)


def denormalize(tilde: complex, n: int, k: int, q: int) -> complex:
    return tilde / norm_factor(n, k, q)


# -- analytic pipeline ---------------------------------------------------------------

def analytic_tables(chi: Character, n_max: int, n_cap: int = N_CAP) -> list[SumTable]:
    """Tables for every n = 0..n_max from a single exponentiation."""
    if n_max > n_cap:
        raise BudgetError(f"n = {n_max} exceeds the analytic budget n_cap = {n_cap}")
    if n_max < 0:
        raise ValueError("n must be >= 0")
    N = chi.order
    P = prime_char_sums(chi, max(n_max, 1)).table
    n = n_max
    G = np.zeros((n + 1, n + 1), dtype=complex)
    G[0, 0] = 1
    for m in range(1, n + 1):
        acc = np.zeros(n + 1, dtype=complex)
        for j in range(1, m + 1):
            es = np.arange(1, m // j + 1)
            v = (es * P[es, j % N]) @ G[m - j * es]
            acc[j:] += v[: n + 1 - j]
        G[m] = acc / m
    return [SumTable(m, chi, G[m, : m + 1].copy(), "analytic") for m in range(n + 1)]


def pi_k_analytic(chi: Character, n: int, n_cap: int = N_CAP) -> SumTable:
    return analytic_tables(chi, n, n_cap)[n]


# -- enumeration oracle ----------------------------------------------------------------

def _enum_block(chi: Character, n: int, lo: int, hi: int, om: np.ndarray) -> np.ndarray:
    q, N = chi.q, chi.order
    c = np.ones((hi - lo, n + 1), dtype=np.int64)
    c[:, :n] = index_digits(np.arange(lo, hi), q, n)
    res = reduce_rows(c, chi.modulus) if chi.modulus.degree else np.zeros(hi - lo, dtype=np.int64)
    cls = chi.ind_table[res]
    keep = cls >= 0
    flat = om[lo:hi][keep].astype(np.int64) * N + cls[keep]
    return np.bincount(flat, minlength=(n + 1) * N).reshape(n + 1, N)


def pi_k_enumerate(chi: Character, n: int, budget: int = ENUM_CAP, threads: int | None = None) -> SumTable:
    """Bucket chi(f) over all monic f of degree n by Omega(f); exact integer accumulation."""
    q = chi.q
    if n < 0:
        raise ValueError("n must be >= 0")
    if q**n > budget:
        raise BudgetError(f"q^n = {q ** n} exceeds the enumeration budget {budget}")
    om = omega_table(n, q)
    size = q**n
    threads = threads or default_threads()
    block = max(1 << 15, -(-size // threads))
    spans = [(lo, min(size, lo + block)) for lo in range(0, size, block)]
    if len(spans) > 1 and threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda s: _enum_block(chi, n, s[0], s[1], om), spans))
    else:
        parts = [_enum_block(chi, n, lo, hi, om) for lo, hi in spans]
    counts = sum(parts)
    ring = CyclotomicRing(chi.order)
    values = np.array([ring.to_complex(ring.from_counts(row)) for row in counts], dtype=complex)
    counts.setflags(write=False)
    return SumTable(n, chi, values, "enumerated", counts)


def exact_value(T: SumTable, k: int) -> tuple:
    """pi_k(n, chi) in Z[zeta_N] from an enumerated table."""
    if T.counts is None:
        raise ValueError("exact values need an enumerated table")
    return CyclotomicRing(T.chi.order).from_counts(T.counts[k])


def irreducible_count_check(chi: Character, e: int) -> bool:
    """P[e][0] = I_q(e) - #{p | d : deg p = e}."""
    ps = prime_char_sums(chi, e)
    ring = CyclotomicRing(chi.order)
    divs = sum(1 for p, _ in factor(chi.modulus).factors if p.degree == e)
    return ring.as_integer(ps.exact[e][0]) == count_irreducibles(e, chi.q) - divs
