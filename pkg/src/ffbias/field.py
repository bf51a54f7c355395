"""Exact arithmetic in F_q and F_q[t] for prime q.

Polynomials are stored as tuples of ints in [0, q), constant term first, with
a nonzero last entry (the empty tuple is the zero polynomial).  The integer
index ``sum(c_i * q**i)`` of a polynomial orders polynomials by degree and
then lexicographically from the leading coefficient down; this canonical
order is used everywhere a deterministic choice is needed.

Besides the scalar ``Poly`` API there are a few vectorised helpers operating
on coefficient matrices (one polynomial per row) that back the enumeration
oracle and the residue tables of the character module.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from sympy import divisors, factorint, isprime

MAX_Q = 2**16


def check_prime(q: int) -> int:
    if not isinstance(q, (int, np.integer)) or q < 2 or q > MAX_Q or not isprime(int(q)):
        raise ValueError(f"q must be a prime <= {MAX_Q}, got {q!r}")
    return int(q)


@dataclass(frozen=True)
class FieldElem:
    value: int
    q: int

    def __post_init__(self):
        check_prime(self.q)
        if not 0 <= self.value < self.q:
            raise ValueError(f"{self.value} is not reduced mod {self.q}")

    def __add__(self, other: FieldElem) -> FieldElem:
        return FieldElem((self.value + other.value) % self.q, self.q)

    def __sub__(self, other: FieldElem) -> FieldElem:
        return FieldElem((self.value - other.value) % self.q, self.q)

    def __mul__(self, other: FieldElem) -> FieldElem:
        return FieldElem(self.value * other.value % self.q, self.q)

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.value % self.q, self.q)

    def inverse(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return FieldElem(pow(self.value, -1, self.q), self.q)

    def __truediv__(self, other: FieldElem) -> FieldElem:
        return self * other.inverse()

    def __int__(self) -> int:
        return self.value


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Immutable polynomial over F_q."""

    __slots__ = ("coeffs", "q")

    def __init__(self, coeffs: Sequence[int] = (), q: int = 3, *, _checked: bool = False):
        if not _checked:
            q = check_prime(q)
            coeffs = _trim(int(c) % q for c in coeffs)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, coeffs, q) -> Poly:
        return cls(_trim(coeffs), q, _checked=True)

    @classmethod
    def t(cls, q: int) -> Poly:
        return cls((0, 1), q)

    @classmethod
    def const(cls, c: int, q: int) -> Poly:
        return cls((c,), q)

    @classmethod
    def from_index(cls, idx: int, q: int) -> Poly:
        c = []
        while idx:
            idx, r = divmod(idx, q)
            c.append(r)
        return cls._raw(c, q)

    @classmethod
    def parse(cls, text: str, q: int) -> Poly:
        return parse_poly(text, q)

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def index(self) -> int:
        idx = 0
        for c in reversed(self.coeffs):
            idx = idx * self.q + c
        return idx

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.q))

    def __lt__(self, other: Poly) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Poly({self}, q={self.q})"

    def __str__(self) -> str:
        return format_poly(self)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc

    # -- ring operations --------------------------------------------------
    def _check(self, other: Poly) -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.q != self.q:
            raise ValueError(f"mismatched fields: q={self.q} vs q={other.q}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        a, b, q = self.coeffs, other.coeffs, self.q
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % q
        return Poly._raw(out, q)

    def __neg__(self) -> Poly:
        return Poly._raw([-c % self.q for c in self.coeffs], self.q)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        a, b, q = self.coeffs, other.coeffs, self.q
        if not a or not b:
            return Poly._raw((), q)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw([c % q for c in out], q)

    def scale(self, c: int) -> Poly:
        return Poly._raw([x * c % self.q for x in self.coeffs], self.q)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = self.q
        r = list(self.coeffs)
        db = other.degree
        inv = pow(other.lc, -1, q)
        b = other.coeffs
        if len(r) <= db:
            return Poly._raw((), q), self
        quo = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] * inv % q
            if c:
                quo[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] = (r[i - db + j] - c * b[j]) % q
        return Poly._raw(quo, q), Poly._raw(r[:db], q)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly._raw((1,), self.q)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, m: Poly) -> Poly:
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly._raw((1,), self.q) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(pow(self.lc, -1, self.q))

    def derivative(self) -> Poly:
        return Poly._raw([i * c % self.q for i, c in enumerate(self.coeffs)][1:], self.q)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    q = a.q
    r0, r1 = a, b
    s0, s1 = Poly._raw((1,), q), Poly._raw((), q)
    t0, t1 = Poly._raw((), q), Poly._raw((1,), q)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = pow(r0.lc, -1, q)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def invmod(a: Poly, m: Poly) -> Poly:
    g, s, _ = xgcd(a % m, m)
    if not g.is_one():
        raise ZeroDivisionError(f"{a} is not invertible mod {m}")
    return s % m


# -- text format -------------------------------------------------------------

_TERM = re.compile(r"^(?:(\d+)\*?)?(t(?:\^(\d+))?)?$")


def parse_poly(text: str, q: int) -> Poly:
    """Parse the ``c*t^e+...`` format, e.g. ``2*t^3+t+2``; whitespace is ignored."""
    q = check_prime(q)
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return Poly((), q)
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        m = _TERM.match(term)
        if not term or m is None or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"malformed term {term!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None:
            e = 0
        else:
            e = int(m.group(3)) if m.group(3) is not None else 1
        if not 1 <= c < q:
            raise ValueError(f"coefficient {c} outside [1, {q}) in {text!r}")
        if e in coeffs:
            raise ValueError(f"repeated exponent {e} in {text!r}")
        coeffs[e] = c
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Poly(out, q)


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    terms = []
    for e in range(f.degree, -1, -1):
        c = f.coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        mono = "t" if e == 1 else f"t^{e}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


# -- irreducibility and factorisation ---------------------------------------

def _prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def _frobenius_power(f: Poly, e: int) -> Poly:
    """t^(q^e) mod f."""
    x = Poly.t(f.q) % f
    for _ in range(e):
        x = x.powmod(f.q, f)
    return x


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: t^(q^n) = t mod f and gcd(t^(q^(n/l)) - t, f) = 1 for primes l | n."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("is_irreducible expects a monic polynomial of degree >= 1")
    n = f.degree
    if n == 1:
        return True
    t = Poly.t(f.q)
    for ell in _prime_divisors(n):
        h = _frobenius_power(f, n // ell)
        if not gcd(h - t, f).is_one():
            return False
    return (_frobenius_power(f, n) - t % f).is_zero()


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[Poly, int], ...]
    unit: FieldElem

    @property
    def omega(self) -> int:
        return sum(e for _, e in self.factors)

    def expand(self) -> Poly:
        out = Poly.const(self.unit.value, self.unit.q)
        for p, e in self.factors:
            out = out * p**e
        return out


def _pth_root(f: Poly) -> Poly:
    # over the prime field the Frobenius fixes coefficients
    p = f.q
    return Poly._raw(f.coeffs[::p], p)


def _squarefree(f: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition of a monic f as [(g_i, i)] with g_i squarefree and coprime."""
    if f.degree < 1:
        return []
    p = f.q
    out: list[tuple[Poly, int]] = []
    fp = f.derivative()
    if fp.is_zero():
        return [(g, m * p) for g, m in _squarefree(_pth_root(f))]
    c = gcd(f, fp)
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        out.extend((g, m * p) for g, m in _squarefree(_pth_root(c)))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree monic f into products of irreducibles of equal degree."""
    out = []
    t = Poly.t(f.q)
    h = t % f
    e = 0
    while f.degree >= 2 * (e + 1):
        e += 1
        h = h.powmod(f.q, f)
        g = gcd(h - t, f)
        if not g.is_one():
            out.append((g, e))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _candidates(q: int, max_deg: int) -> Iterator[Poly]:
    # canonical order over non-constant polynomials of degree <= max_deg
    for idx in itertools.count(q):
        a = Poly.from_index(idx, q)
        if a.degree > max_deg:
            return
        yield a


def _equal_degree(f: Poly, e: int) -> list[Poly]:
    """Split a product of distinct irreducibles of degree e (deterministic Cantor-Zassenhaus)."""
    if f.degree == e:
        return [f]
    q = f.q
    one = Poly.const(1, q)
    for a in _candidates(q, f.degree - 1):
        if q == 2:
            b = a % f
            acc = b
            for _ in range(e - 1):
                b = (b * b) % f
                acc = acc + b
            g = gcd(acc, f)
        else:
            g = gcd(a.powmod((q**e - 1) // 2, f) - one, f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, e) + _equal_degree(f // g, e)
        g = gcd(a, f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, e) + _equal_degree(f // g, e)
    raise RuntimeError(f"equal-degree splitting failed for {f}")  # pragma: no cover


def factor(f: Poly) -> Factorization:
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = FieldElem(f.lc, f.q)
    counts: dict[Poly, int] = {}
    for g, m in _squarefree(f.monic()):
        for h, e in _distinct_degree(g):
            for p in _equal_degree(h, e):
                counts[p] = counts.get(p, 0) + m
    factors = tuple(sorted(counts.items(), key=lambda pe: pe[0].sort_key()))
    return Factorization(factors, unit)


def omega(f: Poly) -> int:
    return factor(f).omega


# -- enumeration ---------------------------------------------------------------

def iter_monic(n: int, q: int, prefix: Sequence[int] = ()) -> Iterator[Poly]:
    """Monic polynomials of degree n in canonical order.

    ``prefix`` fixes the coefficients of t^(n-1), t^(n-2), ... (leading block);
    distinct prefixes of equal length partition the stream.
    """
    q = check_prime(q)
    if n < 0:
        raise ValueError("degree must be >= 0")
    if len(prefix) > n:
        raise ValueError("prefix longer than the free coefficients")
    top = [int(c) % q for c in prefix][::-1]
    free = n - len(prefix)
    for low in itertools.product(range(q), repeat=free):
        yield Poly._raw(low[::-1] + tuple(top) + (1,), q)


def monic_partitions(n: int, q: int, depth: int) -> list[tuple[int, ...]]:
    depth = min(depth, n)
    return list(itertools.product(range(q), repeat=depth))


def _mobius(n: int) -> int:
    fac = factorint(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def count_irreducibles(e: int, q: int) -> int:
    if e < 1:
        raise ValueError("degree must be >= 1")
    return sum(_mobius(m) * q ** (e // m) for m in divisors(e)) // e


def von_mangoldt(f: Poly) -> int:
    """deg p if f is a power of the irreducible p, else 0."""
    fac = factor(f)
    if len(fac.factors) == 1:
        return fac.factors[0][0].degree
    return 0


# -- vectorised helpers ----------------------------------------------------------

def index_digits(idx: np.ndarray, q: int, width: int) -> np.ndarray:
    """Coefficient matrix (rows = polynomials) for integer indices."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty(idx.shape + (width,), dtype=np.int64)
    rest = idx.copy()
    for i in range(width):
        rest, out[..., i] = np.divmod(rest, q)
    return out


def digits_index(c: np.ndarray, q: int) -> np.ndarray:
    w = q ** np.arange(c.shape[-1], dtype=np.int64)
    return (c % q) @ w


@lru_cache(maxsize=64)
def monic_matrix(n: int, q: int) -> np.ndarray:
    """Coefficients of all monic degree-n polynomials, row i <-> lower digits of i."""
    c = np.ones((q**n, n + 1), dtype=np.int64)
    c[:, :n] = index_digits(np.arange(q**n), q, n)
    c.setflags(write=False)
    return c


def reduction_matrix(d: Poly, n: int) -> np.ndarray:
    """Row i holds the coefficients of t^i mod d, for i <= n."""
    m = d.degree
    out = np.zeros((n + 1, m), dtype=np.int64)
    x = Poly.const(1, d.q) % d
    t = Poly.t(d.q)
    for i in range(n + 1):
        out[i, : len(x.coeffs)] = x.coeffs
        x = (x * t) % d
    return out


def reduce_rows(c: np.ndarray, d: Poly) -> np.ndarray:
    """Residue indices mod d of the polynomials given as coefficient rows."""
    red = reduction_matrix(d, c.shape[-1] - 1)
    return digits_index((c @ red) % d.q, d.q)


def mul_rows(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Row-wise (broadcast) product of coefficient matrices."""
    la, lb = a.shape[-1], b.shape[-1]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (la + lb - 1,)
    out = np.zeros(shape, dtype=np.int64)
    for i in range(la):
        out[..., i : i + lb] += a[..., i : i + 1] * b
    return out % q


class _OmegaSieve:
    """Bottom-up sieve of Omega over monic polynomials, one degree at a time.

    For f monic of degree e, the number of prime powers P | f with deg P < e
    is Omega(f) unless f is itself a prime power; in particular it vanishes
    exactly on the irreducibles.  Each degree therefore yields both its
    Omega table and its irreducibles, which feed the next degree.
    """

    _chunk = 1 << 22

    def __init__(self, q: int):
        self.q = q
        self.omega: list[np.ndarray] = [np.zeros(1, dtype=np.int16)]
        self.primes: list[np.ndarray] = [np.zeros((0, 1), dtype=np.int64)]
        self.powers: list[np.ndarray] = [np.zeros((0, 1), dtype=np.int64)]

    def extend(self, n: int) -> None:
        q = self.q
        while len(self.omega) <= n:
            e = len(self.omega)
            size = q**e
            cnt = np.zeros(size, dtype=np.int16)
            for m in range(1, e):
                pp = self.powers[m]
                if not len(pp):
                    continue
                g = monic_matrix(e - m, q)
                step = max(1, self._chunk // (len(g) * (e + 1)))
                for s in range(0, len(pp), step):
                    prod = mul_rows(pp[s : s + step, None, :], g[None, :, :], q)
                    idx = digits_index(prod[..., :e], q).ravel()
                    cnt += np.bincount(idx, minlength=size).astype(np.int16)
            irr = np.flatnonzero(cnt == 0)
            primes = monic_matrix(e, q)[irr]
            higher = []
            for j in range(2, e + 1):
                if e % j == 0 and len(self.primes[e // j]):
                    base = self.primes[e // j]
                    acc = base
                    for _ in range(j - 1):
                        acc = mul_rows(acc, base, q)
                    higher.append(acc)
            powers = np.concatenate([primes] + higher) if higher else primes
            om = cnt.copy()
            om[digits_index(powers[:, :e], q)] += 1
            self.omega.append(om)
            self.primes.append(primes)
            self.powers.append(powers)


@lru_cache(maxsize=None)
def _sieve(q: int) -> _OmegaSieve:
    return _OmegaSieve(q)


def omega_table(n: int, q: int) -> np.ndarray:
    """Omega(f) for every monic f of degree n, indexed like ``monic_matrix``."""
    s = _sieve(check_prime(q))
    s.extend(n)
    return s.omega[n]


def irreducibles_matrix(e: int, q: int) -> np.ndarray:
    """Coefficient rows of the monic irreducibles of degree e (canonical order)."""
    s = _sieve(check_prime(q))
    s.extend(e)
    return s.primes[e]


def irreducibles(e: int, q: int) -> list[Poly]:
    return [Poly._raw(tuple(int(c) for c in row), q) for row in irreducibles_matrix(e, q)]
