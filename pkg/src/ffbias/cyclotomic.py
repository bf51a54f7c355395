"""Exact arithmetic in Z[zeta_N] on the power basis 1, zeta, ..., zeta^(phi(N)-1).

The power basis is an integral basis, so an element of Z[zeta_N] that is
divisible by an integer m has coordinates divisible by m; ``exact_div``
relies on this.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import Poly as SymPoly, cyclotomic_poly, symbols


@lru_cache(maxsize=None)
def _phi_coeffs(N: int) -> tuple[int, ...]:
    x = symbols("x")
    return tuple(int(c) for c in reversed(SymPoly(cyclotomic_poly(N, x), x).all_coeffs()))


class CyclotomicRing:
    """Elements are tuples of Python ints of length phi(N)."""

    _cache: dict[int, CyclotomicRing] = {}

    def __new__(cls, N: int):
        if N not in cls._cache:
            obj = super().__new__(cls)
            obj.N = N
            obj.modulus = _phi_coeffs(N)  # monic, constant term first
            obj.dim = len(obj.modulus) - 1
            obj._zeta = np.exp(2j * np.pi * np.arange(obj.dim) / N)
            cls._cache[N] = obj
        return cls._cache[N]

    def _reduce(self, c: list[int]) -> tuple[int, ...]:
        m, d = self.modulus, self.dim
        for i in range(len(c) - 1, d - 1, -1):
            a = c[i]
            if a:
                for k in range(d):
                    c[i - d + k] -= a * m[k]
                c[i] = 0
        c = c[:d] + [0] * (d - len(c))
        return tuple(c)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def integer(self, a: int) -> tuple[int, ...]:
        return (a,) + (0,) * (self.dim - 1)

    def zeta_power(self, k: int) -> tuple[int, ...]:
        c = [0] * self.N
        c[k % self.N] = 1
        return self._reduce(c)

    def from_counts(self, counts: Sequence[int]) -> tuple[int, ...]:
        """sum_a counts[a] zeta^a for a group-ring vector of length N."""
        if len(counts) != self.N:
            raise ValueError("group-ring vector has the wrong length")
        return self._reduce([int(c) for c in counts])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, k: int):
        return tuple(x * k for x in a)

    def mul(self, a, b):
        out = [0] * (2 * self.dim - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._reduce(out)

    def exact_div(self, a, m: int):
        if any(x % m for x in a):
            raise ArithmeticError(f"element not divisible by {m}")
        return tuple(x // m for x in a)

    def galois(self, a, j: int):
        """Image under the automorphism zeta -> zeta^j; requires gcd(j, N) = 1."""
        if np.gcd(j, self.N) != 1:
            raise ValueError("zeta -> zeta^j is an automorphism only for gcd(j, N) = 1")
        out = [0] * self.N
        for i, x in enumerate(a):
            out[i * j % self.N] += x
        return self._reduce(out)

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def as_integer(self, a) -> int:
        if any(a[1:]):
            raise ArithmeticError("element is not a rational integer")
        return a[0]

    def to_complex(self, a) -> complex:
        if self.dim == 1:
            return complex(float(a[0]))
        return complex(np.dot(np.array([float(x) for x in a]), self._zeta))
