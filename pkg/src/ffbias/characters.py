"""Unit groups (F_q[t]/d)^x and their Dirichlet characters.

The group is decomposed along d = prod p_i^e_i (CRT).  Each local factor
contributes a cyclic generator of order q^deg(p_i) - 1 and, when e_i > 1, a
basis of the 1-unit p-group found greedily in canonical order.  Characters
are exponent vectors on these generators, indexed in mixed radix with the
first generator least significant; index 0 is the principal character.

Character values never leave exact form here: a value is a rotation number
a/N (``RootOfUnity``) or the zero marker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np
from sympy import factorint

from .field import Poly, factor, index_digits, invmod, mul_rows, reduce_rows

TABLE_BOUND = 10**6


class TableBoundError(ValueError):
    pass


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i*a/N) with 0 <= a < N and gcd(a, N) = 1, or zero when N == 0."""

    a: int
    N: int

    @classmethod
    def make(cls, a: int, N: int) -> RootOfUnity:
        if N <= 0:
            raise ValueError("denominator must be positive")
        a %= N
        g = math.gcd(a, N)
        return cls(a // g, N // g)

    @classmethod
    def zero(cls) -> RootOfUnity:
        return cls(0, 0)

    @property
    def is_zero(self) -> bool:
        return self.N == 0

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if self.is_zero or other.is_zero:
            return RootOfUnity.zero()
        f = Fraction(self.a, self.N) + Fraction(other.a, other.N)
        return RootOfUnity.make(f.numerator, f.denominator)

    def conjugate(self) -> RootOfUnity:
        return self if self.is_zero else RootOfUnity.make(-self.a, self.N)

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        return complex(np.exp(2j * np.pi * self.a / self.N))


class _Ring:
    """Vectorised arithmetic in F_q[t]/m on residue indices."""

    def __init__(self, m: Poly):
        self.m = m
        self.q = m.q
        self.deg = m.degree
        self.size = self.q**self.deg

    def digits(self, idx) -> np.ndarray:
        return index_digits(idx, self.q, self.deg)

    def mul(self, a, b) -> np.ndarray:
        prod = mul_rows(self.digits(a), self.digits(b), self.q)
        return reduce_rows(prod, self.m)

    def mul1(self, a: int, b: int) -> int:
        return int(self.mul(np.array([a]), np.array([b]))[0])

    def pow1(self, a: int, e: int) -> int:
        p = Poly.from_index(a, self.q).powmod(e, self.m)
        return p.index()


def _order_in(ring: _Ring, g: int, group_order: int) -> int:
    """Exact order of g, given that it divides group_order."""
    order = group_order
    for ell in factorint(group_order):
        while order % ell == 0 and ring.pow1(g, order // ell) == 1:
            order //= ell
    return order


def _local_generators(p: Poly, e: int) -> list[tuple[Poly, int]]:
    """Independent generators (with orders) of (F_q[t]/p^e)^x."""
    q, f = p.q, p.degree
    P = p**e
    ring = _Ring(P)
    gens: list[tuple[Poly, int]] = []
    cyc = q**f - 1
    if cyc > 1:
        residue = _Ring(p)
        for idx in range(1, q**f):
            if _order_in(residue, idx, cyc) == cyc:
                break
        c = 0
        while p.q**c < e:
            c += 1
        g = Poly.from_index(idx, q).powmod(p.q**c, P)
        gens.append((g, cyc))
    if e > 1:
        gens.extend(_one_unit_basis(p, e, ring))
    return gens


def _one_unit_basis(p: Poly, e: int, ring: _Ring) -> list[tuple[Poly, int]]:
    # greedy basis of the abelian p-group 1 + p F[t]/p^e: at each step take the
    # element of largest order modulo the span so far, then correct it so its
    # order equals that coset order
    q = p.q
    hdeg = p.degree * (e - 1)
    pidx = p.index()
    ones = np.arange(q**hdeg)
    elems = np.sort(_add_one(ring.mul(ones, np.full_like(ones, pidx)), q))
    total = len(elems)
    span: dict[int, tuple[int, ...]] = {1: ()}
    basis: list[tuple[int, int]] = []
    while len(span) < total:
        best, best_order = None, 0
        for x in elems:
            x = int(x)
            if x in span:
                continue
            y, o = x, 1
            while y not in span:
                y = ring.pow1(y, q)
                o *= q
            if o > best_order:
                best, best_order = x, o
        h = ring.pow1(best, best_order)
        v = span[h]
        corr = best
        for (b, ob), vi in zip(basis, v):
            if vi % best_order:
                raise ArithmeticError("greedy basis invariant violated")
            w = (vi // best_order) % ob
            if w:
                corr = ring.mul1(corr, ring.pow1(b, ob - w))
        basis.append((corr, best_order))
        new_span = {}
        powers = [1]
        for _ in range(best_order - 1):
            powers.append(ring.mul1(powers[-1], corr))
        keys = np.array(list(span.keys()))
        vals = list(span.values())
        for i, pw in enumerate(powers):
            prods = ring.mul(keys, np.full_like(keys, pw))
            for k, vec in zip(prods, vals):
                new_span[int(k)] = vec + (i,)
        span = {k: v + (0,) * (len(basis) - len(v)) for k, v in new_span.items()}
    return [(Poly.from_index(b, q), o) for b, o in basis]


def _add_one(idx: np.ndarray, q: int) -> np.ndarray:
    d = idx % q
    return idx - d + (d + 1) % q


@dataclass(frozen=True, eq=False)
class UnitGroup:
    modulus: Poly
    order: int
    generators: tuple[tuple[Poly, int], ...]
    logs: np.ndarray  # (q^deg d, r): exponent vectors, -1 rows for non-units
    unit_mask: np.ndarray

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.generators)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def residue_index(self, f: Poly) -> int:
        return (f % self.modulus).index()

    def log(self, f: Poly) -> tuple[int, ...] | None:
        i = self.residue_index(f)
        if not self.unit_mask[i]:
            return None
        return tuple(int(x) for x in self.logs[i])


def euler_phi(d: Poly) -> int:
    q = d.q
    out = q**d.degree
    for p, _ in factor(d).factors:
        out = out // q**p.degree * (q**p.degree - 1)
    return out


def unit_group(d: Poly, table_bound: int = TABLE_BOUND) -> UnitGroup:
    if not d.is_monic() or d.degree < 1:
        raise ValueError("modulus must be monic of degree >= 1")
    q = d.q
    phi = euler_phi(d)
    if phi > table_bound:
        raise TableBoundError(f"phi(d) = {phi} exceeds the table bound {table_bound}")
    gens: list[tuple[Poly, int]] = []
    for p, e in factor(d).factors:
        P = p**e
        rest = d // P
        # idempotent: 1 mod P, 0 mod rest
        eps = (rest * invmod(rest, P)) % d if rest.degree > 0 else Poly.const(1, q)
        one_minus = (Poly.const(1, q) - eps) % d
        for g, o in _local_generators(p, e):
            gens.append(((g * eps + one_minus) % d, o))
    if math.prod(o for _, o in gens) != phi:
        raise ArithmeticError("generator orders do not multiply to phi(d)")

    ring = _Ring(d)
    elems = np.array([1])
    vecs = np.zeros((1, 0), dtype=np.int64)
    for g, o in gens:
        powers = [1]
        for _ in range(o - 1):
            powers.append(ring.mul1(powers[-1], g.index()))
        powers = np.array(powers)
        new = ring.mul(np.repeat(elems, o), np.tile(powers, len(elems)))
        vecs = np.concatenate(
            [np.repeat(vecs, o, axis=0), np.tile(np.arange(o), len(elems))[:, None]], axis=1)
        elems = new
    logs = np.full((ring.size, len(gens)), -1, dtype=np.int64)
    if len(np.unique(elems)) != phi:
        raise ArithmeticError("generators are not independent")
    logs[elems] = vecs
    mask = np.zeros(ring.size, dtype=bool)
    mask[elems] = True
    logs.setflags(write=False)
    mask.setflags(write=False)
    return UnitGroup(d, phi, tuple(gens), logs, mask)


@dataclass(frozen=True, eq=False)
class Character:
    group: UnitGroup
    exponents: tuple[int, ...]

    @property
    def modulus(self) -> Poly:
        return self.group.modulus

    @property
    def q(self) -> int:
        return self.group.q

    @cached_property
    def order(self) -> int:
        return math.lcm(1, *(o // math.gcd(e, o) for e, (_, o) in zip(self.exponents, self.group.generators)))

    @property
    def index(self) -> int:
        idx, base = 0, 1
        for e, o in zip(self.exponents, self.group.orders):
            idx += e * base
            base *= o
        return idx

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def is_real(self) -> bool:
        return all(2 * e % o == 0 for e, o in zip(self.exponents, self.group.orders))

    def __pow__(self, j: int) -> Character:
        return Character(self.group, tuple(e * j % o for e, o in zip(self.exponents, self.group.orders)))

    def conj(self) -> Character:
        return self ** -1

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and other.group is self.group and other.exponents == self.exponents

    def __hash__(self) -> int:
        return hash((id(self.group), self.exponents))

    def __repr__(self) -> str:
        return f"Character(mod {self.modulus}, index={self.index}, order={self.order})"

    @cached_property
    def ind_table(self) -> np.ndarray:
        """Value class a (chi = exp(2 pi i a / order)) per residue index; -1 off the units."""
        N = self.order
        w = np.array([e * N // o for e, o in zip(self.exponents, self.group.orders)], dtype=np.int64)
        out = (self.group.logs @ w) % N
        out[~self.group.unit_mask] = -1
        out.setflags(write=False)
        return out

    def ind(self, f: Poly) -> int:
        """Value class of chi(f), or -1 when gcd(f, d) != 1."""
        return int(self.ind_table[self.group.residue_index(f)])

    def __call__(self, f: Poly) -> RootOfUnity:
        return eval_char(self, f)


def eval_char(chi: Character, f: Poly) -> RootOfUnity:
    a = chi.ind(f)
    if a < 0:
        return RootOfUnity.zero()
    return RootOfUnity.make(a, chi.order)


def characters(d_or_group: Poly | UnitGroup) -> list[Character]:
    G = d_or_group if isinstance(d_or_group, UnitGroup) else unit_group(d_or_group)
    out = []
    for i in range(G.order):
        exps, rest = [], i
        for o in G.orders:
            rest, e = divmod(rest, o)
            exps.append(e)
        out.append(Character(G, tuple(exps)))
    return out


def character(d: Poly | UnitGroup, index: int) -> Character:
    G = d if isinstance(d, UnitGroup) else unit_group(d)
    if not 0 <= index < G.order:
        raise IndexError(f"character index {index} outside [0, {G.order})")
    exps, rest = [], index
    for o in G.orders:
        rest, e = divmod(rest, o)
        exps.append(e)
    return Character(G, tuple(exps))


def cyclotomic_sum(counts: Sequence[int] | np.ndarray, N: int) -> complex:
    """sum_a counts[a] * exp(2 pi i a / N), the float image of a group-ring vector."""
    counts = np.asarray(counts)
    if N == 1:
        return complex(float(counts[0]))
    zeta = np.exp(2j * np.pi * np.arange(N) / N)
    return complex(np.dot(counts.astype(float), zeta))


def is_exact_zero(counts: Sequence[int], N: int) -> bool:
    """Exact test that sum_a counts[a] zeta_N^a = 0."""
    from .cyclotomic import CyclotomicRing

    ring = CyclotomicRing(N)
    return ring.is_zero(ring.from_counts(counts))
