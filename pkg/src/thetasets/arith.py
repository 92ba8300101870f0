"""Prime tables, factorizations and the multiplicative functions built on them."""

from __future__ import annotations

import math
import os
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from .errors import PreconditionError, ResourceLimitError, WordOverflowError

__all__ = [
    "PrimeTables",
    "Factorization",
    "build_prime_tables",
    "prime_tables",
    "table_budget",
    "factorize",
    "factor_int",
    "sigma",
    "sigma_prime_power",
    "omega",
    "pplus",
    "pminus",
    "mobius",
    "euler_phi",
    "divisors",
    "smooth_count",
    "WORD_MAX",
]

WORD_MAX = 2**64 - 1

BUDGET_ENV = "THETASETS_MAX_TABLE"
_DEFAULT_BUDGET = 500_000_000


def table_budget() -> int:
    """Largest prime-table limit allowed, read from ``THETASETS_MAX_TABLE``."""
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return _DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise PreconditionError(f"{BUDGET_ENV}={raw!r} is not a number") from None


def _check_budget(limit: int) -> None:
    budget = table_budget()
    if limit > budget:
        raise ResourceLimitError(
            f"prime table up to {limit} exceeds budget {budget} (set {BUDGET_ENV})"
        )


def _sieve(limit: int) -> np.ndarray:
    # odd-only Eratosthenes; index i stands for 2*i + 1
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    half = limit // 2 + 1
    odd = np.ones(half, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    primes = 2 * np.flatnonzero(odd).astype(np.int64) + 1
    primes = primes[primes <= limit]
    return np.concatenate(([2], primes)).astype(np.int64)


@dataclass(frozen=True)
class PrimeTables:
    """Primes up to ``limit`` with a lazily built smallest-prime-factor table.

    The ``spf`` array is only materialised on first use; enumeration code
    needs the prime list alone and runs at limits where an ``spf`` table
    would not fit in memory.
    """

    limit: int
    primes: np.ndarray = field(repr=False)

    @cached_property
    def prime_list(self) -> list[int]:
        return self.primes.tolist()

    @cached_property
    def spf_array(self) -> np.ndarray:
        spf = np.zeros(self.limit + 1, dtype=np.uint32)
        for p in self.prime_list:
            if p * p > self.limit:
                break
            view = spf[p * p :: p]
            view[view == 0] = p
        spf[self.primes] = self.primes.astype(np.uint32)
        return spf

    def spf(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise PreconditionError(f"spf({n}) outside table domain 2..{self.limit}")
        return int(self.spf_array[n])

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            return factor_int(n) == ((n, 1),)
        i = bisect_right(self.prime_list, n)
        return i > 0 and self.prime_list[i - 1] == n

    def pi(self, y: float) -> int:
        """Number of primes <= y (y must not exceed the table limit)."""
        if y > self.limit:
            raise PreconditionError(f"pi({y}) beyond table limit {self.limit}")
        return int(np.searchsorted(self.primes, math.floor(y), side="right"))


def build_prime_tables(limit: int) -> PrimeTables:
    if limit < 2:
        raise PreconditionError("prime tables need limit >= 2")
    _check_budget(limit)
    primes = _sieve(limit)
    primes.setflags(write=False)
    return PrimeTables(limit=limit, primes=primes)


_shared: PrimeTables | None = None


def prime_tables(limit: int) -> PrimeTables:
    """Shared tables covering at least ``limit``; grows geometrically."""
    global _shared
    if _shared is None or _shared.limit < limit:
        size = max(limit, 1000)
        if _shared is not None:
            size = max(size, min(2 * _shared.limit, table_budget()))
        _shared = build_prime_tables(size)
    return _shared


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise PreconditionError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise PreconditionError(f"factors {self.factors} do not multiply to {self.n}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Factorization":
        merged: dict[int, int] = {}
        for p, e in pairs:
            merged[p] = merged.get(p, 0) + e
        factors = tuple(sorted((p, e) for p, e in merged.items() if e))
        return cls(math.prod(p**e for p, e in factors), factors)

    def __mul__(self, other: "Factorization") -> "Factorization":
        return Factorization.from_pairs(self.factors + other.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _trial(n: int, start_primes: Iterable[int]) -> tuple[list[tuple[int, int]], int]:
    out = []
    for p in start_primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    return out, n


@lru_cache(maxsize=4096)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Factor a modest integer by trial division (no tables needed)."""
    if n < 1:
        raise PreconditionError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int, tables: PrimeTables | None = None) -> Factorization:
    if n < 1:
        raise PreconditionError(f"factorize needs n >= 1, got {n}")
    if tables is None:
        return Factorization(n, factor_int(n))
    if n <= tables.limit:
        spf = tables.spf_array
        out = []
        m = n
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        return Factorization(n, tuple(out))
    pairs, rest = _trial(n, tables.prime_list)
    if rest > 1:
        if tables.prime_list[-1] ** 2 >= rest:
            pairs.append((rest, 1))
        else:
            # cofactor beyond table reach: keep dividing by odd candidates
            pairs.extend(factor_int(rest))
    return Factorization(n, tuple(pairs))


def sigma_prime_power(p: int, e: int) -> int:
    return (p ** (e + 1) - 1) // (p - 1)


def sigma(f: Factorization) -> int:
    """Sum of divisors; raises instead of wrapping past 64 bits."""
    s = 1
    for p, e in f.factors:
        s *= sigma_prime_power(p, e)
        if s > WORD_MAX:
            raise WordOverflowError(f"sigma({f.n}) does not fit in 64 bits")
    return s


def omega(f: Factorization) -> int:
    return len(f.factors)


def pplus(f: Factorization) -> int:
    """Largest prime factor, with P+(1) = 1."""
    return f.factors[-1][0] if f.factors else 1


def pminus(f: Factorization) -> float:
    """Smallest prime factor, with P-(1) = +inf."""
    return f.factors[0][0] if f.factors else math.inf


def mobius(m: int) -> int:
    fac = factor_int(m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(q: int) -> int:
    out = q
    for p, _ in factor_int(q):
        out = out // p * (p - 1)
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor_int(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def smooth_count(x: int, y: int, tables: PrimeTables | None = None) -> int:
    """Psi(x, y): number of n <= x whose largest prime factor is <= y."""
    x = int(x)
    if x < 1:
        return 0
    if y >= x:
        return x
    if y < 2:
        return 1
    tables = tables if tables is not None and tables.limit >= y else prime_tables(int(y))
    plist = tables.prime_list
    k = bisect_right(plist, y)
    return _psi(x, k, tuple(plist[:k]))


def _psi(x: int, k: int, plist: tuple[int, ...]) -> int:
    # counts n <= x built from plist[:k]; n = 1 plus each n grouped by its largest prime
    @lru_cache(maxsize=None)
    def psi(x: int, k: int) -> int:
        if k == 0 or x < 2:
            return 1 if x >= 1 else 0
        if plist[k - 1] >= x:
            return x
        total = 1
        for j in range(k):
            p = plist[j]
            if p > x:
                break
            y = x // p
            if p >= y:
                total += y
            else:
                total += psi(y, j + 1)
        return total

    return psi(x, k)
