"""Density constants of B_theta from the prime-sum series.

For theta with ``n <= theta(n) << sigma(n)``,

    c_theta = 1/(1 - e^-gamma) * sum_{n in B} (1/n) (S(theta(n)) - log n) P(theta(n))

with ``S(y) = sum_{p<=y} log p/(p-1)`` and ``P(y) = prod_{p<=y} (1 - 1/p)``.
The sum converges like ``1/log N``, which is far too slowly to read
constants off a partial sum at ``N = 10**6``.  ``c_theta`` therefore
reports the raw partial sum and a tail-corrected value: partial sums at
40 log-spaced cut-offs ``M`` in ``[sqrt(N), N]`` are fitted by
``T(M) = T_inf + slope / log(lam * M)``, where ``lam`` is the geometric
mean of ``theta(n)/n`` over members in ``(N/10, N]``.  By Mertens'
theorems the term for large ``n`` is about
``e^-gamma (log(theta(n)/n) - gamma) / (n log theta(n))``, so that is
the leading shape of the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import divisors, euler_phi, mobius, prime_tables
from .errors import PreconditionError, TableLimitError
from .genset import members_with_theta
from .theta import Dense, Practical, QLifted, ThetaSpec, lift_q

__all__ = [
    "EULER_GAMMA",
    "SERIES_SCALE",
    "MertensTables",
    "DensityEstimate",
    "build_mertens",
    "c_theta",
    "c_q",
    "r_q",
    "r_qa",
    "table_rq",
]

# Euler-Mascheroni constant to 20 decimals (OEIS A001620)
EULER_GAMMA = 0.57721566490153286061
SERIES_SCALE = 1.0 / (1.0 - math.exp(-EULER_GAMMA))

_FIT_POINTS = 40


@dataclass(frozen=True)
class MertensTables:
    """Prefix sums ``S`` and products ``P`` indexed by prime, queryable at real y."""

    limit: int
    primes: np.ndarray
    s_prefix: np.ndarray
    log_p_prefix: np.ndarray

    def _index(self, y):
        if np.any(np.asarray(y) > self.limit):
            raise TableLimitError(f"Mertens table limit {self.limit} below query {np.max(y)}")
        return np.searchsorted(self.primes, np.floor(y), side="right")

    def S(self, y):
        """sum_{p <= y} log p / (p - 1); works on scalars and arrays."""
        k = self._index(y)
        out = np.where(k > 0, self.s_prefix[np.maximum(k - 1, 0)], 0.0)
        return float(out) if np.ndim(out) == 0 else out

    def P(self, y):
        """prod_{p <= y} (1 - 1/p); works on scalars and arrays."""
        k = self._index(y)
        out = np.where(k > 0, np.exp(self.log_p_prefix[np.maximum(k - 1, 0)]), 1.0)
        return float(out) if np.ndim(out) == 0 else out


def build_mertens(limit: int) -> MertensTables:
    if limit < 2:
        raise PreconditionError("Mertens tables need limit >= 2")
    primes = prime_tables(limit).primes
    primes = primes[primes <= limit]
    pf = primes.astype(np.float64)
    s_prefix = np.cumsum(np.log(pf) / (pf - 1.0))
    log_p_prefix = np.cumsum(np.log1p(-1.0 / pf))
    for arr in (s_prefix, log_p_prefix):
        arr.setflags(write=False)
    return MertensTables(limit, primes, s_prefix, log_p_prefix)


_mertens: MertensTables | None = None


def _mertens_for(limit: int) -> MertensTables:
    global _mertens
    if _mertens is None or _mertens.limit < limit:
        _mertens = build_mertens(max(limit, 1000))
    return _mertens


@dataclass(frozen=True)
class DensityEstimate:
    """Estimate of c_theta from the series truncated at ``truncation``.

    ``value`` is the tail-corrected estimate, ``partial_sum`` the plain
    truncated series (both already scaled by 1/(1 - e^-gamma)).
    ``tail_indicator`` is the magnitude of the last decade's contribution
    to the partial sum.
    """

    spec: str
    value: float
    partial_sum: float
    truncation: int
    tail_indicator: float
    growth: float
    terms: int

    @property
    def correction(self) -> float:
        return self.value - self.partial_sum

    def pick(self, method: str) -> float:
        if method == "extrapolated":
            return self.value
        if method == "plain":
            return self.partial_sum
        raise PreconditionError(f"unknown method {method!r}; use 'extrapolated' or 'plain'")


def _check_series_spec(spec: ThetaSpec) -> None:
    base = spec.base if isinstance(spec, QLifted) else spec
    if not isinstance(base, (Dense, Practical)):
        raise PreconditionError(
            f"the c_theta series needs n <= theta(n) << sigma(n) and monotone theta; got {spec}"
        )


def _partial_sums(spec: ThetaSpec, N: int, tables: MertensTables | None):
    n, bounds = members_with_theta(spec, N)
    b = np.asarray(bounds, dtype=np.int64)
    need = int(b.max())
    if tables is None:
        tables = _mertens_for(need)
    elif tables.limit < need:
        raise TableLimitError(f"tables reach {tables.limit}, series needs {need}")
    order = np.argsort(n, kind="stable")
    n, b = n[order], b[order]
    nf = n.astype(np.float64)
    terms = (tables.S(b) - np.log(nf)) * tables.P(b) / nf
    return n, b, terms


def _fsum_prefix(terms: np.ndarray, cuts: np.ndarray) -> np.ndarray:
    # compensated sums of terms[:c] for each cut, built from fsum'd segments
    out = []
    acc: list[float] = []
    prev = 0
    for c in cuts:
        acc.append(math.fsum(terms[prev:c].tolist()))
        out.append(math.fsum(acc))
        prev = c
    return np.asarray(out)


def _estimate(spec: ThetaSpec, N: int, tables: MertensTables | None) -> DensityEstimate:
    _check_series_spec(spec)
    if N < 1:
        raise PreconditionError("truncation N must be >= 1")
    n, b, terms = _partial_sums(spec, N, tables)
    total = math.fsum(terms.tolist())
    tenth = int(np.searchsorted(n, N // 10, side="right"))
    tail = abs(math.fsum(terms[tenth:].tolist()))
    top = n > N // 10
    growth = float(np.exp(np.mean(np.log(b[top] / n[top])))) if top.any() else 1.0
    value = total
    if N >= 100 and top.any():
        cut_at = np.geomspace(math.sqrt(N), N, _FIT_POINTS)
        cuts = np.searchsorted(n, cut_at, side="right")
        sums = _fsum_prefix(terms, cuts)
        u = 1.0 / np.log(growth * cut_at)
        slope, intercept = np.polyfit(u, sums, 1)
        value = float(intercept)
    return DensityEstimate(
        spec=spec.describe(),
        value=SERIES_SCALE * value,
        partial_sum=SERIES_SCALE * total,
        truncation=N,
        tail_indicator=SERIES_SCALE * tail,
        growth=growth,
        terms=len(n),
    )


@lru_cache(maxsize=256)
def _estimate_cached(spec: ThetaSpec, N: int) -> DensityEstimate:
    return _estimate(spec, N, None)


def c_theta(spec: ThetaSpec, N: int = 10**6, tables: MertensTables | None = None) -> DensityEstimate:
    if tables is None:
        return _estimate_cached(spec, int(N))
    return _estimate(spec, int(N), tables)


def c_q(
    spec: ThetaSpec,
    q: int,
    N: int = 10**6,
    tables: MertensTables | None = None,
    method: str = "extrapolated",
) -> float:
    """c_{theta_q} / q, with c_1 = c_theta."""
    if q < 1:
        raise PreconditionError("q must be >= 1")
    if q == 1:
        return c_theta(spec, N, tables).pick(method)
    return c_theta(lift_q(spec, q), N, tables).pick(method) / q


def r_q(
    spec: ThetaSpec,
    q: int,
    N: int = 10**6,
    tables: MertensTables | None = None,
    method: str = "extrapolated",
) -> float:
    """Asymptotic share of members divisible by q (raw value, not clamped)."""
    if q == 1:
        return 1.0
    return c_q(spec, q, N, tables, method) / c_theta(spec, N, tables).pick(method)


def r_qa(
    spec: ThetaSpec,
    q: int,
    a: int,
    N: int = 10**6,
    tables: MertensTables | None = None,
    method: str = "extrapolated",
) -> float:
    """Asymptotic share of members congruent to a mod q (Moebius average of r_dm)."""
    if q < 1:
        raise PreconditionError("q must be >= 1")
    d = math.gcd(a, q)
    rest = q // d
    total = 0.0
    for m in divisors(rest):
        mu = mobius(m)
        if mu:
            total += mu * r_q(spec, d * m, N, tables, method)
    return total / euler_phi(rest)


def table_rq(
    spec: ThetaSpec,
    q_max: int,
    N: int = 10**6,
    tables: MertensTables | None = None,
    method: str = "extrapolated",
) -> list[tuple[int, float]]:
    """Rows (q, r_q) for q = 2..q_max; c_theta is computed once."""
    base = c_theta(spec, N, tables).pick(method)
    return [(q, c_q(spec, q, N, tables, method) / base) for q in range(2, q_max + 1)]

