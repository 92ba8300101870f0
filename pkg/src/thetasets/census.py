"""Counting members of B_theta(x): totals, residue classes, multiples of q,
gcd classes, the Moebius form of the gcd-class count, and the bracket of
B_q(x) by the lifted set."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import divisors, factor_int, factorize, mobius, prime_tables
from .errors import PreconditionError
from .genset import members, sorted_members
from .theta import Smooth, ThetaSpec, lift_q

__all__ = [
    "ResidueHistogram",
    "SandwichReport",
    "count",
    "count_class",
    "count_multiples",
    "count_gcd_class",
    "mobius_rhs",
    "histogram",
    "r_empirical",
    "r_count",
    "sandwich_check",
]


def _arr(spec: ThetaSpec, x: int, workers: int = 1) -> np.ndarray:
    x = int(x)
    if x < 1:
        return np.zeros(0, dtype=np.int64)
    if workers > 1:
        return members(spec, x, workers)
    return sorted_members(spec, x)


def _check_q(q: int) -> None:
    if q < 1:
        raise PreconditionError(f"modulus must be >= 1, got {q}")


def count(spec: ThetaSpec, x: int, workers: int = 1) -> int:
    """B(x); B(0) = 0."""
    return int(len(_arr(spec, x, workers)))


def count_class(spec: ThetaSpec, x: int, q: int, a: int) -> int:
    _check_q(q)
    return int(np.count_nonzero(_arr(spec, x) % q == a % q))


def count_multiples(spec: ThetaSpec, x: int, q: int) -> int:
    _check_q(q)
    return int(np.count_nonzero(_arr(spec, x) % q == 0))


def count_gcd_class(spec: ThetaSpec, x: int, q: int, d: int) -> int:
    _check_q(q)
    if d < 1 or q % d:
        raise PreconditionError(f"{d} does not divide {q}")
    return int(np.count_nonzero(np.gcd(_arr(spec, x), q) == d))


def mobius_rhs(spec: ThetaSpec, x: int, q: int, d: int) -> int:
    """sum_{m | q/d} mu(m) B_{dm}(x), which equals the gcd-class count exactly."""
    _check_q(q)
    if d < 1 or q % d:
        raise PreconditionError(f"{d} does not divide {q}")
    return sum(mobius(m) * count_multiples(spec, x, d * m) for m in divisors(q // d) if mobius(m))


@dataclass(frozen=True)
class ResidueHistogram:
    x: int
    q: int
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, a: int) -> int:
        return int(self.counts[a % self.q])


def histogram(spec: ThetaSpec, x: int, q: int, workers: int = 1) -> ResidueHistogram:
    """One pass over B(x), bucketed by residue mod q."""
    _check_q(q)
    arr = _arr(spec, x, workers)
    counts = np.bincount(arr % q, minlength=q).astype(np.int64)
    return ResidueHistogram(int(x), q, counts)


def r_empirical(spec: ThetaSpec, x: int, q: int) -> float:
    """B_q(x) / B(x)."""
    total = count(spec, x)
    if total == 0:
        raise PreconditionError("B(x) is empty")
    return count_multiples(spec, x, q) / total


def _theta_floor(spec: ThetaSpec, n: int, tables=None):
    return spec.bound(spec.state_of(factorize(n, tables)))


def r_count(spec: ThetaSpec, x: int, q: int, method: str = "smooth") -> int:
    """R(x, q) = #{n <= x/q : theta(n) < P+(q)}.

    ``theta(n) >= P+(n)`` means only (P+(q) - 1)-smooth n can qualify, so
    the default method tests exactly those candidates; ``method="scan"``
    tests every n <= x/q.
    """
    if q < 2:
        raise PreconditionError("R(x, q) needs q >= 2")
    top = factor_int(q)[-1][0]
    lim = int(x) // q
    if lim < 1:
        return 0
    if method == "scan":
        tables = prime_tables(lim) if lim >= 2 else None
        return sum(1 for n in range(1, lim + 1) if _below(_theta_floor(spec, n, tables), top))
    if method != "smooth":
        raise PreconditionError(f"unknown method {method!r}")
    if top <= 2:
        # theta(n) >= 2 for every n
        return 0
    candidates = sorted_members(Smooth(top - 1), lim) if top - 1 >= 2 else np.ones(1, np.int64)
    return sum(1 for n in candidates.tolist() if _below(_theta_floor(spec, n), top))


def _below(b, p: int) -> bool:
    # floor(theta) < p  <=>  theta < p, p integral
    return b is not None and b < p


@dataclass(frozen=True)
class SandwichReport:
    x: int
    q: int
    lower: int
    mid: int
    upper: int

    @property
    def passed(self) -> bool:
        return self.lower <= self.mid <= self.upper

    @property
    def remainder(self) -> int:
        return self.upper - self.lower


def sandwich_check(spec: ThetaSpec, x: int, q: int) -> SandwichReport:
    """B_{theta_q}(x/q) - R(x,q) <= B_q(x) <= B_{theta_q}(x/q), floors throughout."""
    lifted = lift_q(spec, q)
    upper = count(lifted, int(x) // q)
    return SandwichReport(
        x=int(x),
        q=q,
        lower=upper - r_count(spec, x, q),
        mid=count_multiples(spec, x, q),
        upper=upper,
    )


def coprime_residues(q: int) -> list[int]:
    return [a for a in range(q) if math.gcd(a, q) == 1]
