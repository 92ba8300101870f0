"""Checks of structural statements about B_theta on explicit ranges.

Each check returns a :class:`LawReport` whose ``counterexamples`` list is
empty exactly when the law held on the tested range.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .arith import euler_phi, factor_int, factorize
from .census import coprime_residues
from .errors import PreconditionError
from .genset import is_member, is_member_factored, sorted_members
from .theta import Dense, Practical, ThetaSpec, lift_q

__all__ = [
    "LawReport",
    "Verdict",
    "ProgressionClass",
    "verify_inclusions",
    "equidist_report",
    "closure_check",
    "closure_pairs",
    "classify_progression",
]


@dataclass
class LawReport:
    law: str
    params: dict
    counterexamples: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "LawReport") -> "LawReport":
        return LawReport(
            self.law,
            {**self.params, **other.params},
            self.counterexamples + other.counterexamples,
            {**self.stats, **other.stats},
            self.rows + other.rows,
        )


def _require_monotone(spec: ThetaSpec) -> None:
    if not spec.monotone:
        raise PreconditionError(f"{spec} is not monotone (theta(n) <= theta(mn) fails)")


def _require_linear_growth(spec: ThetaSpec) -> None:
    # theta(n) >= n and monotone: the dense and practical rows
    if not isinstance(spec, (Dense, Practical)):
        raise PreconditionError(f"{spec} does not satisfy n <= theta(n) << sigma(n)")


def verify_inclusions(spec: ThetaSpec, q: int, m_max: int) -> LawReport:
    """{m : mq in B} c B_{theta_q} c {m : mq in B} u {m : theta(m) < P+(q)} for m <= m_max."""
    _require_monotone(spec)
    if q < 2:
        raise PreconditionError("q must be >= 2")
    top = factor_int(q)[-1][0]
    base = sorted_members(spec, m_max * q)
    via_q = set((base[base % q == 0] // q).tolist())
    lifted = set(sorted_members(lift_q(spec, q), m_max).tolist())
    bad = []
    for m in sorted(via_q - lifted):
        bad.append({"m": m, "inclusion": "first", "detail": f"{m * q} in B but {m} not in B_theta_q"})
    small = 0
    for m in sorted(lifted - via_q):
        b = spec.bound(spec.state_of(factorize(m)))
        if b is not None and b < top:
            small += 1
        else:
            bad.append({"m": m, "inclusion": "second", "detail": f"{m} in B_theta_q, {m * q} not in B, theta(m) >= {top}"})
    return LawReport(
        "inclusion",
        {"theta": spec.describe(), "q": q, "m_max": m_max},
        bad,
        {"lifted": len(lifted), "multiples": len(via_q), "small_theta": small},
    )


def equidist_report(spec: ThetaSpec, x_list: Iterable[int], q: int) -> LawReport:
    """Largest deviation of coprime classes from M(x)/phi(q); observational only."""
    if q < 2:
        raise PreconditionError("q must be >= 2")
    coprime = coprime_residues(q)
    phi = euler_phi(q)
    report = LawReport("equidist", {"theta": spec.describe(), "q": q})
    for x in x_list:
        arr = sorted_members(spec, int(x))
        counts = np.bincount(arr % q, minlength=q)
        m = int(counts[coprime].sum())
        dev = float(np.max(np.abs(counts[coprime] - m / phi)))
        total = len(arr)
        report.rows.append(
            {
                "x": int(x),
                "B": total,
                "coprime": m,
                "D": dev,
                "D_over_B": dev / total,
                "D_log_x_over_x": dev * math.log(x) / x if x > 1 else 0.0,
            }
        )
    return report


def _valid_pair(spec: ThetaSpec, q: int, m: int, n: int) -> str | None:
    if m <= q:
        return f"m={m} must exceed q={q}"
    if not is_member(spec, m):
        return f"m={m} is not in B"
    if n % q != 1 % q:
        return f"n={n} is not 1 mod {q}"
    if not is_member(Dense(q + 1), n):
        return f"n={n} is not {q + 1}-dense"
    return None


def closure_pairs(spec: ThetaSpec, q: int, count: int, cap: int = 10**4, seed: int = 0) -> list[tuple[int, int]]:
    """Random pairs (m, n): m in B with q < m <= cap, n <= cap in D_{q+1} with n = 1 mod q."""
    ms = sorted_members(spec, cap)
    ms = ms[ms > q]
    ns = sorted_members(Dense(q + 1), cap)
    ns = ns[ns % q == 1 % q]
    if len(ms) == 0 or len(ns) == 0:
        raise PreconditionError(f"no valid pairs below cap={cap}")
    rng = np.random.default_rng(seed)
    mi = rng.integers(0, len(ms), size=count)
    ni = rng.integers(0, len(ns), size=count)
    return list(zip(ms[mi].tolist(), ns[ni].tolist()))


def closure_check(
    spec: ThetaSpec,
    q: int,
    pairs: Sequence[tuple[int, int]] | None = None,
    count: int = 1000,
    cap: int = 10**4,
    seed: int = 0,
) -> LawReport:
    """m*n stays in B for m in B, m > q and n a (q+1)-dense number = 1 mod q."""
    _require_linear_growth(spec)
    if q < 2:
        raise PreconditionError("q must be >= 2")
    if pairs is None:
        pairs = closure_pairs(spec, q, count, cap, seed)
    else:
        bad_pairs = [(m, n, why) for m, n in pairs if (why := _valid_pair(spec, q, m, n))]
        if bad_pairs:
            raise PreconditionError("malformed pairs: " + "; ".join(w for _, _, w in bad_pairs))
    bad = []
    for m, n in pairs:
        f = factorize(m) * factorize(n)
        if not is_member_factored(spec, f):
            bad.append({"m": m, "n": n, "product": m * n})
    return LawReport(
        "closure",
        {"theta": spec.describe(), "q": q, "pairs": len(pairs), "cap": cap, "seed": seed},
        bad,
    )


class Verdict(enum.Enum):
    EMPTY = "Empty"
    SINGLETON = "Singleton"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class ProgressionClass:
    q: int
    a: int
    verdict: Verdict
    witness: int | None
    search_bound: int
    found: int

    @property
    def heuristic(self) -> bool:
        # only the Infinite verdict is backed by a proof
        return self.verdict is not Verdict.INFINITE

    def __str__(self) -> str:
        text = self.verdict.value
        if self.verdict is Verdict.SINGLETON:
            text += f"({self.witness})"
        return text + (" (heuristic)" if self.heuristic else "")


def classify_progression(spec: ThetaSpec, q: int, a: int, search_bound: int) -> ProgressionClass:
    """Empty, Singleton or Infinite, from members = a mod q up to search_bound."""
    _require_linear_growth(spec)
    if q < 1:
        raise PreconditionError("q must be >= 1")
    if search_bound < q:
        raise PreconditionError(f"search bound {search_bound} is below q={q}")
    a %= q
    arr = sorted_members(spec, int(search_bound))
    hits = arr[arr % q == a]
    if len(hits) and int(hits[-1]) >= q:
        verdict, witness = Verdict.INFINITE, None
    elif len(hits) == 1:
        verdict, witness = Verdict.SINGLETON, int(hits[0])
    else:
        verdict, witness = Verdict.EMPTY, None
    return ProgressionClass(q, a, verdict, witness, int(search_bound), int(len(hits)))
