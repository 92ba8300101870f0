"""Membership in B_theta and depth-first enumeration of B_theta(x).

The walk starts at ``n = 1`` and, at a node ``n`` with largest prime
``P``, appends every prime ``P < p <= min(theta(n), x/n)`` with every
exponent that keeps the product ``<= x``.  Each member is produced
exactly once because its increasing factorization is unique.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
import multiprocessing as mp
from typing import Iterator

import numpy as np

from .arith import Factorization, PrimeTables, factorize, prime_tables
from .errors import PreconditionError, ResourceLimitError
from .theta import ThetaSpec

__all__ = [
    "is_member",
    "is_member_factored",
    "MemberStream",
    "enumerate_members",
    "members",
    "members_with_theta",
]

# frontier size for the parallel split; fixed so output never depends on worker count
_FRONTIER = 512
_CHUNKS = 64


def is_member(spec: ThetaSpec, n: int, tables: PrimeTables | None = None) -> bool:
    if n < 1:
        raise PreconditionError(f"membership is defined for n >= 1, got {n}")
    return is_member_factored(spec, factorize(n, tables))


def is_member_factored(spec: ThetaSpec, f: Factorization) -> bool:
    # each distinct prime is tested against theta of the earlier prime powers
    st = spec.root()
    for p, e in f.factors:
        b = spec.bound(st)
        if b is not None and p > b:
            return False
        st = spec.child(st, p, e)
    return True


def _walk(spec: ThetaSpec, x: int, primes: list[int], nodes, out: list[int]) -> None:
    bound = spec.bound
    child = spec.child
    nprimes = len(primes)
    stack = list(nodes)
    push = stack.append
    emit = out.append
    while stack:
        n, st, i = stack.pop()
        emit(n)
        if i >= nprimes:
            continue
        lim = x // n
        b = bound(st)
        if b is not None and b < lim:
            lim = b
        if primes[i] > lim:
            continue
        j = bisect_right(primes, lim, i)
        # primes above sqrt(x/n) only take exponent 1 and have no children
        s = bisect_right(primes, math.isqrt(x // n), i, j)
        for k in range(i, s):
            p = primes[k]
            m = n * p
            a = 1
            nxt = primes[k + 1] if k + 1 < nprimes else x + 1
            while m <= x:
                if m * nxt > x:
                    emit(m)
                else:
                    push((m, child(st, p, a), k + 1))
                m *= p
                a += 1
        if s < j:
            out.extend([n * p for p in primes[s:j]])


def _walk_theta(spec: ThetaSpec, x: int, primes: list[int], nodes, out: list, bounds: list) -> None:
    bound = spec.bound
    child = spec.child
    nprimes = len(primes)
    stack = list(nodes)
    while stack:
        n, st, i = stack.pop()
        b = bound(st)
        out.append(n)
        bounds.append(b)
        lim = x // n
        if b is not None and b < lim:
            lim = b
        if i >= nprimes or primes[i] > lim:
            continue
        j = bisect_right(primes, lim, i)
        for k in range(i, j):
            p = primes[k]
            m = n * p
            a = 1
            while m <= x:
                stack.append((m, child(st, p, a), k + 1))
                m *= p
                a += 1


def _children(spec, x, primes, node):
    n, st, i = node
    lim = x // n
    b = spec.bound(st)
    if b is not None and b < lim:
        lim = b
    j = bisect_right(primes, lim, i)
    kids = []
    for k in range(i, j):
        p = primes[k]
        m, a = n * p, 1
        while m <= x:
            kids.append((m, spec.child(st, p, a), k + 1))
            m *= p
            a += 1
    return kids


def _frontier(spec, x, primes, size):
    """Expand breadth-first until ``size`` open nodes remain; returns (emitted, open)."""
    done = []
    queue = deque([(1, spec.root(), 0)])
    while queue and len(queue) < size:
        node = queue.popleft()
        done.append(node[0])
        queue.extend(_children(spec, x, primes, node))
    return done, list(queue)


_job: tuple | None = None


def _run_chunk(nodes) -> np.ndarray:
    spec, x, primes = _job
    out: list[int] = []
    _walk(spec, x, primes, nodes, out)
    return np.asarray(out, dtype=np.int64)


def _tables_for(x: int) -> PrimeTables:
    try:
        return prime_tables(max(x, 2))
    except ResourceLimitError:
        raise
    except MemoryError as exc:
        raise ResourceLimitError(f"not enough memory for primes up to {x}") from exc


def members(spec: ThetaSpec, x: int, workers: int = 1) -> np.ndarray:
    """All members of B_theta(x) as an int64 array in walk (not sorted) order."""
    global _job
    x = int(x)
    if x < 1:
        return np.zeros(0, dtype=np.int64)
    primes = _tables_for(x).prime_list
    if workers <= 1:
        out: list[int] = []
        _walk(spec, x, primes, [(1, spec.root(), 0)], out)
        return np.asarray(out, dtype=np.int64)
    done, open_nodes = _frontier(spec, x, primes, _FRONTIER)
    step = max(1, -(-len(open_nodes) // _CHUNKS))
    chunks = [open_nodes[k : k + step] for k in range(0, len(open_nodes), step)]
    _job = (spec, x, primes)
    try:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    finally:
        _job = None
    return np.concatenate([np.asarray(done, dtype=np.int64)] + parts)


def members_with_theta(spec: ThetaSpec, x: int) -> tuple[np.ndarray, list]:
    """Members of B_theta(x) with ``floor(theta(n))`` for each (``None`` = inf)."""
    x = int(x)
    if x < 1:
        return np.zeros(0, dtype=np.int64), []
    primes = _tables_for(x).prime_list
    out: list[int] = []
    bounds: list = []
    _walk_theta(spec, x, primes, [(1, spec.root(), 0)], out, bounds)
    return np.asarray(out, dtype=np.int64), bounds


@lru_cache(maxsize=6)
def sorted_members(spec: ThetaSpec, x: int) -> np.ndarray:
    """Cached, sorted, read-only member array (shared by the counting code)."""
    arr = np.sort(members(spec, x))
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MemberStream:
    """Members of B_theta(x), produced in depth-first order."""

    spec: ThetaSpec
    x: int
    workers: int = 1

    def __iter__(self) -> Iterator[int]:
        return iter(members(self.spec, self.x, self.workers).tolist())

    def array(self) -> np.ndarray:
        return members(self.spec, self.x, self.workers)


def enumerate_members(spec: ThetaSpec, x: int, workers: int = 1) -> MemberStream:
    if x < 1:
        raise PreconditionError("enumeration needs x >= 1")
    return MemberStream(spec, int(x), workers)
