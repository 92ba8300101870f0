"""Threshold functions theta and their q-lifted versions.

A theta spec decides which prime may extend a factorization: a prime
``p`` larger than every prime of ``n`` may be appended when
``p <= theta(n)``.  Every spec here works on a small *state* that is
updated incrementally as primes are appended, so enumeration never has
to refactor anything:

* ``root()`` is the state of ``n = 1``;
* ``child(state, p, a)`` appends ``p**a`` where ``p`` exceeds all primes so far;
* ``times_prime(state, p, e)`` multiplies by ``p`` when ``p`` already
  divides the number ``e`` times (used by the lift);
* ``bound(state)`` is ``floor(theta(n))``, or ``None`` for infinity;
* ``value(state)`` is the exact value (``int``, ``Fraction`` or ``inf``).

Since primes are integers, ``p <= theta(n)`` is the same as
``p <= floor(theta(n))``, and that is the only comparison the set
definition needs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from .arith import Factorization, factor_int, factorize, sigma_prime_power
from .errors import PreconditionError, SpecParseError, WordOverflowError

INF = math.inf

ExtendedBound = Union[int, Fraction, float]

__all__ = [
    "INF",
    "ThetaSpec",
    "PrimePowers",
    "AlmostPrime",
    "Smooth",
    "Dense",
    "Practical",
    "QLifted",
    "theta_eval",
    "prime_fits",
    "lift_q",
    "parse_theta",
]

_WORD = 2**64


class ThetaSpec:
    """Base class; concrete variants are frozen dataclasses."""

    monotone: bool = False

    def root(self) -> Any:
        raise NotImplementedError

    def child(self, state: Any, p: int, a: int) -> Any:
        raise NotImplementedError

    def times_prime(self, state: Any, p: int, e: int) -> Any:
        raise NotImplementedError

    def bound(self, state: Any) -> int | None:
        raise NotImplementedError

    def value(self, state: Any) -> ExtendedBound:
        b = self.bound(state)
        return INF if b is None else b

    def state_of(self, f: Factorization) -> Any:
        st = self.root()
        for p, e in f.factors:
            st = self.child(st, p, e)
        return st

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class PrimePowers(ThetaSpec):
    # state: largest prime so far (1 for n = 1)
    monotone = False

    def root(self):
        return 1

    def child(self, state, p, a):
        return p

    def times_prime(self, state, p, e):
        return max(state, p)

    def bound(self, state):
        return None if state == 1 else state

    def describe(self):
        return "prime-powers"


@dataclass(frozen=True)
class AlmostPrime(ThetaSpec):
    """theta = inf while fewer than k distinct primes, else P+(n)."""

    k: int
    monotone = False

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError("almost-prime needs k >= 1")

    def root(self):
        return (0, 1)

    def child(self, state, p, a):
        return (state[0] + 1, p)

    def times_prime(self, state, p, e):
        w, top = state
        return (w + (e == 0), max(top, p))

    def bound(self, state):
        w, top = state
        return None if w < self.k else top

    def describe(self):
        return f"almost-prime:{self.k}"


@dataclass(frozen=True)
class Smooth(ThetaSpec):
    y: int
    monotone = True

    def __post_init__(self):
        if self.y < 2:
            raise PreconditionError("smooth needs y >= 2")

    def root(self):
        return 1

    def child(self, state, p, a):
        return p

    def times_prime(self, state, p, e):
        return max(state, p)

    def bound(self, state):
        return self.y if self.y > state else state

    def describe(self):
        return f"smooth:{self.y}"


@dataclass(frozen=True)
class Dense(ThetaSpec):
    """theta(n) = t*n with t = u/v >= 2 kept as a reduced fraction."""

    u: int
    v: int = 1
    monotone = True

    def __post_init__(self):
        if self.v < 1 or self.u < 1:
            raise PreconditionError(f"bad dense parameter {self.u}/{self.v}")
        g = math.gcd(self.u, self.v)
        if g != 1:
            object.__setattr__(self, "u", self.u // g)
            object.__setattr__(self, "v", self.v // g)
        if self.u < 2 * self.v:
            raise PreconditionError(f"dense needs t >= 2, got {self.u}/{self.v}")

    @classmethod
    def of(cls, t) -> "Dense":
        t = Fraction(t)
        return cls(t.numerator, t.denominator)

    @property
    def t(self) -> Fraction:
        return Fraction(self.u, self.v)

    def root(self):
        return 1

    def child(self, state, p, a):
        return state * p**a

    def times_prime(self, state, p, e):
        return state * p

    def bound(self, state):
        return self.u * state // self.v

    def value(self, state):
        val = Fraction(self.u * state, self.v)
        if val >= _WORD:
            raise WordOverflowError(f"t*n = {val} does not fit in 64 bits")
        return int(val) if val.denominator == 1 else val

    def describe(self):
        return f"dense:{self.u}" if self.v == 1 else f"dense:{self.u}/{self.v}"


@dataclass(frozen=True)
class Practical(ThetaSpec):
    # state: sigma(n)
    monotone = True

    def root(self):
        return 1

    def child(self, state, p, a):
        return state * sigma_prime_power(p, a)

    def times_prime(self, state, p, e):
        return state // sigma_prime_power(p, e) * sigma_prime_power(p, e + 1)

    def bound(self, state):
        return state + 1

    def value(self, state):
        if state + 1 >= _WORD:
            raise WordOverflowError(f"sigma(n) + 1 = {state + 1} does not fit in 64 bits")
        return state + 1

    def describe(self):
        return "practical"


@dataclass(frozen=True)
class QLifted(ThetaSpec):
    """theta_q: absorb the prime factors of q, smallest first, while theta allows.

    ``q_primes`` lists the prime factors of ``q`` with multiplicity in
    nondecreasing order.  The state is the base state of ``n`` together
    with the exponents of the distinct primes of ``q`` in ``n``.
    """

    base: ThetaSpec
    q: int
    q_primes: tuple[int, ...] = field(default=())
    _distinct: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.base, QLifted):
            raise PreconditionError("lifting an already lifted spec is not supported")
        if self.q < 2:
            raise PreconditionError("q must be >= 2")
        qp = self.q_primes or tuple(p for p, e in factor_int(self.q) for _ in range(e))
        if math.prod(qp) != self.q or list(qp) != sorted(qp):
            raise PreconditionError(f"q_primes {qp} is not the factorization of {self.q}")
        object.__setattr__(self, "q_primes", tuple(qp))
        object.__setattr__(self, "_distinct", tuple(sorted(set(qp))))

    @property
    def monotone(self) -> bool:  # type: ignore[override]
        return self.base.monotone

    def root(self):
        return (self.base.root(), (0,) * len(self._distinct))

    def child(self, state, p, a):
        bs, ex = state
        bs = self.base.child(bs, p, a)
        if p in self._distinct:
            i = self._distinct.index(p)
            ex = ex[:i] + (a,) + ex[i + 1 :]
        return (bs, ex)

    def times_prime(self, state, p, e):
        raise PreconditionError("lifted specs cannot be lifted again")

    def _absorbed(self, state):
        base = self.base
        bs, ex = state
        ex = list(ex)
        dist = self._distinct
        for qi in self.q_primes:
            b = base.bound(bs)
            if b is not None and qi > b:
                break
            i = dist.index(qi)
            bs = base.times_prime(bs, qi, ex[i])
            ex[i] += 1
        return bs

    def bound(self, state):
        return self.base.bound(self._absorbed(state))

    def value(self, state):
        return self.base.value(self._absorbed(state))

    def describe(self):
        return f"lift({self.base.describe()},{self.q})"


def theta_eval(spec: ThetaSpec, f: Factorization) -> ExtendedBound:
    """Exact theta(n) for a factored n."""
    return spec.value(spec.state_of(f))


def prime_fits(spec: ThetaSpec, f: Factorization, p: int) -> bool:
    """Whether ``p <= theta(n)``, compared exactly (boundary inclusive)."""
    if isinstance(spec, Dense):
        return p * spec.v <= spec.u * f.n
    b = spec.bound(spec.state_of(f))
    return b is None or p <= b


def lift_q(spec: ThetaSpec, q: int) -> QLifted:
    if isinstance(spec, QLifted):
        raise PreconditionError("spec is already lifted")
    if not spec.monotone:
        raise PreconditionError(f"theta_q needs a monotone theta; {spec} is not")
    return QLifted(spec, q)


_GRAMMAR = re.compile(
    r"^(?:(?P<practical>practical)"
    r"|dense:(?P<u>\d+)(?:/(?P<v>\d+))?"
    r"|smooth:(?P<y>\d+)"
    r"|almost-prime:(?P<k>\d+)"
    r"|(?P<pp>prime-powers))$"
)


def parse_theta(text: str) -> ThetaSpec:
    """Parse ``practical | dense:u[/v] | smooth:y | almost-prime:k | prime-powers``."""
    m = _GRAMMAR.match(text.strip())
    if not m:
        raise SpecParseError(f"unrecognised theta spec {text!r}")
    try:
        if m["practical"]:
            return Practical()
        if m["u"]:
            return Dense(int(m["u"]), int(m["v"] or 1))
        if m["y"]:
            return Smooth(int(m["y"]))
        if m["k"]:
            return AlmostPrime(int(m["k"]))
        return PrimePowers()
    except PreconditionError as exc:
        raise SpecParseError(str(exc)) from exc


def theta_of_n(spec: ThetaSpec, n: int) -> ExtendedBound:
    return theta_eval(spec, factorize(n))
