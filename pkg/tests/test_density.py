import math

import mpmath
import numpy as np
import pytest

from thetasets.census import count
from thetasets.density import (
    EULER_GAMMA,
    SERIES_SCALE,
    build_mertens,
    c_q,
    c_theta,
    r_q,
    r_qa,
    table_rq,
)
from thetasets.errors import PreconditionError, TableLimitError
from thetasets.theta import Dense, Practical, PrimePowers, Smooth, lift_q


def test_euler_gamma_digits():
    mpmath.mp.dps = 30
    assert abs(EULER_GAMMA - float(mpmath.euler)) < 1e-16
    assert SERIES_SCALE == pytest.approx(float(1 / (1 - mpmath.exp(-mpmath.euler))), rel=1e-15)


def test_mertens_examples():
    t = build_mertens(100)
    assert t.S(2) == pytest.approx(math.log(2))
    assert t.P(2) == pytest.approx(0.5)
    assert t.P(3) == pytest.approx(1 / 3)
    assert t.P(4.9) == pytest.approx(1 / 3)
    assert t.S(1) == 0.0
    assert t.P(1) == 1.0
    with pytest.raises(TableLimitError):
        t.S(101)


def test_mertens_shape():
    t = build_mertens(10**5)
    ys = np.arange(1, 10**5 + 1)
    s, p = t.S(ys), t.P(ys)
    assert np.all(np.diff(s) >= 0)
    assert np.all(np.diff(p) <= 0) and np.all((p > 0) & (p <= 1))
    # strictly decreasing across primes
    assert np.all(np.diff(t.P(t.primes)) < 0)
    # Mertens' third theorem: P(y) log y -> e^-gamma
    assert p[-1] * math.log(10**5) == pytest.approx(math.exp(-EULER_GAMMA), rel=0.01)


def test_convergence_between_truncations():
    small = c_theta(Dense(2), 10**5)
    large = c_theta(Dense(2), 10**6)
    assert abs(small.value - large.value) < 5 * small.tail_indicator
    assert small.tail_indicator >= 0 and large.value > 0
    assert large.partial_sum < large.value


def test_practical_constant_matches_count():
    v = c_theta(Practical(), 10**6).value
    x = 10**7
    b = count(Practical(), x)
    assert abs(v * x / math.log(x) - b) / b < 0.05


def test_doubling_identity():
    d2 = c_theta(Dense(2)).value
    assert c_theta(Dense(4)).value == pytest.approx(2 * d2, rel=0.01)
    assert c_q(Dense(2), 2) == pytest.approx(d2, rel=0.01)
    assert c_q(Practical(), 2) == pytest.approx(c_theta(Practical()).value, rel=0.01)
    assert c_q(Practical(), 1) == c_theta(Practical()).value


@pytest.mark.parametrize(
    "spec, q, expected",
    [(Dense(2), 5, 0.38362), (Practical(), 3, 0.64880), (Dense(3), 2, 0.79003), (Dense(5), 7, 0.29217)],
)
def test_r_q_examples(spec, q, expected):
    assert r_q(spec, q) == pytest.approx(expected, abs=0.01)


def test_r_qa_examples():
    assert r_qa(Dense(2), 12, 4) == pytest.approx(0.1841, abs=0.01)
    assert r_qa(Dense(2), 12, 4) == pytest.approx((r_q(Dense(2), 4) - r_q(Dense(2), 12)) / 2)
    assert r_qa(Practical(), 5, 1) == pytest.approx(0.1543, abs=0.01)
    assert r_qa(Practical(), 5, 0) == r_q(Practical(), 5)
    assert r_qa(Practical(), 5, -4) == r_qa(Practical(), 5, 1)


@pytest.mark.parametrize("spec", [Dense(2), Practical()], ids=str)
@pytest.mark.parametrize("q", [5, 12])
def test_residue_shares_sum_to_one(spec, q):
    shares = [r_qa(spec, q, a) for a in range(q)]
    assert sum(shares) == pytest.approx(1.0, abs=0.02)
    assert all(-0.02 <= s <= 1.02 for s in shares)


def test_table_structure():
    rows = dict(table_rq(Dense(2), 12))
    assert sorted(rows) == list(range(2, 13))
    assert rows[6] == pytest.approx(rows[3], abs=1e-3)
    assert rows[10] == pytest.approx(rows[5], abs=1e-3)
    assert rows[2] == pytest.approx(1.0, abs=1e-3)
    assert rows[4] <= rows[2] + 0.01
    assert rows[12] <= rows[6] + 0.01 <= rows[3] + 0.02


def test_vanishing_class():
    c = c_theta(Practical()).value
    assert abs(c * r_qa(Practical(), 12, 10)) < 0.01


def test_plain_method_is_partial_sum():
    est = c_theta(Dense(3), 10**5)
    assert c_q(Dense(3), 1, 10**5, method="plain") == est.partial_sum
    assert est.correction == est.value - est.partial_sum
    with pytest.raises(PreconditionError):
        est.pick("other")


def test_explicit_tables():
    t = build_mertens(2 * 10**4)
    est = c_theta(Dense(2), 10**4, tables=t)
    assert est.value == pytest.approx(c_theta(Dense(2), 10**4).value, rel=1e-12)
    with pytest.raises(TableLimitError):
        c_theta(lift_q(Dense(2), 12), 10**4, tables=t)


@pytest.mark.parametrize("spec", [PrimePowers(), Smooth(7)], ids=str)
def test_series_rejects_other_specs(spec):
    with pytest.raises(PreconditionError):
        c_theta(spec, 1000)
