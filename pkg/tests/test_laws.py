import pytest

from thetasets.errors import PreconditionError
from thetasets.genset import sorted_members
from thetasets.laws import (
    LawReport,
    Verdict,
    classify_progression,
    closure_check,
    closure_pairs,
    equidist_report,
    verify_inclusions,
)
from thetasets.theta import AlmostPrime, Dense, Practical, PrimePowers, Smooth, lift_q


def test_inclusion_example():
    rep = verify_inclusions(Dense(2), 3, 12)
    assert rep.passed
    assert sorted_members(lift_q(Dense(2), 3), 12).tolist() == [1, 2, 4, 6, 8, 10, 12]
    assert rep.stats["small_theta"] == 1  # m = 1: 2 < 3


@pytest.mark.parametrize("spec", [Practical(), Dense(2), Dense(3), Dense(5, 2), Smooth(7)], ids=str)
def test_inclusions_bulk(spec):
    for q in (2, 3, 4, 6, 7, 12, 30):
        assert verify_inclusions(spec, q, 2000).passed, q


def test_inclusions_need_monotone():
    with pytest.raises(PreconditionError):
        verify_inclusions(PrimePowers(), 3, 100)
    with pytest.raises(PreconditionError):
        verify_inclusions(AlmostPrime(2), 3, 100)


def test_closure_examples():
    assert closure_check(Practical(), 2, pairs=[(4, 3)]).passed
    assert closure_check(Dense(2), 3, pairs=[(6, 4)]).passed
    with pytest.raises(PreconditionError, match="dense"):
        closure_check(Dense(2), 3, pairs=[(6, 7)])
    with pytest.raises(PreconditionError):
        closure_check(Dense(2), 3, pairs=[(2, 4)])
    with pytest.raises(PreconditionError):
        closure_check(Smooth(7), 3)


@pytest.mark.parametrize("spec", [Practical(), Dense(2), Dense(3)], ids=str)
def test_closure_random(spec):
    for q in (2, 3, 5, 10):
        rep = closure_check(spec, q, count=300, seed=q)
        assert rep.passed and rep.params["pairs"] == 300


def test_closure_pairs_are_valid_and_seeded():
    pairs = closure_pairs(Practical(), 4, 50, seed=7)
    assert pairs == closure_pairs(Practical(), 4, 50, seed=7)
    for m, n in pairs:
        assert m > 4 and n % 4 == 1 and m <= 10**4 and n <= 10**4


def test_classify_examples():
    empty = classify_progression(Practical(), 12, 10, 10**6)
    single = classify_progression(Practical(), 12, 2, 10**6)
    inf = classify_progression(Practical(), 12, 4, 10**6)
    assert empty.verdict is Verdict.EMPTY and str(empty) == "Empty (heuristic)"
    assert single.verdict is Verdict.SINGLETON and single.witness == 2
    assert str(single) == "Singleton(2) (heuristic)"
    assert inf.verdict is Verdict.INFINITE and not inf.heuristic and str(inf) == "Infinite"


def test_classify_mod_12():
    verdicts = {a: classify_progression(Practical(), 12, a, 10**6) for a in range(12)}
    infinite = {a for a, v in verdicts.items() if v.verdict is Verdict.INFINITE}
    assert {0, 4, 8} <= infinite
    assert infinite == {0, 4, 6, 8}
    assert verdicts[1].verdict is Verdict.SINGLETON and verdicts[1].witness == 1
    assert verdicts[2].witness == 2
    for v in verdicts.values():
        if v.verdict is Verdict.SINGLETON:
            assert v.witness < 12


def test_classify_preconditions():
    with pytest.raises(PreconditionError):
        classify_progression(Practical(), 12, 2, 11)
    with pytest.raises(PreconditionError):
        classify_progression(PrimePowers(), 12, 2, 100)


def test_equidist_rows():
    rep = equidist_report(Practical(), [10**4, 10**6], 5)
    assert rep.passed and len(rep.rows) == 2
    assert rep.rows[1]["D_over_B"] < rep.rows[0]["D_over_B"]
    two = equidist_report(Dense(3), [1000], 2)
    assert two.rows[0]["D"] == 0.0


def test_dense2_odd_classes_empty():
    arr = sorted_members(Dense(2), 10**5)
    assert arr[arr % 2 == 1].tolist() == [1]
    rep = equidist_report(Dense(2), [10**5], 12)
    # only n = 1 is coprime to 12
    assert rep.rows[0]["coprime"] == 1


def test_report_merge():
    a = LawReport("x", {"q": 2}, [1])
    b = LawReport("x", {"m": 3}, [2], {"s": 1})
    m = a.merge(b)
    assert m.counterexamples == [1, 2] and m.params == {"q": 2, "m": 3} and not m.passed
