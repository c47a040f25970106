import pytest
from hypothesis import given, settings, strategies as st

from ptuples.primecore import is_prime
from ptuples.progressions import (
    NotCoprime,
    OddStep,
    ProgressionSpec,
    classify,
    enumerate_runs,
    max_run_oracle,
)


@pytest.mark.parametrize(
    "a, s, p_M, generic, initial",
    [
        (5, 6, 5, 4, 5),
        (7, 6, 5, 4, 4),
        (35, 6, 5, 4, 4),
        (55, 6, 5, 4, 4),
        (25, 6, 5, 4, 4),
        (3, 2, 3, 2, 3),
        (7, 300, 7, 6, 7),
        (11, 210, 11, 10, 11),
    ],
)
def test_classify(a, s, p_M, generic, initial):
    rep = classify(a, s)
    assert (rep.p_M, rep.generic_max, rep.initial_max) == (p_M, generic, initial)


def test_prime_power_flag():
    assert classify(25, 6).prime_power_flag
    assert not classify(35, 6).prime_power_flag
    assert not classify(5, 6).prime_power_flag


def test_spec_errors():
    with pytest.raises(OddStep):
        ProgressionSpec(5, 3)
    with pytest.raises(NotCoprime):
        ProgressionSpec(9, 6)


def test_runs_35():
    runs = enumerate_runs(ProgressionSpec(35, 6), 0, 120, min_len=4)
    assert [r.members[0] for r in runs] == [41, 251, 641]
    assert all(r.left_terminator[1] == 5 and r.right_terminator[1] == 5 for r in runs)


def test_runs_55_terminators():
    runs = {r.members[0]: r for r in enumerate_runs(ProgressionSpec(55, 6), 0, 120, min_len=3)}
    assert runs[97].left_terminator == (91, 7)
    assert runs[271].right_terminator == (289, 17)
    assert runs[367].left_terminator == (361, 19)
    assert len(runs[61].members) == len(runs[601].members) == 4


def test_initial_run_at_p_M():
    runs = enumerate_runs(ProgressionSpec(5, 6), 0, 10)
    assert runs[0].members == (5, 11, 17, 23, 29) and runs[0].left_terminator is None


@pytest.mark.parametrize("a, s", [(5, 6), (7, 6), (35, 6), (55, 6), (25, 6), (3, 2), (7, 300)])
def test_oracle_within_bounds(a, s):
    spec = ProgressionSpec(a, s)
    rep = classify(a, s)
    assert max_run_oracle(spec, 0, 20000) <= rep.initial_max
    assert max_run_oracle(spec, 1, 20000) <= rep.generic_max


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(5, 6), (35, 6), (55, 6), (7, 300), (3, 2), (13, 30)]),
    st.integers(0, 5000),
    st.integers(1, 3000),
    st.integers(1, 3000),
)
def test_run_split_invariance(pair, lo, w1, w2):
    spec = ProgressionSpec(*pair)
    whole = enumerate_runs(spec, lo, lo + w1 + w2)
    parts = enumerate_runs(spec, lo, lo + w1) + enumerate_runs(spec, lo + w1, lo + w1 + w2)
    assert whole == parts


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(5, 6), (35, 6), (7, 300), (13, 30)]), st.integers(0, 10**6))
def test_runs_are_maximal(pair, lo):
    spec = ProgressionSpec(*pair)
    for r in enumerate_runs(spec, lo, lo + 500):
        assert all(is_prime(m) for m in r.members)
        assert not is_prime(r.right_terminator[0])
        if r.left_terminator is not None:
            assert not is_prime(r.left_terminator[0])


def test_septet_progression():
    rep = classify(7, 30)
    assert rep.p_M == 7 and rep.initial_max == 7
    runs = enumerate_runs(ProgressionSpec(7, 150), 0, 10)
    assert runs[0].members == (7, 157, 307, 457, 607, 757, 907)


@pytest.mark.parametrize("a, s", [(7, 6), (35, 6), (55, 6), (7, 300), (13, 30), (11, 210)])
def test_longest_runs_end_on_small_primes(a, s):
    rep = classify(a, s)
    small = set(rep.a_divisors) | {rep.p_M}
    for r in enumerate_runs(ProgressionSpec(a, s), 1, 200000, min_len=rep.generic_max):
        ends = [r.right_terminator[0]] + ([r.left_terminator[0]] if r.left_terminator else [])
        assert any(v % q == 0 for v in ends for q in small)
