import pytest
from hypothesis import given, settings, strategies as st

from ptuples.constructor import (
    CompositeMember,
    ExtensionExists,
    InadmissibleGaps,
    SeedNotPrime,
    StepExhausted,
    enumerate_walks,
    extend_left,
    greedy_construct,
    verify_tuple,
)
from ptuples.corpus import get_record, load_corpus
from ptuples.patterns import residue_profile
from ptuples.primecore import is_prime


@pytest.mark.parametrize(
    "p, d1, members",
    [
        (3, 1, (3, 5, 7)),
        (5, 3, (5, 11, 17, 23, 29)),
        (5, 1, (5, 7, 19, 31, 43)),
        (7, 2, (7, 11, 29, 47, 79, 83, 101)),
        (7, 3, (7, 13, 19, 53, 59, 79, 113)),
        (7, 5, (7, 17, 41, 79, 89, 113, 137)),
    ],
)
def test_greedy_small(p, d1, members):
    tup = greedy_construct(p, d1)
    assert tup.members == members
    assert tup.right_stop.blocked_member == members[-1]


def test_greedy_43():
    tup = greedy_construct(43, 2)
    assert tup.members == get_record("sec2-43tuple").members
    assert str(tup.right_stop) == "9241+2(2+43n)=43(215+2n)"


def test_greedy_errors():
    with pytest.raises(SeedNotPrime):
        greedy_construct(7, 1)  # 9
    with pytest.raises(ValueError):
        greedy_construct(7, 7)
    with pytest.raises(ValueError):
        greedy_construct(9, 1)
    with pytest.raises(StepExhausted) as exc:
        greedy_construct(43, 2, member_limit=50)
    assert exc.value.partial[:2] == (43, 47)


def test_extend_left_eleven():
    tup = verify_tuple(get_record("eq1-11tuple").members, 11)
    ext = extend_left(tup)
    left = get_record("ex2.9-11tuple-left").members
    assert ext.members[:10] == tuple(reversed(left[1:]))
    assert len(ext) == 21
    assert str(ext.left_stop) == "-317+2(-1+11n)=11(-29+2n)"


@pytest.mark.parametrize(
    "p, d1, expected",
    [
        (5, 3, (-29, -23, -17, -11, 5, 11, 17, 23, 29)),
        (7, 2, get_record("ex2.1-tridecuplet-d2").members),
    ],
)
def test_extend_left_greedy(p, d1, expected):
    assert extend_left(greedy_construct(p, d1)).members == expected


def test_extend_left_respects_bound():
    ext = extend_left(greedy_construct(5, 1))
    assert len(ext) <= 9
    assert ext.members[-5:] == (5, 7, 19, 31, 43)


def test_walks_include_printed():
    walks = {w.members for w in enumerate_walks(5, 1, 20, 50)}
    assert (5, 7, 19, 11, 13) in walks
    assert (5, 7, 19, 11, 3) in walks
    assert (5, 7, -11, -19, -17) in walks
    assert (5, 7, -11, -19, -37) in walks
    assert len(walks) == 45


def test_walks_triplet():
    assert [w.members for w in enumerate_walks(3, 1, 2, 10)] == [(3, 5, 7)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 6), st.integers(4, 30), st.integers(10, 80))
def test_walk_invariants(p, d1, gap_bound, value_bound):
    if d1 % p == 0:
        return
    for w in enumerate_walks(p, d1, gap_bound, value_bound):
        assert len(w) == p and w.members[0] == p
        assert all(is_prime(m) and abs(m) <= value_bound for m in w.members)
        assert len({abs(m) for m in w.members}) == p
        assert all(abs(g) <= gap_bound and (g // 2 - d1) % p == 0 for g in w.gaps)


def test_verify_errors():
    with pytest.raises(CompositeMember) as exc:
        verify_tuple((5, 7, 19, 31, 45), 5)
    assert exc.value.factor == 3
    with pytest.raises(InadmissibleGaps):
        verify_tuple((5, 7, 11), 5)
    with pytest.raises(ExtensionExists) as exc:
        verify_tuple((5, 7, 19, 31), 5)
    assert exc.value.side == "right" and exc.value.prime == 43


def _full_tuples():
    return [r for r in load_corpus()
            if r.kind == "exceptional-tuple" and not r.erratum
            and len(r.members) == r.p and r.members[0] == r.p]


@pytest.mark.parametrize("rec", _full_tuples(), ids=lambda r: r.id)
def test_residue_permutation(rec):
    assert sorted(residue_profile(rec.members, rec.p).residues) == list(range(rec.p))


@pytest.mark.parametrize("rec", _full_tuples(), ids=lambda r: r.id)
def test_full_tuples_certified(rec):
    tup = verify_tuple(rec.members, rec.p)
    assert tup.right_stop is not None
    assert all(tup.right_stop.holds(n) for n in range(10))
