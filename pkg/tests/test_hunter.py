import pytest
from hypothesis import given, settings, strategies as st

from ptuples.constructor import greedy_construct
from ptuples.hunter import (
    BracketingViolated,
    HuntError,
    NotFullTuple,
    RepeatSpec,
    brute_force_firsts,
    derive_repeat_spec,
    make_occurrence,
    search_occurrences,
    verify_bracketing,
)

QUINTET = RepeatSpec(5, (0, 6, 12, 18), 1)
SEPTET_150 = RepeatSpec(7, (0, 150, 300, 450, 600, 750), 3)
SEXTET_A = RepeatSpec(7, (0, 18, 36, 68, 72, 90), 4)
SEXTET_B = RepeatSpec(7, (0, 4, 22, 40, 72, 76), 4)
SPECS = [QUINTET, SEPTET_150, SEXTET_A, SEXTET_B]


def firsts(spec, lo, hi, **kw):
    return [o.first for o in search_occurrences(spec, lo, hi, **kw)]


def test_derive_from_quintet():
    spec = derive_repeat_spec(greedy_construct(5, 3))
    assert spec == QUINTET
    assert spec.bracket_gaps == (6,)
    assert derive_repeat_spec((7, 157, 307, 457, 607, 757, 907), 7) == SEPTET_150


def test_derive_rejects_partial():
    with pytest.raises(NotFullTuple):
        derive_repeat_spec((5, 11, 17), 5)
    with pytest.raises(HuntError):
        derive_repeat_spec((5, 11, 17, 23, 29))


@pytest.mark.parametrize(
    "offsets, residue",
    [((0, 6, 12), 1), ((0, 6, 12, 17), 1), ((2, 6, 12, 18), 1), ((0, 6, 12, 18), 0)],
)
def test_spec_validation(offsets, residue):
    with pytest.raises(HuntError):
        RepeatSpec(5, offsets, residue)


def test_bracket_gaps():
    assert SEXTET_A.bracket_gaps == (4, 18, 32)
    assert SEXTET_A.primary_gap == 18
    assert SEXTET_B.primary_gap == 4
    assert SEPTET_150.bracket_gaps == (150,)


@pytest.mark.parametrize(
    "spec, lo, hi, expected",
    [
        (QUINTET, 6, 700, [41, 61, 251, 601, 641]),
        (SEPTET_150, 8, 14000, [73, 2467, 4637, 6079, 7717, 13163]),
        (SEXTET_A, 8, 40000, [431, 35081]),
        (SEXTET_B, 8, 200000, [50047, 197887]),
    ],
)
def test_known_hunts(spec, lo, hi, expected):
    occs = search_occurrences(spec, lo, hi)
    assert [o.first for o in occs] == expected
    for o in occs:
        assert verify_bracketing(o, spec)


@pytest.mark.parametrize("spec", SPECS)
def test_matches_brute_force(spec):
    assert firsts(spec, 2, 60000) == brute_force_firsts(spec, 2, 60000)


def test_bracketing_rejects_tail():
    # 11,17,23,29 follows 5 in the exceptional quintet
    occ = make_occurrence(11, QUINTET)
    with pytest.raises(BracketingViolated):
        verify_bracketing(occ, QUINTET)
    assert 11 not in firsts(QUINTET, 2, 100)


def test_bracket_factors():
    occ = make_occurrence(73, SEPTET_150)
    assert occ.left_bracket == (-77, 7) and occ.right_bracket == (973, 7)


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(SPECS),
    st.integers(min_value=2, max_value=150000),
    st.integers(min_value=100, max_value=60000),
    st.integers(min_value=1, max_value=20000),
)
def test_window_split_invariance(spec, lo, width, cut):
    hi = lo + width
    mid = min(lo + cut, hi - 1)
    whole = firsts(spec, lo, hi)
    assert whole == firsts(spec, lo, mid) + firsts(spec, mid + 1, hi)
    assert whole == firsts(spec, lo, hi, segment=max(1, cut // 3))


@pytest.mark.parametrize("threads", [1, 2, 3, 8])
def test_thread_determinism(threads):
    ref = [o.to_dict() for o in search_occurrences(SEXTET_B, 8, 400000, segment=10000)]
    got = [o.to_dict() for o in search_occurrences(SEXTET_B, 8, 400000, segment=10000,
                                                   threads=threads)]
    assert got == ref


def test_max_results():
    assert firsts(SEPTET_150, 8, 10**6, max_results=3, segment=1000, threads=4) == [73, 2467, 4637]


def test_checkpoint_resume(tmp_path):
    ck = tmp_path / "hunt.ckpt"
    first = firsts(SEPTET_150, 8, 14000, segment=5000, checkpoint=ck)
    assert first == [73, 2467, 4637, 6079, 7717, 13163]
    lines = ck.read_text().splitlines()
    assert lines[0] == "8 5007 3"
    assert firsts(SEPTET_150, 8, 14000, segment=5000, checkpoint=ck) == []
    ck.write_text("\n".join(lines[:1]) + "\n")
    assert firsts(SEPTET_150, 8, 14000, segment=5000, checkpoint=ck) == [6079, 7717, 13163]


def test_bad_window():
    with pytest.raises(HuntError):
        search_occurrences(QUINTET, 1, 100)
    with pytest.raises(HuntError):
        search_occurrences(QUINTET, 100, 50)
    with pytest.raises(HuntError):
        search_occurrences(QUINTET, 2, 2**63)
