"""Every multiplet, occurrence and factorization printed in the source, as checkable records.

Errata are kept as data: a record with ``erratum`` set holds the literal
printed values, and ``corrected_members`` / ``corrected_pattern`` (when given)
hold the reading that is arithmetically consistent. verify_all reports the
discrepancy for such records instead of counting them as failures.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field
from typing import Optional

from .constructor import TupleError, verify_tuple
from .hunter import HuntError, RepeatSpec, make_occurrence, verify_bracketing
from .patterns import PatternError, parse_pattern
from .primecore import factor_of, is_prime
from .progressions import ProgressionError, ProgressionSpec, enumerate_runs

KINDS = ("exceptional-tuple", "repeat-occurrence", "progression-example", "walk")


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    section: str
    kind: str
    members: tuple[int, ...]
    p: int
    pattern_text: Optional[str] = None
    erratum: Optional[str] = None
    note: Optional[str] = None
    # printed stopping identity b + 2(d1 + p n) = p(c + 2n) as (b, d1, c)
    stop: Optional[tuple[int, int, int]] = None
    # printed factorizations "lhs=rhs"
    claims: tuple[str, ...] = ()
    progression: Optional[tuple[int, int]] = None
    corrected_members: Optional[tuple[int, ...]] = None
    corrected_pattern: Optional[str] = None

    def export_line(self) -> str:
        fields = [
            f"id={self.id}",
            f"section={self.section}",
            f"kind={self.kind}",
            f"p={self.p}",
            "members=" + ",".join(str(m) for m in self.members),
        ]
        if self.pattern_text:
            fields.append(f"pattern={self.pattern_text}")
        if self.progression:
            fields.append(f"progression={self.progression[0]}+{self.progression[1]}n")
        if self.erratum:
            fields.append(f"erratum={self.erratum}")
        return "\t".join(fields)


def _ap(first: int, step: int, count: int) -> tuple[int, ...]:
    return tuple(first + k * step for k in range(count))


_D11 = 1536160080

_AP_DECUPLETS = (
    (2009803217, 3545963297, 5082123377, 6618283457, 815443537, 9690603617,
     11226763697, 12762923777, 14299083857, 15835243937),
    (2622695717, 4158855797, 5695015877, 7231175957, 8767336037, 10303496117,
     11839656197, 13375816277, 14911976357, 16448136437),
    (2646083851, 4182243931, 5718404011, 7254564091, 8790724171, 10326884251,
     11863044331, 13399204411, 14935364491, 16471524571),
    (3117107701, 4653267781, 6189427861, 7725587941, 9261748021, 10797908101,
     12334068181, 13870228261, 15406388341, 16942548421),
    (3178320413, 4714480493, 6250640573, 7786800653, 9322960733, 10859120813,
     12395280893, 13931440973, 15467601053, 17003761133),
    (3276952243, 4813112323, 6349272403, 7885432483, 9421592563, 10957752643,
     12493912723, 14030072803, 15566232883, 17102392963),
)

_DECUPLETS_11 = (
    (7989996643, 7989996667, 7989996691, 7989996737, 7989996739,
     7989996829, 7989996853, 7989996899, 7989996901, 7989996913),
    (13291266463, 13291266487, 13291266511, 13291266557, 13291266559,
     13291266649, 13291266673, 13291266719, 13291266721, 13291266733),
    (14024111323, 14024111347, 14024111371, 14024111417, 14024111419,
     14024111509, 14024111533, 14024111579, 14024111581, 14024111593),
)

TUPLE_43 = (
    43, 47, 137, 227, 317, 751, 1013, 1103, 1193, 1283, 1373, 1549, 1553, 1901,
    2593, 2683, 2687, 2777, 2953, 2957, 3391, 3739, 4001, 4091, 4783, 4787, 4877,
    4967, 5573, 5749, 5839, 5843, 6277, 6367, 7489, 8009, 8443, 8447, 8537, 8627,
    8803, 8807, 9241,
)

PATTERN_43 = (
    "[4,2(2+43),2(2+43),2(2+43),2(2+5*43),2(2+3*43),2(2+43),2(2+43),2(2+43),"
    "2(2+43),2(2+2*43),4,2(2+4*43),2(2+8*43),2(2+43),4,2(2+43),2(2+2*43),4,"
    "2(2+5*43),2(2+4*43),2(2+3*43),2(2+43),2(2+8*43),4,2(2+43),2(2+43),"
    "2(2+7*43),2(2+2*43),2(2+43),4,2(2+5*43),2(2+43),2(2+13*43),2(2+6*43),"
    "2(2+5*43),4,2(2+43),2(2+43),2(2+2*43),4,2(2+5*43)]"
)


def _build() -> tuple[CorpusRecord, ...]:
    R = CorpusRecord
    recs = [
        R("sec1-triplet", "§1", "exceptional-tuple", (3, 5, 7), 3,
          note="only three successive primes in 3+2n"),
        R("ex2.1-quintet-d1", "Ex. 2.1", "exceptional-tuple", (5, 7, 19, 31, 43), 5,
          "[2,2(1+5),2,2(1+5)]",
          erratum="printed third gap 2, but 19 -> 31 is 12",
          corrected_pattern="[2,2(1+5),2(1+5),2(1+5)]"),
        R("ex2.1-quintet-d3", "Ex. 2.1", "exceptional-tuple", (5, 11, 17, 23, 29), 5, "[6,6,6,6]"),
        R("ex2.1-quintet-d3b", "Ex. 2.1", "exceptional-tuple", (5, 11, 37, 43, 59), 5,
          "[6,2(3+10),6,2(3+5)]"),
        R("ex2.1-quintet-d4", "Ex. 2.1", "exceptional-tuple", (5, 13, 31, 59, 67), 5,
          "[8,2(4+5),2(4+10),8]"),
        R("ex2.1-quintet-d6", "Ex. 2.1", "exceptional-tuple", (5, 17, 29, 41, 53), 5,
          "[12,12,12,12]"),
        R("ex2.1-quintet-14-4", "Ex. 2.1", "exceptional-tuple", (5, 19, 23, 37, 41), 5,
          "[14,4,14,4]"),
        R("ex2.1-nonet-d1", "Ex. 2.1", "exceptional-tuple",
          (-43, -31, -19, -7, 5, 7, 19, 31, 43), 5,
          note="printed continuation; smallest-gap leftward greedy picks 3 (= 5-2) first"),
        R("ex2.1-nonet-d3b", "Ex. 2.1", "exceptional-tuple",
          (-29, -23, -17, -11, 5, 11, 37, 43, 59), 5),
        R("ex2.1-nonet-d4", "Ex. 2.1", "exceptional-tuple",
          (-67, -59, -31, -13, 5, 13, 31, 59, 67), 5),
        R("ex2.1-nonet-d6", "Ex. 2.1", "exceptional-tuple",
          (-43, -31, -19, -7, 5, 17, 29, 41, 53), 5),
        R("ex2.1-septet-d2", "Ex. 2.1", "exceptional-tuple", (7, 11, 29, 47, 79, 83, 101), 7,
          "[4,2(2+7),18,2(2+2*7),4,18]"),
        R("ex2.1-tridecuplet-d2", "Ex. 2.1", "exceptional-tuple",
          (-101, -83, -79, -47, -29, 3, 7, 11, 29, 47, 79, 83, 101), 7),
        R("ex2.1-septet-d3", "Ex. 2.1", "exceptional-tuple", (7, 13, 19, 53, 59, 79, 113), 7,
          "[6,6,2(3+2*7),6,2(3+7),34]"),
        R("ex2.1-septet-d5", "Ex. 2.1", "exceptional-tuple", (7, 17, 41, 79, 89, 113, 137), 7,
          "[10,2(5+7),2(5+2*7),10,24,24]"),
        R("ex2.1-septet-d6", "Ex. 2.1", "exceptional-tuple", (7, 19, 31, 43, 83, 137, 149), 7,
          "[12,12,12,2(6+2*7),2(6+3*7),12]",
          note="not the smallest-gap greedy septet: 83+26 = 109 is prime"),
        R("ex2.4-septet", "Ex. 2.4", "exceptional-tuple", (7, 13, 47, 67, 73, 79, 113), 7,
          "[6,2(3+2*7),2(3+7),6,6,34]", stop=(113, 3, 17)),
        R("eq1-11tuple", "Eqs. 1-2", "exceptional-tuple",
          (11, 13, 37, 61, 107, 109, 199, 223, 269, 271, 383), 11,
          "[2,2(1+11),24,2(1+2*11),2,2(1+4*11),24,46,2,2(1+5*11)]", stop=(383, 1, 35),
          note="not greedy: 271+46 = 317 is prime"),
        R("eq3-13tuple", "Eqs. 3-4", "exceptional-tuple",
          (13, 17, 47, 103, 107, 137, 167, 197, 227, 257, 313, 317, 347), 13,
          "[4,2(2+13),2(2+2*13),4,30,30,30,30,30,56,4,30]", stop=(347, 2, 27)),
        R("eq5-17tuple", "Eqs. 5-6", "exceptional-tuple",
          (17, 19, 89, 193, 229, 367, 607, 643, 883, 919, 1193, 1229, 1231, 1301, 1303,
           1373, 1409), 17,
          "[2,2(1+2*17),2(1+3*17),2(1+17),2(1+4*17),2(1+7*17),36,240,36,2(1+8*17),36,2,70,2,70,36]",
          stop=(1409, 1, 83)),
        R("sec2-43tuple", "§2", "exceptional-tuple", TUPLE_43, 43, PATTERN_43),
        R("ex2.7-walk-1", "Ex. 2.7", "walk", (5, 7, 19, 11, 13), 5,
          "[2,2(1+5),2(1-5),2]", stop=(13, 1, 3)),
        R("ex2.7-walk-2", "Ex. 2.7", "walk", (5, 7, 19, 11, 3), 5,
          "[2,2(1+5),2(1-5),2(1-5)]", stop=(3, 1, 1)),
        R("ex2.7-walk-3", "Ex. 2.7", "walk", (5, 7, -11, -19, -17), 5,
          "[2,2(1-2*5),2(1-5),2]", stop=(-17, 1, -3)),
        R("ex2.7-walk-4", "Ex. 2.7", "walk", (5, 7, -11, -19, -37), 5,
          "[2,2(1-2*5),2(1-5),2(1-2*5)]", stop=(-37, 1, -7)),
        R("ex2.7-walk-left", "Ex. 2.7", "walk", (5, -3, -11, -19, -37), 5,
          "[2(1-5),2(1-5),2(1-5),2(1-2*5)]"),
        R("ex2.9-11tuple-left", "Ex. 2.9 / Eq. 15", "walk",
          (11, -13, -37, -61, -107, -109, -199, -223, -269, -271, -317), 11,
          "[-2(1+11),-24,-24,-2(1+2*11),-2,-2(1+4*11),-24,-46,-2,46]",
          erratum="printed last distance 46, members imply -271 -> -317 = -46",
          corrected_pattern="[-2(1+11),-24,-24,-2(1+2*11),-2,-2(1+4*11),-24,-46,-2,-46]"),
        R("ex2.9-21tuple", "Ex. 2.9", "exceptional-tuple",
          (-317, -271, -269, -223, -199, -109, -107, -61, -37, -13,
           11, 13, 37, 61, 107, 109, 199, 223, 269, 271, 383), 11,
          stop=(383, 1, 35)),
        R("ex3.1-septet-150", "Ex. 3.1", "exceptional-tuple", _ap(7, 150, 7), 7),
    ]
    for k, f in enumerate((41, 61, 251, 601, 641), 1):
        recs.append(R(f"ex3.1-quartet-{k}", "Ex. 3.1", "repeat-occurrence", _ap(f, 6, 4), 5,
                      claims=("35=5*7", "65=5*13", "55=5*11", "85=5*17", "245=5*7^2", "275=5^2*11")
                      if k == 1 else ()))
    sextet_claims = {
        73: ("823+150=7*139", "73-150=-7*11"),
        2467: ("2467-150=7*331", "3217+150=7*481"),
        13163: ("13163-150=7*1859", "13913+150=7*2009"),
    }
    for k, f in enumerate((73, 2467, 4637, 6079, 7717, 13163), 1):
        recs.append(R(f"ex3.1-sextet-150-{k}", "Ex. 3.1", "repeat-occurrence", _ap(f, 150, 6), 7,
                      claims=sextet_claims.get(f, ())))
    for k, row in enumerate(_AP_DECUPLETS, 1):
        ap = _ap(row[0], _D11, 10)
        rec = dict(claims=("2009803217-1536160080=11*43058467",) if k == 1 else
                   ("15835243937+1536160080=11*1579218547",) if k == 6 else ())
        if row != ap:
            bad = next(i for i in range(10) if row[i] != ap[i])
            rec.update(
                erratum=f"printed {row[bad]} at position {bad} breaks the progression; "
                        f"expected {ap[bad]}",
                corrected_members=ap,
                claims=("2009803217-1536160080=11*43058467",),
            )
        recs.append(R(f"sec3-ap-decuplet-{k}", "§3", "repeat-occurrence", row, 11, **rec))
    q_12_2_12 = (17, 47, 137, 167)
    for k, f in enumerate(q_12_2_12, 1):
        extra = {}
        if f == 17:
            extra = dict(erratum="17-12 = 5 is prime: 5,17,29,31,43 is an exceptional quintet, "
                                 "not a repeating quartet")
        recs.append(R(f"ex3.3-quartet-12-2-12-{k}", "Ex. 3.3", "repeat-occurrence",
                      (f, f + 12, f + 14, f + 26), 5, "[12,2,12]", **extra))
    for k, f in enumerate((41, 191), 1):
        recs.append(R(f"ex3.3-quartet-6-26-6-{k}", "Ex. 3.3", "repeat-occurrence",
                      (f, f + 6, f + 32, f + 38), 5, "[6,26,6]"))
    for k, f in enumerate((11, 41, 131, 191), 1):
        extra = {}
        if f == 11:
            extra = dict(erratum="11-6 = 5 is prime: 5,11,17,43,59 is an exceptional quintet, "
                                 "not a repeating quartet")
        recs.append(R(f"ex3.3-quartet-6-26-16-{k}", "Ex. 3.3", "repeat-occurrence",
                      (f, f + 6, f + 32, f + 48), 5, "[6,26,16]", **extra))
    recs.append(R("ex3.3-sextet-18-1", "Ex. 3.3", "repeat-occurrence",
                  (431, 449, 467, 499, 503, 521), 7, "[18,18,32,4,18]",
                  claims=("431-18=7*59", "521+18=7*77", "431-4=7*61", "521+4=7*75",
                          "431-32=7*57", "521+32=7*79")))
    recs.append(R("ex3.3-sextet-18-2", "Ex. 3.3", "repeat-occurrence",
                  (35081, 35099, 35117, 35149, 35153, 35171), 7, "[18,18,32,4,18]",
                  claims=("35081-18=7*5009", "35171+18=7*5027")))
    recs.append(R("ex3.3-sextet-4-1", "Ex. 3.3", "repeat-occurrence",
                  (50047, 50051, 50069, 50087, 50119, 50123), 7, "[4,18,18,32,4]"))
    recs.append(R("ex3.3-sextet-4-2", "Ex. 3.3", "repeat-occurrence",
                  (197887, 197891, 197909, 197927, 197959, 197963), 7, "[4,18,18,32,4]"))
    for k, row in enumerate(_DECUPLETS_11, 1):
        recs.append(R(
            f"ex3.3-decuplet-{k}", "Ex. 3.3", "repeat-occurrence", row, 11,
            erratum="last distance 12 is not 2 (mod 22); the anchored 11-tuple 13..383 "
                    "puts the last member at +370, not +270",
        ))
    for k, f in enumerate((41, 251, 641), 1):
        recs.append(R(f"ex4.1-35-run-{k}", "Ex. 4.1", "progression-example", _ap(f, 6, 4), 5,
                      progression=(35, 6),
                      claims=("59+6=5*13", "251-6=5*7^2") if k == 1 else ()))
    for k, f in enumerate((61, 601), 1):
        recs.append(R(f"ex4.1-55-run-{k}", "Ex. 4.1", "progression-example", _ap(f, 6, 4), 5,
                      progression=(55, 6), claims=("79+6=5*17",) if k == 1 else ()))
    recs.append(R("ex4.1-55-triplet-97", "Ex. 4.1", "progression-example", (97, 103, 109), 5,
                  progression=(55, 6), claims=("91=7*13",)))
    recs.append(R("ex4.1-55-triplet-271", "Ex. 4.1", "progression-example", (271, 277, 283), 5,
                  progression=(55, 6), claims=("289=17^2",)))
    recs.append(R("ex4.1-55-triplet-367", "Ex. 4.1", "progression-example", (367, 373, 379), 5,
                  progression=(55, 6), claims=("361=19^2",)))
    return tuple(recs)


_RECORDS: tuple[CorpusRecord, ...] | None = None


def load_corpus() -> tuple[CorpusRecord, ...]:
    global _RECORDS
    if _RECORDS is None:
        _RECORDS = _build()
        ids = [r.id for r in _RECORDS]
        assert len(ids) == len(set(ids)), "duplicate corpus ids"
    return _RECORDS


def get_record(record_id: str) -> CorpusRecord:
    for r in load_corpus():
        if r.id == record_id:
            return r
    raise KeyError(record_id)


# ---------------------------------------------------------------- verification

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Pow: operator.pow, ast.USub: operator.neg}


def _eval_int(text: str) -> int:
    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        raise ValueError(f"unsupported expression {text!r}")

    return ev(ast.parse(text.replace("^", "**"), mode="eval").body)


def check_claim(claim: str) -> bool:
    lhs, rhs = claim.split("=")
    return _eval_int(lhs) == _eval_int(rhs)


@dataclass(frozen=True)
class RecordResult:
    id: str
    ok: bool
    erratum: bool
    detail: str


@dataclass
class CorpusReport:
    results: list[RecordResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results if not r.erratum)

    @property
    def failures(self) -> list[RecordResult]:
        return [r for r in self.results if not r.ok and not r.erratum]


def _gaps(members) -> tuple[int, ...]:
    return tuple(b - a for a, b in zip(members, members[1:]))


def _check_tuple(members, p: int, pattern: Optional[str], stop) -> str:
    tup = verify_tuple(members, p)
    if pattern is not None and parse_pattern(pattern) != tup.gaps:
        raise PatternError(f"pattern {pattern} does not match member gaps {tup.gaps}")
    if stop is not None:
        b, d1, c = stop
        if b != members[-1] or b + 2 * d1 != p * c or (d1 - tup.spec.d1) % p:
            raise TupleError(f"printed stop {b}+2({d1}+{p}n)={p}({c}+2n) does not hold")
    right = str(tup.right_stop)
    left = f", left stop {tup.left_stop}" if tup.left_stop else ""
    return f"{len(members)} members, d1={tup.spec.d1}, right stop {right}{left}"


def _check_occurrence(members, p: int, pattern: Optional[str]) -> str:
    offsets = tuple(m - members[0] for m in members)
    if pattern is not None and parse_pattern(pattern) != _gaps(members):
        raise PatternError(f"pattern {pattern} does not match member gaps {_gaps(members)}")
    spec = RepeatSpec(p, offsets, members[0] % p)
    brackets = verify_bracketing(make_occurrence(members[0], spec), spec)
    shown = "; ".join(
        f"{b.left_value}|{b.left_factor} .. {b.right_value}|{b.right_factor} at {b.gap}"
        for b in brackets
    )
    return f"brackets {shown}"


def _check_progression(members, a: int, s: int) -> str:
    spec = ProgressionSpec(a, s)
    n, rem = divmod(members[0] - a, s)
    if rem or n < 0:
        raise ProgressionError(f"{members[0]} is not a term of {a}+{s}n")
    runs = [r for r in enumerate_runs(spec, n, n + 1) if r.start_index == n]
    if not runs or runs[0].members != tuple(members):
        raise ProgressionError(f"{members} is not a maximal run of {a}+{s}n")
    run = runs[0]
    left = "edge" if run.left_terminator is None else "%d|%s" % run.left_terminator
    return f"run at n={n}, terminators {left} and {run.right_terminator[0]}|{run.right_terminator[1]}"


def _verify(rec: CorpusRecord, members, pattern) -> str:
    if rec.kind in ("exceptional-tuple", "walk"):
        return _check_tuple(members, rec.p, pattern, rec.stop)
    if rec.kind == "repeat-occurrence":
        return _check_occurrence(members, rec.p, pattern)
    if rec.kind == "progression-example":
        return _check_progression(members, *rec.progression)
    raise ValueError(f"unknown kind {rec.kind}")


_ERRORS = (TupleError, HuntError, PatternError, ProgressionError)


def _erratum_detail(rec: CorpusRecord) -> str:
    parts = [rec.erratum]
    try:
        _verify(rec, rec.members, rec.pattern_text)
        parts.append("literal reading verifies as printed")
    except _ERRORS as exc:
        parts.append(f"literal reading fails: {exc}")
    if rec.corrected_members:
        fixed = [m for m, o in zip(rec.corrected_members, rec.members) if m != o]
        parts.append("corrected value(s) " + ", ".join(
            f"{m} {'prime' if is_prime(m) else 'composite'}" for m in fixed))
        bad = [m for m, o in zip(rec.members, rec.corrected_members) if m != o]
        parts.append("printed value(s) " + ", ".join(
            f"{m} {'prime' if is_prime(m) else 'composite'}" for m in bad))
    if rec.corrected_members or rec.corrected_pattern:
        members = rec.corrected_members or rec.members
        pattern = rec.corrected_pattern or rec.pattern_text
        try:
            parts.append("corrected reading verifies: " + _verify(rec, members, pattern))
        except _ERRORS as exc:
            parts.append(f"corrected reading fails: {exc}")
    if rec.id.startswith("ex3.3-decuplet"):
        alt = rec.members[0] + 370
        parts.append(f"11-tuple reading {alt} is {'prime' if is_prime(alt) else f'composite ({factor_of(alt)})'}")
    return "; ".join(parts)


def verify_record(rec: CorpusRecord) -> RecordResult:
    claims_bad = [c for c in rec.claims if not check_claim(c)]
    if rec.erratum:
        return RecordResult(rec.id, False, True, _erratum_detail(rec))
    try:
        detail = _verify(rec, rec.members, rec.pattern_text)
    except _ERRORS as exc:
        return RecordResult(rec.id, False, False, str(exc))
    if claims_bad:
        return RecordResult(rec.id, False, False, "false claims: " + ", ".join(claims_bad))
    if rec.claims:
        detail += f"; {len(rec.claims)} printed factorizations hold"
    return RecordResult(rec.id, True, False, detail)


def verify_all() -> CorpusReport:
    return CorpusReport([verify_record(r) for r in load_corpus()])
