"""Distance patterns in bracket notation, mod-p admissibility and stop certificates.

A pattern such as ``[2,2(1+5),2,2(1+5)]`` lists the gaps between consecutive
tuple members. A p-tuple anchored at the odd prime p is admissible when every
half-gap lies in one residue class d1 (mod p) with p not dividing d1; its last
member then sits one step before a multiple of p, which is what the
StopCertificate records.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .primecore import is_prime


class PatternError(ValueError):
    pass


class PatternSyntaxError(PatternError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class OddGap(PatternError):
    pass


class NonUniformResidue(PatternError):
    pass


class SeedDivisible(PatternError):
    pass


class NotBlocked(PatternError):
    pass


GapList = tuple[int, ...]


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


# ---------------------------------------------------------------- grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # trailing whitespace
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        else:
            ch = m.group(2)
            ch = {"·": "*", "\u2212": "-"}.get(ch, ch)
            out.append(("op", ch, m.start(2)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, value=None):
        tok = self.toks[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise PatternSyntaxError(self.text, tok[2], f"expected {want!r}")
        self.i += 1
        return tok

    def signed_int(self) -> int:
        sign = 1
        while self.peek()[:2] in (("op", "-"), ("op", "+")):
            if self.peek()[1] == "-":
                sign = -sign
            self.i += 1
        return sign * self.take("int")[1]

    def term(self) -> tuple[int, int]:
        pos = self.peek()[2]
        lead = self.signed_int()
        if self.peek()[:2] != ("op", "("):
            return lead, pos
        self.i += 1
        a = self.signed_int()
        op = self.peek()
        if op[:2] not in (("op", "+"), ("op", "-")):
            raise PatternSyntaxError(self.text, op[2], "expected '+' or '-'")
        self.i += 1
        b = self.take("int")[1]
        if self.peek()[:2] == ("op", "*"):
            self.i += 1
            b *= self.take("int")[1]
        self.take("op", ")")
        return lead * (a + b if op[1] == "+" else a - b), pos

    def pattern(self) -> list[tuple[int, int]]:
        self.take("op", "[")
        terms = [self.term()]
        while self.peek()[:2] == ("op", ","):
            self.i += 1
            terms.append(self.term())
        self.take("op", "]")
        self.take("end")
        return terms


def parse_pattern(text: str) -> GapList:
    """Evaluate bracket notation into a tuple of gaps.

    >>> parse_pattern("[2,2(1+5),2,2(1+5)]")
    (2, 12, 2, 12)
    """
    parser = _Parser(text)
    terms = parser.pattern()
    for value, pos in terms:
        if value == 0 or value % 2:
            raise OddGap(f"gap {value} at position {pos} is zero or odd: {text!r}")
    return tuple(v for v, _ in terms)


def _render_gap(g: int, p: int, d1: int) -> str:
    half = g // 2
    if g % 2 or (half - d1) % p:
        return str(g)
    n = (half - d1) // p
    if n == 0:
        return str(g)
    sign = "+" if n > 0 else "-"
    k = abs(n)
    tail = f"{p}" if k == 1 else f"{k}*{p}"
    return f"2({d1}{sign}{tail})"


def render_pattern(gaps: Sequence[int], p: int, d1: int) -> str:
    """Inverse of parse_pattern; gaps 2(d1 + n*p) with n != 0 are shown factored."""
    return "[" + ",".join(_render_gap(int(g), p, d1) for g in gaps) + "]"


# ---------------------------------------------------------------- admissibility


@dataclass(frozen=True)
class ExceptionalSpec:
    p: int
    d1: int
    half_gap_multipliers: tuple[int, ...]

    @property
    def gaps(self) -> GapList:
        return tuple(2 * (self.d1 + n * self.p) for n in self.half_gap_multipliers)

    @property
    def full(self) -> bool:
        """True when the gaps describe a complete p-tuple."""
        return len(self.half_gap_multipliers) == self.p - 1

    @property
    def partial(self) -> bool:
        return len(self.half_gap_multipliers) < self.p - 1

    def render(self) -> str:
        return render_pattern(self.gaps, self.p, self.d1)


def validate_exceptional(p: int, gaps: Sequence[int]) -> ExceptionalSpec:
    """Check that all half-gaps share one nonzero residue class mod p.

    d1 is the least positive residue of the first half-gap, negated when the
    first gap is negative (so that mirroring the pattern mirrors d1).
    """
    _require_odd_prime(p)
    gaps = tuple(int(g) for g in gaps)
    if not gaps:
        raise PatternError("empty gap list")
    for k, g in enumerate(gaps):
        if g == 0 or g % 2:
            raise OddGap(f"gap {k} = {g} is zero or odd")
    first = gaps[0] // 2
    d1 = first % p if first > 0 else -((-first) % p)
    if d1 == 0:
        raise SeedDivisible(f"{p} divides the seed half-gap {first}")
    mults = []
    for k, g in enumerate(gaps):
        half = g // 2
        if (half - d1) % p:
            raise NonUniformResidue(
                f"half-gap {half} at index {k} is {half % p} mod {p}, expected {d1 % p}"
            )
        mults.append((half - d1) // p)
    return ExceptionalSpec(p=p, d1=d1, half_gap_multipliers=tuple(mults))


@dataclass(frozen=True)
class ResidueProfile:
    modulus: int
    residues: tuple[int, ...]


def residue_profile(members: Sequence[int], modulus: int) -> ResidueProfile:
    _require_odd_prime(modulus)
    return ResidueProfile(modulus, tuple(int(m) % modulus for m in members))


# ---------------------------------------------------------------- stopping


@dataclass(frozen=True)
class StopCertificate:
    """blocked_member + 2(d1 + n p) = p (cofactor_base + 2n) for every integer n."""

    blocked_member: int
    p: int
    d1: int
    cofactor_base: int

    def holds(self, n: int) -> bool:
        lhs = self.blocked_member + 2 * (self.d1 + n * self.p)
        return lhs == self.p * (self.cofactor_base + 2 * n)

    def __str__(self) -> str:
        return (
            f"{self.blocked_member}+2({self.d1}+{self.p}n)"
            f"={self.p}({self.cofactor_base}+2n)"
        )


def stop_certificate(spec: ExceptionalSpec, blocked_member: int) -> StopCertificate:
    """Factorization showing no admissible step from blocked_member lands on a prime.

    Raises NotBlocked when blocked_member + 2*d1 is not a multiple of p.
    """
    p, d1 = spec.p, spec.d1
    num = int(blocked_member) + 2 * d1
    if num % p:
        raise NotBlocked(f"{blocked_member}+2*{d1} = {num} is not divisible by {p}")
    cert = StopCertificate(int(blocked_member), p, d1, num // p)
    assert all(cert.holds(n) for n in (0, 1, 2))
    return cert


def mirrored(spec: ExceptionalSpec) -> ExceptionalSpec:
    """The same pattern walked in the opposite direction."""
    return ExceptionalSpec(spec.p, -spec.d1, tuple(-n for n in spec.half_gap_multipliers))
