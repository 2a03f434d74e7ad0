"""Eventually periodic binary sequences.

A sequence is stored as a preperiod word and a period word, both as strings
over ``"01"``. Every constructor canonicalises (primitive period, minimal
preperiod), so ``==`` and ``hash`` agree with equality of the infinite
sequences.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import lcm
from typing import Union

_SEQ_RE = re.compile(r"^([01]*)\(([01]+)\)$")
_WORD_RE = re.compile(r"^[01]*$")


class ParseError(ValueError):
    """Raised on malformed textual input; ``token`` is the offending text."""

    def __init__(self, token: str, what: str):
        super().__init__(f"cannot parse {what}: {token!r}")
        self.token = token


class NotApplicable(ValueError):
    pass


def check_word(w: str) -> str:
    if not isinstance(w, str) or not _WORD_RE.match(w):
        raise ParseError(str(w), "binary word")
    return w


def _primitive_root(w: str) -> str:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


@total_ordering
@dataclass(frozen=True)
class EPSeq:
    """The infinite sequence ``pre + per + per + ...``."""

    pre: str
    per: str

    def __post_init__(self):
        pre, per = check_word(self.pre), check_word(self.per)
        if not per:
            raise ValueError("period must be non-empty")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1] + per[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def parse(cls, text: str) -> "EPSeq":
        m = _SEQ_RE.match(text.strip())
        if not m:
            raise ParseError(text, "sequence (expected pre(per), e.g. 01(100))")
        return cls(m.group(1), m.group(2))

    @classmethod
    def periodic(cls, w: str) -> "EPSeq":
        return cls("", w)

    def __str__(self) -> str:
        return f"{self.pre}({self.per})"

    def __repr__(self) -> str:
        return f"EPSeq({str(self)!r})"

    def __getitem__(self, i: int) -> int:
        """0-based symbol access."""
        if i < 0:
            raise IndexError(i)
        if i < len(self.pre):
            return int(self.pre[i])
        return int(self.per[(i - len(self.pre)) % len(self.per)])

    def prefix(self, n: int) -> str:
        if n <= len(self.pre):
            return self.pre[:n]
        k = n - len(self.pre)
        reps = -(-k // len(self.per))
        return self.pre + (self.per * reps)[:k]

    @property
    def is_periodic(self) -> bool:
        return not self.pre

    @property
    def orbit_size(self) -> int:
        """Number of distinct shifts, counting the sequence itself."""
        return len(self.pre) + len(self.per)

    def shift(self, n: int = 1) -> "EPSeq":
        return shift(self, n)

    def shifts(self) -> list["EPSeq"]:
        """All distinct shifts sigma^k(x), k = 0 .. orbit_size - 1."""
        return [shift(self, k) for k in range(self.orbit_size)]

    def mirror(self) -> "EPSeq":
        return mirror(self)

    def prepend(self, w: str) -> "EPSeq":
        return EPSeq(w + self.pre, self.per)

    def __lt__(self, other: "EPSeq") -> bool:
        return lex_cmp(self, other) < 0


def _cmp_len(x: EPSeq, y: EPSeq) -> int:
    return max(len(x.pre), len(y.pre)) + lcm(len(x.per), len(y.per))


def lex_cmp(x: EPSeq, y: EPSeq) -> int:
    """-1, 0 or 1 as x precedes, equals or follows y lexicographically."""
    n = _cmp_len(x, y)
    a, b = x.prefix(n), y.prefix(n)
    return (a > b) - (a < b)


def first_difference(x: EPSeq, y: EPSeq) -> int | None:
    """1-based index of the first differing symbol, or None if x == y."""
    if x == y:
        return None
    n = _cmp_len(x, y)
    a, b = x.prefix(n), y.prefix(n)
    for i, (s, t) in enumerate(zip(a, b)):
        if s != t:
            return i + 1
    raise AssertionError("canonical forms differ but prefixes agree")


def shift(x: EPSeq, n: int) -> EPSeq:
    if n < 0:
        raise ValueError("shift amount must be non-negative")
    if n <= len(x.pre):
        return EPSeq(x.pre[n:], x.per)
    k = (n - len(x.pre)) % len(x.per)
    return EPSeq("", x.per[k:] + x.per[:k])


_FLIP = str.maketrans("01", "10")


def flip_word(w: str) -> str:
    return w.translate(_FLIP)


def mirror(x: EPSeq) -> EPSeq:
    return EPSeq(flip_word(x.pre), flip_word(x.per))


def seq_dist(x: EPSeq, y: EPSeq) -> Fraction:
    j = first_difference(x, y)
    return Fraction(0) if j is None else Fraction(1, 2**j)


def project(x: EPSeq) -> Fraction:
    """Exact value of sum x_i / 2^i."""
    m, p = len(x.pre), len(x.per)
    head = Fraction(int(x.pre, 2), 2**m) if m else Fraction(0)
    tail = Fraction(int(x.per, 2), (2**p - 1) * 2**m)
    return head + tail


def parse_rat(text: str) -> Fraction:
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(text, "rational (expected p/q)") from None
    return q


def expand(q: Union[Fraction, int, str]) -> EPSeq:
    """Binary expansion of q in [0, 1].

    Dyadic rationals get the terminating expansion followed by 0^inf, so
    1/2 is 10^inf. The value 1 has the single expansion 1^inf.
    """
    q = parse_rat(q) if isinstance(q, str) else Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"{q} is outside [0, 1]")
    if q == 1:
        return EPSeq("", "1")
    num, den = q.numerator, q.denominator
    seen: dict[int, int] = {}
    digits = []
    while num not in seen:
        seen[num] = len(digits)
        num *= 2
        if num >= den:
            digits.append("1")
            num -= den
        else:
            digits.append("0")
    k = seen[num]
    return EPSeq("".join(digits[:k]), "".join(digits[k:]))


def is_parry(alpha: EPSeq) -> bool:
    if alpha[0] != 1:
        return False
    return all(lex_cmp(s, alpha) <= 0 for s in alpha.shifts()[1:])


def varsigma(alpha: EPSeq) -> EPSeq:
    """Parry regularisation (a_1 ... a_{n-1} 0)^inf with n the first return above alpha."""
    if alpha[0] != 1:
        raise NotApplicable("sequence must start with 1")
    if is_parry(alpha):
        raise NotApplicable(f"{alpha} is already a Parry sequence")
    for n, s in enumerate(alpha.shifts()[1:], start=1):
        if lex_cmp(s, alpha) >= 0:
            return EPSeq("", alpha.prefix(n - 1) + "0")
    raise AssertionError("non-Parry sequence without a dominating shift")


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def verdict(self) -> str:
        return "Admissible" if self.ok else "Extremal"


def admissible(alpha: EPSeq, beta: EPSeq) -> Admissibility:
    """Check the four conditions defining the lexicographic world."""
    if not is_parry(alpha):
        return Admissibility(False, "alpha is not a Parry sequence")
    if not is_parry(mirror(beta)):
        return Admissibility(False, "mirror of beta is not a Parry sequence")
    if any(lex_cmp(s, beta) < 0 for s in alpha.shifts()[1:]):
        return Admissibility(False, "some shift of alpha precedes beta")
    if any(lex_cmp(s, alpha) > 0 for s in beta.shifts()[1:]):
        return Admissibility(False, "some shift of beta exceeds alpha")
    return Admissibility(True)


class NotAdmissible(ValueError):
    def __init__(self, alpha: EPSeq, beta: EPSeq, reason: str | None):
        super().__init__(f"({alpha}, {beta}) is not admissible: {reason}")
        self.alpha, self.beta, self.reason = alpha, beta, reason


def require_admissible(alpha: EPSeq, beta: EPSeq) -> None:
    verdict = admissible(alpha, beta)
    if not verdict:
        raise NotAdmissible(alpha, beta, verdict.reason)


FULL_ALPHA = EPSeq("", "1")
FULL_BETA = EPSeq("", "0")
