"""Balanced words, Sturmian pairs and two-letter substitutions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import overload

from .seq import EPSeq, ParseError, check_word


class NoSuchRotation(ValueError):
    pass


class DecodeError(ValueError):
    """The input is not a concatenation of substitution images.

    ``position`` is the 0-based index of the first symbol that cannot be
    matched.
    """

    def __init__(self, position: int):
        super().__init__(f"decoding fails at position {position}")
        self.position = position


@dataclass(frozen=True, order=True)
class Ratio:
    p: int
    q: int

    def __post_init__(self):
        if not (0 < self.p < self.q) or gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not a reduced ratio in (0, 1)")

    @classmethod
    def parse(cls, text: str) -> "Ratio":
        try:
            p, q = (int(s) for s in text.strip().split("/"))
            return cls(p, q)
        except ValueError:
            raise ParseError(text, "ratio (expected p/q reduced, 0 < p < q)") from None

    @classmethod
    def all_up_to(cls, qmax: int) -> list["Ratio"]:
        return [cls(p, q) for q in range(2, qmax + 1) for p in range(1, q) if gcd(p, q) == 1]

    def __float__(self) -> float:
        return self.p / self.q

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def rotations(w: str) -> list[str]:
    return [w[i:] + w[:i] for i in range(len(w))]


def is_cyclically_balanced(w: str) -> bool:
    """True iff length-n factors of w^2, 2 <= n <= len(w), have 1-counts within one."""
    check_word(w)
    if not w:
        raise ValueError("word must be non-empty")
    ww = w + w
    for n in range(2, len(w) + 1):
        counts = {ww[i : i + n].count("1") for i in range(len(ww) - n + 1)}
        if max(counts) - min(counts) > 1:
            return False
    return True


def cyclic_extremes(w: str) -> tuple[str, str]:
    """(largest rotation starting with 0, smallest rotation starting with 1)."""
    check_word(w)
    if "0" not in w or "1" not in w:
        raise NoSuchRotation(f"{w!r} is constant")
    rots = rotations(w)
    return max(r for r in rots if r[0] == "0"), min(r for r in rots if r[0] == "1")


def zero_max(w: str) -> str:
    return cyclic_extremes(w)[0]


def one_min(w: str) -> str:
    return cyclic_extremes(w)[1]


def enumerate_balanced(r: Ratio) -> list[str]:
    """Brute force: every cyclically balanced word of length q with p ones."""
    out = []
    for ones in combinations(range(r.q), r.p):
        bits = ["0"] * r.q
        for i in ones:
            bits[i] = "1"
        w = "".join(bits)
        if is_cyclically_balanced(w):
            out.append(w)
    return sorted(out)


def christoffel_word(r: Ratio) -> str:
    """Lower Christoffel word of slope p/q."""
    p, q = r.p, r.q
    return "".join(str((i + 1) * p // q - i * p // q) for i in range(q))


def sturmian_pair(r: Ratio) -> tuple[str, str]:
    # lower Christoffel word is 0u1; its extremal rotations are 01u and 10u
    u = christoffel_word(r)[1:-1]
    return "01" + u, "10" + u


@dataclass(frozen=True)
class Substitution:
    """0 -> image0, 1 -> image1."""

    image0: str
    image1: str

    def __post_init__(self):
        check_word(self.image0)
        check_word(self.image1)
        if not self.image0.startswith("0") or not self.image1.startswith("1"):
            raise ValueError("image0 must start with 0 and image1 with 1")

    @classmethod
    def sturmian(cls, r: Ratio) -> "Substitution":
        return cls(*sturmian_pair(r))

    @classmethod
    def parse(cls, text: str) -> "Substitution":
        try:
            parts = dict(item.split("->") for item in text.replace(" ", "").split(","))
            return cls(parts["0"], parts["1"])
        except (ValueError, KeyError):
            raise ParseError(text, "substitution (expected 0->bits,1->bits)") from None

    def __str__(self) -> str:
        return f"0->{self.image0},1->{self.image1}"

    def image(self, symbol: str) -> str:
        return self.image0 if symbol == "0" else self.image1


def rho(r: Ratio) -> Substitution:
    return Substitution.sturmian(r)


@overload
def substitute(s: Substitution, target: str) -> str: ...
@overload
def substitute(s: Substitution, target: EPSeq) -> EPSeq: ...


def substitute(s, target):
    if isinstance(target, EPSeq):
        return EPSeq(substitute(s, target.pre), substitute(s, target.per))
    return "".join(s.image(c) for c in check_word(target))


def _parse_block(s: Substitution, read, pos: int) -> tuple[str, int]:
    """Match one image starting at ``pos``; return (block symbol, new pos)."""
    sym = "0" if read(pos) == 0 else "1"
    img = s.image(sym)
    for k, c in enumerate(img):
        if read(pos + k) != int(c):
            raise DecodeError(pos + k)
    return sym, pos + len(img)


def decode_word(s: Substitution, w: str) -> str:
    check_word(w)
    n = len(w)

    def read(i):
        if i >= n:
            raise DecodeError(n)
        return int(w[i])

    out, pos = [], 0
    while pos < n:
        sym, pos = _parse_block(s, read, pos)
        out.append(sym)
    return "".join(out)


def decode(s: Substitution, x):
    """Inverse of :func:`substitute`; raises :class:`DecodeError` if x is not an image."""
    if not isinstance(x, EPSeq):
        return decode_word(s, x)
    m, p = len(x.pre), len(x.per)

    def state(i):
        return i if i < m else m + (i - m) % p

    seen: dict[int, int] = {}
    blocks: list[str] = []
    pos = 0
    # block boundaries inside the tail repeat modulo the period
    while state(pos) not in seen:
        seen[state(pos)] = len(blocks)
        sym, pos = _parse_block(s, x.__getitem__, pos)
        blocks.append(sym)
    k = seen[state(pos)]
    return EPSeq("".join(blocks[:k]), "".join(blocks[k:]))


def try_decode(s: Substitution, x):
    try:
        return decode(s, x)
    except DecodeError:
        return None
