"""Kneading series, entropy and dimension of lexicographic subshifts."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import _poly as P
from .seq import EPSeq, require_admissible

GRID_STEP = Fraction(1, 1000)
ROOT_TOL = Fraction(1, 10**12)
# beta_of bisects further so that float(beta) is correct to the last bits
BETA_TOL = Fraction(1, 10**16)


@dataclass(frozen=True)
class KneadingSeries:
    """K(t) = sum_{i>=0} (b_i - a_i) t^i with a_0 = 0, b_0 = 1.

    ``head`` holds c_0 .. c_u and ``tail`` the repeating block
    c_{u+1} .. c_{u+v}, so that
    K(t) = head(t) + t^u tail(t) / (1 - t^v).
    """

    head: tuple[int, ...]
    tail: tuple[int, ...]

    @property
    def u(self) -> int:
        return len(self.head) - 1

    @property
    def v(self) -> int:
        return len(self.tail)

    def coeff(self, i: int) -> int:
        if i <= self.u:
            return self.head[i]
        return self.tail[(i - self.u - 1) % self.v]

    def numerator(self) -> P.Poly:
        """N with K = N / (1 - t^v)."""
        one_minus = P.sub((1,), P.monomial(self.v))
        shifted_tail = P.mul(P.monomial(self.u), (0,) + self.tail)
        return P.add(P.mul(self.head, one_minus), shifted_tail)

    def denominator(self) -> P.Poly:
        return P.sub((1,), P.monomial(self.v))

    def reduced(self) -> tuple[P.Poly, P.Poly]:
        """Numerator and denominator with common factors cancelled (integer, primitive)."""
        num, den = self.numerator(), self.denominator()
        g = P.gcd_poly(num, den)
        n = P.primitive(P.divmod_poly(num, g)[0])
        d = P.primitive(P.divmod_poly(den, g)[0])
        # denominator normalised to d(0) > 0, so n(0) > 0 as K(0) = 1
        if P.evaluate(d, 0) < 0:
            d = P.neg(d)
        if P.evaluate(n, 0) < 0:
            n = P.neg(n)
        return n, d

    def __call__(self, t):
        t = Fraction(t)
        num = P.evaluate(self.numerator(), t)
        return num / (1 - t**self.v)

    def partial_sum(self, t, n: int):
        return sum(self.coeff(i) * t**i for i in range(n))


def kneading_series(alpha: EPSeq, beta: EPSeq, *, check: bool = True) -> KneadingSeries:
    if check:
        require_admissible(alpha, beta)
    u = max(len(alpha.pre), len(beta.pre))
    v = lcm(len(alpha.per), len(beta.per))
    head = [1] + [beta[i] - alpha[i] for i in range(u)]
    tail = [beta[i] - alpha[i] for i in range(u, u + v)]
    return KneadingSeries(tuple(head), tuple(tail))


@dataclass(frozen=True)
class EntropyResult:
    kappa: float | None
    h_bits: float
    dim: float
    # exact bracket around kappa, when a root exists
    bracket: tuple[Fraction, Fraction] | None = None

    @property
    def no_root(self) -> bool:
        return self.kappa is None

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "h_bits": self.h_bits,
            "dim": self.dim,
            "no_root": self.no_root,
        }

    @classmethod
    def from_kappa(cls, kappa: float | None, bracket=None) -> "EntropyResult":
        if kappa is None:
            return cls(None, 0.0, 0.0, None)
        h = max(0.0, -math.log2(kappa))
        return cls(kappa, h, h, bracket)


def _bisect(sign, lo: Fraction, hi: Fraction, tol: Fraction = ROOT_TOL):
    s_lo = sign(lo)
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        s = sign(mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def smallest_root(series: KneadingSeries) -> tuple[Fraction, Fraction] | None:
    """Bracket [lo, hi] of the smallest root of K in (0, 1], or None.

    Sign tests are exact: K is a rational function with integer data and its
    reduced denominator has no zeros in (0, 1).
    """
    num, den = series.reduced()
    sq = P.squarefree(num)
    if P.evaluate(sq, 0) < 0:
        sq = P.neg(sq)

    def sign(t):
        return P.sign_at(sq, t)

    prev = Fraction(0)
    grid = [GRID_STEP * k for k in range(1, int(1 / GRID_STEP) + 1)]
    for t in grid:
        s = sign(t)
        if s == 0:
            if t == 1 and P.evaluate(den, 1) == 0:
                # pole of K at t = 1, not a root
                return None
            lo = hi = t
            break
        if s < 0:
            lo, hi = _bisect(sign, prev, t)
            break
        prev = t
    else:
        return None
    # Sturm count certifies no root was skipped inside an earlier grid cell
    expected = 1 if lo == hi else 0
    if P.count_roots(sq, Fraction(0), lo) != expected:
        raise ArithmeticError("root isolation failed: earlier roots inside a grid cell")
    return lo, hi


def entropy_of(alpha: EPSeq, beta: EPSeq) -> EntropyResult:
    series = kneading_series(alpha, beta)
    bracket = smallest_root(series)
    if bracket is None:
        return EntropyResult.from_kappa(None)
    lo, hi = bracket
    return EntropyResult.from_kappa(float((lo + hi) / 2), bracket)


def renewal_root(l_omega: int, l_nu: int) -> float:
    """Unique root of 1 - t^a - t^b in [0, 1], bisected to float resolution."""
    if l_omega < 1 or l_nu < 1:
        raise ValueError("word lengths must be positive")
    lo, hi = 0.0, 1.0
    while True:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            return mid
        f = 1 - mid**l_omega - mid**l_nu
        if f == 0:
            return mid
        if f > 0:
            lo = mid
        else:
            hi = mid


def renewal_entropy(l_omega: int, l_nu: int) -> EntropyResult:
    return EntropyResult.from_kappa(renewal_root(l_omega, l_nu))
