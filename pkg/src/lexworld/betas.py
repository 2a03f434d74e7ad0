"""Beta-expansions over the binary alphabet and Lorenz / mod-1 maps.

Bases given by a Parry sequence are algebraic. They are handled exactly: an
element of Q(beta) is a polynomial in beta reduced modulo the minimal
polynomial, so zero tests are exact and only signs are read numerically
(at high precision, where they are unambiguous once nonzero).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
import sympy

from . import _poly as P
from .entropy import BETA_TOL
from .seq import EPSeq

_DPS = 80
_SIGN_EPS = mpmath.mpf(10) ** -60


class BadLeadingSymbol(ValueError):
    pass


class DomainError(ValueError):
    pass


def _parry_poly(alpha: EPSeq) -> P.Poly:
    """Integer polynomial G in t = 1/beta whose sign on (0,1) is that of sum a_i t^i - 1."""
    m, p = len(alpha.pre), len(alpha.per)
    pre = (0,) + tuple(int(c) for c in alpha.pre)
    per = (0,) + tuple(int(c) for c in alpha.per)
    one_minus = P.sub((1,), P.monomial(p))
    lhs = P.add(P.mul(pre, one_minus), P.mul(P.monomial(m), per))
    return P.sub(lhs, one_minus)


def _t_bracket(alpha: EPSeq) -> tuple[Fraction, Fraction, P.Poly]:
    if alpha[0] != 1:
        raise BadLeadingSymbol(f"{alpha} does not start with 1")
    g = P.squarefree(_parry_poly(alpha))
    lo, hi = Fraction(1, 2), Fraction(1)
    # the series is increasing in t; G(lo) <= 0 < G(hi-) on (1/2, 1)
    if P.sign_at(g, lo) == 0:
        return lo, lo, g
    s_lo = P.sign_at(g, lo)
    while hi - lo >= BETA_TOL:
        mid = (lo + hi) / 2
        s = P.sign_at(g, mid)
        if s == 0:
            return mid, mid, g
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi, g


def beta_of(alpha: EPSeq) -> float:
    """The base beta in (1, 2] with sum a_i beta^-i = 1."""
    lo, hi, _ = _t_bracket(alpha)
    return float(2 / (lo + hi))


@dataclass(frozen=True)
class AlgebraicBeta:
    """A real algebraic beta in (1, 2] with its minimal polynomial (ascending, integer)."""

    minpoly: tuple[int, ...]
    value: mpmath.mpf

    @classmethod
    def from_poly(cls, poly: P.Poly, approx: float) -> "AlgebraicBeta":
        x = sympy.Symbol("x")
        expr = sum(int(c) * x**i for i, c in enumerate(poly))
        best = None
        for factor, _ in sympy.factor_list(expr)[1]:
            coeffs = tuple(int(c) for c in reversed(sympy.Poly(factor, x).all_coeffs()))
            if P.degree(coeffs) < 1:
                continue
            with mpmath.workdps(_DPS):
                for r in mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=400):
                    if abs(mpmath.im(r)) < 1e-30 and abs(mpmath.re(r) - approx) < 1e-9:
                        best = (coeffs, mpmath.re(r))
        if best is None:
            raise ValueError(f"no factor of {poly} has a root near {approx}")
        coeffs, root = best
        return cls(P.primitive(coeffs), root)

    @classmethod
    def from_sequence(cls, alpha: EPSeq) -> "AlgebraicBeta":
        if alpha == EPSeq("", "1"):
            return cls((-2, 1), mpmath.mpf(2))
        lo, hi, g = _t_bracket(alpha)
        # beta = 1/t, so reverse the coefficient order
        return cls.from_poly(tuple(reversed(g)), float(2 / (lo + hi)))

    @classmethod
    def from_float(cls, beta: float, max_degree: int = 4, max_coeff: int = 16) -> "AlgebraicBeta | None":
        """Recognise a float as a low-height algebraic number, or None."""
        if beta == 2:
            return cls((-2, 1), mpmath.mpf(2))
        with mpmath.workdps(15):
            for deg in range(1, max_degree + 1):
                rel = mpmath.findpoly(mpmath.mpf(beta), deg, maxcoeff=max_coeff)
                if rel:
                    try:
                        found = cls.from_poly(tuple(int(c) for c in reversed(rel)), beta)
                    except ValueError:
                        continue
                    if abs(float(found.value) - beta) < 1e-12:
                        return found
        return None

    def __float__(self) -> float:
        return float(self.value)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    # elements of Q(beta): Fraction tuples of length < degree
    def reduce(self, e: P.Poly) -> P.Poly:
        return P.divmod_poly(P.trim(e), self.minpoly)[1] if P.degree(e) >= self.degree else P.trim(e)

    def times_beta(self, e: P.Poly) -> P.Poly:
        return self.reduce(P.mul(e, (0, 1)))

    def numeric(self, e: P.Poly):
        with mpmath.workdps(_DPS):
            return sum(mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator * self.value**i for i, c in enumerate(e))

    def sign(self, e: P.Poly) -> int:
        e = P.trim(e)
        if all(c == 0 for c in e):
            return 0
        v = self.numeric(e)
        if abs(v) < _SIGN_EPS:
            raise ArithmeticError("sign of a nonzero element is below working precision")
        return 1 if v > 0 else -1


BetaLike = Union[EPSeq, AlgebraicBeta, float, int]


def _as_algebraic(beta: BetaLike) -> AlgebraicBeta | None:
    if isinstance(beta, AlgebraicBeta):
        return beta
    if isinstance(beta, EPSeq):
        return AlgebraicBeta.from_sequence(beta)
    return AlgebraicBeta.from_float(float(beta))


def _greedy_exact(x: Fraction, beta: AlgebraicBeta, n: int):
    """Greedy digits with exact remainders; yields (digit, remainder) pairs."""
    r: P.Poly = (x,) if x else (0,)
    for _ in range(n):
        y = beta.times_beta(r)
        d = 1 if beta.sign(P.sub(y, (1,))) >= 0 else 0
        r = P.trim(P.sub(y, (d,))) if d else y
        yield d, r


def greedy_expansion(x: Fraction | int | float, beta: BetaLike, n: int) -> str:
    """First n greedy digits of x over the alphabet {0, 1}.

    Each step takes the digit 1 whenever beta*r >= 1, so for beta = 2 the
    expansion of 1 is 1^inf rather than a digit 2.
    """
    alg = _as_algebraic(beta)
    value = float(alg) if alg is not None else float(beta)
    if not 1 < value <= 2:
        raise DomainError(f"beta = {value} is outside (1, 2]")
    if alg is not None and not isinstance(x, float):
        return "".join(str(d) for d, _ in _greedy_exact(Fraction(x), alg, n))
    b, r, out = value, float(x), []
    for _ in range(n):
        y = b * r
        d = 1 if y >= 1 else 0
        out.append(str(d))
        r = y - d
    return "".join(out)


def quasi_greedy_one(beta: BetaLike, max_steps: int = 4096, truncate: int = 64) -> EPSeq | str:
    """Quasi-greedy expansion of 1: the largest expansion not ending in 0^inf.

    A finite greedy expansion d_1 ... d_k (d_k = 1) becomes (d_1 ... d_{k-1} 0)^inf.
    Returns a truncated word when beta is not recognised as algebraic or no
    period appears within ``max_steps`` digits.
    """
    alg = _as_algebraic(beta)
    if alg is None:
        return greedy_expansion(1, float(beta), truncate)
    if not 1 < alg.value <= 2:
        raise DomainError(f"beta = {float(alg)} is outside (1, 2]")
    digits: list[str] = []
    seen: dict[tuple, int] = {}
    r: P.Poly = (Fraction(1),)
    for d, r in _greedy_exact(Fraction(1), alg, max_steps):
        digits.append(str(d))
        if all(c == 0 for c in r):
            return EPSeq("", "".join(digits[:-1]) + "0")
        key = tuple(Fraction(c) for c in P.trim(r))
        if key in seen:
            k = seen[key]
            return EPSeq("".join(digits[:k]), "".join(digits[k:]))
        seen[key] = len(digits)
    return "".join(digits[:truncate])


def _check_lorenz(beta_t: float, alpha_t: float) -> None:
    if not 1 < beta_t < 2:
        raise DomainError(f"beta_t = {beta_t} is outside (1, 2)")
    if not 0 < alpha_t < 2 - beta_t:
        raise DomainError(f"alpha_t = {alpha_t} is outside (0, 2 - beta_t)")


def mod1_eval(beta_t: float, alpha_t: float, x: float) -> float:
    """Linear mod-1 map: beta_t*x + alpha_t left of c = (1 - alpha_t)/beta_t, minus 1 from c on."""
    _check_lorenz(beta_t, alpha_t)
    if not 0 <= x <= 1:
        raise DomainError(f"x = {x} is outside [0, 1]")
    c = (1 - alpha_t) / beta_t
    y = beta_t * x + alpha_t
    return y if x < c else y - 1


def lorenz_project(beta_t: float, alpha_t: float, x: EPSeq) -> float:
    """alpha_t/(beta_t - 1) + sum x_n beta_t^-n, summed exactly over pre and period."""
    _check_lorenz(beta_t, alpha_t)
    with mpmath.workdps(40):
        b = mpmath.mpf(beta_t)
        m, p = len(x.pre), len(x.per)
        head = sum(int(c) * b ** -(i + 1) for i, c in enumerate(x.pre))
        block = sum(int(c) * b ** -(i + 1) for i, c in enumerate(x.per))
        tail = b**-m * block / (1 - b**-p)
        return float(mpmath.mpf(alpha_t) / (b - 1) + head + tail)
