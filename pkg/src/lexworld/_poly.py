"""Exact univariate polynomial helpers.

Polynomials are tuples of coefficients in ascending degree order, with
``int`` or :class:`fractions.Fraction` entries. The zero polynomial is ``()``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Poly = tuple


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(trim(p)) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def monomial(k: int, c=1) -> Poly:
    return tuple([0] * k + [c])


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(p)]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = r[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = list(trim(r))
    return trim(quot), trim(r)


def monic(p: Poly) -> Poly:
    p = trim(p)
    if not p:
        return ()
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Monic gcd over the rationals."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def primitive(p: Poly) -> Poly:
    """Scale a rational polynomial to coprime integers with positive lead."""
    p = trim(p)
    if not p:
        return ()
    fr = [Fraction(c) for c in p]
    den = lcm(*(c.denominator for c in fr))
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def derivative(p: Poly) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def squarefree(p: Poly) -> Poly:
    """Product of the distinct irreducible factors of ``p`` (integer, primitive)."""
    p = trim(p)
    if degree(p) < 1:
        return primitive(p)
    g = gcd_poly(p, derivative(p))
    return primitive(divmod_poly(p, g)[0])


def evaluate(p: Poly, t):
    acc = 0
    for c in reversed(p):
        acc = acc * t + c
    return acc


def sign_at(p: Poly, t: Fraction) -> int:
    """Exact sign of an integer polynomial at a rational point."""
    num, den = t.numerator, t.denominator
    d = len(p) - 1
    acc = 0
    # sum c_i num^i den^(d-i); den > 0 so the sign is preserved
    for i, c in enumerate(p):
        if c:
            acc += int(c) * num**i * den ** (d - i)
    return (acc > 0) - (acc < 0)


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [trim(p), derivative(p)]
    while chain[-1] and degree(chain[-1]) > 0:
        r = divmod_poly(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(neg(r))
    return [c for c in chain if c]


def _variations(chain: list[Poly], t: Fraction) -> int:
    signs = [s for s in (_sign_frac(c, t) for c in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_frac(p: Poly, t: Fraction) -> int:
    v = evaluate(p, Fraction(t))
    return (v > 0) - (v < 0)


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    chain = sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)
