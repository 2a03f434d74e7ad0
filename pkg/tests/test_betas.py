import math
import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from suite import PERIODIC_SUITE, SOFIC_SUITE, pairs

from lexworld.betas import (
    AlgebraicBeta,
    BadLeadingSymbol,
    DomainError,
    beta_of,
    greedy_expansion,
    lorenz_project,
    mod1_eval,
    quasi_greedy_one,
)
from lexworld.entropy import entropy_of
from lexworld.seq import EPSeq, is_parry
from lexworld.sft import Automaton

S = EPSeq.parse
PHI = (1 + math.sqrt(5)) / 2


def parry_periodic(max_len: int) -> list[EPSeq]:
    out = []
    for n in range(1, max_len + 1):
        for bits in product("01", repeat=n):
            w = "".join(bits)
            x = EPSeq("", w)
            if x.per == w and is_parry(x):
                out.append(x)
    return out


def test_beta_of_examples():
    assert abs(beta_of(S("(10)")) - PHI) < 1e-12
    b = beta_of(S("(10)"))
    assert abs(b * b - b - 1) < 1e-12
    assert beta_of(S("(1)")) == 2
    b3 = beta_of(S("(100)"))
    assert abs(b3**3 - b3**2 - 1) < 1e-12
    assert b3 == pytest.approx(1.4655712, abs=1e-7)
    with pytest.raises(BadLeadingSymbol):
        beta_of(S("(01)"))


def test_beta_of_against_sympy():
    t = sympy.Symbol("t")
    for alpha in parry_periodic(6)[1:]:
        # sum a_i t^i over one period equals 1 - t^p at t = 1/beta
        p = len(alpha.per)
        expr = sum(int(c) * t ** (i + 1) for i, c in enumerate(alpha.per)) - (1 - t**p)
        roots = [complex(r) for r in sympy.Poly(expr, t).nroots(n=30)]
        t0 = min(r.real for r in roots if abs(r.imag) < 1e-20 and 0 < r.real < 1)
        assert abs(beta_of(alpha) - 1 / t0) < 1e-12


def test_minimal_polynomial():
    phi = AlgebraicBeta.from_sequence(S("(10)"))
    assert phi.minpoly == (-1, -1, 1)
    b = AlgebraicBeta.from_sequence(S("(1100)"))
    x = sympy.Symbol("x")
    assert sympy.Poly(sum(c * x**i for i, c in enumerate(b.minpoly)), x).is_irreducible


def test_greedy_examples():
    assert greedy_expansion(1, PHI, 4) == "1100"
    assert greedy_expansion(1, PHI, 8) == "11000000"
    assert greedy_expansion(Fraction(1, 2), 2, 3) == "100"
    assert greedy_expansion(Fraction(1, 3), 2, 4) == "0101"
    assert greedy_expansion(1, S("(100)"), 6) == "101000"
    with pytest.raises(DomainError):
        greedy_expansion(1, 2.5, 3)


def test_greedy_float_route_agrees_off_ties():
    beta = 1.8
    x = Fraction(3, 7)
    assert greedy_expansion(x, beta, 20) == greedy_expansion(float(x), beta, 20)


def test_quasi_greedy_examples():
    assert quasi_greedy_one(PHI) == S("(10)")
    assert quasi_greedy_one(2) == S("(1)")
    assert quasi_greedy_one(S("(100)")) == S("(100)")
    word = quasi_greedy_one(math.pi / 2)
    assert isinstance(word, str) and len(word) == 64


def test_quasi_greedy_value_is_one():
    b = AlgebraicBeta.from_sequence(S("(100)"))
    q = quasi_greedy_one(b)
    total = sum(q[i] * float(b) ** -(i + 1) for i in range(200))
    assert abs(total - 1) < 1e-10


def test_round_trip_twenty_parry_sequences():
    cases = parry_periodic(7)
    rng = random.Random(11)
    chosen = rng.sample(cases, 20)
    for alpha in chosen:
        assert quasi_greedy_one(alpha) == alpha, alpha


def test_mod1_examples():
    bt, at = 1.5, 0.2
    c = (1 - at) / bt
    assert mod1_eval(bt, at, 0) == at
    assert abs(mod1_eval(bt, at, c - 1e-13) - 1) < 1e-12
    assert abs(mod1_eval(bt, at, c)) < 1e-12
    assert mod1_eval(bt, at, 1) == pytest.approx(bt + at - 1)
    for bad in [(2.0, 0.1, 0.5), (1.5, 0.6, 0.5), (1.5, 0.2, 1.5)]:
        with pytest.raises(DomainError):
            mod1_eval(*bad)


def test_lorenz_project_examples():
    bt, at = 1.5, 0.2
    assert lorenz_project(bt, at, S("(0)")) == pytest.approx(at / (bt - 1), abs=1e-12)
    assert lorenz_project(bt, at, S("(1)")) == pytest.approx(at / (bt - 1) + 1 / (bt - 1), abs=1e-12)


def random_member(aut: Automaton, rng: random.Random) -> EPSeq:
    """A random eventually periodic sequence of the subshift (walk until a state repeats)."""
    state, seen, word = aut.start, {}, []
    while state not in seen:
        seen[state] = len(word)
        moves = [(s, t) for s, t in enumerate(aut.delta[state]) if t is not None]
        s, state = rng.choice(moves)
        word.append(str(s))
    k = seen[state]
    return EPSeq("".join(word[:k]), "".join(word[k:]))


@pytest.mark.parametrize("alpha,beta", pairs() + pairs(SOFIC_SUITE), ids=str)
def test_lorenz_project_monotone_on_subshift(alpha, beta):
    h = entropy_of(alpha, beta).h_bits
    if not 0 < h < 1:
        pytest.skip("needs slope in (1, 2)")
    bt = 2**h
    at = (2 - bt) / 2
    # the endpoints are mapped one unit apart exactly when the slope is 2^h
    assert abs(lorenz_project(bt, at, alpha) - lorenz_project(bt, at, beta) - 1) < 1e-9
    aut = Automaton.build(alpha, beta).trim()
    rng = random.Random(5)
    xs = sorted({random_member(aut, rng) for _ in range(100)})
    vals = [lorenz_project(bt, at, x) for x in xs]
    assert all(u <= v + 1e-9 for u, v in zip(vals, vals[1:]))
